#include "gameqd/selection/kmeans.hpp"

#include <limits>
#include <random>

#include "gameqd/errors.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {
namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace

std::vector<std::size_t> KMeansResult::cluster_sizes() const {
  std::vector<std::size_t> sizes(centroids.size(), 0);
  for (std::size_t a : assignment) ++sizes[a];
  return sizes;
}

KMeansResult kmeans(std::span<const std::vector<double>> points, std::size_t k, std::uint64_t seed,
                    int max_iterations) {
  const std::size_t n = points.size();
  if (k == 0 || n < k) {
    throw UsageError("kmeans: need at least k points (k=" + std::to_string(k) +
                     ", points=" + std::to_string(n) + ")");
  }
  Rng rng = make_rng(seed);
  KMeansResult result;

  // k-means++ seeding.
  result.centroids.push_back(points[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = sq_dist(points[i], result.centroids[0]);
  while (result.centroids.size() < k) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = 0;
    if (total > 0.0) {
      double u = std::uniform_real_distribution<double>(0.0, total)(rng);
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] > 0.0 && u < nearest[i]) {
          pick = i;
          break;
        }
        u -= nearest[i];
      }
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }
    result.centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], sq_dist(points[i], result.centroids.back()));
    }
  }

  // Lloyd iterations.
  result.assignment.assign(n, 0);
  std::vector<double> point_cost(n, 0.0);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(points[i], result.centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = sq_dist(points[i], result.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (iter == 0 || result.assignment[i] != best) changed = true;
      result.assignment[i] = best;
      point_cost[i] = best_d;
      objective += best_d;
    }
    result.objective_history.push_back(objective);
    result.iterations = iter + 1;
    if (!changed) break;

    const std::size_t dim = points[0].size();
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[result.assignment[i]];
      for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
      ++counts[result.assignment[i]];
    }
    std::vector<bool> reseeded(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        for (double& v : sums[c]) v /= static_cast<double>(counts[c]);
        result.centroids[c] = std::move(sums[c]);
        continue;
      }
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (reseeded[i]) continue;
        if (far == n || point_cost[i] > point_cost[far]) far = i;
      }
      if (far < n) {
        reseeded[far] = true;
        result.centroids[c] = points[far];
      }
    }
  }
  return result;
}

}  // namespace gameqd

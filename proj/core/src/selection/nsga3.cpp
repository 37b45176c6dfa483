#include "gameqd/selection/nsga3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "gameqd/errors.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {
namespace {

// a dominates b under maximization.
bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly = true;
  }
  return strictly;
}

double perpendicular_distance(const std::vector<double>& point, const std::vector<double>& dir) {
  double dot = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dir.size(); ++i) {
    dot += point[i] * dir[i];
    norm2 += dir[i] * dir[i];
  }
  const double scale = dot / norm2;
  double acc = 0.0;
  for (std::size_t i = 0; i < dir.size(); ++i) {
    const double d = point[i] - scale * dir[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Translates by the ideal point and divides by the hyperplane intercepts
// through the extreme points (minimization form). Falls back to the worst
// value per objective when the hyperplane is degenerate.
std::vector<std::vector<double>> normalize(const std::vector<std::vector<double>>& costs) {
  const std::size_t m = costs.front().size();
  std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
  for (const auto& c : costs) {
    for (std::size_t j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], c[j]);
  }
  std::vector<std::vector<double>> shifted = costs;
  for (auto& c : shifted) {
    for (std::size_t j = 0; j < m; ++j) c[j] -= ideal[j];
  }

  constexpr double kEps = 1e-10;
  Eigen::MatrixXd extremes(m, m);
  for (std::size_t axis = 0; axis < m; ++axis) {
    std::size_t best = 0;
    double best_asf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      double asf = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double w = j == axis ? 1.0 : 1e-6;
        asf = std::max(asf, shifted[i][j] / w);
      }
      if (asf < best_asf) {
        best_asf = asf;
        best = i;
      }
    }
    for (std::size_t j = 0; j < m; ++j) extremes(axis, j) = shifted[best][j];
  }

  std::vector<double> intercepts(m, 0.0);
  bool ok = false;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(extremes);
  if (lu.rank() == static_cast<Eigen::Index>(m)) {
    const Eigen::VectorXd plane = lu.solve(Eigen::VectorXd::Ones(m));
    ok = true;
    for (std::size_t j = 0; j < m; ++j) {
      intercepts[j] = 1.0 / plane(static_cast<Eigen::Index>(j));
      if (!std::isfinite(intercepts[j]) || intercepts[j] <= kEps) ok = false;
    }
  }
  if (!ok) {
    for (std::size_t j = 0; j < m; ++j) {
      double worst = 0.0;
      for (const auto& c : shifted) worst = std::max(worst, c[j]);
      intercepts[j] = worst > kEps ? worst : 1.0;
    }
  }
  for (auto& c : shifted) {
    for (std::size_t j = 0; j < m; ++j) c[j] /= intercepts[j];
  }
  return shifted;
}

}  // namespace

std::vector<std::vector<std::size_t>> non_dominated_fronts(
    std::span<const std::vector<double>> objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (dominates(objectives[a], objectives[b])) {
        dominated_by_me[a].push_back(b);
        ++domination_count[b];
      } else if (dominates(objectives[b], objectives[a])) {
        dominated_by_me[b].push_back(a);
        ++domination_count[a];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by_me[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<std::vector<double>> simplex_reference_directions(std::size_t count, std::size_t dim,
                                                              std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<std::vector<double>> dirs(count, std::vector<double>(dim));
  for (auto& d : dirs) {
    double total = 0.0;
    for (double& v : d) {
      v = expo(rng);
      total += v;
    }
    for (double& v : d) v /= total;
  }
  return dirs;
}

std::vector<std::size_t> nsga3_select(std::span<const std::vector<double>> objectives, std::size_t k,
                                      std::uint64_t seed, Nsga3Trace* trace) {
  if (objectives.size() < k) {
    throw UsageError("nsga3_select: fewer candidates than k");
  }
  const auto fronts = non_dominated_fronts(objectives);
  std::vector<std::size_t> selected;
  std::size_t last = 0;
  for (; last < fronts.size(); ++last) {
    if (selected.size() + fronts[last].size() > k) break;
    selected.insert(selected.end(), fronts[last].begin(), fronts[last].end());
  }
  if (trace != nullptr) {
    trace->fronts = fronts;
    trace->last_front = last;
  }
  if (selected.size() == k) {
    std::sort(selected.begin(), selected.end());
    return selected;
  }

  const auto& boundary = fronts[last];
  const std::size_t m = objectives.front().size();
  const auto dirs = simplex_reference_directions(k, m, seed);
  if (trace != nullptr) trace->reference_directions = dirs;

  // Members considered for normalization: chosen fronts plus the split front.
  std::vector<std::size_t> members = selected;
  members.insert(members.end(), boundary.begin(), boundary.end());
  std::vector<std::vector<double>> costs;
  costs.reserve(members.size());
  for (std::size_t i : members) {
    std::vector<double> c(objectives[i].size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = -objectives[i][j];
    costs.push_back(std::move(c));
  }
  const auto normalized = normalize(costs);

  std::vector<std::size_t> niche(members.size());
  std::vector<double> niche_distance(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < dirs.size(); ++r) {
      const double d = perpendicular_distance(normalized[i], dirs[r]);
      if (d < best) {
        best = d;
        niche[i] = r;
      }
    }
    niche_distance[i] = best;
  }

  std::vector<std::size_t> niche_count(dirs.size(), 0);
  for (std::size_t i = 0; i < selected.size(); ++i) ++niche_count[niche[i]];

  const std::size_t first_boundary = selected.size();
  std::vector<bool> taken(members.size(), false);
  std::vector<bool> exhausted(dirs.size(), false);
  while (selected.size() < k) {
    std::size_t ref = dirs.size();
    for (std::size_t r = 0; r < dirs.size(); ++r) {
      if (exhausted[r]) continue;
      if (ref == dirs.size() || niche_count[r] < niche_count[ref]) ref = r;
    }
    std::size_t pick = members.size();
    for (std::size_t i = first_boundary; i < members.size(); ++i) {
      if (taken[i] || niche[i] != ref) continue;
      if (pick == members.size() || niche_distance[i] < niche_distance[pick]) pick = i;
    }
    if (pick == members.size()) {
      exhausted[ref] = true;
      continue;
    }
    taken[pick] = true;
    ++niche_count[ref];
    selected.push_back(members[pick]);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace gameqd

#include "gameqd/selection/ranking.hpp"

#include <algorithm>
#include <numeric>

#include "gameqd/errors.hpp"

namespace gameqd {

std::vector<double> ranking_vector(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw UsageError("ranking_vector: need at least two values");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(n);
  const double scale = 2.0 / static_cast<double>(n - 1);
  for (std::size_t rank = 0; rank < n; ++rank) {
    out[order[rank]] = scale * static_cast<double>(rank) - 1.0;
  }
  return out;
}

}  // namespace gameqd

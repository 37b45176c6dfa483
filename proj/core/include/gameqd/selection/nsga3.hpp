#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gameqd {

// Non-dominated fronts under maximization, best first. Members of each front
// are listed in increasing index order.
std::vector<std::vector<std::size_t>> non_dominated_fronts(
    std::span<const std::vector<double>> objectives);

// `count` directions drawn uniformly from the unit simplex in `dim` dimensions.
std::vector<std::vector<double>> simplex_reference_directions(std::size_t count, std::size_t dim,
                                                              std::uint64_t seed);

struct Nsga3Trace {
  std::vector<std::vector<double>> reference_directions;
  std::vector<std::vector<std::size_t>> fronts;
  std::size_t last_front = 0;  // index into fronts of the split front
};

// NSGA-III environmental selection of k candidates (maximization). Whole
// fronts are taken in order; the front that does not fit is split by niching
// against k reference directions sampled on the simplex from `seed`.
// Niching is deterministic given those directions: the least crowded
// direction (lowest index on ties) takes its closest associated candidate.
// Returns selected indices in increasing order. Throws UsageError if fewer
// than k candidates are given.
std::vector<std::size_t> nsga3_select(std::span<const std::vector<double>> objectives, std::size_t k,
                                      std::uint64_t seed, Nsga3Trace* trace = nullptr);

}  // namespace gameqd

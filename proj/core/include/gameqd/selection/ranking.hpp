#pragma once

#include <span>
#include <vector>

namespace gameqd {

// Rank of every entry (argsort of argsort, stable on index), mapped affinely
// onto [-1, 1]: rank r becomes 2r/(n-1) - 1. Throws UsageError for n < 2.
std::vector<double> ranking_vector(std::span<const double> values);

}  // namespace gameqd

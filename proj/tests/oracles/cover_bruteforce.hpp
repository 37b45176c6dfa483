#pragma once

// Exhaustive minimum cover over every column subset, for small matrices.

#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

// loses[r][c] is true when row r loses against column c. Returns the size of
// the smallest column subset hitting every row, or nullopt if none exists.
inline std::optional<std::size_t> brute_force_cover(const std::vector<std::vector<bool>>& loses,
                                                    std::size_t columns) {
  std::optional<std::size_t> best;
  for (unsigned mask = 0; mask < (1u << columns); ++mask) {
    std::size_t size = 0;
    for (std::size_t c = 0; c < columns; ++c) size += (mask >> c) & 1u;
    if (best && size >= *best) continue;
    bool all = true;
    for (const auto& row : loses) {
      bool hit = false;
      for (std::size_t c = 0; c < columns && !hit; ++c) hit = ((mask >> c) & 1u) && row[c];
      if (!hit) {
        all = false;
        break;
      }
    }
    if (all) best = size;
  }
  return best;
}

}  // namespace oracle

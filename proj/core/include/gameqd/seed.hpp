#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace gameqd {

// All randomness in a run is derived from a master seed and a context tuple:
//
//   h = mix64(master ^ 0x6a09e667f3bcc909)
//   for each component v:  h = mix64(h ^ (v + 0x9e3779b97f4a7c15 + (h << 6) + (h >> 2)))
//   seed = mix64(h ^ length(context))
//
// mix64 is the splitmix64 finalizer (Stafford's variant 13). The first context
// component is always one of the domain tags below; the remaining components
// are listed next to each tag.
namespace seed_domain {
inline constexpr std::uint64_t kInitialTasks = 1;    // (task index)
inline constexpr std::uint64_t kCandidate = 2;       // (gen, iteration)
inline constexpr std::uint64_t kMutation = 3;        // (gen, iteration)
inline constexpr std::uint64_t kLoopDuel = 4;        // (gen, iteration)
inline constexpr std::uint64_t kSelection = 5;       // (gen, purpose)
inline constexpr std::uint64_t kSelectionDuel = 6;   // (gen, new/elite index, old task index)
inline constexpr std::uint64_t kReplication = 7;     // (replication)
inline constexpr std::uint64_t kRoundRobin = 8;      // (row, column, repetition)
inline constexpr std::uint64_t kElo = 9;             // (pass)
inline constexpr std::uint64_t kCoverage = 10;       // (side)
inline constexpr std::uint64_t kReselect = 11;       // (strategy index, replication, side)
inline constexpr std::uint64_t kReplay = 12;         // (row, column)

// Purposes used with kSelection.
inline constexpr std::uint64_t kPurposeCluster = 0;
inline constexpr std::uint64_t kPurposeSample = 1;
inline constexpr std::uint64_t kPurposePad = 2;
inline constexpr std::uint64_t kPurposeNiching = 3;
}  // namespace seed_domain

std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> context) noexcept;

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> context) noexcept {
  return derive_seed(master, std::span<const std::uint64_t>(context.begin(), context.size()));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace gameqd

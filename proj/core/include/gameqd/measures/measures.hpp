#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gameqd/measures/fitness_matrix.hpp"

namespace gameqd {

// A result strictly above this wins; strictly below it loses.
inline constexpr double kWinThreshold = 0.5;

// Each measure takes the matrix from the evaluated side's perspective and the
// row indices of the evaluated set. An empty set throws UsageError.

// Best row's percentage of columns won.
double win_rate(const FitnessMatrix& m, std::span<const std::size_t> rows);
// Best row's worst result.
double robustness(const FitnessMatrix& m, std::span<const std::size_t> rows);
// Worst column's best answer from the set.
double expertise(const FitnessMatrix& m, std::span<const std::size_t> rows);

// Cluster index of every row, from k-means over the rows' ranking vectors.
std::vector<std::size_t> ranking_clusters(const FitnessMatrix& m, std::size_t k, std::uint64_t seed);
// Percentage of distinct clusters per member of the set.
double coverage(std::span<const std::size_t> clusters, std::span<const std::size_t> rows);

// Smallest number of columns such that every row of the set loses against at
// least one of them. `size` is empty (unbounded) when some row never loses.
struct AqdScore {
  std::optional<std::size_t> size;
  std::vector<std::size_t> cover;  // one minimal cover, column indices ascending

  bool unbounded() const noexcept { return !size.has_value(); }
  double as_real() const noexcept {
    return size ? static_cast<double>(*size) : std::numeric_limits<double>::infinity();
  }
};
AqdScore aqd_score(const FitnessMatrix& m, std::span<const std::size_t> rows);

// Elo over a list of two-player matches.
struct EloOptions {
  double initial = 1000.0;
  double k = 16.0;
  double scale = 400.0;
  int passes = 10;
};

struct EloMatch {
  std::size_t a;
  std::size_t b;
  double score_a;  // 1 win, 0.5 draw, 0 loss
};

// Applies the matches once, in the given order.
std::vector<double> elo_ratings(std::size_t players, std::span<const EloMatch> matches,
                                const EloOptions& options = {});
// `options.passes` passes; pass p processes the matches in the order of a
// shuffle seeded with derive_seed(seed, {kElo, p}).
std::vector<double> elo_ratings_shuffled(std::size_t players, std::span<const EloMatch> matches,
                                         std::uint64_t seed, const EloOptions& options = {});

// Rank of every value scaled to [0, 100]: lowest 0, highest 100. Equal values
// are ordered by index.
std::vector<double> rank_percentiles(std::span<const double> values);

struct EloTable {
  std::vector<double> red_rating;
  std::vector<double> blue_rating;
  std::vector<double> red_percentile;
  std::vector<double> blue_percentile;
};

// Matches are every (row, column, repetition) duel, scored against 0.5.
// Percentiles are computed within each side.
EloTable elo_scores(const FitnessMatrix& m, std::uint64_t seed, const EloOptions& options = {});
// Highest percentile in the set.
double elo_score(std::span<const double> percentiles, std::span<const std::size_t> rows);

// Median and quartiles with linear interpolation between order statistics.
// Infinite values sort last; an interpolation touching one yields infinity.
struct Quartiles {
  double q1;
  double median;
  double q3;
};
Quartiles quartiles(std::vector<double> values);

}  // namespace gameqd

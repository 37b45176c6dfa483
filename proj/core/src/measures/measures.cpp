#include "gameqd/measures/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "gameqd/errors.hpp"
#include "gameqd/seed.hpp"
#include "gameqd/selection/kmeans.hpp"
#include "gameqd/selection/ranking.hpp"

namespace gameqd {
namespace {

using Bits = boost::dynamic_bitset<>;

void require_rows(const FitnessMatrix& m, std::span<const std::size_t> rows, const char* what) {
  if (rows.empty()) throw UsageError(std::string(what) + ": empty solution set");
  if (m.columns() == 0) throw UsageError(std::string(what) + ": matrix has no columns");
  for (std::size_t r : rows) {
    if (r >= m.rows()) throw UsageError(std::string(what) + ": row index out of range");
  }
}

// Exact minimum hitting set: each entry of `targets` must share a column with
// the chosen set. `hits[c]` lists the targets column c hits.
class CoverSearch {
 public:
  CoverSearch(std::vector<Bits> hits, std::size_t targets)
      : hits_(std::move(hits)), targets_(targets) {}

  std::vector<std::size_t> greedy() const {
    Bits open(targets_);
    open.set();
    std::vector<std::size_t> chosen;
    while (open.any()) {
      std::size_t best = 0;
      std::size_t best_gain = 0;
      for (std::size_t c = 0; c < hits_.size(); ++c) {
        const std::size_t gain = (hits_[c] & open).count();
        if (gain > best_gain) {
          best = c;
          best_gain = gain;
        }
      }
      chosen.push_back(best);
      open &= ~hits_[best];
    }
    return chosen;
  }

  // Smallest cover, by iterative deepening up to the greedy size.
  std::vector<std::size_t> solve() {
    std::vector<std::size_t> bound = greedy();
    max_gain_ = 0;
    for (const auto& h : hits_) max_gain_ = std::max(max_gain_, h.count());
    for (std::size_t depth = 1; depth < bound.size(); ++depth) {
      Bits open(targets_);
      open.set();
      chosen_.clear();
      if (search(open, depth)) return chosen_;
    }
    return bound;
  }

 private:
  bool search(const Bits& open, std::size_t depth) {
    if (open.none()) return true;
    if (depth == 0 || open.count() > depth * max_gain_) return false;
    // Branch on the open target with the fewest columns hitting it.
    std::size_t pick = open.find_first();
    std::size_t fewest = hits_.size() + 1;
    for (std::size_t t = open.find_first(); t != Bits::npos; t = open.find_next(t)) {
      std::size_t n = 0;
      for (const auto& h : hits_) n += h.test(t) ? 1 : 0;
      if (n < fewest) {
        fewest = n;
        pick = t;
      }
    }
    for (std::size_t c = 0; c < hits_.size(); ++c) {
      if (!hits_[c].test(pick)) continue;
      chosen_.push_back(c);
      if (search(open & ~hits_[c], depth - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::vector<Bits> hits_;
  std::size_t targets_;
  std::size_t max_gain_ = 0;
  std::vector<std::size_t> chosen_;
};

void apply_match(std::vector<double>& rating, const EloMatch& match, const EloOptions& options) {
  const double expected_a =
      1.0 / (1.0 + std::pow(10.0, (rating[match.b] - rating[match.a]) / options.scale));
  const double delta = options.k * (match.score_a - expected_a);
  rating[match.a] += delta;
  rating[match.b] -= delta;
}

}  // namespace

double win_rate(const FitnessMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "win rate");
  double best = 0.0;
  for (std::size_t r : rows) {
    const auto row = m.row(r);
    const auto wins = std::count_if(row.begin(), row.end(), [](double f) { return f > kWinThreshold; });
    best = std::max(best, 100.0 * static_cast<double>(wins) / static_cast<double>(row.size()));
  }
  return best;
}

double robustness(const FitnessMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "robustness");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r : rows) {
    const auto row = m.row(r);
    best = std::max(best, *std::min_element(row.begin(), row.end()));
  }
  return best;
}

double expertise(const FitnessMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "expertise");
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m.columns(); ++c) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r : rows) best = std::max(best, m.at(r, c));
    worst = std::min(worst, best);
  }
  return worst;
}

std::vector<std::size_t> ranking_clusters(const FitnessMatrix& m, std::size_t k, std::uint64_t seed) {
  if (m.rows() < k) throw UsageError("coverage: fewer solutions than clusters");
  std::vector<std::vector<double>> points;
  points.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) points.push_back(ranking_vector(m.row(r)));
  return kmeans(points, k, seed).assignment;
}

double coverage(std::span<const std::size_t> clusters, std::span<const std::size_t> rows) {
  if (rows.empty()) throw UsageError("coverage: empty solution set");
  std::set<std::size_t> distinct;
  for (std::size_t r : rows) {
    if (r >= clusters.size()) throw UsageError("coverage: row index out of range");
    distinct.insert(clusters[r]);
  }
  return 100.0 * static_cast<double>(distinct.size()) / static_cast<double>(rows.size());
}

AqdScore aqd_score(const FitnessMatrix& m, std::span<const std::size_t> rows) {
  require_rows(m, rows, "AQD score");
  const std::size_t n_cols = m.columns();

  // Columns each row loses against. Duplicate rows and rows whose loss set
  // contains another row's are implied by that row and dropped.
  std::vector<Bits> losses;
  for (std::size_t r : rows) {
    Bits b(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (m.at(r, c) < kWinThreshold) b.set(c);
    }
    if (b.none()) return {};
    losses.push_back(std::move(b));
  }
  std::vector<Bits> targets;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    bool implied = false;
    for (std::size_t j = 0; j < losses.size() && !implied; ++j) {
      if (i == j) continue;
      const bool subset = losses[j].is_subset_of(losses[i]);
      implied = subset && (losses[j] != losses[i] || j < i);
    }
    if (!implied) targets.push_back(losses[i]);
  }

  // Targets hit by each column; a column whose hits are contained in another
  // column's (ties to the lower index) never needs to be chosen.
  std::vector<Bits> hits(n_cols, Bits(targets.size()));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t c = targets[t].find_first(); c != Bits::npos; c = targets[t].find_next(c)) {
      hits[c].set(t);
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (hits[c].none()) continue;
    bool dominated = false;
    for (std::size_t d = 0; d < n_cols && !dominated; ++d) {
      if (d == c || !hits[c].is_subset_of(hits[d])) continue;
      dominated = hits[c] != hits[d] || d < c;
    }
    if (!dominated) kept.push_back(c);
  }
  std::vector<Bits> kept_hits;
  for (std::size_t c : kept) kept_hits.push_back(hits[c]);

  CoverSearch search(std::move(kept_hits), targets.size());
  AqdScore out;
  for (std::size_t i : search.solve()) out.cover.push_back(kept[i]);
  std::sort(out.cover.begin(), out.cover.end());
  out.size = out.cover.size();
  return out;
}

std::vector<double> elo_ratings(std::size_t players, std::span<const EloMatch> matches,
                                const EloOptions& options) {
  std::vector<double> rating(players, options.initial);
  for (const auto& match : matches) apply_match(rating, match, options);
  return rating;
}

std::vector<double> elo_ratings_shuffled(std::size_t players, std::span<const EloMatch> matches,
                                         std::uint64_t seed, const EloOptions& options) {
  std::vector<double> rating(players, options.initial);
  std::vector<EloMatch> order(matches.begin(), matches.end());
  for (int pass = 0; pass < options.passes; ++pass) {
    order.assign(matches.begin(), matches.end());
    Rng rng = make_rng(derive_seed(seed, {seed_domain::kElo, static_cast<std::uint64_t>(pass)}));
    std::shuffle(order.begin(), order.end(), rng);
    for (const auto& match : order) apply_match(rating, match, options);
  }
  return rating;
}

std::vector<double> rank_percentiles(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> pct(values.size(), 100.0);
  if (values.size() < 2) return pct;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pct[order[i]] = 100.0 * static_cast<double>(i) / static_cast<double>(values.size() - 1);
  }
  return pct;
}

EloTable elo_scores(const FitnessMatrix& m, std::uint64_t seed, const EloOptions& options) {
  const std::size_t red = m.rows();
  std::vector<EloMatch> matches;
  matches.reserve(m.rows() * m.columns() * m.reps());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.columns(); ++c) {
      for (std::size_t k = 0; k < m.reps(); ++k) {
        const double f = m.sample(r, c, k);
        const double score = f > kWinThreshold ? 1.0 : (f < kWinThreshold ? 0.0 : 0.5);
        matches.push_back({r, red + c, score});
      }
    }
  }
  const auto rating = elo_ratings_shuffled(red + m.columns(), matches, seed, options);
  EloTable t;
  t.red_rating.assign(rating.begin(), rating.begin() + static_cast<std::ptrdiff_t>(red));
  t.blue_rating.assign(rating.begin() + static_cast<std::ptrdiff_t>(red), rating.end());
  t.red_percentile = rank_percentiles(t.red_rating);
  t.blue_percentile = rank_percentiles(t.blue_rating);
  return t;
}

double elo_score(std::span<const double> percentiles, std::span<const std::size_t> rows) {
  if (rows.empty()) throw UsageError("Elo score: empty solution set");
  double best = 0.0;
  for (std::size_t r : rows) {
    if (r >= percentiles.size()) throw UsageError("Elo score: row index out of range");
    best = std::max(best, percentiles[r]);
  }
  return best;
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw UsageError("quartiles: no values");
  std::sort(values.begin(), values.end());
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) return values[lo];
    const double a = values[lo];
    const double b = values[lo + 1];
    if (std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
    return a + (b - a) * frac;
  };
  return {at(0.25), at(0.5), at(0.75)};
}

}  // namespace gameqd

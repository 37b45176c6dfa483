#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gameqd/config.hpp"
#include "gameqd/types.hpp"

namespace gameqd {

// Red-perspective fitness of every red solution (row) against every blue
// solution (column). `samples` keeps each repetition; `values` is their mean.
class FitnessMatrix {
 public:
  FitnessMatrix() = default;
  FitnessMatrix(std::vector<std::string> row_labels, std::vector<std::string> column_labels,
                std::size_t reps, std::vector<double> samples);
  // Single-repetition matrix from row-major values.
  static FitnessMatrix from_values(std::size_t rows, std::size_t columns, std::vector<double> values);

  std::size_t rows() const noexcept { return row_labels_.size(); }
  std::size_t columns() const noexcept { return column_labels_.size(); }
  std::size_t reps() const noexcept { return reps_; }

  double at(std::size_t r, std::size_t c) const { return values_[r * columns() + c]; }
  double sample(std::size_t r, std::size_t c, std::size_t rep) const {
    return samples_[(r * columns() + c) * reps_ + rep];
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * columns(), columns());
  }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& column_labels() const noexcept { return column_labels_; }
  std::span<const double> samples() const noexcept { return samples_; }

  // The same duels from the blue side: rows and columns swapped, f -> 1 - f.
  FitnessMatrix blue_view() const;

  friend bool operator==(const FitnessMatrix&, const FitnessMatrix&) = default;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> column_labels_;
  std::size_t reps_ = 1;
  std::vector<double> samples_;
  std::vector<double> values_;
};

struct LabeledGenome {
  std::string label;
  Genome genome;
};

// Every red x blue pair played `reps` times with seeds
// derive_seed(seed, {kRoundRobin, row, column, rep}).
FitnessMatrix round_robin(std::span<const LabeledGenome> red, std::span<const LabeledGenome> blue,
                          const EnvParams& params, std::size_t reps, std::uint64_t seed,
                          int workers = 1);

// CSV: header "red\blue,<column labels>"; files written by write_matrix
// start with a '#' provenance line, then one line per row with the
// mean values. The JSON sidecar holds labels, repetitions, seed, provenance,
// and the per-repetition samples when reps > 1.
std::string matrix_csv(const FitnessMatrix& m);

struct MatrixProvenance {
  std::string env;
  std::uint64_t seed = 0;
  std::string plan_hash;
  std::string mode;
};

nlohmann::json matrix_sidecar(const FitnessMatrix& m, const MatrixProvenance& p);
void write_matrix(const std::filesystem::path& csv_path, const FitnessMatrix& m,
                  const MatrixProvenance& p);
// Reads a matrix from its CSV and sidecar (`<csv>.json`); labels must agree.
FitnessMatrix read_matrix(const std::filesystem::path& csv_path, MatrixProvenance* provenance = nullptr);

}  // namespace gameqd

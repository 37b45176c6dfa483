#pragma once

#include <string>
#include <vector>

#include "gameqd/measures/fitness_matrix.hpp"
#include "gameqd/measures/measures.hpp"

namespace gameqd {

inline constexpr const char* kMeasureNames[] = {"Win rate",  "ELO Score", "Robustness",
                                                 "Coverage",  "Expertise", "AQD-Score"};

struct MeasureRow {
  std::string side;     // player name, e.g. "cat"
  std::string variant;  // strategy name
  std::string measure;
  std::vector<double> values;  // one per replication, in replication order
  Quartiles summary;
};

struct MeasureTable {
  std::string plan_hash;
  std::string mode;
  std::vector<std::string> sides;
  std::vector<std::string> variants;
  std::vector<MeasureRow> rows;

  const MeasureRow& find(std::string_view side, std::string_view variant,
                         std::string_view measure) const;
};

// Row and column labels are "<variant>/r<replication>/<index>"; the solutions
// of one replication form one evaluated set. Coverage uses k = set size.
MeasureTable compute_measures(const FitnessMatrix& m, const MatrixProvenance& provenance);

std::string measure_table_csv(const MeasureTable& t);
std::string measure_table_text(const MeasureTable& t);

}  // namespace gameqd

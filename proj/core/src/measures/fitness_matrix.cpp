#include "gameqd/measures/fitness_matrix.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gameqd/env/environment.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/parallel.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {
namespace {

std::vector<double> mean_over_reps(const std::vector<double>& samples, std::size_t cells,
                                   std::size_t reps) {
  std::vector<double> out(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < reps; ++k) sum += samples[i * reps + k];
    out[i] = sum / static_cast<double>(reps);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataIntegrityError(fmt::format("matrix: cannot parse '{}'", s));
  }
  return v;
}

}  // namespace

FitnessMatrix::FitnessMatrix(std::vector<std::string> row_labels,
                             std::vector<std::string> column_labels, std::size_t reps,
                             std::vector<double> samples)
    : row_labels_(std::move(row_labels)),
      column_labels_(std::move(column_labels)),
      reps_(reps),
      samples_(std::move(samples)) {
  if (reps_ == 0) throw UsageError("fitness matrix: repetitions must be positive");
  if (samples_.size() != rows() * columns() * reps_) {
    throw DataIntegrityError("fitness matrix: sample count does not match its shape");
  }
  values_ = mean_over_reps(samples_, rows() * columns(), reps_);
}

FitnessMatrix FitnessMatrix::from_values(std::size_t rows, std::size_t columns,
                                         std::vector<double> values) {
  std::vector<std::string> r(rows);
  std::vector<std::string> c(columns);
  for (std::size_t i = 0; i < rows; ++i) r[i] = fmt::format("r{}", i);
  for (std::size_t j = 0; j < columns; ++j) c[j] = fmt::format("c{}", j);
  return FitnessMatrix(std::move(r), std::move(c), 1, std::move(values));
}

FitnessMatrix FitnessMatrix::blue_view() const {
  std::vector<double> s(samples_.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < columns(); ++c) {
      for (std::size_t k = 0; k < reps_; ++k) {
        s[(c * rows() + r) * reps_ + k] = 1.0 - sample(r, c, k);
      }
    }
  }
  return FitnessMatrix(column_labels_, row_labels_, reps_, std::move(s));
}

FitnessMatrix round_robin(std::span<const LabeledGenome> red, std::span<const LabeledGenome> blue,
                          const EnvParams& params, std::size_t reps, std::uint64_t seed,
                          int workers) {
  if (red.empty() || blue.empty()) throw UsageError("round robin: both sides need solutions");
  const EnvId env = red.front().genome.env();
  for (const auto& g : red) {
    if (g.genome.env() != env || g.genome.side() != Side::kRed) {
      throw UsageError("round robin: red solution '" + g.label + "' does not match");
    }
  }
  for (const auto& g : blue) {
    if (g.genome.env() != env || g.genome.side() != Side::kBlue) {
      throw UsageError("round robin: blue solution '" + g.label + "' does not match");
    }
  }
  const std::size_t cols = blue.size();
  std::vector<double> samples(red.size() * cols * reps);
  parallel_for(samples.size(), workers, [&](std::size_t i) {
    const std::size_t k = i % reps;
    const std::size_t cell = i / reps;
    const std::size_t r = cell / cols;
    const std::size_t c = cell % cols;
    samples[i] = evaluate_duel(env, params, red[r].genome, blue[c].genome,
                               derive_seed(seed, {seed_domain::kRoundRobin, r, c, k}))
                     .fitness.red;
  });
  std::vector<std::string> rl;
  std::vector<std::string> cl;
  for (const auto& g : red) rl.push_back(g.label);
  for (const auto& g : blue) cl.push_back(g.label);
  return FitnessMatrix(std::move(rl), std::move(cl), reps, std::move(samples));
}

std::string matrix_csv(const FitnessMatrix& m) {
  std::string out = "red\\blue";
  for (const auto& l : m.column_labels()) {
    if (l.find(',') != std::string::npos) throw UsageError("matrix label contains a comma: " + l);
    out += ',' + l;
  }
  out += '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.row_labels()[r];
    for (double v : m.row(r)) out += fmt::format(",{}", v);
    out += '\n';
  }
  return out;
}

nlohmann::json matrix_sidecar(const FitnessMatrix& m, const MatrixProvenance& p) {
  nlohmann::json j{{"tool_version", io::tool_version()},
                   {"plan_hash", p.plan_hash},
                   {"env", p.env},
                   {"mode", p.mode},
                   {"seed", p.seed},
                   {"reps", m.reps()},
                   {"row_labels", m.row_labels()},
                   {"column_labels", m.column_labels()}};
  if (m.reps() > 1) j["samples"] = std::vector<double>(m.samples().begin(), m.samples().end());
  return j;
}

void write_matrix(const std::filesystem::path& csv_path, const FitnessMatrix& m,
                  const MatrixProvenance& p) {
  io::write_text(csv_path, fmt::format("# {} plan {} mode {}\n", io::tool_version(), p.plan_hash,
                                      p.mode) +
                              matrix_csv(m));
  auto sidecar = csv_path;
  sidecar += ".json";
  io::write_json(sidecar, matrix_sidecar(m, p));
}

FitnessMatrix read_matrix(const std::filesystem::path& csv_path, MatrixProvenance* provenance) {
  auto sidecar_path = csv_path;
  sidecar_path += ".json";
  const auto side = io::read_json(sidecar_path);
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::size_t reps = 1;
  try {
    rows = side.at("row_labels").get<std::vector<std::string>>();
    cols = side.at("column_labels").get<std::vector<std::string>>();
    reps = side.at("reps").get<std::size_t>();
    if (provenance) {
      provenance->env = side.at("env").get<std::string>();
      provenance->seed = side.at("seed").get<std::uint64_t>();
      provenance->plan_hash = side.at("plan_hash").get<std::string>();
      provenance->mode = side.at("mode").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataIntegrityError(sidecar_path.string() + ": " + e.what());
  }

  std::ifstream in(csv_path);
  if (!in) throw DataIntegrityError("cannot open " + csv_path.string());
  std::string line;
  while (std::getline(in, line) && line.starts_with('#')) {
  }
  const auto header = split(line, ',');
  if (header.size() != cols.size() + 1) throw DataIntegrityError("matrix: header width mismatch");
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (header[c + 1] != cols[c]) throw DataIntegrityError("matrix: column labels disagree with sidecar");
  }
  std::vector<double> values;
  std::size_t r = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (r >= rows.size() || cells.size() != cols.size() + 1 || cells[0] != rows[r]) {
      throw DataIntegrityError(fmt::format("matrix: row {} disagrees with sidecar", r));
    }
    for (std::size_t c = 1; c < cells.size(); ++c) values.push_back(parse_real(cells[c]));
    ++r;
  }
  if (r != rows.size()) throw DataIntegrityError("matrix: row count disagrees with sidecar");

  if (reps == 1) return FitnessMatrix(std::move(rows), std::move(cols), 1, std::move(values));
  std::vector<double> samples;
  try {
    samples = side.at("samples").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataIntegrityError(sidecar_path.string() + ": " + e.what());
  }
  FitnessMatrix m(std::move(rows), std::move(cols), reps, std::move(samples));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (m.at(i / m.columns(), i % m.columns()) != values[i]) {
      throw DataIntegrityError("matrix: CSV means disagree with sidecar samples");
    }
  }
  return m;
}

}  // namespace gameqd

#include "gameqd/report/measure_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "gameqd/errors.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {
namespace {

struct Group {
  std::string variant;
  std::vector<std::size_t> members;
};

// Groups consecutive labels by "<variant>/r<rep>", keeping first-seen order.
std::vector<Group> group_labels(const std::vector<std::string>& labels) {
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels[i];
    const auto last = l.rfind('/');
    const auto first = l.find('/');
    if (last == std::string::npos || first == last) {
      throw DataIntegrityError("measures: label '" + l + "' is not <variant>/r<rep>/<index>");
    }
    const std::string key = l.substr(0, last);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back({l.substr(0, first), {}});
    groups[it->second].members.push_back(i);
  }
  return groups;
}

bool is_percent(std::string_view measure) {
  return measure == "Win rate" || measure == "ELO Score" || measure == "Coverage";
}

std::string format_value(std::string_view measure, double v) {
  if (std::isinf(v)) return "∞";
  if (is_percent(measure)) return fmt::format("{:.1f}%", v);
  if (measure == "AQD-Score") {
    return v == std::floor(v) ? fmt::format("{:.0f}", v) : fmt::format("{:.1f}", v);
  }
  return fmt::format("{:.2f}", v);
}

std::string csv_value(double v) { return std::isinf(v) ? "null" : fmt::format("{}", v); }

// Display width in code points; the table only contains ASCII and "∞".
std::size_t width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

std::string pad(std::string_view s, std::size_t w) {
  std::string out(s);
  out.append(w > width(s) ? w - width(s) : 0, ' ');
  return out;
}

}  // namespace

const MeasureRow& MeasureTable::find(std::string_view side, std::string_view variant,
                                     std::string_view measure) const {
  for (const auto& r : rows) {
    if (r.side == side && r.variant == variant && r.measure == measure) return r;
  }
  throw UsageError(fmt::format("measure table has no entry {}/{}/{}", side, variant, measure));
}

MeasureTable compute_measures(const FitnessMatrix& m, const MatrixProvenance& provenance) {
  const EnvId env = env_from_string(provenance.env);
  MeasureTable table;
  table.plan_hash = provenance.plan_hash;
  table.mode = provenance.mode;

  const EloTable elo = elo_scores(m, provenance.seed);
  const FitnessMatrix blue = m.blue_view();

  for (Side side : {Side::kRed, Side::kBlue}) {
    const FitnessMatrix& view = side == Side::kRed ? m : blue;
    const auto& percentiles = side == Side::kRed ? elo.red_percentile : elo.blue_percentile;
    const auto groups = group_labels(view.row_labels());
    std::size_t k = 0;
    for (const auto& g : groups) k = std::max(k, g.members.size());
    const auto clusters = ranking_clusters(
        view, k,
        derive_seed(provenance.seed, {seed_domain::kCoverage, static_cast<std::uint64_t>(side)}));

    const std::string side_name(role_name(env, side));
    table.sides.push_back(side_name);
    std::vector<std::string> variants;
    for (const auto& g : groups) {
      if (std::find(variants.begin(), variants.end(), g.variant) == variants.end()) {
        variants.push_back(g.variant);
      }
    }
    if (table.variants.empty()) table.variants = variants;

    for (const auto& variant : variants) {
      std::vector<std::vector<double>> values(std::size(kMeasureNames));
      for (const auto& g : groups) {
        if (g.variant != variant) continue;
        values[0].push_back(win_rate(view, g.members));
        values[1].push_back(elo_score(percentiles, g.members));
        values[2].push_back(robustness(view, g.members));
        values[3].push_back(coverage(clusters, g.members));
        values[4].push_back(expertise(view, g.members));
        values[5].push_back(aqd_score(view, g.members).as_real());
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        table.rows.push_back({side_name, variant, kMeasureNames[i], values[i], quartiles(values[i])});
      }
    }
  }
  return table;
}

std::string measure_table_csv(const MeasureTable& t) {
  std::string out = fmt::format("# {} plan {} mode {}\n", io::tool_version(), t.plan_hash, t.mode);
  out += "side,variant,measure,median,q1,q3,replications\n";
  for (const auto& r : t.rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.side, r.variant, r.measure,
                       csv_value(r.summary.median), csv_value(r.summary.q1), csv_value(r.summary.q3),
                       r.values.size());
  }
  return out;
}

std::string measure_table_text(const MeasureTable& t) {
  // One column per (side, variant), one line per measure: median [q1, q3].
  std::vector<std::string> header{"Measure"};
  std::vector<std::vector<std::string>> lines;
  for (const auto& side : t.sides) {
    for (const auto& variant : t.variants) header.push_back(side + " " + variant);
  }
  for (const char* measure : kMeasureNames) {
    std::vector<std::string> line{measure};
    for (const auto& side : t.sides) {
      for (const auto& variant : t.variants) {
        const auto& r = t.find(side, variant, measure);
        line.push_back(fmt::format("{} [{}, {}]", format_value(measure, r.summary.median),
                                   format_value(measure, r.summary.q1),
                                   format_value(measure, r.summary.q3)));
      }
    }
    lines.push_back(std::move(line));
  }
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    w[i] = width(header[i]);
    for (const auto& l : lines) w[i] = std::max(w[i], width(l[i]));
  }
  std::string out = fmt::format("# {} plan {} mode {}\n", io::tool_version(), t.plan_hash, t.mode);
  const auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      line += pad(cells[i], w[i]);
      if (i + 1 < cells.size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  };
  emit(header);
  for (const auto& l : lines) emit(l);
  return out;
}

}  // namespace gameqd

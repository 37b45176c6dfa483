#include "gameqd/report/plan.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "gameqd/errors.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {
namespace {

constexpr std::string_view kPlanKeys[] = {"strategies", "replications", "tournament_reps"};

int parse_count(std::string_view key, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(fmt::format("key '{}': cannot parse '{}' as an integer", key, v));
  }
  return out;
}

std::vector<Strategy> parse_strategies(std::string_view v) {
  std::vector<Strategy> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    auto item = v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
    if (!item.empty()) out.push_back(strategy_from_string(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

void ExperimentPlan::validate() const {
  base.validate();
  if (strategies.empty()) throw ConfigError("plan: at least one strategy is required");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (strategies[i] == strategies[j]) {
        throw ConfigError(fmt::format("plan: strategy '{}' listed twice", to_string(strategies[i])));
      }
    }
  }
  if (replications < 1) throw ConfigError("plan: replications must be >= 1");
  if (tournament_reps < 1) throw ConfigError("plan: tournament_reps must be >= 1");
}

std::string ExperimentPlan::canonical_text() const {
  std::string names;
  for (Strategy s : strategies) {
    if (!names.empty()) names += ", ";
    names += to_string(s);
  }
  RunConfig template_config = base;
  template_config.strategy = strategies.empty() ? base.strategy : strategies.front();
  return to_canonical_text(template_config) +
         fmt::format("strategies = {}\nreplications = {}\ntournament_reps = {}\n", names,
                     replications, tournament_reps);
}

std::string ExperimentPlan::hash() const { return format_hash(fnv1a64(canonical_text())); }

RunConfig ExperimentPlan::run_config(Strategy strategy, int replication) const {
  RunConfig c = base;
  c.strategy = strategy;
  c.master_seed = derive_seed(base.master_seed,
                              {seed_domain::kReplication, static_cast<std::uint64_t>(replication)});
  return c;
}

ExperimentPlan plan_from(const KeyValues& kv) {
  const auto schema = run_config_schema();
  for (const auto& [key, value] : kv) {
    const bool known =
        std::any_of(schema.begin(), schema.end(), [&](const ConfigKey& k) { return k.key == key; }) ||
        std::find(std::begin(kPlanKeys), std::end(kPlanKeys), key) != std::end(kPlanKeys);
    if (!known) throw ConfigError(fmt::format("plan: unknown key '{}'", key));
  }
  ExperimentPlan plan;
  plan.base = run_config_from(kv);
  if (auto it = kv.find("strategies"); it != kv.end()) {
    plan.strategies = parse_strategies(it->second);
  } else {
    plan.strategies = {plan.base.strategy};
  }
  if (auto it = kv.find("replications"); it != kv.end()) {
    plan.replications = parse_count("replications", it->second);
  }
  if (auto it = kv.find("tournament_reps"); it != kv.end()) {
    plan.tournament_reps = parse_count("tournament_reps", it->second);
  }
  plan.validate();
  return plan;
}

ExperimentPlan read_plan(const std::filesystem::path& path) {
  return plan_from(read_key_value_file(path.string()));
}

std::filesystem::path run_dir(const std::filesystem::path& root, Strategy strategy, int replication) {
  return root / "runs" / std::string(to_string(strategy)) / fmt::format("rep{}", replication);
}

std::string run_label(Strategy strategy, int replication) {
  return fmt::format("{}/r{}", to_string(strategy), replication);
}

}  // namespace gameqd

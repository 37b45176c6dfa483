#include "gameqd/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "gameqd/errors.hpp"

namespace gameqd {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("key '{}': cannot parse '{}' as a number", key, value));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(fmt::format("key '{}': expected true/false, got '{}'", key, value));
}

struct Field {
  ConfigKey key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Member>
Field int_field(std::string_view key, std::string_view help, Member member) {
  return {{key, help},
          [member, key](RunConfig& c, std::string_view v) { member(c) = parse_number<int>(key, v); },
          [member](const RunConfig& c) { return fmt::format("{}", member(c)); }};
}

template <typename Member>
Field real_field(std::string_view key, std::string_view help, Member member) {
  return {{key, help},
          [member, key](RunConfig& c, std::string_view v) {
            member(c) = parse_number<double>(key, v);
          },
          [member](const RunConfig& c) { return fmt::format("{}", member(c)); }};
}

#define GAMEQD_MEMBER(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {{"env", "environment: pong | cat_mouse | pursuit"},
       [](RunConfig& c, std::string_view v) { c.env = env_from_string(v); },
       [](const RunConfig& c) { return std::string(to_string(c.env)); }},
      {{"strategy", "task selection: behavior | random | ranking | pareto"},
       [](RunConfig& c, std::string_view v) { c.strategy = strategy_from_string(v); },
       [](const RunConfig& c) { return std::string(to_string(c.strategy)); }},
      {{"master_seed", "64-bit master seed (mandatory)"},
       [](RunConfig& c, std::string_view v) {
         c.master_seed = parse_number<std::uint64_t>("master_seed", v);
       },
       [](const RunConfig& c) { return fmt::format("{}", c.master_seed); }},
      int_field("n_gen", "number of generations", GAMEQD_MEMBER(n_gen)),
      int_field("n_task", "tasks per generation", GAMEQD_MEMBER(n_task)),
      int_field("n_cell", "cells per task archive", GAMEQD_MEMBER(n_cell)),
      int_field("n_budget", "evaluations per generation (before equalization)",
                GAMEQD_MEMBER(n_budget)),
      {{"n_init", "random candidates before mutation starts (default min(10*n_task, n_task*n_cell/2))"},
       [](RunConfig& c, std::string_view v) {
         if (v == "auto") {
           c.n_init.reset();
         } else {
           c.n_init = parse_number<int>("n_init", v);
         }
       },
       [](const RunConfig& c) {
         return c.n_init ? fmt::format("{}", *c.n_init) : std::string("auto");
       }},
      int_field("batch_size", "candidates generated per archive snapshot", GAMEQD_MEMBER(batch_size)),
      real_field("mutation_rate", "fraction of parameters perturbed", GAMEQD_MEMBER(mutation_rate)),
      real_field("mutation_sigma", "std-dev of the Gaussian perturbation",
                 GAMEQD_MEMBER(mutation_sigma)),
      int_field("backup_cap", "max backup entries per archive cell", GAMEQD_MEMBER(backup_cap)),
      {{"equalize_budget", "give behavior/random the tournament budget as extra loop evaluations"},
       [](RunConfig& c, std::string_view v) { c.equalize_budget = parse_bool("equalize_budget", v); },
       [](const RunConfig& c) { return std::string(c.equalize_budget ? "true" : "false"); }},
      real_field("pong.paddle_height", "paddle height (arena units)",
                 GAMEQD_MEMBER(env_params.pong.paddle_height)),
      real_field("pong.paddle_left_x", "left paddle x", GAMEQD_MEMBER(env_params.pong.paddle_left_x)),
      real_field("pong.paddle_right_x", "right paddle x",
                 GAMEQD_MEMBER(env_params.pong.paddle_right_x)),
      real_field("pong.ball_radius", "ball radius", GAMEQD_MEMBER(env_params.pong.ball_radius)),
      real_field("pong.ball_speed", "serve speed per step", GAMEQD_MEMBER(env_params.pong.ball_speed)),
      real_field("pong.paddle_speed", "paddle speed per step at full action",
                 GAMEQD_MEMBER(env_params.pong.paddle_speed)),
      real_field("pong.speedup", "ball speed factor per rebound", GAMEQD_MEMBER(env_params.pong.speedup)),
      real_field("pong.serve_half_angle_deg", "serve angle half-range (degrees)",
                 GAMEQD_MEMBER(env_params.pong.serve_half_angle_deg)),
      real_field("pong.velocity_norm", "velocity observation divisor",
                 GAMEQD_MEMBER(env_params.pong.velocity_norm)),
      int_field("pong.steps", "steps per duel", GAMEQD_MEMBER(env_params.pong.steps)),
      real_field("cat_mouse.cat_speed", "cat speed (m/s)", GAMEQD_MEMBER(env_params.cat_mouse.cat_speed)),
      real_field("cat_mouse.mouse_speed", "mouse speed (m/s)",
                 GAMEQD_MEMBER(env_params.cat_mouse.mouse_speed)),
      real_field("cat_mouse.cat_turn_rate", "cat max turn rate (rad/s)",
                 GAMEQD_MEMBER(env_params.cat_mouse.cat_turn_rate)),
      real_field("cat_mouse.d_init", "initial cat-mouse distance (m)",
                 GAMEQD_MEMBER(env_params.cat_mouse.d_init)),
      real_field("cat_mouse.d_thresh", "capture distance (m)", GAMEQD_MEMBER(env_params.cat_mouse.d_thresh)),
      real_field("cat_mouse.dt", "timestep (s)", GAMEQD_MEMBER(env_params.cat_mouse.dt)),
      int_field("cat_mouse.steps", "steps per duel", GAMEQD_MEMBER(env_params.cat_mouse.steps)),
      real_field("cat_mouse.position_scale", "observation divisor and raster half-width (m)",
                 GAMEQD_MEMBER(env_params.cat_mouse.position_scale)),
      real_field("pursuit.arena_half", "arena half-width (m)", GAMEQD_MEMBER(env_params.pursuit.arena_half)),
      real_field("pursuit.disc_radius", "central obstacle radius (m)",
                 GAMEQD_MEMBER(env_params.pursuit.disc_radius)),
      real_field("pursuit.speed", "agent speed (m/s)", GAMEQD_MEMBER(env_params.pursuit.speed)),
      real_field("pursuit.d_thresh", "capture distance (m)", GAMEQD_MEMBER(env_params.pursuit.d_thresh)),
      real_field("pursuit.dt", "timestep (s)", GAMEQD_MEMBER(env_params.pursuit.dt)),
      int_field("pursuit.steps", "steps per duel", GAMEQD_MEMBER(env_params.pursuit.steps)),
      real_field("pursuit.spawn_inner_x", "spawn band inner edge (m)",
                 GAMEQD_MEMBER(env_params.pursuit.spawn_inner_x)),
  };
  return table;
}

#undef GAMEQD_MEMBER

}  // namespace

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::kBehavior: return "behavior";
    case Strategy::kRandom: return "random";
    case Strategy::kRanking: return "ranking";
    case Strategy::kPareto: return "pareto";
  }
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("invalid config: " + msg); };
  if (n_gen < 1) fail("n_gen must be >= 1");
  if (n_task < 2) fail("n_task must be >= 2");
  if (n_cell < 2) fail("n_cell must be >= 2");
  if (n_budget < 0) fail("n_budget must be >= 0");
  if (effective_n_init() < 0 || n_budget < effective_n_init()) fail("n_budget must be >= n_init");
  if (effective_n_init() > n_task * n_cell) {
    fail(fmt::format("n_init ({}) exceeds the elite capacity n_task*n_cell ({}), so mutation never "
                     "starts",
                     effective_n_init(), n_task * n_cell));
  }
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (!(mutation_rate > 0.0 && mutation_rate <= 1.0)) fail("mutation_rate must lie in (0, 1]");
  if (!(mutation_sigma > 0.0)) fail("mutation_sigma must be > 0");
  if (backup_cap < 2) fail("backup_cap must be >= 2");
  const auto& cm = env_params.cat_mouse;
  if (cm.d_init <= cm.d_thresh) fail("cat_mouse.d_init must exceed cat_mouse.d_thresh");
  if (cm.steps < 1 || cm.dt <= 0.0) fail("cat_mouse.steps and cat_mouse.dt must be positive");
  const auto& pe = env_params.pursuit;
  if (pe.steps < 1 || pe.dt <= 0.0) fail("pursuit.steps and pursuit.dt must be positive");
  if (pe.disc_radius >= pe.spawn_inner_x || pe.spawn_inner_x >= pe.arena_half)
    fail("pursuit spawn band must lie between the disc and the arena edge");
  if (env_params.pong.steps < 1) fail("pong.steps must be positive");
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    std::string_view key = trim(view.substr(0, eq));
    std::string_view value = view.substr(eq + 1);
    if (const auto hash = value.find('#'); hash != std::string_view::npos) value = value.substr(0, hash);
    value = trim(value);
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    kv.insert_or_assign(std::string(key), std::string(value));
  }
  return kv;
}

KeyValues read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in);
}

std::span<const ConfigKey> run_config_schema() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& f : fields()) out.push_back(f.key);
    return out;
  }();
  return keys;
}

void apply_run_config_key(RunConfig& config, std::string_view key, std::string_view value) {
  for (const auto& f : fields()) {
    if (f.key.key == key) {
      f.set(config, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

RunConfig run_config_from(const KeyValues& kv, bool require_seed) {
  if (require_seed && !kv.contains("master_seed")) {
    throw ConfigError("config must set master_seed explicitly");
  }
  RunConfig config;
  for (const auto& f : fields()) {
    if (auto it = kv.find(f.key.key); it != kv.end()) f.set(config, it->second);
  }
  return config;
}

KeyValues to_key_values(const RunConfig& config) {
  KeyValues kv;
  for (const auto& f : fields()) kv.emplace(std::string(f.key.key), f.get(config));
  return kv;
}

std::string to_canonical_text(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += fmt::format("{} = {}\n", f.key.key, f.get(config));
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_hash(std::uint64_t hash) { return fmt::format("{:016x}", hash); }

std::string config_hash(const RunConfig& config) {
  return format_hash(fnv1a64(to_canonical_text(config)));
}

}  // namespace gameqd

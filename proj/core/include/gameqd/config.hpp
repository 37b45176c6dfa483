#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gameqd/types.hpp"

namespace gameqd {

enum class Strategy : std::uint8_t { kBehavior = 0, kRandom = 1, kRanking = 2, kPareto = 3 };

std::string_view to_string(Strategy s) noexcept;
Strategy strategy_from_string(std::string_view name);

inline constexpr Strategy kAllStrategies[] = {Strategy::kRanking, Strategy::kPareto,
                                              Strategy::kBehavior, Strategy::kRandom};

struct PongParams {
  double paddle_height = 0.2;
  double paddle_left_x = 0.02;
  double paddle_right_x = 0.98;
  double ball_radius = 0.01;
  double ball_speed = 0.01;     // arena units per step at serve
  double paddle_speed = 0.02;   // arena units per step at full action
  double speedup = 1.05;        // per successful rebound
  double serve_half_angle_deg = 45.0;
  double velocity_norm = 0.05;  // velocity observations are divided by this, then clamped
  int steps = 1000;
};

struct CatMouseParams {
  double cat_speed = 2.0;
  double mouse_speed = 1.0;
  double cat_turn_rate = 2.0;   // rad/s at full action
  double d_init = 2.0;
  double d_thresh = 0.2;
  double dt = 0.01;
  int steps = 500;
  double position_scale = 5.0;  // observation divisor and raster half-width
};

struct PursuitParams {
  double arena_half = 1.0;
  double disc_radius = 0.3;
  double speed = 1.0;
  double d_thresh = 0.15;
  double dt = 0.01;
  int steps = 500;
  double spawn_inner_x = 0.4;   // pursuers spawn at x <= -inner, evaders at x >= inner
};

struct EnvParams {
  PongParams pong;
  CatMouseParams cat_mouse;
  PursuitParams pursuit;
};

struct RunConfig {
  EnvId env = EnvId::kCatMouse;
  Strategy strategy = Strategy::kRanking;
  std::uint64_t master_seed = 0;
  int n_gen = 4;
  int n_task = 8;
  int n_cell = 5;
  int n_budget = 2000;
  std::optional<int> n_init;  // defaults to min(10 * n_task, n_task * n_cell / 2)
  int batch_size = 1;
  double mutation_rate = 0.3;
  double mutation_sigma = 0.1;
  int backup_cap = 32;
  bool equalize_budget = true;
  EnvParams env_params;

  int effective_n_init() const noexcept {
    return n_init.value_or(std::min(10 * n_task, n_task * n_cell / 2));
  }

  // Throws ConfigError on violated invariants.
  void validate() const;
};

// Flat `key = value` document. Lines starting with '#' are comments.
using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_value_file(const std::string& path);

// Every RunConfig field has a key; the schema lists them in canonical order.
struct ConfigKey {
  std::string_view key;
  std::string_view help;
};
std::span<const ConfigKey> run_config_schema();

// Applies recognised keys; unknown keys are ignored so plan files can carry
// extra entries. `require_seed` enforces that master_seed is present.
RunConfig run_config_from(const KeyValues& kv, bool require_seed = true);
void apply_run_config_key(RunConfig& config, std::string_view key, std::string_view value);

KeyValues to_key_values(const RunConfig& config);

// Canonical `key = value` rendering, stable across runs and platforms.
std::string to_canonical_text(const RunConfig& config);

// 64-bit FNV-1a of a byte string, printed as 16 hex digits by format_hash.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string format_hash(std::uint64_t hash);

std::string config_hash(const RunConfig& config);

}  // namespace gameqd

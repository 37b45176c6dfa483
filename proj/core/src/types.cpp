#include "gameqd/types.hpp"

#include <algorithm>
#include <cmath>

#include "gameqd/errors.hpp"
#include "gameqd/mlp.hpp"

namespace gameqd {

std::string_view to_string(Side s) noexcept { return s == Side::kRed ? "red" : "blue"; }

Side side_from_string(std::string_view name) {
  if (name == "red") return Side::kRed;
  if (name == "blue") return Side::kBlue;
  throw ConfigError("unknown side '" + std::string(name) + "'");
}

std::string_view to_string(EnvId env) noexcept {
  switch (env) {
    case EnvId::kPong: return "pong";
    case EnvId::kCatMouse: return "cat_mouse";
    case EnvId::kPursuit: return "pursuit";
  }
  return "unknown";
}

EnvId env_from_string(std::string_view name) {
  if (name == "pong") return EnvId::kPong;
  if (name == "cat_mouse") return EnvId::kCatMouse;
  if (name == "pursuit") return EnvId::kPursuit;
  throw ConfigError("unknown environment '" + std::string(name) + "'");
}

PolicyShape policy_shape(EnvId env, Side /*side*/) {
  switch (env) {
    case EnvId::kPong: return {6, 1};
    case EnvId::kCatMouse: return {5, 1};
    case EnvId::kPursuit: return {11, 1};
  }
  throw ConfigError("unknown environment id");
}

Genome::Genome(Side side, EnvId env, std::vector<double> params) : side_(side), env_(env) {
  const std::size_t expected = genome_dim(env, side);
  if (params.size() != expected) {
    throw ConfigError("genome for " + std::string(to_string(env)) + " needs " +
                      std::to_string(expected) + " parameters, got " +
                      std::to_string(params.size()));
  }
  if (!std::all_of(params.begin(), params.end(), [](double v) { return std::isfinite(v); })) {
    throw ConfigError("genome contains non-finite parameters");
  }
  params_ = std::make_shared<const std::vector<double>>(std::move(params));
}

bool operator==(const Genome& a, const Genome& b) noexcept {
  return a.side_ == b.side_ && a.env_ == b.env_ &&
         (a.params_ == b.params_ || *a.params_ == *b.params_);
}

BehaviorDescriptor::BehaviorDescriptor(std::vector<double> values)
    : values_(std::make_shared<const std::vector<double>>(std::move(values))) {}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::string_view role_name(EnvId env, Side side) noexcept {
  const bool red = side == Side::kRed;
  switch (env) {
    case EnvId::kPong: return red ? "left" : "right";
    case EnvId::kCatMouse: return red ? "cat" : "mouse";
    case EnvId::kPursuit: return red ? "pursuers" : "evaders";
  }
  return red ? "red" : "blue";
}

}  // namespace gameqd

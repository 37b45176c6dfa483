#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gameqd {

enum class Side : std::uint8_t { kRed = 0, kBlue = 1 };

constexpr Side opposite(Side s) noexcept {
  return s == Side::kRed ? Side::kBlue : Side::kRed;
}

std::string_view to_string(Side s) noexcept;
Side side_from_string(std::string_view name);

enum class EnvId : std::uint8_t { kPong = 0, kCatMouse = 1, kPursuit = 2 };

std::string_view to_string(EnvId env) noexcept;
EnvId env_from_string(std::string_view name);

// Player name of a side in an environment ("cat", "mouse", ...).
std::string_view role_name(EnvId env, Side side) noexcept;

// Observation and action sizes seen by one side's policy.
struct PolicyShape {
  std::size_t inputs;
  std::size_t actions;
};

PolicyShape policy_shape(EnvId env, Side side);

// Fitness of one duel. The two components always sum to one.
struct FitnessPair {
  double red = 0.5;
  double blue = 0.5;

  static FitnessPair from_red(double f_red) noexcept { return {f_red, 1.0 - f_red}; }
  static FitnessPair from_side(Side side, double f) noexcept {
    return side == Side::kRed ? from_red(f) : from_red(1.0 - f);
  }
  double of(Side side) const noexcept { return side == Side::kRed ? red : blue; }
};

// Flat parameter vector of a fixed-topology policy. Immutable once built, so
// copies share storage.
class Genome {
 public:
  Genome(Side side, EnvId env, std::vector<double> params);

  Side side() const noexcept { return side_; }
  EnvId env() const noexcept { return env_; }
  std::span<const double> params() const noexcept { return *params_; }
  std::size_t size() const noexcept { return params_->size(); }

  friend bool operator==(const Genome& a, const Genome& b) noexcept;

 private:
  Side side_;
  EnvId env_;
  std::shared_ptr<const std::vector<double>> params_;
};

// Fixed-length descriptor of how a duel unfolded. Entries lie in [0, 1].
class BehaviorDescriptor {
 public:
  BehaviorDescriptor() : values_(std::make_shared<const std::vector<double>>()) {}
  explicit BehaviorDescriptor(std::vector<double> values);

  std::span<const double> values() const noexcept { return *values_; }
  std::size_t size() const noexcept { return values_->size(); }
  double operator[](std::size_t i) const noexcept { return (*values_)[i]; }

  friend bool operator==(const BehaviorDescriptor& a, const BehaviorDescriptor& b) noexcept {
    return *a.values_ == *b.values_;
  }

 private:
  std::shared_ptr<const std::vector<double>> values_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace gameqd

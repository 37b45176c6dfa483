#pragma once

#include <stdexcept>
#include <string>

namespace gameqd {

// Base for every error raised by the library. The CLI maps subclasses onto
// process exit codes (usage/config 2, data integrity 3, evaluation 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class DataIntegrityError : public Error {
 public:
  using Error::Error;
};

// A duel produced a non-finite state. Carries enough context to replay it.
class EvaluationError : public Error {
 public:
  EvaluationError(std::string environment, int timestep, const std::string& what)
      : Error(what), environment_(std::move(environment)), timestep_(timestep) {}

  const std::string& environment() const noexcept { return environment_; }
  int timestep() const noexcept { return timestep_; }

 private:
  std::string environment_;
  int timestep_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDataIntegrity = 3;
inline constexpr int kExitEvaluation = 4;

inline int exit_code_of(const std::exception& e) noexcept {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const ConfigError*>(&e)) return kExitUsage;
  if (dynamic_cast<const DataIntegrityError*>(&e)) return kExitDataIntegrity;
  return kExitEvaluation;
}

}  // namespace gameqd

#pragma once

#include <stdexcept>
#include <string>

namespace tcsim {

/// Invalid or inconsistent configuration (bad parameter, bad file, schema
/// violation). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario-level misuse (step index out of range, misaligned traces).
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical solver failed to converge. Maps to CLI exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// State estimator lost a required invariant (covariance no longer SPD).
class FilterError : public std::runtime_error {
 public:
  explicit FilterError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an interface contract (e.g. authority weights not summing
/// to one).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error(what) {}
};

/// Vehicle spacing reached zero; the simulation records a collision event.
class CollisionError : public std::runtime_error {
 public:
  explicit CollisionError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Filesystem failure while writing outputs. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcsim

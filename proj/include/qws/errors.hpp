#pragma once

#include <stdexcept>
#include <string>

namespace qws {

// Error taxonomy used across the library. The CLI maps these to exit codes:
// ScenarioError -> 2, SolverError -> 3, ToleranceError -> 4.
struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a finite-difference or scan step is too coarse to track a phase
// (per-step change too close to pi for the branch to be trusted).
struct AliasingError : SolverError {
  explicit AliasingError(const std::string& what) : SolverError(what) {}
};

struct ToleranceError : std::runtime_error {
  explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qws

#pragma once

#include <stdexcept>
#include <string>

namespace indextrack {

/// Unusable input: malformed CSV, missing file, invalid configuration value.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Irrecoverable failure inside an iterative routine: non-finite iterates,
/// an eigenvalue estimate that never settles, or a simulation that cannot
/// continue (fees exceeding capital).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace indextrack

#pragma once

#include <stdexcept>
#include <string>

namespace purity {

/// Process exit codes used by the command line tool.
enum class ExitCode : int {
  ok = 0,
  validation = 2,
  capacity = 3,
  numerical = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Bad arguments: out-of-range sites, odd n where even is required, malformed text.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::validation, what) {}
};

/// A size guard was exceeded (basis cap, 2^n memory guard, state-vector limit).
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ExitCode::capacity, what) {}
};

/// An iterative numerical procedure failed to converge or bracket a root.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

}  // namespace purity

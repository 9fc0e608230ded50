#pragma once

#include <stdexcept>
#include <string>

namespace ossched {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed instance document or an instance violating its invariants.
// `path()` points at the offending field, e.g. "jobs[1].ops[0].family".
class InstanceError : public Error {
 public:
  InstanceError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Not a bijection onto the instance's operations (unknown, duplicate or
// missing entries).
class MalformedScheduleError : public Error {
 public:
  using Error::Error;
};

// A one-time-setup schedule that runs a job before one of its setups.
class InfeasibleScheduleError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Raised by exhaustive searches and by the K! solver when the instance is
// too large for the configured limit.
class GuardExceededError : public Error {
 public:
  using Error::Error;
};

// Input to the reduction does not have the required special-case shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ossched

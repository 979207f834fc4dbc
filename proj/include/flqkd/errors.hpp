#pragma once

#include <stdexcept>
#include <string>

namespace flqkd {

enum class ErrorKind {
  Validation,          // malformed input (non-symmetric matrix, bad config value)
  Domain,              // argument outside the mathematical domain of an operation
  Unphysical,          // covariance violates the uncertainty relation
  EstimatorUndefined,  // monitor counts carry no excess coincidences at Alice's tap
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace flqkd

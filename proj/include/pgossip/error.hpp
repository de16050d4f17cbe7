#pragma once

#include <stdexcept>
#include <string>

namespace pgossip {

enum class ErrorCode {
  argument,
  unsupported_parameter,
  contract_violation,
  size,
  undefined_value,
  non_convergence,
};

/// Base exception for every failure raised by the library. The code maps
/// one-to-one onto the status values of the C interface.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pgossip

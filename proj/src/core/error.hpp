#pragma once

#include <stdexcept>
#include <string>

namespace intercept {

enum class ErrorKind {
  Parse,
  Schema,
  Validation,
  Range,
  Argument,
  Layout,
  Render,
  NotFound,
  UndefinedMeasure,
  Io,
};

// All failures raised by the core carry a kind so the C boundary can map
// them onto stable status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace intercept

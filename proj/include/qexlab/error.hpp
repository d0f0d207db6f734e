#pragma once

#include <stdexcept>
#include <string>

namespace qexlab {

/// Broad failure categories. The CLI maps invalid_input, precondition and
/// unsupported to exit code 1, numerical and verification to exit code 2.
enum class ErrorKind {
  invalid_input,
  precondition,
  numerical,
  verification,
  unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace qexlab

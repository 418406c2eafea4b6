#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace interp {

/// Base class for every error raised by the library. The message is prefixed
/// with the name of the module that raised it, e.g. "topology: ...".
class Error : public std::runtime_error {
 public:
  Error(std::string_view module, std::string_view what);

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// A caller-side contract was violated (bad argument, malformed input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A well-formed request could not be completed (budget exceeded,
/// disconnected graph, empty projection, ...).
class RuntimeFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace interp

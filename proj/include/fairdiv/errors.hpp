#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index, length or consistency contract was broken by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An operation was given an instance of the wrong utility representation.
class WrongUtilityKind : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would be too large to run.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `path()` names the offending location when known
/// (a JSON pointer, or "line N" for DIMACS).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message, std::string path = {})
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A construction precondition does not hold (e.g. an assignment that does
/// not satisfy the formula it is supposed to satisfy).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairdiv

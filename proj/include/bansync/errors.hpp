#pragma once

#include <stdexcept>
#include <string>

namespace bansync {

/// Raised for malformed user input: bad syntax, bad indices, bad sizes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A network file or expression failed to parse. Line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
  int line_;
  int column_;
};

/// The requested analysis would exceed a configured size ceiling.
class SizeCeilingError : public InputError {
 public:
  SizeCeilingError(const std::string& what, int size, int limit);

  int size() const noexcept { return size_; }
  int limit() const noexcept { return limit_; }

 private:
  int size_;
  int limit_;
};

/// A pair of configurations is not an elementary transition of the network,
/// or not of the kind an operation expects.
class InvalidTransitionError : public InputError {
 public:
  using InputError::InputError;
};

/// The operation relies on arc signs but some arc is non-monotone.
class NonMonotoneNetworkError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A structural precondition of a check does not hold for this network.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The block decomposition produced a step that is not a transition.
/// Never expected on monotone networks.
class StepInvalidError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bansync

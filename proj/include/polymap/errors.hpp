#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polymap {

/// Malformed polynomial or session text. `position()` is a 0-based offset
/// into the input (or a line number for session files, see cli/session.hpp).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Two operands live in different variable contexts.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its mathematical preconditions
/// (e.g. a non-dominant map passed to extend()).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised from inside long computations once cancellation was requested.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("computation cancelled") {}
};

/// A certificate failed its exact re-check. Always an engine defect.
class CertificateFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polymap

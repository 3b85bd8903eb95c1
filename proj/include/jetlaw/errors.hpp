#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetlaw {

/// Malformed expression text. `position()` is the 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Integrand outside the class handled by closed-form integration.
class UnsupportedIntegrand : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An expression mentions symbols or dependent variables foreign to its frame.
class FrameMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The divergence of a current does not vanish on solutions.
class NotConserved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant, i.e. a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace jetlaw

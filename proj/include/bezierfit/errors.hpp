#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bezierfit {

// Parameter outside its admissible range (e.g. a curve parameter outside [0,1]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A chord or segment whose endpoints coincide.
class DegenerateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input that violates an operation's precondition (too short, open loop, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The closed-form control point solve has a vanishing denominator.
class SingularParameterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed file or document. `offset` is a byte offset when one is known.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what, std::size_t offset = npos)
        : std::runtime_error(offset == npos ? what : what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Internal mismatch between related data (e.g. a spline and the contour it claims to cover).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bezierfit

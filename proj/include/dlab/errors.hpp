#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

/// Invalid input: bad denominator, dimension mismatch, parameters outside
/// an operation's precondition. CLI exit code 2.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A finite computation ran out of horizon: a continued-fraction prefix too
/// short, a digit cap hit, no bracket decision available. CLI exit code 3.
class HorizonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical guarantee failed to hold on a concrete input. This is
/// always a bug signal, never a mathematical outcome. CLI exit code 4.
class InvariantViolation : public std::logic_error {
public:
    InvariantViolation(const std::string& kind, const std::string& detail)
        : std::logic_error(kind + ": " + detail), kind_(kind) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

}  // namespace dlab

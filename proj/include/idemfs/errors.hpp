#pragma once

#include <stdexcept>
#include <string>

namespace idemfs {

/// Argument outside the domain of an operation (a level outside [0,1],
/// an empty point set, mismatched spaces).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A structurally well-formed object that breaks one of its invariants.
class ValidationError : public std::runtime_error {
public:
    enum class Kind { weight, not_contraction, coverage, metric, saturation, tnorm_axiom };

    ValidationError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// An enumeration would exceed its work budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or density file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace idemfs

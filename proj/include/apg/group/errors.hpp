#pragma once

#include <stdexcept>
#include <string>

namespace apg {

/// Two point sets live in different ambient groups.
class AmbientMismatch : public std::invalid_argument {
public:
    explicit AmbientMismatch(const std::string& a, const std::string& b)
        : std::invalid_argument("ambient mismatch: " + a + " vs " + b) {}
};

/// A set expected to be symmetric is not; carries the offending element.
class NotSymmetric : public std::runtime_error {
public:
    explicit NotSymmetric(std::string witness)
        : std::runtime_error("not symmetric: inverse of " + witness + " missing"), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Greedy covering found an element with no admissible translate. This means
/// the truncation is too small for the requested region.
class Uncoverable : public std::runtime_error {
public:
    explicit Uncoverable(std::string witness)
        : std::runtime_error("uncoverable: no admissible translate for " + witness), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Free-set construction was handed a constraint set containing the identity.
class ContainsIdentity : public std::invalid_argument {
public:
    ContainsIdentity() : std::invalid_argument("X contains identity") {}
};

}  // namespace apg

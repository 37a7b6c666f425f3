#pragma once

#include <stdexcept>
#include <string>

namespace extrobin {

/// Argument outside the mathematical domain of an operation (x <= 0, d < 2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative evaluation did not reach its tolerance. Carries the last iterate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

/// Invalid geometry: irregular parametrization, self-intersection, overlap, pole defects.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A curve or body that is required to be convex is not.
class ConvexityError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Operation called on an object in the wrong state (e.g. eigenfunction of a non-discrete spectrum).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Shape-file parse failure; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Internal invariant broken (a bracket that should exist does not, a solver that should not fail did).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace extrobin

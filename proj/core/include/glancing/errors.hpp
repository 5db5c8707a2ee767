#pragma once

#include <stdexcept>
#include <string>

namespace glancing {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Span refinement budget exhausted before successive probabilities agreed.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The adaptive step controller could not meet the requested tolerances.
class ToleranceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Richardson extrapolation toward a zero point did not settle.
class NonSimpleZero : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tunneling-branch Stokes constant has a negative radicand.
class BranchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adiabatic geometry where t_b, t_t and t_0 coincide (or d^2 = 1).
class DegenerateGeometry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Extremum of an adiabatic curve could not be located on the interval.
class BracketingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sweep table lacks a column required by the comparison.
class MissingColumn : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a sweep table failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace glancing

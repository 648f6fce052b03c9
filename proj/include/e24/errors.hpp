#pragma once

#include <stdexcept>
#include <string>

namespace e24 {

/// Base class for all library-specific failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A coordinate fell outside the declared parameter interval.
struct DomainError : Error {
    using Error::Error;
};

/// Radius of a quadric must be strictly positive.
struct NonPositiveRadius : Error {
    using Error::Error;
};

/// A normal-frame denominator vanished: the tangent plane contains a null
/// direction and the closed-form frame has no meaning there.
struct DegenerateFrame : Error {
    using Error::Error;
};

/// A metric coefficient vanished (coordinate axis reached, or the profile
/// tangent turned null).
struct DegenerateMetric : Error {
    using Error::Error;
};

/// The velocity components cannot be represented in the family's
/// hyperbolic-trigonometric angle chart.
struct DecompositionOutOfRange : Error {
    using Error::Error;
};

/// The quadrature radicand is negative: a turning point or a region the
/// printed slope expression only reaches through an imaginary factor.
struct ImaginarySlope : Error {
    using Error::Error;
};

}  // namespace e24

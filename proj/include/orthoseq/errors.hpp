#pragma once

#include <stdexcept>
#include <string>

namespace orthoseq {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix or operator failed its orthogonality check. Carries the
/// worst Gram residual |M^T M - I| observed.
class NotOrthogonal : public Error {
public:
    NotOrthogonal(const std::string& what, double residual)
        : Error(what + " (gram residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Point is not in the open hemisphere of the requested chart.
class OutsideChart : public Error {
public:
    using Error::Error;
};

/// Disc coordinate has norm too close to (or beyond) 1.
class OutsideDisc : public Error {
public:
    using Error::Error;
};

/// Disc coordinate has a nonzero component along the chart pole.
class NonzeroPoleComponent : public Error {
public:
    using Error::Error;
};

/// The convex-combination denominator in the first homotopy vanished.
/// Never expected for unit-norm inputs; signals a model violation.
class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

/// The two sphere points defining a swapping reflection coincide.
class DegeneratePair : public Error {
public:
    using Error::Error;
};

/// A trivialization fibre matrix failed validation.
class InvalidFibre : public Error {
public:
    using Error::Error;
};

/// A vector required to be unit norm is not.
class NotUnit : public Error {
public:
    using Error::Error;
};

/// An operation needed a reflection-word-backed element but none was attached.
class WordRequired : public Error {
public:
    using Error::Error;
};

}  // namespace orthoseq

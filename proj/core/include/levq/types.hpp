#ifndef LEVQ_TYPES_HPP
#define LEVQ_TYPES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace levq {

using Real = double;
using Complex = std::complex<double>;

inline constexpr Real pi = 3.14159265358979323846;

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid model/operation parameters; message names the violated constraint.
struct ParameterError : Error {
    using Error::Error;
};

// Model family is recognized but not supported (e.g. driftless Variance Gamma).
struct UnsupportedModelError : Error {
    using Error::Error;
};

// Evaluation produced a non-finite value, usually a mis-configured contour.
struct NumericError : Error {
    using Error::Error;
};

// Requested tolerance cannot be met within the analyticity constraints.
struct AccuracyError : Error {
    Real best_estimate;
    AccuracyError(const std::string& msg, Real best)
        : Error(msg), best_estimate(best) {}
};

// Joint deformation of the Laplace and Fourier contours failed;
// callers should fall back to the real-axis (GWR) Laplace backend.
struct DeformationError : Error {
    using Error::Error;
};

// The complex logarithm crossed its cut between adjacent quadrature nodes.
struct BranchCutError : Error {
    using Error::Error;
};

// Wynn rho table hit a (near-)zero denominator; carries the best partial result.
struct ExtrapolationError : Error {
    Real partial;
    ExtrapolationError(const std::string& msg, Real p) : Error(msg), partial(p) {}
};

// Quantile table failed its monotonicity checks after construction.
struct TableError : Error {
    std::vector<std::size_t> offending;
    TableError(const std::string& msg, std::vector<std::size_t> idx)
        : Error(msg), offending(std::move(idx)) {}
};

// A (u1,u2) sample fell outside every rectangle of the tail partition.
struct CoverageError : Error {
    using Error::Error;
};

// Conditioning density underflowed; the conditional law is degenerate.
struct ConditioningError : Error {
    using Error::Error;
};

// Quantile solve failed to bracket or converge; message carries diagnostics.
struct QuantileError : Error {
    using Error::Error;
};

}  // namespace levq

#endif

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace abelkernel {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;

/// Thrown when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine cannot deliver its result
/// (eigen-solver failure, tolerance unreachable within the allowed order).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// e^{2 pi i t}, with the argument reduced to [-1/2, 1/2) first and
/// quarter-turns returned exactly.
cplx unit_phase(double t) noexcept;

} // namespace abelkernel

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "abelkernel/coeff.hpp"

namespace abelkernel {

/// A point of the open unit disc with |z| <= 1 - 1e-9.
class DiscPoint {
public:
    explicit DiscPoint(cplx z);
    DiscPoint(double re, double im) : DiscPoint(cplx{re, im}) {}

    cplx value() const noexcept { return z_; }
    double modulus() const noexcept { return std::abs(z_); }
    DiscPoint conjugated() const { return DiscPoint(std::conj(z_)); }

    static constexpr double kMaxModulus = 1.0 - 1e-9;

private:
    cplx z_;
};

/// (z^n)_{n=0..N} together with the l^2 norm of the discarded tail.
struct DiscVector {
    DiscPoint base;
    SeqVector entries;
    double tail_bound = 0.0;
};

DiscVector disc_vector(DiscPoint z, std::size_t N);

/// l^2 norm of the full (untruncated) vector (z^n)_n.
double geometric_norm(DiscPoint z) noexcept;

/// A finite linear combination sum_j alpha_j (z_j^n)_n, i.e. an element of
/// the span of geometric vectors.
class VElement {
public:
    struct Term {
        cplx alpha;
        DiscPoint z;
    };

    VElement() = default;
    explicit VElement(std::vector<Term> terms) : terms_(std::move(terms)) {}
    static VElement single(DiscPoint z, cplx alpha = 1.0) { return VElement({Term{alpha, z}}); }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    VElement conjugated() const;

    /// First `length` entries.
    SeqVector materialize(std::size_t length) const;
    /// Bound on the l^2 norm of the entries from index `length` on.
    double tail_bound(std::size_t length) const noexcept;
    /// Smallest length L <= order with norm_bound * tail_bound(L) <= tol,
    /// or `order` itself (exact for a matrix truncated there), capped at max_len.
    std::size_t certified_length(std::size_t order, double norm_bound, double tol, std::size_t max_len) const;

private:
    std::vector<Term> terms_;
};

struct KernelValue {
    cplx value;
    /// Upper bound on |K_C(w, z) - value|.
    double error_bound = 0.0;
    /// Highest power of w and z used.
    std::size_t degree = 0;
};

inline constexpr std::size_t kDefaultKernelMaxN = 4096;

/// K_C(w, z) = <C z, w> = sum c_{mn} conj(w)^m z^n, truncated at the
/// smallest degree whose tail bound
///   norm_bound * (tail_w * ||z|| + tail_z * ||w||)
/// is at most tol. Throws NumericalError if tol needs a degree above max_n.
KernelValue kernel_eval(const CoeffMatrix& C, DiscPoint w, DiscPoint z, double tol,
                        std::size_t max_n = kDefaultKernelMaxN);

/// k_w(z) = 1 / (1 - conj(w) z).
cplx szego_kernel(DiscPoint w, DiscPoint z) noexcept;

/// H^2 norm from Taylor coefficients: sqrt(sum |a_n|^2).
double hardy_norm(std::span<const cplx> coeffs) noexcept;

/// Smallest eigenvalue of the Gram matrix (K(zeta_j, zeta_i))_{ij}.
double positive_matrix_check(const CoeffMatrix& C, std::span<const DiscPoint> points, double tol = 1e-12);

} // namespace abelkernel

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "abelkernel/measures.hpp"

namespace abelkernel {

/// Finitely supported sequence in l^2(N_0); entries past size() are zero.
class SeqVector {
public:
    SeqVector() = default;
    explicit SeqVector(std::vector<cplx> entries) : entries_(std::move(entries)) {}

    static SeqVector zeros(std::size_t n) { return SeqVector(std::vector<cplx>(n)); }
    /// delta_n padded to `length` entries.
    static SeqVector basis(std::size_t n, std::size_t length);
    /// (z^k) for k = 0..length-1.
    static SeqVector geometric(cplx z, std::size_t length);

    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const cplx> entries() const noexcept { return entries_; }
    cplx operator[](std::size_t i) const { return entries_[i]; }
    cplx& operator[](std::size_t i) { return entries_[i]; }
    /// Zero beyond the stored support.
    cplx at(std::size_t i) const noexcept { return i < entries_.size() ? entries_[i] : cplx{}; }

    SeqVector conjugated() const;
    SeqVector resized(std::size_t n) const;
    double norm() const noexcept;
    double norm1() const noexcept;
    double sup_norm() const noexcept;

    SeqVector& operator+=(const SeqVector& other);
    SeqVector& operator*=(cplx a) noexcept;
    friend SeqVector operator+(SeqVector a, const SeqVector& b) { return a += b; }
    friend SeqVector operator*(cplx a, SeqVector v) { return v *= a; }

private:
    std::vector<cplx> entries_;
};

/// <u, v> = sum u_k conj(v_k).
cplx inner_product_l2(const SeqVector& u, const SeqVector& v) noexcept;

struct DenseCoeffs {
    Eigen::MatrixXcd entries;
};
struct DiagonalCoeffs {
    std::vector<cplx> d;
};
/// c_{mn} = x_m conj(x_n).
struct RankOneCoeffs {
    std::vector<cplx> x;
};
struct IdentityCoeffs {
    std::size_t order = 0;
};

/// A positive (Hermitian, PSD) coefficient matrix C = (c_{mn}) truncated at
/// order(); entries at or beyond the order are zero.
class CoeffMatrix {
public:
    using Variant = std::variant<DenseCoeffs, DiagonalCoeffs, RankOneCoeffs, IdentityCoeffs>;

    static CoeffMatrix dense(Eigen::MatrixXcd entries);
    static CoeffMatrix diagonal(std::vector<cplx> d);
    static CoeffMatrix rank_one(std::vector<cplx> x);
    static CoeffMatrix identity(std::size_t order);
    static CoeffMatrix zero(std::size_t order) { return diagonal(std::vector<cplx>(order)); }

    const Variant& variant() const noexcept { return v_; }
    std::string_view kind() const noexcept;
    std::size_t order() const noexcept { return order_; }
    /// Estimate of the l^2 operator norm: largest eigenvalue of the
    /// truncation, ||x||^2 for rank-one matrices.
    double norm_bound() const noexcept { return norm_bound_; }

    cplx entry(std::int64_t m, std::int64_t n) const;
    SeqVector apply(const SeqVector& v) const;
    /// C^T v, computed without materializing the transpose.
    SeqVector apply_transpose(const SeqVector& v) const;

    CoeffMatrix transposed() const;
    CoeffMatrix conjugated() const;
    /// alpha * C for alpha >= 0.
    CoeffMatrix scaled(double alpha) const;

    /// Leading n-by-n block (zero-padded past the order).
    Eigen::MatrixXcd dense_block(std::size_t n) const;

private:
    CoeffMatrix(Variant v, std::size_t order, double norm_bound)
        : v_(std::move(v)), order_(order), norm_bound_(norm_bound) {}

    Variant v_;
    std::size_t order_ = 0;
    double norm_bound_ = 0.0;
};

/// phi = sum_n conj(x_n) e_n on the nodes of m.
MuFunction conjugate_synthesis(std::span<const cplx> x, const DiscretizedMeasure& m);

/// C = x (x)* ; with `normalize`, x is first divided by ||phi||_mu where
/// phi = sum_n conj(x_n) e_n.
CoeffMatrix rank_one_from_coeffs(std::span<const cplx> x, const DiscretizedMeasure& m, bool normalize);

} // namespace abelkernel

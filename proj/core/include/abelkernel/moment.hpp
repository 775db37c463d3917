#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "abelkernel/measures.hpp"

namespace abelkernel {

/// Toeplitz matrix M_{mn} = mu^(n - m), 0 <= m, n < order. Stored by its
/// 2*order - 1 diagonals; Hermitian by construction.
class MomentMatrix {
public:
    MeasureId measure_id() const noexcept { return measure_id_; }
    std::size_t order() const noexcept { return order_; }

    /// d_k = mu^(k) for |k| < order.
    cplx diagonal(std::ptrdiff_t k) const;
    cplx entry(std::size_t m, std::size_t n) const;
    Eigen::MatrixXcd dense() const;

    friend MomentMatrix moment_matrix(const DiscretizedMeasure& m, std::size_t order);

private:
    MomentMatrix(MeasureId id, std::size_t order, std::vector<cplx> diagonals)
        : measure_id_(id), order_(order), diagonals_(std::move(diagonals)) {}

    MeasureId measure_id_;
    std::size_t order_;
    std::vector<cplx> diagonals_;  // index k + order - 1
};

MomentMatrix moment_matrix(const DiscretizedMeasure& m, std::size_t order);

enum class GrowthVerdict { bounded, growing };

struct GrowthReport {
    std::vector<std::size_t> orders;
    std::vector<double> lambda_max;
    /// log-log slope of lambda_max against the order over the last two orders.
    double slope = 0.0;
    GrowthVerdict verdict = GrowthVerdict::bounded;
};

/// Largest eigenvalue of each truncation; "bounded" when it changes by less
/// than 1e-3 (relative) between the last two orders. A diagnostic only.
GrowthReport bessel_growth(const DiscretizedMeasure& m, std::span<const std::size_t> orders);

/// Smallest eigenvalue of the truncation.
double psd_floor(const MomentMatrix& M);

/// Hermitian eigenvalues in ascending order; throws NumericalError if the
/// solver does not converge.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a);

inline constexpr std::size_t kMaxDenseOrder = 512;

} // namespace abelkernel

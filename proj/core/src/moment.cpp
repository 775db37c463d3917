#include "abelkernel/moment.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace abelkernel {

cplx MomentMatrix::diagonal(std::ptrdiff_t k) const
{
    const auto n = static_cast<std::ptrdiff_t>(order_);
    if (k <= -n || k >= n)
        throw InvalidArgument("MomentMatrix: diagonal index out of range");
    return diagonals_[static_cast<std::size_t>(k + n - 1)];
}

cplx MomentMatrix::entry(std::size_t m, std::size_t n) const
{
    if (m >= order_ || n >= order_)
        throw InvalidArgument("MomentMatrix: entry index out of range");
    return diagonal(static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(m));
}

Eigen::MatrixXcd MomentMatrix::dense() const
{
    const auto n = static_cast<Eigen::Index>(order_);
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            a(r, c) = diagonals_[static_cast<std::size_t>(c - r + n - 1)];
    return a;
}

MomentMatrix moment_matrix(const DiscretizedMeasure& m, std::size_t order)
{
    if (order < 1)
        throw InvalidArgument("moment_matrix: order must be >= 1");
    const auto n = static_cast<std::ptrdiff_t>(order);
    std::vector<cplx> d(2 * order - 1);
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const cplx c = fourier_coefficient(m, k);
        d[static_cast<std::size_t>(n - 1 + k)] = c;
        d[static_cast<std::size_t>(n - 1 - k)] = std::conj(c);
    }
    d[static_cast<std::size_t>(n - 1)] = d[static_cast<std::size_t>(n - 1)].real();
    return MomentMatrix(m.id(), order, std::move(d));
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian eigensolver failed to converge");
    return solver.eigenvalues();
}

double psd_floor(const MomentMatrix& M) { return hermitian_eigenvalues(M.dense()).minCoeff(); }

GrowthReport bessel_growth(const DiscretizedMeasure& m, std::span<const std::size_t> orders)
{
    if (orders.size() < 2)
        throw InvalidArgument("bessel_growth: need at least two orders");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1 || orders[i] > kMaxDenseOrder)
            throw InvalidArgument("bessel_growth: orders must lie in [1, " + std::to_string(kMaxDenseOrder) + "]");
        if (i > 0 && orders[i] <= orders[i - 1])
            throw InvalidArgument("bessel_growth: orders must be strictly ascending");
    }

    GrowthReport report;
    report.orders.assign(orders.begin(), orders.end());
    const auto largest = moment_matrix(m, orders.back());
    const Eigen::MatrixXcd full = largest.dense();
    for (std::size_t n : orders) {
        const auto k = static_cast<Eigen::Index>(n);
        report.lambda_max.push_back(hermitian_eigenvalues(full.topLeftCorner(k, k)).maxCoeff());
    }

    const double l1 = report.lambda_max[report.lambda_max.size() - 2];
    const double l2 = report.lambda_max.back();
    const double n1 = static_cast<double>(orders[orders.size() - 2]);
    const double n2 = static_cast<double>(orders.back());
    report.slope = (l1 > 0.0 && l2 > 0.0) ? std::log(l2 / l1) / std::log(n2 / n1) : 0.0;
    const double rel = std::abs(l2 - l1) / std::max(std::abs(l2), std::numeric_limits<double>::min());
    report.verdict = rel < 1e-3 ? GrowthVerdict::bounded : GrowthVerdict::growing;
    return report;
}

} // namespace abelkernel

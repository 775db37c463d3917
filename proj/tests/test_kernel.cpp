#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "abelkernel/kernel.hpp"
#include "oracles.hpp"

using namespace abelkernel;

TEST(DiscPoint, RejectsBoundary)
{
    EXPECT_NO_THROW(DiscPoint(0.999, 0.0));
    EXPECT_THROW(DiscPoint(1.0, 0.0), InvalidArgument);
    EXPECT_THROW(DiscPoint(0.0, -1.0 + 1e-10), InvalidArgument);
}

TEST(DiscVector, Examples)
{
    auto z0 = disc_vector(DiscPoint(0.0, 0.0), 4);
    EXPECT_EQ(z0.entries[0], cplx(1.0));
    for (std::size_t i = 1; i < 5; ++i)
        EXPECT_EQ(z0.entries[i], cplx(0.0));
    EXPECT_EQ(z0.tail_bound, 0.0);

    auto h = disc_vector(DiscPoint(0.5, 0.0), 3);
    ASSERT_EQ(h.entries.size(), 4u);
    EXPECT_EQ(h.entries[3], cplx(0.125));

    auto n = disc_vector(DiscPoint(0.9, 0.0), 200);
    EXPECT_NEAR(n.entries.norm() * n.entries.norm(), 1.0 / (1.0 - 0.81), 1e-10);
}

TEST(DiscVector, NormAndTailProperty)
{
    oracle::Gen g(21);
    for (int trial = 0; trial < 50; ++trial) {
        const DiscPoint z(g.disc(0.95));
        const std::size_t N = g.index(60);
        auto d = disc_vector(z, N);
        const double r2 = std::norm(z.value());
        EXPECT_NEAR(d.entries.norm() * d.entries.norm(), (1 - std::pow(r2, N + 1)) / (1 - r2), 1e-12 / (1 - r2));
        EXPECT_NEAR(d.tail_bound, std::pow(z.modulus(), N + 1) / std::sqrt(1 - r2), 1e-14);
        // The tail bound is the exact l^2 norm of the discarded entries.
        const double full = geometric_norm(z);
        EXPECT_NEAR(full * full, d.entries.norm() * d.entries.norm() + d.tail_bound * d.tail_bound, 1e-12 / (1 - r2));
    }
}

TEST(KernelEval, SzegoExamples)
{
    auto I = CoeffMatrix::identity(4096);
    EXPECT_NEAR(std::abs(kernel_eval(I, DiscPoint(0, 0), DiscPoint(0, 0), 1e-12).value - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(kernel_eval(I, DiscPoint(0.5, 0), DiscPoint(0.5, 0), 1e-12).value - 4.0 / 3.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(szego_kernel(DiscPoint(0.5, 0), DiscPoint(0.5, 0)) - 4.0 / 3.0), 0, 1e-15);
    EXPECT_EQ(szego_kernel(DiscPoint(0, 0), DiscPoint(0.3, 0.7)), cplx(1.0));
}

TEST(KernelEval, SeriesMatchesSzegoOnGrid)
{
    auto I = CoeffMatrix::identity(4096);
    for (double a : {-0.8, -0.4, 0.0, 0.4, 0.8})
        for (double b : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
            const DiscPoint w(a, 0.5 * b), z(0.5 * a + 0.1, b);
            auto k = kernel_eval(I, w, z, 1e-10);
            EXPECT_LT(std::abs(k.value - szego_kernel(w, z)), 1e-10);
            EXPECT_LE(k.error_bound, 1e-10);
        }
}

TEST(KernelEval, DenseMatchesDoubleSumOracle)
{
    oracle::Gen g(22);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(g.index(14));
        const Eigen::MatrixXcd c = g.psd(n, 1 + static_cast<int>(g.index(static_cast<std::size_t>(n))));
        const auto C = CoeffMatrix::dense(c);
        const DiscPoint w(g.disc(0.9)), z(g.disc(0.9));
        auto k = kernel_eval(C, w, z, 1e-13);
        EXPECT_LT(std::abs(k.value - oracle::kernel_sum(c, w.value(), z.value())), 1e-12);
    }
}

TEST(KernelEval, RankOneFactorizes)
{
    oracle::Gen g(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = g.vec(1 + g.index(9));
        const auto C = CoeffMatrix::rank_one(x);
        const DiscPoint w(g.disc(0.9)), z(g.disc(0.9));
        auto G = [&](cplx q) {
            cplx acc = 0, p = 1;
            for (cplx xn : x) {
                acc += std::conj(xn) * p;
                p *= q;
            }
            return acc;
        };
        const cplx expect = std::conj(G(w.value())) * G(z.value());
        EXPECT_LT(std::abs(kernel_eval(C, w, z, 1e-12).value - expect), 1e-9 * (1 + std::abs(expect)));
    }
}

TEST(KernelEval, HermitianSymmetryAndCertificateHonesty)
{
    oracle::Gen g(24);
    const double tol = 1e-8;
    for (int trial = 0; trial < 30; ++trial) {
        const auto C = trial % 2 ? CoeffMatrix::identity(4096) : CoeffMatrix::diagonal([&] {
            std::vector<cplx> d(3000);
            for (auto& v : d)
                v = g.uniform(0.0, 2.0);
            return d;
        }());
        const DiscPoint w(g.disc(0.9)), z(g.disc(0.9));
        auto a = kernel_eval(C, w, z, tol);
        auto b = kernel_eval(C, z, w, tol);
        EXPECT_LT(std::abs(a.value - std::conj(b.value)), 2 * tol);
        // Fifty percent more terms moves the value by less than the certificate.
        const std::size_t deeper = a.degree + a.degree / 2 + 1;
        cplx refined = 0;
        for (std::size_t n = 0; n <= deeper && n < C.order(); ++n)
            refined += C.entry(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n)) *
                       std::pow(std::conj(w.value()) * z.value(), static_cast<int>(n));
        EXPECT_LE(std::abs(refined - a.value), a.error_bound + 1e-15);
    }
}

TEST(KernelEval, ErrorsAndExactTruncation)
{
    auto I = CoeffMatrix::identity(4096);
    EXPECT_THROW(kernel_eval(I, DiscPoint(0.1, 0), DiscPoint(0.1, 0), 0.0), InvalidArgument);
    const DiscPoint near(0.999999, 0.0);
    EXPECT_THROW(kernel_eval(I, near, near, 1e-14, 64), NumericalError);
    // A small matrix is summed exactly regardless of the point.
    auto k = kernel_eval(CoeffMatrix::identity(3), near, near, 1e-14, 64);
    EXPECT_EQ(k.error_bound, 0.0);
    EXPECT_NEAR(k.value.real(), 1 + std::pow(0.999999, 2) + std::pow(0.999999, 4), 1e-14);
}

TEST(HardyNorm, Examples)
{
    std::vector<cplx> a(200);
    for (std::size_t n = 0; n < a.size(); ++n)
        a[n] = std::pow(0.5, static_cast<double>(n));
    EXPECT_NEAR(hardy_norm(a) * hardy_norm(a), 4.0 / 3.0, 1e-14);
    EXPECT_NEAR(hardy_norm(a) * hardy_norm(a), szego_kernel(DiscPoint(0.5, 0), DiscPoint(0.5, 0)).real(), 1e-14);
    EXPECT_EQ(hardy_norm(std::vector<cplx>(5)), 0.0);
    EXPECT_EQ(hardy_norm(std::vector<cplx>{3.0}), 3.0);
}

TEST(PositiveMatrixCheck, Examples)
{
    auto I = CoeffMatrix::identity(4096);
    const std::vector<DiscPoint> three{DiscPoint(0, 0), DiscPoint(0.5, 0), DiscPoint(-0.5, 0)};
    const double lam = positive_matrix_check(I, three);
    // Oracle: 3x3 Szego Gram matrix eigenvalues.
    Eigen::Matrix3cd G;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            G(i, j) = 1.0 / (1.0 - std::conj(three[j].value()) * three[i].value());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(G);
    EXPECT_GT(lam, 0.0);
    EXPECT_NEAR(lam, es.eigenvalues().minCoeff(), 1e-10);

    const std::vector<DiscPoint> origin{DiscPoint(0, 0)};
    EXPECT_NEAR(positive_matrix_check(I, origin), 1.0, 1e-15);
    EXPECT_NEAR(positive_matrix_check(CoeffMatrix::zero(8), three), 0.0, 1e-15);
}

TEST(PositiveMatrixCheck, RandomPsdMatricesGivePsdGrams)
{
    oracle::Gen g(25);
    for (int trial = 0; trial < 10; ++trial) {
        const auto C = CoeffMatrix::dense(g.psd(12, 5));
        std::vector<DiscPoint> pts;
        for (int i = 0; i < 8; ++i)
            pts.emplace_back(g.disc(0.9));
        EXPECT_GE(positive_matrix_check(C, pts), -1e-9);
    }
}

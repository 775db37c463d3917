#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "abelkernel/moment.hpp"
#include "oracles.hpp"

using namespace abelkernel;

namespace {

DiscretizedMeasure atoms(std::vector<std::pair<double, double>> a)
{
    std::vector<Atom> v;
    for (auto [x, w] : a)
        v.push_back({CirclePoint(x), w});
    return discretize(MeasureSpec::atomic(v), 1);
}

DiscretizedMeasure three_atoms() { return atoms({{0.0, 1.0 / 3}, {1.0 / 3, 1.0 / 3}, {2.0 / 3, 1.0 / 3}}); }

DiscretizedMeasure smooth_density()
{
    std::vector<double> grid(256);
    for (std::size_t j = 0; j < grid.size(); ++j)
        grid[j] = 1.0 + 0.8 * std::sin(2 * M_PI * static_cast<double>(j) / 256.0);
    return discretize(MeasureSpec::density(grid, 1.0), 256);
}

} // namespace

TEST(MomentMatrix, LebesgueIsIdentity)
{
    auto M = moment_matrix(discretize(MeasureSpec::lebesgue(), 512), 8).dense();
    EXPECT_LT((M - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MomentMatrix, PointMassIsAllOnes)
{
    auto M = moment_matrix(atoms({{0.0, 1.0}}), 8).dense();
    EXPECT_EQ(M, Eigen::MatrixXcd::Ones(8, 8));
}

TEST(MomentMatrix, TwoAtomsParityPattern)
{
    auto m = atoms({{0.0, 0.5}, {0.5, 0.5}});
    auto M = moment_matrix(m, 6);
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c)
            EXPECT_LT(std::abs(M.entry(r, c) - cplx((r + c) % 2 == 0 ? 1.0 : 0.0)), 1e-15);
}

TEST(MomentMatrix, ToeplitzHermitianAndGrammian)
{
    for (const auto& m : {three_atoms(), discretize(MeasureSpec::ifs(4, {0, 2}, 6), 1), smooth_density()}) {
        auto M = moment_matrix(m, 24);
        auto D = M.dense();
        EXPECT_EQ(D, D.adjoint().eval());
        for (std::size_t r = 0; r < 24; ++r)
            for (std::size_t c = 0; c < 24; ++c) {
                EXPECT_EQ(M.entry(r, c), M.diagonal(static_cast<std::ptrdiff_t>(c) - static_cast<std::ptrdiff_t>(r)));
                const auto er = exponential(m, static_cast<std::int64_t>(r));
                const auto ec = exponential(m, static_cast<std::int64_t>(c));
                EXPECT_LT(std::abs(M.entry(r, c) - inner_product_mu(er, ec)), 1e-12);
            }
    }
}

TEST(MomentMatrix, MatchesBruteForceOracle)
{
    auto m = discretize(MeasureSpec::ifs(4, {0, 2}, 5), 1);
    std::vector<double> x, w;
    for (std::size_t i = 0; i < m.size(); ++i) {
        x.push_back(m.nodes()[i].value());
        w.push_back(m.weights()[i]);
    }
    const Eigen::MatrixXcd diff = moment_matrix(m, 16).dense() - oracle::moment_dense(x, w, 16);
    EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MomentMatrix, Nesting)
{
    auto m = three_atoms();
    for (std::size_t n = 1; n < 20; ++n) {
        auto a = moment_matrix(m, n).dense();
        auto b = moment_matrix(m, n + 1).dense();
        EXPECT_EQ(a, b.topLeftCorner(n, n).eval());
    }
    EXPECT_THROW(moment_matrix(m, 0), InvalidArgument);
}

TEST(MomentMatrix, RankBoundedByAtomCount)
{
    oracle::Gen g(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<double, double>> a;
        const std::size_t n = 1 + g.index(6);
        for (std::size_t i = 0; i < n; ++i)
            a.push_back({(static_cast<double>(i) + g.uniform(0.1, 0.9)) / static_cast<double>(n), g.uniform(0.1, 1.0)});
        auto ev = hermitian_eigenvalues(moment_matrix(atoms(a), 24).dense());
        const double lmax = ev.maxCoeff();
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            rank += std::abs(ev[i]) > 1e-9 * lmax ? 1 : 0;
        EXPECT_LE(rank, n);
    }
}

TEST(PsdFloor, Examples)
{
    EXPECT_NEAR(psd_floor(moment_matrix(discretize(MeasureSpec::lebesgue(), 512), 8)), 1.0, 1e-12);
    EXPECT_NEAR(psd_floor(moment_matrix(atoms({{0.0, 1.0}}), 8)), 0.0, 1e-12);
    EXPECT_NEAR(psd_floor(moment_matrix(three_atoms(), 9)), 0.0, 1e-12);
}

TEST(PsdFloor, AllVariantsAtOrder64)
{
    for (const auto& m : {three_atoms(), discretize(MeasureSpec::lebesgue(), 512),
                          discretize(MeasureSpec::ifs(4, {0, 2}, 8), 1), smooth_density()})
        EXPECT_GE(psd_floor(moment_matrix(m, 64)), -1e-10) << m.source().kind();
}

TEST(BesselGrowth, Lebesgue)
{
    const std::vector<std::size_t> orders{8, 16, 32, 64};
    auto r = bessel_growth(discretize(MeasureSpec::lebesgue(), 512), orders);
    for (double l : r.lambda_max)
        EXPECT_NEAR(l, 1.0, 1e-12);
    EXPECT_EQ(r.verdict, GrowthVerdict::bounded);
}

TEST(BesselGrowth, PointMassGrowsLinearly)
{
    const std::vector<std::size_t> orders{8, 16, 32, 64};
    auto r = bessel_growth(atoms({{0.0, 1.0}}), orders);
    for (std::size_t i = 0; i < orders.size(); ++i)
        EXPECT_NEAR(r.lambda_max[i], static_cast<double>(orders[i]), 1e-9);
    EXPECT_EQ(r.verdict, GrowthVerdict::growing);
    EXPECT_NEAR(r.slope, 1.0, 1e-9);
}

TEST(BesselGrowth, TwoAtomsHalfOrder)
{
    const std::vector<std::size_t> orders{8, 16, 32, 64};
    auto m = atoms({{0.0, 0.5}, {0.5, 0.5}});
    auto r = bessel_growth(m, orders);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        EXPECT_NEAR(r.lambda_max[i], static_cast<double>(orders[i]) / 2, 1e-9);
        // Independent dense eigensolve of the oracle matrix.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            oracle::moment_dense({0.0, 0.5}, {0.5, 0.5}, static_cast<int>(orders[i])));
        EXPECT_NEAR(r.lambda_max[i], es.eigenvalues().maxCoeff(), 1e-9);
    }
    EXPECT_EQ(r.verdict, GrowthVerdict::growing);
}

TEST(BesselGrowth, RejectsBadOrders)
{
    auto m = three_atoms();
    const std::vector<std::size_t> one{8}, descending{16, 8}, huge{8, 1024};
    EXPECT_THROW(bessel_growth(m, one), InvalidArgument);
    EXPECT_THROW(bessel_growth(m, descending), InvalidArgument);
    EXPECT_THROW(bessel_growth(m, huge), InvalidArgument);
}

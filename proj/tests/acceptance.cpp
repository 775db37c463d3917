// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "abelkernel/cli/cli.hpp"
#include "abelkernel/moment.hpp"
#include "oracles.hpp"

using namespace abelkernel;

namespace {

const std::string kConfigs = ABELKERNEL_CONFIG_DIR;

struct Outcome {
    bool ok;
    std::string detail;
};

cli::RunConfig load(const std::string& name)
{
    cli::RunConfig base;
    base.subcommand = "verify-measure";
    base.reproducible = true;
    return cli::parse_verify_config(read_json_file(kConfigs + "/" + name), base);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

DiscretizedMeasure three_atoms(double w)
{
    return discretize(
        MeasureSpec::atomic({{CirclePoint(0.0), w}, {CirclePoint(1.0 / 3), w}, {CirclePoint(2.0 / 3), w}}), 1);
}

Outcome scalar_example()
{
    auto r = abel_pairing(SequenceMap::ones_row(), SequenceMap::alternating_column(), SeqVector({1.0}),
                          SeqVector({1.0}), SGrid::geometric());
    const double err = std::abs(r.value - 0.5);
    return {r.converged && err <= 1e-9, "|value - 1/2| = " + fmt(err)};
}

Outcome szego_lebesgue()
{
    const auto cfg = load("szego_lebesgue.json");
    auto m = cfg.measure->discretize();
    const auto C = build_matrix(*cfg.matrix, &m);
    if (m.size() != 512 || C.order() != 64)
        return {false, "config does not match the stated setup"};
    auto report = cli::run(cfg);
    const double mem = report.body["membership"]["max_residual"].get<double>();
    const double rep = report.body["reproduction"]["max_residual"].get<double>();
    const std::size_t pairs = report.body["reproduction"]["samples"].size();
    const bool ok = report.exit_code == 0 && mem <= 1e-8 && rep <= 1e-8 && pairs == 10;
    return {ok, "membership " + fmt(mem) + ", reproduction " + fmt(rep) + " over " + std::to_string(pairs) + " pairs"};
}

Outcome rank_one_example()
{
    const auto cfg = load("rankone_3atoms.json");
    auto m = cfg.measure->discretize();
    const auto C = build_matrix(*cfg.matrix, &m);
    auto report = cli::run(cfg);
    const double mem = report.body["membership"]["max_residual"].get<double>();
    const double rep = report.body["reproduction"]["max_residual"].get<double>();

    // Exact route: C M C = C for the finite matrix, with M built by the oracle.
    std::vector<double> x, w;
    for (std::size_t i = 0; i < m.size(); ++i) {
        x.push_back(m.nodes()[i].value());
        w.push_back(m.weights()[i]);
    }
    const int N = static_cast<int>(C.order());
    const Eigen::MatrixXcd c = C.dense_block(C.order());
    const Eigen::MatrixXcd M = oracle::moment_dense(x, w, N);
    const double exact = (c * M * c - c).cwiseAbs().maxCoeff();
    const bool ok = report.exit_code == 0 && mem <= 1e-8 && rep <= 1e-8 && exact <= 1e-12;
    return {ok, "membership " + fmt(mem) + ", reproduction " + fmt(rep) + ", exact CMC - C " + fmt(exact)};
}

Outcome negative_controls()
{
    auto wrong = load("rankone_wrong_measure.json");
    auto m = wrong.measure->discretize();
    const auto C = build_matrix(*wrong.matrix, &m);
    auto ra = cli::run(wrong);
    const double res = ra.body["membership"]["max_residual"].get<double>();
    const double ref = ra.body["membership"]["max_reference_norm"].get<double>();

    // ||phi||^2 in the run measure, from the oracle.
    std::vector<double> x, w;
    for (std::size_t i = 0; i < m.size(); ++i) {
        x.push_back(m.nodes()[i].value());
        w.push_back(m.weights()[i]);
    }
    const Eigen::MatrixXcd c = C.dense_block(C.order());
    const cplx phi2 = (c * oracle::moment_dense(x, w, static_cast<int>(C.order())) * c).trace() / c.trace();

    auto scaled = load("szego_scaled.json");
    auto rb = cli::run(scaled);
    const bool ok = ra.exit_code == 1 && rb.exit_code == 1 && res >= 0.5 * ref && std::abs(phi2 - 4.0) < 1e-12;
    return {ok, "(a) ||phi||^2 = " + fmt(phi2.real()) + ", residual " + fmt(res) + " vs max ||Cv|| " + fmt(ref) +
                    ", exit " + std::to_string(ra.exit_code) + "; (b) exit " + std::to_string(rb.exit_code)};
}

Outcome conjugation_identity()
{
    oracle::Gen g(2024);
    auto m = three_atoms(1.0 / 3);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + g.index(24);
        CoeffMatrix C = trial % 3 == 0   ? CoeffMatrix::rank_one(g.vec(n))
                        : trial % 3 == 1 ? CoeffMatrix::dense(g.psd(static_cast<int>(n), 1 + static_cast<int>(g.index(n))))
                                         : CoeffMatrix::identity(n);
        SeqVector v(g.vec(n));
        const double s = g.uniform(0.0, 0.999);
        auto lhs = synthesis_damped(C, v, s, m, true);
        auto rhs = synthesis_damped(C, v.conjugated(), s, m, false).conjugated();
        for (std::size_t i = 0; i < m.size(); ++i)
            worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    return {worst <= 1e-13, "max nodewise residual " + fmt(worst)};
}

Outcome extends_ordinary()
{
    oracle::Gen g(77);
    double worst = 0.0;
    bool converged = true;
    for (int trial = 0; trial < 50; ++trial) {
        const int a = 1 + static_cast<int>(g.index(32)), b = 1 + static_cast<int>(g.index(32)),
                  c = 1 + static_cast<int>(g.index(32));
        const Eigen::MatrixXcd t2 = g.matrix(a, b), t1 = g.matrix(b, c);
        const auto x = g.vec(static_cast<std::size_t>(c)), y = g.vec(static_cast<std::size_t>(a));
        const Eigen::VectorXcd ex = Eigen::Map<const Eigen::VectorXcd>(x.data(), c);
        const Eigen::VectorXcd ey = Eigen::Map<const Eigen::VectorXcd>(y.data(), a);
        const cplx ordinary = ey.adjoint() * (t2 * (t1 * ex));
        auto r = abel_pairing(SequenceMap::finite(t2), SequenceMap::finite(t1), SeqVector(x), SeqVector(y),
                              SGrid::geometric(), {1e-9});
        converged = converged && r.converged;
        worst = std::max(worst, std::abs(r.value - ordinary));
    }
    return {converged && worst <= 1e-9, "max |abel - ordinary| " + fmt(worst)};
}

Outcome moment_suite()
{
    const DiscretizedMeasure variants[] = {
        three_atoms(1.0 / 3),
        discretize(MeasureSpec::lebesgue(), 512),
        discretize(MeasureSpec::density({1.0, 2.0, 3.0, 2.0, 0.5, 0.25, 1.0, 4.0}, 1.0), 8),
        discretize(MeasureSpec::ifs(4, {0, 2}, 8), 1),
    };
    bool exact = true;
    double floor = 0.0;
    for (const auto& m : variants) {
        auto M = moment_matrix(m, 64);
        const Eigen::MatrixXcd d = M.dense();
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j) {
                exact = exact && d(i, j) == std::conj(d(j, i));
                if (i + 1 < 64 && j + 1 < 64)
                    exact = exact && d(i, j) == d(i + 1, j + 1);
            }
        floor = std::min(floor, psd_floor(M));
    }
    auto point = discretize(MeasureSpec::atomic({{CirclePoint(0.0), 1.0}}), 1);
    const std::size_t orders[] = {8, 16, 32};
    auto growth = bessel_growth(point, orders);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(growth.lambda_max[i] - static_cast<double>(orders[i])));
    return {exact && floor >= -1e-10 && worst <= 1e-9,
            std::string(exact ? "Toeplitz/Hermitian exact" : "structure broken") + ", psd floor " + fmt(floor) +
                ", max |lambda_max - N| " + fmt(worst)};
}

Outcome fourier_cross_validation()
{
    std::vector<double> x{0.0, 1.0 / 3, 0.7, 0.05}, w{0.2, 0.3, 0.4, 0.1};
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < x.size(); ++i)
        atoms.push_back({CirclePoint(x[i]), w[i]});
    auto atomic = discretize(MeasureSpec::atomic(atoms), 1);
    auto leb = discretize(MeasureSpec::lebesgue(2.0), 512);
    double closed = 0.0;
    for (long k = -64; k <= 64; ++k) {
        closed = std::max(closed, std::abs(fourier_coefficient(atomic, k) - oracle::fourier(x, w, k)));
        closed = std::max(closed, std::abs(fourier_coefficient(leb, k) - (k == 0 ? 2.0 : 0.0)));
    }

    auto ifs = discretize(MeasureSpec::ifs(4, {0, 2}, 8), 1);
    std::vector<long> ks;
    for (long k = 1; k <= 16; ++k)
        ks.push_back(k);
    const auto mc = oracle::ifs_monte_carlo(4, {0, 2}, ks, 1000000, 99);
    double worst_se = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double diff = std::abs(fourier_coefficient(ifs, ks[i]) - mc[i].mean);
        worst_se = std::max(worst_se, diff / mc[i].stderr_);
    }
    return {closed <= 1e-12 && worst_se <= 5.0,
            "closed-form max error " + fmt(closed) + ", IFS vs Monte Carlo max " + fmt(worst_se) + " SE"};
}

Outcome divergence_detection()
{
    auto r = abel_pairing(SequenceMap::ones_row(), SequenceMap::ones_column(), SeqVector({1.0}), SeqVector({1.0}),
                          SGrid::geometric());
    const double slope = r.growth_exponent.value_or(0.0);
    auto report = cli::run(load("divergent_inner.json"));
    const bool ok = r.divergent && slope >= 0.8 && slope <= 1.2 && report.exit_code == 2;
    return {ok, "growth exponent " + fmt(slope) + ", verify-measure exit " + std::to_string(report.exit_code)};
}

Outcome swapping_and_adjoint()
{
    double worst_swap = 0.0, worst_adj = 0.0;
    for (const char* name : {"szego_lebesgue.json", "rankone_3atoms.json"}) {
        const auto cfg = load(name);
        auto m = cfg.measure->discretize();
        const auto C = build_matrix(*cfg.matrix, &m);
        oracle::Gen g(4242);
        for (int trial = 0; trial < 20; ++trial) {
            const DiscPoint w(g.disc(0.8)), z(g.disc(0.8));
            worst_swap = std::max(worst_swap, swapping_check(C, m, w, z, 1e-10));
            MuFunction h(m, g.vec(m.size()));
            const auto v = VElement({{g.normal(), DiscPoint(g.disc(0.8))}, {g.normal(), DiscPoint(g.disc(0.8))}});
            worst_adj = std::max(worst_adj, adjoint_check(C, m, h, v.materialize(C.order()), SGrid::geometric(), 1e-10));
        }
    }
    return {worst_swap <= 1e-10 && worst_adj <= 1e-10,
            "swapping " + fmt(worst_swap) + ", adjoint " + fmt(worst_adj)};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"scalar Abel product equals 1/2", 1.0, scalar_example},
        {"Szego kernel on Lebesgue measure", 30.0, szego_lebesgue},
        {"rank-one kernel on three atoms", 10.0, rank_one_example},
        {"negative controls fail with exit 1", 0.0, negative_controls},
        {"conjugation identity on three atoms", 0.0, conjugation_identity},
        {"Abel product extends the ordinary product", 0.0, extends_ordinary},
        {"moment matrix suite", 0.0, moment_suite},
        {"Fourier coefficient cross-validation", 0.0, fourier_cross_validation},
        {"divergence detection", 0.0, divergence_detection},
        {"swapping and adjoint identities", 0.0, swapping_and_adjoint},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt(secs) + " s";
        if (c.budget_s > 0.0) {
            timing += " (budget " + fmt(c.budget_s) + " s)";
            if (secs >= c.budget_s)
                o.ok = false;
        }
        failures += o.ok ? 0 : 1;
        std::printf("%s criterion %d: %s: %s [%s]\n", o.ok ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                    timing.c_str());
    }
    std::printf("%d of %d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}

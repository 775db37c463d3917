#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>

#include <Eigen/Core>

#include "abelkernel/cli/cli.hpp"
#include "abelkernel/moment.hpp"

#ifndef ABELKERNEL_VERSION
#define ABELKERNEL_VERSION "unknown"
#endif

namespace abelkernel::cli {

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json summary_json(const LimitSummary& s)
{
    return {{"value", complex_to_json(s.value)},
            {"est_error", number(s.est_error)},
            {"converged", s.converged},
            {"divergent", s.divergent},
            {"growth_exponent", s.growth_exponent ? number(*s.growth_exponent) : json(nullptr)}};
}

json abel_json(const AbelResult& r)
{
    json trace = json::array();
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const auto& t = r.extrapolation_table;
        trace.push_back({{"s", r.samples[i].s},
                         {"g", complex_to_json(r.samples[i].g)},
                         {"extrapolant", i < t.size() ? complex_to_json(t[i][i]) : json(nullptr)}});
    }
    return {{"value", complex_to_json(r.value)},
            {"est_error", number(r.est_error)},
            {"converged", r.converged},
            {"divergent", r.divergent},
            {"growth_exponent", r.growth_exponent ? number(*r.growth_exponent) : json(nullptr)},
            {"skipped_samples", r.skipped_samples},
            {"trace", std::move(trace)}};
}

json verdict_json(const Verdict& v)
{
    json samples = json::array();
    for (const auto& s : v.per_sample) {
        json o{{"descriptor", s.descriptor},
               {"residual", number(s.residual)},
               {"inconclusive", s.inconclusive},
               {"reference_norm", number(s.reference_norm)}};
        if (s.worst_inner)
            o["worst_inner_limit"] = summary_json(*s.worst_inner);
        if (s.worst_outer)
            o["worst_outer_limit"] = summary_json(*s.worst_outer);
        samples.push_back(std::move(o));
    }
    return {{"status", to_string(v.status)},
            {"passed", v.passed},
            {"tolerance", v.tolerance},
            {"max_residual", number(v.max_residual)},
            {"inconclusive_count", v.inconclusive_count},
            {"max_reference_norm", number(v.max_reference_norm)},
            {"samples", std::move(samples)}};
}

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json metadata(const RunConfig& c, const json& cfg)
{
    json m{{"tool", "abelkernel"},
           {"subcommand", c.subcommand},
           {"config_hash", config_hash(cfg)},
           {"seed", c.seed},
           {"rng", "mt19937_64"},
           {"versions",
            {{"abelkernel", ABELKERNEL_VERSION},
             {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                           std::to_string(EIGEN_MINOR_VERSION)},
             {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                   std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                   std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}}};
    m["timestamp"] = c.reproducible ? json(nullptr) : json(utc_timestamp());
    return m;
}

LimitOptions limit_options(const RunConfig& c)
{
    return LimitOptions{c.grid.grid(), c.divergence_slope, c.max_terms};
}

const MeasureDocument& need_measure(const RunConfig& c)
{
    if (!c.measure)
        throw InvalidArgument(c.subcommand + ": a measure spec is required");
    return *c.measure;
}

const MatrixSpec& need_matrix(const RunConfig& c)
{
    if (!c.matrix)
        throw InvalidArgument(c.subcommand + ": a matrix spec is required");
    return *c.matrix;
}

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

void run_moments(const RunConfig& c, Report& r)
{
    const DiscretizedMeasure m = need_measure(c).discretize();
    std::string csv = "k,re,im\n";
    for (std::size_t k = 0; k <= c.kmax; ++k) {
        const cplx v = fourier_coefficient(m, static_cast<std::int64_t>(k));
        csv += std::to_string(k) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
    }
    r.csv = std::move(csv);
    r.body["nodes"] = m.size();
}

void run_bessel(const RunConfig& c, Report& r)
{
    const DiscretizedMeasure m = need_measure(c).discretize();
    const GrowthReport g = bessel_growth(m, c.orders);
    r.body["bessel"] = {{"orders", g.orders},
                        {"lambda_max", g.lambda_max},
                        {"slope", number(g.slope)},
                        {"verdict", g.verdict == GrowthVerdict::bounded ? "bounded" : "growing"}};
}

void run_kernel_eval(const RunConfig& c, Report& r)
{
    std::optional<DiscretizedMeasure> m;
    if (c.measure)
        m = c.measure->discretize();
    const CoeffMatrix C = build_matrix(need_matrix(c), m ? &*m : nullptr);
    if (c.points.empty())
        throw InvalidArgument("kernel-eval: no points given");
    std::vector<DiscPoint> pts;
    for (cplx z : c.points)
        pts.emplace_back(z);
    const std::size_t max_n = std::max<std::size_t>(kDefaultKernelMaxN, c.max_terms);
    std::string csv = "w_re,w_im,z_re,z_im,re_k,im_k,error_bound\n";
    json rows = json::array();
    for (const auto& w : pts)
        for (const auto& z : pts) {
            const KernelValue k = kernel_eval(C, w, z, c.tol, max_n);
            csv += fmt(w.value().real()) + "," + fmt(w.value().imag()) + "," + fmt(z.value().real()) + "," +
                   fmt(z.value().imag()) + "," + fmt(k.value.real()) + "," + fmt(k.value.imag()) + "," +
                   fmt(k.error_bound) + "\n";
            rows.push_back({{"w", complex_to_json(w.value())},
                            {"z", complex_to_json(z.value())},
                            {"k", complex_to_json(k.value)},
                            {"error_bound", k.error_bound},
                            {"degree", k.degree}});
        }
    r.csv = std::move(csv);
    r.body["kernel"] = std::move(rows);
}

const DiscretizedMeasure* measure_of(const LeftOperator& l)
{
    const auto* s = std::get_if<Synthesis>(&l);
    return s ? &s->measure : nullptr;
}

const DiscretizedMeasure* measure_of(const RightOperator& r)
{
    const auto* a = std::get_if<Analysis>(&r);
    return a ? &a->measure : nullptr;
}

void run_abel_eval(const RunConfig& c, Report& r)
{
    const LeftOperator t2 = parse_left_operator(c.t2, "/t2");
    const RightOperator t1 = parse_right_operator(c.t1, "/t1");
    const DiscretizedMeasure* m = measure_of(t2) ? measure_of(t2) : measure_of(t1);
    const PairingVector x = parse_pairing_vector(c.x, "/x", m);
    const PairingVector y = parse_pairing_vector(c.y, "/y", m);
    const AbelResult res = abel_pairing(t2, t1, x, y, c.grid.grid(),
                                        PairingOptions{c.tol, c.divergence_slope, c.max_terms});
    r.body["result"] = abel_json(res);
    r.traces.push_back({"abel_eval", res});
    if (!res.converged)
        r.exit_code = ExitCode::inconclusive;
}

void run_boundary(const RunConfig& c, Report& r)
{
    const DiscretizedMeasure m = need_measure(c).discretize();
    const CoeffMatrix C = build_matrix(need_matrix(c), &m);
    const DiscPoint w(c.w);
    try {
        const BoundaryFunction b = boundary_function(C, w, m, c.tol, limit_options(c));
        json nodes = json::array();
        std::string csv = "x,re,im,est_error\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
            csv += fmt(m.nodes()[i].value()) + "," + fmt(b.base[i].real()) + "," + fmt(b.base[i].imag()) + "," +
                   fmt(b.abel_diagnostics[i].est_error) + "\n";
            nodes.push_back({{"x", m.nodes()[i].value()},
                             {"weight", m.weights()[i]},
                             {"value", complex_to_json(b.base[i])},
                             {"est_error", number(b.abel_diagnostics[i].est_error)}});
        }
        r.csv = std::move(csv);
        r.body["boundary"] = {{"exists", true}, {"w", complex_to_json(c.w)}, {"nodes", std::move(nodes)}};
    } catch (const BoundaryError& e) {
        std::size_t diverged = 0;
        for (const auto& d : e.diagnostics())
            diverged += d.divergent ? 1 : 0;
        r.body["boundary"] = {{"exists", false},
                              {"w", complex_to_json(c.w)},
                              {"error", e.what()},
                              {"divergent_nodes", diverged},
                              {"unresolved_nodes", e.diagnostics().size()}};
        r.exit_code = ExitCode::inconclusive;
    }
}

std::vector<std::pair<DiscPoint, DiscPoint>> reproduction_pairs(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&] { return DiscPoint(std::polar(0.8 * std::sqrt(u(rng)), kTwoPi * u(rng))); };
    std::vector<std::pair<DiscPoint, DiscPoint>> out;
    for (std::size_t i = 0; i < n; ++i) {
        const DiscPoint w = draw();
        out.emplace_back(w, draw());
    }
    return out;
}

void run_verify(const RunConfig& c, Report& r)
{
    const DiscretizedMeasure m = need_measure(c).discretize();
    const CoeffMatrix C = build_matrix(need_matrix(c), &m);

    VerifyOptions vo;
    vo.tol = c.tol;
    vo.limits = limit_options(c);
    vo.keep_traces = c.emit_trace;

    const Verdict membership = membership_test(C, m, DiscSampleSet::default_set(c.seed, c.combos), vo);
    r.body["membership"] = verdict_json(membership);
    for (std::size_t i = 0; i < membership.per_sample.size(); ++i)
        if (const auto& t = membership.per_sample[i].trace) {
            std::ostringstream name;
            name << "membership_" << std::setw(3) << std::setfill('0') << i;
            r.traces.push_back({name.str(), *t});
        }

    VerdictStatus repro_status = VerdictStatus::pass;
    if (c.reproduction_pairs > 0) {
        try {
            const Verdict rep = reproduction_check(C, m, reproduction_pairs(c.seed, c.reproduction_pairs), vo);
            repro_status = rep.status;
            r.body["reproduction"] = verdict_json(rep);
        } catch (const BoundaryError& e) {
            repro_status = VerdictStatus::inconclusive;
            r.body["reproduction"] = {{"status", "inconclusive"},
                                      {"error", e.what()},
                                      {"w", complex_to_json(e.w().value())}};
        }
    }

    VerdictStatus overall = VerdictStatus::pass;
    if (membership.status == VerdictStatus::fail || repro_status == VerdictStatus::fail)
        overall = VerdictStatus::fail;
    else if (membership.status == VerdictStatus::inconclusive || repro_status == VerdictStatus::inconclusive)
        overall = VerdictStatus::inconclusive;
    r.exit_code = overall == VerdictStatus::pass ? ExitCode::ok
                  : overall == VerdictStatus::fail ? ExitCode::failed
                                                   : ExitCode::inconclusive;
    r.body["verdict"] = {{"status", to_string(overall)},
                         {"passed", overall == VerdictStatus::pass},
                         {"tolerance", c.tol},
                         {"cmc_frobenius_residual",
                          number(cmc_bounded_check(C, m, std::min<std::size_t>(C.order(), kMaxDenseOrder)))}};
}

} // namespace

Report run(const RunConfig& c)
{
    if (!(c.tol > 0.0))
        throw InvalidArgument("tol must be positive");
    if (c.grid.k1 - c.grid.k0 + 1 < 4)
        throw InvalidArgument("the s-grid needs at least four points");

    const json cfg = config_json(c);
    Report r;
    r.body["metadata"] = metadata(c, cfg);
    r.body["config"] = cfg;
    try {
        if (c.subcommand == "moments")
            run_moments(c, r);
        else if (c.subcommand == "bessel")
            run_bessel(c, r);
        else if (c.subcommand == "kernel-eval")
            run_kernel_eval(c, r);
        else if (c.subcommand == "abel-eval")
            run_abel_eval(c, r);
        else if (c.subcommand == "boundary")
            run_boundary(c, r);
        else if (c.subcommand == "verify-measure")
            run_verify(c, r);
        else
            throw InvalidArgument("unknown subcommand '" + c.subcommand + "'");
    } catch (const NumericalError& e) {
        r.body["error"] = {{"kind", "numerical"}, {"message", e.what()}};
        r.exit_code = ExitCode::inconclusive;
    }
    r.body["exit_code"] = r.exit_code;
    return r;
}

} // namespace abelkernel::cli

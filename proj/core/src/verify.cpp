#include "abelkernel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace abelkernel {

DiscSampleSet::DiscSampleSet(std::vector<DiscPoint> points, std::vector<VElement> combos)
    : points_(std::move(points)), combos_(std::move(combos))
{
    for (const auto& p : points_)
        if (p.modulus() > kMaxModulus)
            throw InvalidArgument("DiscSampleSet: sample points must satisfy |z| <= 0.95");
    for (const auto& c : combos_) {
        if (c.terms().empty())
            throw InvalidArgument("DiscSampleSet: empty combination");
        for (std::size_t i = 0; i < c.terms().size(); ++i) {
            if (c.terms()[i].z.modulus() > kMaxModulus)
                throw InvalidArgument("DiscSampleSet: sample points must satisfy |z| <= 0.95");
            for (std::size_t j = 0; j < i; ++j)
                if (c.terms()[i].z.value() == c.terms()[j].z.value())
                    throw InvalidArgument("DiscSampleSet: combination points must be distinct");
        }
    }
}

DiscSampleSet DiscSampleSet::default_set(std::uint64_t seed, std::size_t combos)
{
    std::vector<DiscPoint> pts;
    for (double r : {0.3, 0.6, 0.9})
        for (int j = 0; j < 8; ++j)
            pts.emplace_back(std::polar(r, kTwoPi * j / 8.0));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<VElement> cs;
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t c = 0; c < combos; ++c) {
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<cplx> alpha(3);
        double nrm = 0.0;
        for (auto& a : alpha) {
            a = {normal(rng), normal(rng)};
            nrm += std::norm(a);
        }
        nrm = std::sqrt(nrm);
        std::vector<VElement::Term> terms;
        for (std::size_t j = 0; j < 3; ++j)
            terms.push_back({alpha[j] / nrm, pts[idx[j]]});
        cs.emplace_back(std::move(terms));
    }
    return DiscSampleSet(std::move(pts), std::move(cs));
}

namespace {

std::string describe(cplx z)
{
    std::ostringstream os;
    os.precision(6);
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

} // namespace

std::vector<DiscSampleSet::Sample> DiscSampleSet::samples() const
{
    std::vector<Sample> out;
    out.reserve(size());
    for (const auto& p : points_)
        out.push_back({"z=" + describe(p.value()), VElement::single(p)});
    for (std::size_t c = 0; c < combos_.size(); ++c) {
        std::string d = "combo" + std::to_string(c) + ":";
        for (const auto& t : combos_[c].terms())
            d += " " + describe(t.alpha) + "*z" + describe(t.z.value());
        out.push_back({std::move(d), combos_[c]});
    }
    return out;
}

std::string_view to_string(VerdictStatus s) noexcept
{
    switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    default: return "inconclusive";
    }
}

namespace {

void require_tol(double tol, const char* who)
{
    if (!(tol > 0.0))
        throw InvalidArgument(std::string(who) + ": tol must be positive");
}

const LimitSummary& worst(const std::vector<LimitSummary>& d)
{
    // Unresolved limits first, then the largest error estimate.
    return *std::max_element(d.begin(), d.end(), [](const LimitSummary& a, const LimitSummary& b) {
        if (a.converged != b.converged)
            return a.converged;
        return a.est_error < b.est_error;
    });
}

void finalize(Verdict& v)
{
    bool any_fail = false;
    v.max_residual = 0.0;
    v.inconclusive_count = 0;
    v.max_reference_norm = 0.0;
    for (const auto& s : v.per_sample) {
        v.max_reference_norm = std::max(v.max_reference_norm, s.reference_norm);
        if (s.inconclusive) {
            ++v.inconclusive_count;
            continue;
        }
        v.max_residual = std::max(v.max_residual, s.residual);
        any_fail = any_fail || !(s.residual <= v.tolerance);
    }
    v.status = any_fail ? VerdictStatus::fail
                        : (v.inconclusive_count > 0 ? VerdictStatus::inconclusive : VerdictStatus::pass);
    v.passed = v.status == VerdictStatus::pass;
}

SampleOutcome membership_sample(const CoeffMatrix& C, const DiscretizedMeasure& m, const DiscSampleSet::Sample& sample,
                                std::size_t probe, const VerifyOptions& opt)
{
    SampleOutcome out;
    out.descriptor = sample.descriptor;
    const std::size_t order = C.order();
    const double inner_tol = opt.tol / 10.0;
    const std::size_t len =
        sample.v.certified_length(order, C.norm_bound(), inner_tol, opt.limits.max_terms);
    const SeqVector v = sample.v.materialize(len);
    const SeqVector cv = C.apply(v);
    out.reference_norm = cv.sup_norm();

    // Inner: f = (S_ebar (*) C) v, nodewise.
    const NodewiseLimit inner = nodewise_synthesis_limit(C, v, m, true, inner_tol, opt.limits);
    out.worst_inner = worst(inner.diagnostics);
    if (!inner.all_converged()) {
        out.inconclusive = true;
        out.residual = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    // Outer: u = (C (*) A_ebar) f, probed entrywise against delta_m. Rows of
    // C vanish for m >= order, so those probes are identically zero.
    const SeqVector coeffs(analysis_coefficients(inner.values, order, true));
    const auto& grid = opt.limits.grid.values();
    std::vector<SeqVector> per_r;
    per_r.reserve(grid.size());
    for (double r : grid)
        per_r.push_back(C.apply(damp(coeffs, r)));

    double residual = 0.0;
    std::vector<LimitSummary> outer_diag;
    outer_diag.reserve(std::min(order, probe));
    std::size_t unresolved = 0;
    std::optional<AbelResult> dominant;
    std::vector<AbelSample> samples(grid.size());
    for (std::size_t mm = 0; mm < std::min(order, probe); ++mm) {
        for (std::size_t k = 0; k < grid.size(); ++k)
            samples[k] = AbelSample{grid[k], per_r[k][mm]};
        AbelResult r = abel_limit(samples, AbelOptions{opt.tol, opt.limits.divergence_slope});
        outer_diag.push_back(summarize(r));
        if (!r.converged)
            ++unresolved;
        residual = std::max(residual, std::abs(r.value - cv[mm]));
        if (opt.keep_traces && (!dominant || std::abs(r.value) > std::abs(dominant->value)))
            dominant = std::move(r);
    }
    for (std::size_t mm = order; mm < probe; ++mm)
        residual = std::max(residual, std::abs(cv.at(mm)));

    if (!outer_diag.empty())
        out.worst_outer = worst(outer_diag);
    out.trace = std::move(dominant);
    if (unresolved > 0) {
        out.inconclusive = true;
        out.residual = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.residual = residual;
    return out;
}

} // namespace

Verdict membership_test(const CoeffMatrix& C, const DiscretizedMeasure& m, const DiscSampleSet& samples,
                        const VerifyOptions& options)
{
    require_tol(options.tol, "membership_test");
    const std::size_t probe = options.probe_order.value_or(std::max<std::size_t>(2 * C.order(), 64));
    Verdict v;
    v.tolerance = options.tol;
    for (const auto& s : samples.samples())
        v.per_sample.push_back(membership_sample(C, m, s, probe, options));
    finalize(v);
    return v;
}

Verdict reproduction_check(const CoeffMatrix& C, const DiscretizedMeasure& m,
                           const std::vector<std::pair<DiscPoint, DiscPoint>>& pairs, const VerifyOptions& options)
{
    require_tol(options.tol, "reproduction_check");
    const double inner_tol = options.tol / 10.0;
    std::map<std::pair<double, double>, BoundaryFunction> cache;
    auto boundary = [&](DiscPoint p) -> const BoundaryFunction& {
        const auto key = std::make_pair(p.value().real(), p.value().imag());
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, boundary_function(C, p, m, inner_tol, options.limits)).first;
        return it->second;
    };

    Verdict v;
    v.tolerance = options.tol;
    for (const auto& [w, z] : pairs) {
        SampleOutcome o;
        o.descriptor = "w=" + describe(w.value()) + " z=" + describe(z.value());
        const cplx k = kernel_eval(C, w, z, inner_tol).value;
        const BoundaryFunction& kw = boundary(w);
        const BoundaryFunction& kz = boundary(z);
        o.residual = std::abs(k - inner_product_mu(kw.base, kz.base));
        o.reference_norm = std::abs(k);
        o.worst_inner = worst(kw.abel_diagnostics);
        v.per_sample.push_back(std::move(o));
    }
    finalize(v);
    return v;
}

namespace {

MuFunction converged_limit(const CoeffMatrix& C, const VElement& v, const DiscretizedMeasure& m, bool conjugated,
                           double tol, const LimitOptions& options, const char* who)
{
    const std::size_t len = v.certified_length(C.order(), C.norm_bound(), tol / 10.0, options.max_terms);
    NodewiseLimit lim = nodewise_synthesis_limit(C, v.materialize(len), m, conjugated, tol, options);
    if (!lim.all_converged())
        throw NumericalError(std::string(who) + ": an Abel limit did not converge");
    return std::move(lim.values);
}

} // namespace

double swapping_check(const CoeffMatrix& C, const DiscretizedMeasure& m, DiscPoint w, DiscPoint z, double tol,
                      const LimitOptions& options)
{
    require_tol(tol, "swapping_check");
    const MuFunction kw = converged_limit(C, VElement::single(w.conjugated()), m, false, tol, options, "swapping_check");
    const MuFunction kz = converged_limit(C, VElement::single(z.conjugated()), m, false, tol, options, "swapping_check");
    const MuFunction fz = converged_limit(C, VElement::single(z), m, true, tol, options, "swapping_check");
    const MuFunction fw = converged_limit(C, VElement::single(w), m, true, tol, options, "swapping_check");
    return std::abs(inner_product_mu(kw, kz) - inner_product_mu(fz, fw));
}

double adjoint_check(const CoeffMatrix& C, const DiscretizedMeasure& m, const MuFunction& h, const SeqVector& v,
                     const SGrid& grid, double tol, const LimitOptions& options)
{
    require_tol(tol, "adjoint_check");
    LimitOptions lo = options;
    lo.grid = grid;
    const AbelResult lhs = abel_pairing(SequenceMap::from_coeff(C.transposed()), Analysis{m, false}, h, v, grid,
                                        PairingOptions{tol, lo.divergence_slope, lo.max_terms});
    if (!lhs.converged)
        throw NumericalError("adjoint_check: the analysis-side Abel limit did not converge");
    const NodewiseLimit lv = nodewise_synthesis_limit(C, v, m, false, tol, lo);
    if (!lv.all_converged())
        throw NumericalError("adjoint_check: the synthesis-side Abel limit did not converge");
    return std::abs(lhs.value - inner_product_mu(h, lv.values));
}

double cmc_bounded_check(const CoeffMatrix& C, const DiscretizedMeasure& m, std::size_t N)
{
    if (N < 1 || N > kMaxDenseOrder)
        throw InvalidArgument("cmc_bounded_check: N must lie in [1, 512]");
    const Eigen::MatrixXcd c = C.dense_block(N);
    const Eigen::MatrixXcd mm = moment_matrix(m, N).dense();
    return (c - c * mm * c).norm();
}

} // namespace abelkernel

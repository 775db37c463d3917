#include "abelkernel/abel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abelkernel {

SGrid::SGrid(std::vector<double> values) : values_(std::move(values))
{
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0 && values_[i] < 1.0))
            throw InvalidArgument("SGrid: values must lie in (0, 1)");
        if (i > 0 && !(values_[i] > values_[i - 1]))
            throw InvalidArgument("SGrid: values must be strictly increasing");
    }
}

SGrid SGrid::geometric(int k0, int k1)
{
    if (k0 < 1 || k1 < k0 || k1 > 52)
        throw InvalidArgument("SGrid::geometric: need 1 <= k0 <= k1 <= 52");
    std::vector<double> v;
    for (int k = k0; k <= k1; ++k)
        v.push_back(1.0 - std::ldexp(1.0, -k));
    return SGrid(std::move(v));
}

namespace {

/// Least-squares slope of log|g| against -log(1 - s) over the trailing
/// half of the samples (at least three).
std::optional<double> growth_slope(const std::vector<AbelSample>& samples)
{
    const std::size_t n = samples.size();
    const std::size_t take = std::min(n, std::max<std::size_t>(3, (n + 1) / 2));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = n - take; i < n; ++i) {
        const double mag = std::abs(samples[i].g);
        if (!(mag > 0.0))
            continue;
        const double x = -std::log1p(-samples[i].s);
        const double y = std::log(mag);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2)
        return std::nullopt;
    const double c = static_cast<double>(cnt);
    const double den = c * sxx - sx * sx;
    if (!(den > 0.0))
        return std::nullopt;
    return (c * sxy - sx * sy) / den;
}

} // namespace

AbelResult abel_limit(std::vector<AbelSample> samples, const AbelOptions& options)
{
    const std::size_t n = samples.size();
    if (n < 4)
        throw InvalidArgument("abel_limit: need at least 4 samples");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(samples[i].s > 0.0 && samples[i].s < 1.0))
            throw InvalidArgument("abel_limit: damping parameters must lie in (0, 1)");
        if (i > 0 && !(samples[i].s > samples[i - 1].s))
            throw InvalidArgument("abel_limit: damping parameters must be strictly increasing");
    }

    AbelResult r;
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = 1.0 - samples[i].s;

    auto& t = r.extrapolation_table;
    t.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i].resize(i + 1);
        t[i][0] = samples[i].g;
        for (std::size_t j = 1; j <= i; ++j) {
            const double factor = h[i] / (h[i - j] - h[i]);
            t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) * factor;
        }
    }

    r.value = t[n - 1][n - 1];
    r.est_error = std::abs(t[n - 1][n - 1] - t[n - 2][n - 2]);
    r.growth_exponent = growth_slope(samples);
    const bool finite = std::isfinite(r.value.real()) && std::isfinite(r.value.imag()) && std::isfinite(r.est_error);

    // A settled extrapolation wins over the slope: |g| climbing out of a
    // near-zero toward a small limit also has a positive log-log slope.
    r.converged = finite && r.est_error <= options.tol;
    if (!r.converged && r.growth_exponent && *r.growth_exponent > options.divergence_slope &&
        std::abs(samples.back().g) > options.tol)
        r.divergent = true;
    r.samples = std::move(samples);
    return r;
}

SeqVector damp(const SeqVector& v, double s)
{
    if (!(s > 0.0 && s < 1.0))
        throw InvalidArgument("damp: s must lie in (0, 1)");
    std::vector<cplx> out(v.size());
    double p = 1.0;
    for (std::size_t n = 0; n < v.size(); ++n) {
        out[n] = p * v[n];
        p *= s;
    }
    return SeqVector(std::move(out));
}

namespace {

void require_damping(double s, const char* who)
{
    if (!(s > 0.0 && s < 1.0))
        throw InvalidArgument(std::string(who) + ": damping parameter must lie in (0, 1)");
}

/// sum_m a_m q^m by Horner.
cplx horner(std::span<const cplx> a, cplx q) noexcept
{
    cplx acc = 0.0;
    for (std::size_t m = a.size(); m-- > 0;)
        acc = acc * q + a[m];
    return acc;
}

} // namespace

MuFunction synthesis_damped(const CoeffMatrix& C, const SeqVector& v, double s, const DiscretizedMeasure& m,
                            bool conjugated)
{
    require_damping(s, "synthesis_damped");
    const SeqVector a = conjugated ? C.apply(v) : C.apply_transpose(v);
    std::vector<cplx> values;
    values.reserve(m.size());
    for (const auto& node : m.nodes()) {
        const cplx zeta = node.on_circle();
        values.push_back(horner(a.entries(), s * (conjugated ? std::conj(zeta) : zeta)));
    }
    return MuFunction(m, std::move(values));
}

std::vector<cplx> analysis_coefficients(const MuFunction& h, std::size_t order, bool conjugated)
{
    // <h, e_n> = sum_i w_i h_i e^{-2 pi i n x_i}; <h, conj(e_n)> flips the sign.
    constexpr std::size_t kResync = 256;
    const auto& m = h.measure();
    const auto nodes = m.nodes();
    const auto w = m.weights();
    const double sign = conjugated ? 1.0 : -1.0;
    std::vector<cplx> out(order);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const cplx wh = w[i] * h[i];
        if (wh == cplx{})
            continue;
        const double x = nodes[i].value();
        const cplx step = unit_phase(sign * x);
        cplx p = 1.0;
        for (std::size_t n = 0; n < order; ++n) {
            if (n % kResync == 0)
                p = unit_phase(sign * static_cast<double>(n) * x);
            out[n] += wh * p;
            p *= step;
        }
    }
    return out;
}

SeqVector analysis_damped(const CoeffMatrix& C, const MuFunction& h, double r, bool conjugated)
{
    require_damping(r, "analysis_damped");
    const SeqVector a = damp(SeqVector(analysis_coefficients(h, C.order(), conjugated)), r);
    return conjugated ? C.apply(a) : C.apply_transpose(a);
}

// SequenceMap

SequenceMap SequenceMap::finite(Eigen::MatrixXcd a)
{
    SequenceMap t;
    t.rows_ = static_cast<Index>(a.rows());
    t.cols_ = static_cast<Index>(a.cols());
    t.bound_ = a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0;
    t.name_ = "finite";
    t.dense_ = std::move(a);
    return t;
}

SequenceMap SequenceMap::from_coeff(const CoeffMatrix& C)
{
    SequenceMap t;
    t.rows_ = C.order();
    t.cols_ = C.order();
    t.bound_ = C.norm_bound();
    t.name_ = std::string(C.kind());
    t.coeff_ = C;
    return t;
}

SequenceMap SequenceMap::generated(std::optional<Index> rows, std::optional<Index> cols, EntryFn entry,
                                   double entry_bound, std::string name)
{
    if (!entry)
        throw InvalidArgument("SequenceMap::generated: missing entry function");
    if (!(entry_bound >= 0.0) || !std::isfinite(entry_bound))
        throw InvalidArgument("SequenceMap::generated: entry bound must be finite and nonnegative");
    SequenceMap t;
    t.rows_ = rows;
    t.cols_ = cols;
    t.bound_ = entry_bound;
    t.name_ = std::move(name);
    t.fn_ = std::move(entry);
    return t;
}

SequenceMap SequenceMap::ones_row()
{
    return generated(1, std::nullopt, [](Index, Index) { return cplx{1.0}; }, 1.0, "ones_row");
}

SequenceMap SequenceMap::alternating_column()
{
    return generated(std::nullopt, 1, [](Index i, Index) { return cplx{i % 2 == 0 ? 1.0 : -1.0}; }, 1.0,
                     "alternating_column");
}

SequenceMap SequenceMap::ones_column()
{
    return generated(std::nullopt, 1, [](Index, Index) { return cplx{1.0}; }, 1.0, "ones_column");
}

cplx SequenceMap::entry(Index i, Index j) const
{
    if ((rows_ && i >= *rows_) || (cols_ && j >= *cols_))
        return 0.0;
    if (dense_)
        return (*dense_)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (coeff_)
        return coeff_->entry(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    return fn_(i, j);
}

std::vector<cplx> SequenceMap::apply_prefix(const SeqVector& x, Index limit) const
{
    const Index n = rows_ ? std::min(limit, *rows_) : limit;
    std::vector<cplx> out(limit);
    if (coeff_) {
        const SeqVector y = coeff_->apply(x);
        for (Index k = 0; k < n; ++k)
            out[k] = y.at(k);
        return out;
    }
    const Index width = cols_ ? std::min(*cols_, x.size()) : x.size();
    for (Index k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (Index j = 0; j < width; ++j)
            s += entry(k, j) * x[j];
        out[k] = s;
    }
    return out;
}

std::vector<cplx> SequenceMap::pairing_row(const SeqVector& y, Index limit) const
{
    const Index n = cols_ ? std::min(limit, *cols_) : limit;
    std::vector<cplx> out(limit);
    if (coeff_) {
        const SeqVector a = coeff_->apply_transpose(y.conjugated());
        for (Index k = 0; k < n; ++k)
            out[k] = a.at(k);
        return out;
    }
    const Index height = rows_ ? std::min(*rows_, y.size()) : y.size();
    for (Index k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (Index i = 0; i < height; ++i)
            s += entry(i, k) * std::conj(y[i]);
        out[k] = s;
    }
    return out;
}

// abel_pairing

namespace {

/// One side of the pairing g(s) = sum_k s^k u_k a_k: a lazily computed
/// coefficient sequence, finite or bounded entrywise by `bound`.
struct Side {
    std::optional<std::size_t> length;
    double bound = 0.0;
    std::function<std::vector<cplx>(std::size_t)> prefix;
};

double mu_bound(const MuFunction& h) { return std::sqrt(h.measure().mass()) * mu_norm(h); }

void require_same_measure(const DiscretizedMeasure& m, const MuFunction& h)
{
    if (!(m.id() == h.measure_id()))
        throw InvalidArgument("abel_pairing: function and operator live on different measures");
}

Side right_side(const RightOperator& t1, const PairingVector& x)
{
    if (const auto* map = std::get_if<SequenceMap>(&t1)) {
        const auto* xv = std::get_if<SeqVector>(&x);
        if (!xv)
            throw InvalidArgument("abel_pairing: a matrix right factor needs a sequence x");
        return Side{map->rows(), map->entry_bound() * xv->norm1(),
                    [map = *map, xv = *xv](std::size_t n) { return map.apply_prefix(xv, n); }};
    }
    const auto& an = std::get<Analysis>(t1);
    const auto* h = std::get_if<MuFunction>(&x);
    if (!h)
        throw InvalidArgument("abel_pairing: an analysis right factor needs an L^2(mu) function x");
    require_same_measure(an.measure, *h);
    return Side{std::nullopt, mu_bound(*h),
                [h = *h, c = an.conjugated](std::size_t n) { return analysis_coefficients(h, n, c); }};
}

Side left_side(const LeftOperator& t2, const PairingVector& y)
{
    if (const auto* map = std::get_if<SequenceMap>(&t2)) {
        const auto* yv = std::get_if<SeqVector>(&y);
        if (!yv)
            throw InvalidArgument("abel_pairing: a matrix left factor needs a sequence y");
        return Side{map->cols(), map->entry_bound() * yv->norm1(),
                    [map = *map, yv = *yv](std::size_t n) { return map.pairing_row(yv, n); }};
    }
    const auto& syn = std::get<Synthesis>(t2);
    const auto* h = std::get_if<MuFunction>(&y);
    if (!h)
        throw InvalidArgument("abel_pairing: a synthesis left factor needs an L^2(mu) function y");
    require_same_measure(syn.measure, *h);
    // <e_k, h> = conj(<h, e_k>)
    return Side{std::nullopt, mu_bound(*h), [h = *h, c = syn.conjugated](std::size_t n) {
                    auto v = analysis_coefficients(h, n, c);
                    for (auto& z : v)
                        z = std::conj(z);
                    return v;
                }};
}

} // namespace

AbelResult abel_pairing(const LeftOperator& t2, const RightOperator& t1, const PairingVector& x,
                        const PairingVector& y, const SGrid& grid, const PairingOptions& options)
{
    if (std::holds_alternative<Synthesis>(t2) && std::holds_alternative<Analysis>(t1))
        throw UnsupportedCombination("abel_pairing: (synthesis, analysis) is not a supported combination");
    if (!(options.tol > 0.0))
        throw InvalidArgument("abel_pairing: tol must be positive");

    const Side u = right_side(t1, x);
    const Side a = left_side(t2, y);

    std::optional<std::size_t> length;
    if (u.length && a.length)
        length = std::min(*u.length, *a.length);
    else if (u.length)
        length = u.length;
    else
        length = a.length;

    const double bound = u.bound * a.bound;
    const double target = options.tol / 10.0;
    std::vector<std::pair<double, std::size_t>> plan;
    std::size_t skipped = 0;
    for (double s : grid.values()) {
        std::size_t terms = 0;
        if (length) {
            terms = *length;
        } else if (bound > 0.0) {
            // bound * s^N / (1 - s) <= target
            const double n = std::ceil(std::log(target * (1.0 - s) / bound) / std::log(s));
            terms = n <= 1.0 ? 1 : (n > static_cast<double>(options.max_terms) ? options.max_terms + 1
                                                                               : static_cast<std::size_t>(n));
        }
        if (terms > options.max_terms) {
            ++skipped;
            continue;
        }
        plan.emplace_back(s, terms);
    }

    std::size_t needed = 0;
    for (const auto& p : plan)
        needed = std::max(needed, p.second);
    const std::vector<cplx> uk = u.prefix(needed);
    const std::vector<cplx> ak = a.prefix(needed);

    std::vector<AbelSample> samples;
    samples.reserve(plan.size());
    for (const auto& [s, terms] : plan) {
        cplx g = 0.0;
        for (std::size_t k = terms; k-- > 0;)
            g = g * s + uk[k] * ak[k];
        samples.push_back({s, g});
    }

    AbelResult r;
    if (samples.size() < 4) {
        r.samples = std::move(samples);
        r.value = r.samples.empty() ? cplx{std::numeric_limits<double>::quiet_NaN()} : r.samples.back().g;
        r.est_error = std::numeric_limits<double>::infinity();
    } else {
        r = abel_limit(std::move(samples), AbelOptions{options.tol, options.divergence_slope});
    }
    r.skipped_samples = skipped;
    return r;
}

} // namespace abelkernel

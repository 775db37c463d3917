#include "abelkernel/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

namespace abelkernel {

cplx unit_phase(double t) noexcept
{
    t -= std::nearbyint(t);
    const double q = 4.0 * t;
    if (q == std::nearbyint(q)) {
        switch (static_cast<int>(q)) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case -1: return {0.0, -1.0};
        default: return {-1.0, 0.0};  // t = +-1/2
        }
    }
    const double a = kTwoPi * t;
    return {std::cos(a), std::sin(a)};
}

CirclePoint::CirclePoint(double x)
{
    if (!std::isfinite(x))
        throw InvalidArgument("circle point must be finite");
    x_ = x - std::floor(x);
    if (x_ >= 1.0)
        x_ = 0.0;
}

namespace {

void require_positive_mass(double mass, const char* what)
{
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw InvalidArgument(std::string(what) + ": mass must be finite and positive");
}

void validate(const AtomicMeasure& a)
{
    if (a.atoms.empty())
        throw InvalidArgument("atomic measure: empty atom list");
    for (const auto& atom : a.atoms)
        if (!(atom.weight > 0.0) || !std::isfinite(atom.weight))
            throw InvalidArgument("atomic measure: weights must be strictly positive");
    std::vector<double> xs;
    xs.reserve(a.atoms.size());
    for (const auto& atom : a.atoms)
        xs.push_back(atom.position.value());
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        throw InvalidArgument("atomic measure: atom positions must be distinct");
}

void validate(const LebesgueMeasure& l) { require_positive_mass(l.mass, "lebesgue measure"); }

void validate(const DensityMeasure& d)
{
    require_positive_mass(d.mass, "density measure");
    if (d.grid.empty())
        throw InvalidArgument("density measure: empty grid");
    double total = 0.0;
    for (double v : d.grid) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InvalidArgument("density measure: density must be nonnegative");
        total += v;
    }
    if (!(total > 0.0))
        throw InvalidArgument("density measure: density vanishes identically");
}

void validate(const IfsMeasure& f)
{
    require_positive_mass(f.mass, "ifs measure");
    if (f.scale < 2)
        throw InvalidArgument("ifs measure: scale must be >= 2");
    if (f.depth < 1)
        throw InvalidArgument("ifs measure: depth must be >= 1");
    if (f.digits.empty())
        throw InvalidArgument("ifs measure: empty digit set");
    for (double d : f.digits)
        if (!(d >= 0.0 && d < f.scale))
            throw InvalidArgument("ifs measure: digits must lie in [0, scale)");
    std::vector<double> ds = f.digits;
    std::sort(ds.begin(), ds.end());
    if (std::adjacent_find(ds.begin(), ds.end()) != ds.end())
        throw InvalidArgument("ifs measure: digits must be distinct");
    const double count = std::pow(static_cast<double>(f.digits.size()), f.depth);
    if (count > static_cast<double>(1u << 22))
        throw InvalidArgument("ifs measure: digit-count^depth exceeds 2^22 nodes");
}

std::atomic<std::uint64_t> next_measure_id{1};

std::vector<double> sample_density(const DensityMeasure& d, std::size_t n)
{
    // Periodic linear interpolation of the tabulated density at j / n.
    const std::size_t g = d.grid.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (n == g) {
            out[j] = d.grid[j];
            continue;
        }
        const double pos = static_cast<double>(j) * static_cast<double>(g) / static_cast<double>(n);
        const auto i0 = static_cast<std::size_t>(std::floor(pos));
        const double frac = pos - static_cast<double>(i0);
        const double a = d.grid[i0 % g];
        const double b = d.grid[(i0 + 1) % g];
        out[j] = (1.0 - frac) * a + frac * b;
    }
    return out;
}

} // namespace

MeasureSpec::MeasureSpec(Variant v) : v_(std::move(v))
{
    std::visit([](const auto& m) { validate(m); }, v_);
}

MeasureSpec MeasureSpec::atomic(std::vector<Atom> atoms) { return MeasureSpec(AtomicMeasure{std::move(atoms)}); }
MeasureSpec MeasureSpec::lebesgue(double mass) { return MeasureSpec(LebesgueMeasure{mass}); }
MeasureSpec MeasureSpec::density(std::vector<double> grid, double mass)
{
    return MeasureSpec(DensityMeasure{std::move(grid), mass});
}
MeasureSpec MeasureSpec::ifs(int scale, std::vector<double> digits, int depth, double mass)
{
    return MeasureSpec(IfsMeasure{scale, std::move(digits), depth, mass});
}

double MeasureSpec::mass() const noexcept
{
    struct Visitor {
        double operator()(const AtomicMeasure& a) const
        {
            double s = 0.0;
            for (const auto& atom : a.atoms)
                s += atom.weight;
            return s;
        }
        double operator()(const LebesgueMeasure& l) const { return l.mass; }
        double operator()(const DensityMeasure& d) const { return d.mass; }
        double operator()(const IfsMeasure& f) const { return f.mass; }
    };
    return std::visit(Visitor{}, v_);
}

std::string_view MeasureSpec::kind() const noexcept
{
    static constexpr std::string_view names[] = {"atomic", "lebesgue", "density", "ifs"};
    return names[v_.index()];
}

DiscretizedMeasure discretize(const MeasureSpec& spec, std::size_t resolution)
{
    if (resolution < 1)
        throw InvalidArgument("discretize: resolution must be >= 1");

    std::vector<CirclePoint> nodes;
    std::vector<double> weights;

    if (const auto* a = spec.get_if<AtomicMeasure>()) {
        for (const auto& atom : a->atoms) {
            nodes.push_back(atom.position);
            weights.push_back(atom.weight);
        }
    } else if (const auto* l = spec.get_if<LebesgueMeasure>()) {
        const double n = static_cast<double>(resolution);
        for (std::size_t j = 0; j < resolution; ++j) {
            nodes.emplace_back(static_cast<double>(j) / n);
            weights.push_back(l->mass / n);
        }
    } else if (const auto* d = spec.get_if<DensityMeasure>()) {
        if (resolution > d->grid.size())
            throw InvalidArgument("discretize: density resolution exceeds grid size");
        const auto f = sample_density(*d, resolution);
        const double total = std::accumulate(f.begin(), f.end(), 0.0);
        if (!(total > 0.0))
            throw InvalidArgument("discretize: density vanishes at every node");
        const double n = static_cast<double>(resolution);
        for (std::size_t j = 0; j < resolution; ++j) {
            nodes.emplace_back(static_cast<double>(j) / n);
            weights.push_back(d->mass * f[j] / total);
        }
    } else {
        const auto& f = *spec.get_if<IfsMeasure>();
        const auto [lo, hi] = std::minmax_element(f.digits.begin(), f.digits.end());
        const double r = static_cast<double>(f.scale);
        // Cylinder of the word d_1..d_k is  sum_j d_j r^{-j} + r^{-k} * hull,
        // hull = [min D, max D] / (r - 1); nodes sit at the hull midpoint.
        const double offset = std::pow(r, -f.depth) * (*lo + *hi) / (2.0 * (r - 1.0));
        std::vector<double> level{0.0};
        double step = 1.0;
        for (int k = 0; k < f.depth; ++k) {
            step /= r;
            std::vector<double> next;
            next.reserve(level.size() * f.digits.size());
            for (double base : level)
                for (double dig : f.digits)
                    next.push_back(base + dig * step);
            level = std::move(next);
        }
        const double w = f.mass / static_cast<double>(level.size());
        for (double base : level) {
            nodes.emplace_back(base + offset);
            weights.push_back(w);
        }
    }

    const double mass = spec.mass();
    auto data = std::make_shared<const DiscretizedMeasure::Data>(DiscretizedMeasure::Data{
        MeasureId{next_measure_id.fetch_add(1)}, spec, std::move(nodes), std::move(weights), mass});
    return DiscretizedMeasure(std::move(data));
}

MuFunction::MuFunction(const DiscretizedMeasure& m, std::vector<cplx> values)
    : measure_(m), values_(std::move(values))
{
    if (values_.size() != measure_.size())
        throw InvalidArgument("MuFunction: value count does not match the measure's node count");
}

MuFunction MuFunction::zero(const DiscretizedMeasure& m) { return MuFunction(m, std::vector<cplx>(m.size())); }

MuFunction MuFunction::constant(const DiscretizedMeasure& m, cplx c)
{
    return MuFunction(m, std::vector<cplx>(m.size(), c));
}

MuFunction MuFunction::conjugated() const
{
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](cplx z) { return std::conj(z); });
    return MuFunction(measure_, std::move(v));
}

double MuFunction::sup_norm() const noexcept
{
    double s = 0.0;
    for (cplx z : values_)
        s = std::max(s, std::abs(z));
    return s;
}

MuFunction& MuFunction::operator+=(const MuFunction& other)
{
    if (!(other.measure_id() == measure_id()))
        throw InvalidArgument("MuFunction: measure mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] += other.values_[i];
    return *this;
}

MuFunction& MuFunction::operator-=(const MuFunction& other)
{
    if (!(other.measure_id() == measure_id()))
        throw InvalidArgument("MuFunction: measure mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] -= other.values_[i];
    return *this;
}

MuFunction& MuFunction::operator*=(cplx a) noexcept
{
    for (auto& z : values_)
        z *= a;
    return *this;
}

cplx fourier_coefficient(const DiscretizedMeasure& m, std::int64_t k)
{
    // Computed for |k| and conjugated, so mu^(-k) = conj(mu^(k)) holds bitwise.
    const auto kk = static_cast<double>(k < 0 ? -k : k);
    const auto nodes = m.nodes();
    const auto w = m.weights();
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        sum += w[i] * std::conj(unit_phase(kk * nodes[i].value()));
    return k < 0 ? std::conj(sum) : sum;
}

cplx inner_product_mu(const MuFunction& f, const MuFunction& g)
{
    if (!(f.measure_id() == g.measure_id()))
        throw InvalidArgument("inner_product_mu: functions live on different measures");
    const auto w = f.measure().weights();
    cplx sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        sum += w[i] * (f[i] * std::conj(g[i]));
    return sum;
}

double mu_norm(const MuFunction& f) { return std::sqrt(std::max(0.0, inner_product_mu(f, f).real())); }

MuFunction exponential(const DiscretizedMeasure& m, std::int64_t n)
{
    const auto nn = static_cast<double>(n < 0 ? -n : n);
    std::vector<cplx> v;
    v.reserve(m.size());
    for (const auto& x : m.nodes()) {
        const cplx z = unit_phase(nn * x.value());
        v.push_back(n < 0 ? std::conj(z) : z);
    }
    return MuFunction(m, std::move(v));
}

} // namespace abelkernel

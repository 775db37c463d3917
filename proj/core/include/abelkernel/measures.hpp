#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "abelkernel/common.hpp"

namespace abelkernel {

/// A point of the circle, stored as x in [0,1) and identified with e^{2 pi i x}.
class CirclePoint {
public:
    constexpr CirclePoint() = default;
    /// Reduces x modulo 1.
    explicit CirclePoint(double x);

    double value() const noexcept { return x_; }
    cplx on_circle() const noexcept { return unit_phase(x_); }

    friend bool operator==(CirclePoint, CirclePoint) = default;

private:
    double x_ = 0.0;
};

struct Atom {
    CirclePoint position;
    double weight = 0.0;
};

struct AtomicMeasure {
    std::vector<Atom> atoms;
};

struct LebesgueMeasure {
    double mass = 1.0;
};

/// Density tabulated on the uniform grid j / grid.size(); rescaled to `mass`.
struct DensityMeasure {
    std::vector<double> grid;
    double mass = 1.0;
};

/// Equal-weight invariant measure of the maps x -> (x + d) / scale.
struct IfsMeasure {
    int scale = 4;
    std::vector<double> digits;
    int depth = 8;
    double mass = 1.0;
};

/// A finite Borel measure on [0,1) in one of the supported families.
/// Validated on construction.
class MeasureSpec {
public:
    using Variant = std::variant<AtomicMeasure, LebesgueMeasure, DensityMeasure, IfsMeasure>;

    explicit MeasureSpec(Variant v);

    static MeasureSpec atomic(std::vector<Atom> atoms);
    static MeasureSpec lebesgue(double mass = 1.0);
    static MeasureSpec density(std::vector<double> grid, double mass);
    static MeasureSpec ifs(int scale, std::vector<double> digits, int depth = 8, double mass = 1.0);

    const Variant& variant() const noexcept { return v_; }
    double mass() const noexcept;
    std::string_view kind() const noexcept;

    template <class T>
    const T* get_if() const noexcept { return std::get_if<T>(&v_); }

private:
    Variant v_;
};

struct MeasureId {
    std::uint64_t value = 0;
    friend bool operator==(MeasureId, MeasureId) = default;
};

/// Finite node/weight surrogate of a MeasureSpec. A cheap shared handle:
/// copies refer to the same immutable data and carry the same id.
class DiscretizedMeasure {
public:
    MeasureId id() const noexcept { return data_->id; }
    std::span<const CirclePoint> nodes() const noexcept { return data_->nodes; }
    std::span<const double> weights() const noexcept { return data_->weights; }
    double mass() const noexcept { return data_->mass; }
    std::size_t size() const noexcept { return data_->nodes.size(); }
    const MeasureSpec& source() const noexcept { return data_->source; }

    friend DiscretizedMeasure discretize(const MeasureSpec& spec, std::size_t resolution);

private:
    struct Data {
        MeasureId id;
        MeasureSpec source;
        std::vector<CirclePoint> nodes;
        std::vector<double> weights;
        double mass;
    };
    explicit DiscretizedMeasure(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    std::shared_ptr<const Data> data_;
};

/// Atomic specs are exact. Lebesgue and Density use `resolution` uniform
/// nodes (periodic trapezoid). IFS uses the cylinder midpoints at the
/// spec's depth; `resolution` is ignored there.
DiscretizedMeasure discretize(const MeasureSpec& spec, std::size_t resolution);

/// An element of L^2(mu), stored as its values on the nodes of a
/// DiscretizedMeasure.
class MuFunction {
public:
    MuFunction(const DiscretizedMeasure& m, std::vector<cplx> values);

    static MuFunction zero(const DiscretizedMeasure& m);
    static MuFunction constant(const DiscretizedMeasure& m, cplx c);

    const DiscretizedMeasure& measure() const noexcept { return measure_; }
    MeasureId measure_id() const noexcept { return measure_.id(); }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    cplx operator[](std::size_t i) const { return values_[i]; }

    MuFunction conjugated() const;
    double sup_norm() const noexcept;

    MuFunction& operator+=(const MuFunction& other);
    MuFunction& operator-=(const MuFunction& other);
    MuFunction& operator*=(cplx a) noexcept;

    friend MuFunction operator+(MuFunction a, const MuFunction& b) { return a += b; }
    friend MuFunction operator-(MuFunction a, const MuFunction& b) { return a -= b; }
    friend MuFunction operator*(cplx a, MuFunction f) { return f *= a; }

private:
    DiscretizedMeasure measure_;
    std::vector<cplx> values_;
};

/// mu^(k) = integral of e^{-2 pi i k x} d mu(x).
cplx fourier_coefficient(const DiscretizedMeasure& m, std::int64_t k);

/// <f, g>_mu = sum_i w_i f_i conj(g_i). Throws if f and g live on
/// different measures.
cplx inner_product_mu(const MuFunction& f, const MuFunction& g);

double mu_norm(const MuFunction& f);

/// e_n(x) = e^{2 pi i n x} on the nodes of m.
MuFunction exponential(const DiscretizedMeasure& m, std::int64_t n);

} // namespace abelkernel

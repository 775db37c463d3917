#include "abelkernel/coeff.hpp"

#include <algorithm>
#include <cmath>

#include "abelkernel/moment.hpp"

namespace abelkernel {

SeqVector SeqVector::basis(std::size_t n, std::size_t length)
{
    SeqVector v = zeros(std::max(length, n + 1));
    v[n] = 1.0;
    return v;
}

SeqVector SeqVector::geometric(cplx z, std::size_t length)
{
    std::vector<cplx> e(length);
    cplx p = 1.0;
    for (auto& x : e) {
        x = p;
        p *= z;
    }
    return SeqVector(std::move(e));
}

SeqVector SeqVector::conjugated() const
{
    std::vector<cplx> e(entries_.size());
    std::transform(entries_.begin(), entries_.end(), e.begin(), [](cplx z) { return std::conj(z); });
    return SeqVector(std::move(e));
}

SeqVector SeqVector::resized(std::size_t n) const
{
    std::vector<cplx> e(n);
    std::copy_n(entries_.begin(), std::min(n, entries_.size()), e.begin());
    return SeqVector(std::move(e));
}

double SeqVector::norm() const noexcept
{
    double s = 0.0;
    for (cplx z : entries_)
        s += std::norm(z);
    return std::sqrt(s);
}

double SeqVector::norm1() const noexcept
{
    double s = 0.0;
    for (cplx z : entries_)
        s += std::abs(z);
    return s;
}

double SeqVector::sup_norm() const noexcept
{
    double s = 0.0;
    for (cplx z : entries_)
        s = std::max(s, std::abs(z));
    return s;
}

SeqVector& SeqVector::operator+=(const SeqVector& other)
{
    if (other.size() > size())
        entries_.resize(other.size());
    for (std::size_t i = 0; i < other.size(); ++i)
        entries_[i] += other.entries_[i];
    return *this;
}

SeqVector& SeqVector::operator*=(cplx a) noexcept
{
    for (auto& z : entries_)
        z *= a;
    return *this;
}

cplx inner_product_l2(const SeqVector& u, const SeqVector& v) noexcept
{
    const std::size_t n = std::min(u.size(), v.size());
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += u[i] * std::conj(v[i]);
    return s;
}

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = 1e-10;

double rank_one_norm(const std::vector<cplx>& x)
{
    double s = 0.0;
    for (cplx z : x)
        s += std::norm(z);
    return s;
}

} // namespace

CoeffMatrix CoeffMatrix::dense(Eigen::MatrixXcd entries)
{
    if (entries.rows() != entries.cols())
        throw InvalidArgument("dense coefficient matrix must be square");
    const std::size_t n = static_cast<std::size_t>(entries.rows());
    if (n == 0)
        return CoeffMatrix(DenseCoeffs{std::move(entries)}, 0, 0.0);
    if (!entries.allFinite())
        throw InvalidArgument("dense coefficient matrix has non-finite entries");
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
        throw InvalidArgument("dense coefficient matrix is not Hermitian");
    const Eigen::MatrixXcd sym = 0.5 * (entries + entries.adjoint());
    const Eigen::VectorXd ev = hermitian_eigenvalues(sym);
    const double lmax = std::max(0.0, ev.maxCoeff());
    if (ev.minCoeff() < -kPsdTol * std::max(lmax, 1.0))
        throw InvalidArgument("dense coefficient matrix is not positive semidefinite");
    return CoeffMatrix(DenseCoeffs{std::move(entries)}, n, lmax);
}

CoeffMatrix CoeffMatrix::diagonal(std::vector<cplx> d)
{
    double lmax = 0.0;
    for (cplx z : d)
        lmax = std::max(lmax, z.real());
    for (cplx z : d) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument("diagonal coefficient matrix has non-finite entries");
        if (std::abs(z.imag()) > kHermitianTol * std::max(1.0, std::abs(z)))
            throw InvalidArgument("diagonal coefficient matrix must have real diagonal");
        if (z.real() < -kPsdTol * std::max(lmax, 1.0))
            throw InvalidArgument("diagonal coefficient matrix must be nonnegative");
    }
    const std::size_t n = d.size();
    return CoeffMatrix(DiagonalCoeffs{std::move(d)}, n, lmax);
}

CoeffMatrix CoeffMatrix::rank_one(std::vector<cplx> x)
{
    for (cplx z : x)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument("rank-one coefficient vector has non-finite entries");
    const std::size_t n = x.size();
    const double nb = rank_one_norm(x);
    return CoeffMatrix(RankOneCoeffs{std::move(x)}, n, nb);
}

CoeffMatrix CoeffMatrix::identity(std::size_t order)
{
    return CoeffMatrix(IdentityCoeffs{order}, order, order > 0 ? 1.0 : 0.0);
}

std::string_view CoeffMatrix::kind() const noexcept
{
    static constexpr std::string_view names[] = {"dense", "diagonal", "rank_one", "identity"};
    return names[v_.index()];
}

cplx CoeffMatrix::entry(std::int64_t m, std::int64_t n) const
{
    if (m < 0 || n < 0)
        throw InvalidArgument("CoeffMatrix::entry: negative index");
    const auto um = static_cast<std::size_t>(m);
    const auto un = static_cast<std::size_t>(n);
    if (um >= order_ || un >= order_)
        return 0.0;
    struct Visitor {
        std::size_t m, n;
        cplx operator()(const DenseCoeffs& c) const
        {
            return c.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        }
        cplx operator()(const DiagonalCoeffs& c) const { return m == n ? c.d[m] : cplx{}; }
        cplx operator()(const RankOneCoeffs& c) const { return c.x[m] * std::conj(c.x[n]); }
        cplx operator()(const IdentityCoeffs&) const { return m == n ? 1.0 : 0.0; }
    };
    return std::visit(Visitor{um, un}, v_);
}

SeqVector CoeffMatrix::apply(const SeqVector& v) const
{
    const std::size_t n = order_;
    std::vector<cplx> out(n);
    if (const auto* c = std::get_if<DenseCoeffs>(&v_)) {
        const std::size_t k = std::min(n, v.size());
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                s += c->entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * v[j];
            out[i] = s;
        }
    } else if (const auto* c = std::get_if<DiagonalCoeffs>(&v_)) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = c->d[i] * v.at(i);
    } else if (const auto* c = std::get_if<RankOneCoeffs>(&v_)) {
        cplx ip = 0.0;  // <v, x>
        for (std::size_t j = 0; j < n; ++j)
            ip += v.at(j) * std::conj(c->x[j]);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = ip * c->x[i];
    } else {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = v.at(i);
    }
    return SeqVector(std::move(out));
}

SeqVector CoeffMatrix::apply_transpose(const SeqVector& v) const
{
    const std::size_t n = order_;
    std::vector<cplx> out(n);
    if (const auto* c = std::get_if<DenseCoeffs>(&v_)) {
        const std::size_t k = std::min(n, v.size());
        for (std::size_t j = 0; j < k; ++j) {
            const cplx vj = v[j];
            for (std::size_t i = 0; i < n; ++i)
                out[i] += c->entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * vj;
        }
    } else if (const auto* c = std::get_if<RankOneCoeffs>(&v_)) {
        cplx ip = 0.0;  // sum_m x_m v_m
        for (std::size_t j = 0; j < n; ++j)
            ip += c->x[j] * v.at(j);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = ip * std::conj(c->x[i]);
    } else {
        return apply(v);  // diagonal and identity are symmetric
    }
    return SeqVector(std::move(out));
}

CoeffMatrix CoeffMatrix::transposed() const
{
    struct Visitor {
        const CoeffMatrix& self;
        CoeffMatrix operator()(const DenseCoeffs& c) const
        {
            return CoeffMatrix(DenseCoeffs{c.entries.transpose()}, self.order_, self.norm_bound_);
        }
        CoeffMatrix operator()(const DiagonalCoeffs&) const { return self; }
        CoeffMatrix operator()(const RankOneCoeffs& c) const
        {
            std::vector<cplx> x(c.x.size());
            std::transform(c.x.begin(), c.x.end(), x.begin(), [](cplx z) { return std::conj(z); });
            return CoeffMatrix(RankOneCoeffs{std::move(x)}, self.order_, self.norm_bound_);
        }
        CoeffMatrix operator()(const IdentityCoeffs&) const { return self; }
    };
    return std::visit(Visitor{*this}, v_);
}

CoeffMatrix CoeffMatrix::conjugated() const
{
    struct Visitor {
        const CoeffMatrix& self;
        CoeffMatrix operator()(const DenseCoeffs& c) const
        {
            return CoeffMatrix(DenseCoeffs{c.entries.conjugate()}, self.order_, self.norm_bound_);
        }
        CoeffMatrix operator()(const DiagonalCoeffs& c) const
        {
            std::vector<cplx> d(c.d.size());
            std::transform(c.d.begin(), c.d.end(), d.begin(), [](cplx z) { return std::conj(z); });
            return CoeffMatrix(DiagonalCoeffs{std::move(d)}, self.order_, self.norm_bound_);
        }
        // conj(x_m conj(x_n)) = conj(x_m) x_n: the rank-one matrix of conj(x).
        CoeffMatrix operator()(const RankOneCoeffs&) const { return self.transposed(); }
        CoeffMatrix operator()(const IdentityCoeffs&) const { return self; }
    };
    return std::visit(Visitor{*this}, v_);
}

CoeffMatrix CoeffMatrix::scaled(double alpha) const
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("CoeffMatrix::scaled: factor must be finite and nonnegative");
    struct Visitor {
        const CoeffMatrix& self;
        double a;
        CoeffMatrix operator()(const DenseCoeffs& c) const
        {
            return CoeffMatrix(DenseCoeffs{a * c.entries}, self.order_, a * self.norm_bound_);
        }
        CoeffMatrix operator()(const DiagonalCoeffs& c) const
        {
            std::vector<cplx> d = c.d;
            for (auto& z : d)
                z *= a;
            return CoeffMatrix(DiagonalCoeffs{std::move(d)}, self.order_, a * self.norm_bound_);
        }
        CoeffMatrix operator()(const RankOneCoeffs& c) const
        {
            std::vector<cplx> x = c.x;
            const double r = std::sqrt(a);
            for (auto& z : x)
                z *= r;
            return CoeffMatrix::rank_one(std::move(x));
        }
        CoeffMatrix operator()(const IdentityCoeffs&) const
        {
            return CoeffMatrix(DiagonalCoeffs{std::vector<cplx>(self.order_, a)}, self.order_, a);
        }
    };
    return std::visit(Visitor{*this, alpha}, v_);
}

Eigen::MatrixXcd CoeffMatrix::dense_block(std::size_t n) const
{
    const auto k = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(k, k);
    const auto lim = static_cast<Eigen::Index>(std::min(n, order_));
    if (const auto* c = std::get_if<DenseCoeffs>(&v_)) {
        a.topLeftCorner(lim, lim) = c->entries.topLeftCorner(lim, lim);
    } else if (const auto* c = std::get_if<RankOneCoeffs>(&v_)) {
        Eigen::VectorXcd x(lim);
        for (Eigen::Index i = 0; i < lim; ++i)
            x(i) = c->x[static_cast<std::size_t>(i)];
        a.topLeftCorner(lim, lim) = x * x.adjoint();
    } else {
        for (Eigen::Index i = 0; i < lim; ++i)
            a(i, i) = entry(i, i);
    }
    return a;
}

MuFunction conjugate_synthesis(std::span<const cplx> x, const DiscretizedMeasure& m)
{
    // Horner in zeta = e^{2 pi i t}: sum_n conj(x_n) zeta^n.
    std::vector<cplx> values;
    values.reserve(m.size());
    for (const auto& node : m.nodes()) {
        const cplx zeta = node.on_circle();
        cplx acc = 0.0;
        for (std::size_t n = x.size(); n-- > 0;)
            acc = acc * zeta + std::conj(x[n]);
        values.push_back(acc);
    }
    return MuFunction(m, std::move(values));
}

CoeffMatrix rank_one_from_coeffs(std::span<const cplx> x, const DiscretizedMeasure& m, bool normalize)
{
    if (std::all_of(x.begin(), x.end(), [](cplx z) { return z == cplx{}; }))
        throw InvalidArgument("rank_one_from_coeffs: coefficient vector is zero");
    std::vector<cplx> xs(x.begin(), x.end());
    if (normalize) {
        const double nrm = mu_norm(conjugate_synthesis(x, m));
        if (!(nrm > 0.0))
            throw InvalidArgument("rank_one_from_coeffs: synthesized function has zero L^2(mu) norm");
        for (auto& z : xs)
            z /= nrm;
    }
    return CoeffMatrix::rank_one(std::move(xs));
}

} // namespace abelkernel

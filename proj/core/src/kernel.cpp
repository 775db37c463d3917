#include "abelkernel/kernel.hpp"

#include <cmath>
#include <sstream>

#include "abelkernel/moment.hpp"

namespace abelkernel {

DiscPoint::DiscPoint(cplx z) : z_(z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kMaxModulus)
        throw InvalidArgument("DiscPoint: |z| must be at most 1 - 1e-9");
}

double geometric_norm(DiscPoint z) noexcept { return 1.0 / std::sqrt(1.0 - std::norm(z.value())); }

namespace {

double tail_norm(double rho, std::size_t N)
{
    return std::pow(rho, static_cast<double>(N + 1)) / std::sqrt(1.0 - rho * rho);
}

} // namespace

VElement VElement::conjugated() const
{
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& term : terms_)
        t.push_back(Term{std::conj(term.alpha), term.z.conjugated()});
    return VElement(std::move(t));
}

SeqVector VElement::materialize(std::size_t length) const
{
    SeqVector v = SeqVector::zeros(length);
    for (const auto& term : terms_) {
        cplx p = term.alpha;
        for (std::size_t n = 0; n < length; ++n) {
            v[n] += p;
            p *= term.z.value();
        }
    }
    return v;
}

double VElement::tail_bound(std::size_t length) const noexcept
{
    double s = 0.0;
    for (const auto& term : terms_)
        s += std::abs(term.alpha) * std::pow(term.z.modulus(), static_cast<double>(length)) * geometric_norm(term.z);
    return s;
}

std::size_t VElement::certified_length(std::size_t order, double norm_bound, double tol, std::size_t max_len) const
{
    std::size_t len = 0;
    while (len < order && len < max_len && norm_bound * tail_bound(len) > tol)
        ++len;
    return len;
}

DiscVector disc_vector(DiscPoint z, std::size_t N)
{
    return DiscVector{z, SeqVector::geometric(z.value(), N + 1), tail_norm(z.modulus(), N)};
}

KernelValue kernel_eval(const CoeffMatrix& C, DiscPoint w, DiscPoint z, double tol, std::size_t max_n)
{
    if (!(tol > 0.0))
        throw InvalidArgument("kernel_eval: tol must be positive");

    const double nb = C.norm_bound();
    const double nw = geometric_norm(w);
    const double nz = geometric_norm(z);
    auto bound = [&](std::size_t N) {
        return nb * (tail_norm(w.modulus(), N) * nz + tail_norm(z.modulus(), N) * nw);
    };

    const std::size_t exact = C.order() > 0 ? C.order() - 1 : 0;
    std::size_t N = 0;
    while (N < exact && N < max_n && bound(N) > tol)
        ++N;
    double err = N >= exact ? 0.0 : bound(N);
    if (err > tol) {
        std::ostringstream msg;
        msg << "kernel_eval: tolerance " << tol << " unreachable at degree " << max_n
            << " (achieved bound " << err << ")";
        throw NumericalError(msg.str());
    }

    const SeqVector zv = SeqVector::geometric(z.value(), N + 1);
    const SeqVector wv = SeqVector::geometric(w.value(), N + 1);
    const SeqVector cz = C.apply(zv).resized(N + 1);
    return KernelValue{inner_product_l2(cz, wv), err, N};
}

cplx szego_kernel(DiscPoint w, DiscPoint z) noexcept { return 1.0 / (1.0 - std::conj(w.value()) * z.value()); }

double hardy_norm(std::span<const cplx> coeffs) noexcept
{
    double s = 0.0;
    for (cplx a : coeffs)
        s += std::norm(a);
    return std::sqrt(s);
}

double positive_matrix_check(const CoeffMatrix& C, std::span<const DiscPoint> points, double tol)
{
    if (points.empty())
        throw InvalidArgument("positive_matrix_check: no points");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = kernel_eval(C, points[static_cast<std::size_t>(j)], points[static_cast<std::size_t>(i)], tol).value;
    return hermitian_eigenvalues(0.5 * (g + g.adjoint())).minCoeff();
}

} // namespace abelkernel

#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// into the library's numerical routines.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

inline constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

/// e^{-2 pi i k x} in extended precision.
inline lcplx phase(long double x, long double k)
{
    const long double t = -kTwoPiL * k * x;
    return {std::cos(t), std::sin(t)};
}

inline cplx fourier(const std::vector<double>& x, const std::vector<double>& w, long k)
{
    lcplx acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += static_cast<long double>(w[i]) * phase(x[i], static_cast<long double>(k));
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

/// Fourier coefficient of the depth-d IFS discretization, as a product over
/// digit levels times the phase of the common node offset.
inline cplx ifs_product(int R, const std::vector<double>& digits, int depth, long k, double offset, double mass = 1.0)
{
    lcplx prod = phase(offset, k) * static_cast<long double>(mass);
    long double scale = 1.0L;
    for (int j = 1; j <= depth; ++j) {
        scale /= R;
        lcplx level = 0;
        for (double d : digits)
            level += phase(d * scale, k);
        prod *= level / static_cast<long double>(digits.size());
    }
    return {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
}

struct McEstimate {
    cplx mean;
    double stderr_;
};

/// Monte Carlo estimate of the (infinite-depth) IFS Fourier coefficient from
/// random digit expansions truncated at 40 levels.
inline std::vector<McEstimate> ifs_monte_carlo(int R, const std::vector<double>& digits, const std::vector<long>& ks,
                                               std::size_t samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, digits.size() - 1);
    std::vector<cplx> sum(ks.size()), sum2(ks.size());
    std::vector<double> sq(ks.size());
    for (std::size_t s = 0; s < samples; ++s) {
        double x = 0.0, scale = 1.0;
        for (int j = 0; j < 40; ++j) {
            scale /= R;
            x += digits[pick(rng)] * scale;
        }
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const double t = -2.0 * M_PI * static_cast<double>(ks[i]) * x;
            const cplx v{std::cos(t), std::sin(t)};
            sum[i] += v;
            sq[i] += std::norm(v);
        }
    }
    std::vector<McEstimate> out;
    const double n = static_cast<double>(samples);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const cplx mean = sum[i] / n;
        const double var = sq[i] / n - std::norm(mean);
        out.push_back({mean, std::sqrt(std::max(var, 0.0) / n)});
    }
    return out;
}

/// M(m, n) = sum_i w_i e^{-2 pi i (n - m) x_i}.
inline Eigen::MatrixXcd moment_dense(const std::vector<double>& x, const std::vector<double>& w, int N)
{
    Eigen::MatrixXcd M(N, N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            M(m, n) = fourier(x, w, n - m);
    return M;
}

/// sum_{m,n} c_{mn} conj(w)^m z^n with explicit powers.
inline cplx kernel_sum(const Eigen::MatrixXcd& C, cplx w, cplx z)
{
    lcplx acc = 0;
    for (Eigen::Index m = 0; m < C.rows(); ++m)
        for (Eigen::Index n = 0; n < C.cols(); ++n) {
            const cplx term = C(m, n) * std::pow(std::conj(w), static_cast<int>(m)) * std::pow(z, static_cast<int>(n));
            acc += lcplx(term.real(), term.imag());
        }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

/// sum_{n<N} q^n.
inline cplx geometric_sum(cplx q, std::size_t N)
{
    cplx acc = 0, p = 1;
    for (std::size_t n = 0; n < N; ++n) {
        acc += p;
        p *= q;
    }
    return acc;
}

/// Hand-rolled generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    cplx normal() { return {nd_(rng_), nd_(rng_)}; }
    cplx disc(double rmax) { return std::polar(rmax * std::sqrt(uniform()), 2.0 * M_PI * uniform()); }

    std::vector<cplx> vec(std::size_t n)
    {
        std::vector<cplx> v(n);
        for (auto& z : v)
            z = normal();
        return v;
    }

    /// B B^H / n: Hermitian positive semidefinite, rank `rank`.
    Eigen::MatrixXcd psd(int n, int rank)
    {
        Eigen::MatrixXcd b(n, rank);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < rank; ++j)
                b(i, j) = normal();
        Eigen::MatrixXcd c = b * b.adjoint() / static_cast<double>(n);
        // Exact Hermitian symmetry.
        return (c + c.adjoint()) / 2.0;
    }

    Eigen::MatrixXcd matrix(int rows, int cols)
    {
        Eigen::MatrixXcd a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                a(i, j) = normal();
        return a;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> nd_{0.0, 1.0};
};

} // namespace oracle

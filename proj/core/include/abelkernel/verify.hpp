#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelkernel/boundary.hpp"
#include "abelkernel/moment.hpp"

namespace abelkernel {

/// Finite sample of the span V of geometric vectors: single points plus
/// linear combinations over distinct points, all with |z| <= 0.95.
class DiscSampleSet {
public:
    struct Sample {
        std::string descriptor;
        VElement v;
    };

    DiscSampleSet(std::vector<DiscPoint> points, std::vector<VElement> combos);

    /// Radii {0.3, 0.6, 0.9} x 8 equispaced angles, plus `combos` random
    /// 3-term combinations with unit-norm coefficient vectors (mt19937_64).
    static DiscSampleSet default_set(std::uint64_t seed = kDefaultSeed, std::size_t combos = 8);

    const std::vector<DiscPoint>& points() const noexcept { return points_; }
    const std::vector<VElement>& combos() const noexcept { return combos_; }
    std::vector<Sample> samples() const;
    std::size_t size() const noexcept { return points_.size() + combos_.size(); }

    static constexpr double kMaxModulus = 0.95;
    static constexpr std::uint64_t kDefaultSeed = 20170901;

private:
    std::vector<DiscPoint> points_;
    std::vector<VElement> combos_;
};

enum class VerdictStatus { pass, fail, inconclusive };

struct SampleOutcome {
    std::string descriptor;
    /// NaN when the sample is inconclusive.
    double residual = 0.0;
    bool inconclusive = false;
    /// sup-norm of the reference vector (C v for membership, |K(w,z)| for
    /// reproduction).
    double reference_norm = 0.0;
    std::optional<LimitSummary> worst_inner;
    std::optional<LimitSummary> worst_outer;
    /// Representative Abel limit kept for plotting (membership: the outer
    /// probe of largest modulus).
    std::optional<AbelResult> trace;
};

struct Verdict {
    bool passed = false;
    VerdictStatus status = VerdictStatus::inconclusive;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::vector<SampleOutcome> per_sample;
    std::size_t inconclusive_count = 0;
    double max_reference_norm = 0.0;
};

struct VerifyOptions {
    double tol = 1e-8;
    LimitOptions limits;
    /// Outer limits are probed for m < probe_order; default max(2 * order, 64).
    std::optional<std::size_t> probe_order;
    bool keep_traces = false;
};

/// Tests C v = (C (*) A_ebar)(S_ebar (*) C) v on every sample v: the inner
/// Abel limit is taken nodewise at tol / 10, the outer one entrywise at tol.
/// Samples with an unresolved limit count as inconclusive (fail closed).
Verdict membership_test(const CoeffMatrix& C, const DiscretizedMeasure& m, const DiscSampleSet& samples,
                        const VerifyOptions& options = {});

/// |K_C(w, z) - <K*_w, K*_z>_mu| per pair. Throws BoundaryError when a
/// boundary function does not exist.
Verdict reproduction_check(const CoeffMatrix& C, const DiscretizedMeasure& m,
                           const std::vector<std::pair<DiscPoint, DiscPoint>>& pairs,
                           const VerifyOptions& options = {});

/// |<K*_w, K*_z>_mu - <F_z, F_w>_mu| with K*_w the limit of
/// S_e D_s C^T conj(w)-vector and F_z the limit of S_ebar D_s C z-vector.
double swapping_check(const CoeffMatrix& C, const DiscretizedMeasure& m, DiscPoint w, DiscPoint z, double tol,
                      const LimitOptions& options = {});

/// |lim_r <C^T D_r A_e h, v> - <h, L v>_mu|, L v the nodewise limit of
/// S_e D_s C^T v.
double adjoint_check(const CoeffMatrix& C, const DiscretizedMeasure& m, const MuFunction& h, const SeqVector& v,
                     const SGrid& grid, double tol, const LimitOptions& options = {});

/// ||C_N - C_N M_N C_N||_F on the order-N truncations, N <= 512.
double cmc_bounded_check(const CoeffMatrix& C, const DiscretizedMeasure& m, std::size_t N);

std::string_view to_string(VerdictStatus s) noexcept;

} // namespace abelkernel

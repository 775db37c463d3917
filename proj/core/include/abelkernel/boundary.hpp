#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "abelkernel/abel.hpp"
#include "abelkernel/kernel.hpp"

namespace abelkernel {

/// Compact per-limit diagnostics.
struct LimitSummary {
    cplx value;
    double est_error = 0.0;
    bool converged = false;
    bool divergent = false;
    std::optional<double> growth_exponent;
};

LimitSummary summarize(const AbelResult& r);

/// Grid and numerical knobs shared by the boundary and verify pipelines.
struct LimitOptions {
    SGrid grid = SGrid::geometric();
    double divergence_slope = 0.25;
    /// Cap on materialized sequence lengths and summed terms.
    std::size_t max_terms = 20000;
};

/// Nodewise Abel limit of s -> synthesis_damped(C, v, s, m, conjugated).
struct NodewiseLimit {
    MuFunction values;
    std::vector<LimitSummary> diagnostics;
    std::size_t unresolved = 0;  // nodes that did not converge

    bool all_converged() const noexcept { return unresolved == 0; }
    double max_est_error() const noexcept;
};

NodewiseLimit nodewise_synthesis_limit(const CoeffMatrix& C, const SeqVector& v, const DiscretizedMeasure& m,
                                       bool conjugated, double tol, const LimitOptions& options = {});

/// K*_w on the nodes of the measure.
struct BoundaryFunction {
    MuFunction base;
    DiscPoint w;
    std::vector<LimitSummary> abel_diagnostics;
};

/// Raised when some node's limit diverges or stays inconclusive.
class BoundaryError : public NumericalError {
public:
    BoundaryError(const std::string& what, DiscPoint w, std::vector<LimitSummary> diagnostics)
        : NumericalError(what), w_(w), diagnostics_(std::move(diagnostics)) {}

    DiscPoint w() const noexcept { return w_; }
    const std::vector<LimitSummary>& diagnostics() const noexcept { return diagnostics_; }

private:
    DiscPoint w_;
    std::vector<LimitSummary> diagnostics_;
};

/// Limit of S_e D_s C^T conj(w)-vector as s -> 1^-, taken node by node.
/// On a discretized measure weak and norm limits coincide.
BoundaryFunction boundary_function(const CoeffMatrix& C, DiscPoint w, const DiscretizedMeasure& m, double tol,
                                   const LimitOptions& options = {});

/// |lim <S_e D_s C^T conj(w)-vector, h>_mu - <K*_w, h>_mu| for each h, the
/// left side computed as a scalar pairing. Non-converged pairings yield +inf.
std::vector<double> weak_limit_check(const CoeffMatrix& C, DiscPoint w, const DiscretizedMeasure& m,
                                     std::span<const MuFunction> tests, double tol,
                                     const LimitOptions& options = {});

} // namespace abelkernel

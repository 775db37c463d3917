#include "abelkernel/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace abelkernel {

LimitSummary summarize(const AbelResult& r)
{
    return LimitSummary{r.value, r.est_error, r.converged, r.divergent, r.growth_exponent};
}

double NodewiseLimit::max_est_error() const noexcept
{
    double e = 0.0;
    for (const auto& d : diagnostics)
        e = std::max(e, d.est_error);
    return e;
}

NodewiseLimit nodewise_synthesis_limit(const CoeffMatrix& C, const SeqVector& v, const DiscretizedMeasure& m,
                                       bool conjugated, double tol, const LimitOptions& options)
{
    const auto& grid = options.grid.values();
    std::vector<MuFunction> per_s;
    per_s.reserve(grid.size());
    for (double s : grid)
        per_s.push_back(synthesis_damped(C, v, s, m, conjugated));

    std::vector<cplx> values(m.size());
    std::vector<LimitSummary> diag(m.size());
    std::size_t unresolved = 0;
    std::vector<AbelSample> samples(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t k = 0; k < grid.size(); ++k)
            samples[k] = AbelSample{grid[k], per_s[k][i]};
        const AbelResult r = abel_limit(samples, AbelOptions{tol, options.divergence_slope});
        values[i] = r.value;
        diag[i] = summarize(r);
        if (!r.converged)
            ++unresolved;
    }
    return NodewiseLimit{MuFunction(m, std::move(values)), std::move(diag), unresolved};
}

BoundaryFunction boundary_function(const CoeffMatrix& C, DiscPoint w, const DiscretizedMeasure& m, double tol,
                                   const LimitOptions& options)
{
    if (!(tol > 0.0))
        throw InvalidArgument("boundary_function: tol must be positive");
    const VElement wbar = VElement::single(w.conjugated());
    const std::size_t len = wbar.certified_length(C.order(), C.norm_bound(), tol / 10.0, options.max_terms);
    NodewiseLimit lim = nodewise_synthesis_limit(C, wbar.materialize(len), m, false, tol, options);
    if (!lim.all_converged()) {
        std::ostringstream msg;
        msg << "no boundary function at w = " << w.value() << ": " << lim.unresolved << " of " << m.size()
            << " node limits did not converge";
        throw BoundaryError(msg.str(), w, std::move(lim.diagnostics));
    }
    return BoundaryFunction{std::move(lim.values), w, std::move(lim.diagnostics)};
}

std::vector<double> weak_limit_check(const CoeffMatrix& C, DiscPoint w, const DiscretizedMeasure& m,
                                     std::span<const MuFunction> tests, double tol, const LimitOptions& options)
{
    const BoundaryFunction k = boundary_function(C, w, m, tol, options);
    const VElement wbar = VElement::single(w.conjugated());
    const std::size_t len = wbar.certified_length(C.order(), C.norm_bound(), tol / 10.0, options.max_terms);
    const SeqVector x = wbar.materialize(len);
    const SequenceMap ct = SequenceMap::from_coeff(C.transposed());

    std::vector<double> residuals;
    residuals.reserve(tests.size());
    for (const auto& h : tests) {
        if (!(h.measure_id() == m.id()))
            throw InvalidArgument("weak_limit_check: test function lives on a different measure");
        const AbelResult p = abel_pairing(Synthesis{m, false}, ct, x, h, options.grid,
                                          PairingOptions{tol, options.divergence_slope, options.max_terms});
        residuals.push_back(p.converged ? std::abs(p.value - inner_product_mu(k.base, h))
                                        : std::numeric_limits<double>::infinity());
    }
    return residuals;
}

} // namespace abelkernel

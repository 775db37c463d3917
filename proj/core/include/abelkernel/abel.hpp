#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "abelkernel/coeff.hpp"
#include "abelkernel/measures.hpp"

namespace abelkernel {

/// Strictly increasing damping parameters in (0, 1).
class SGrid {
public:
    explicit SGrid(std::vector<double> values);

    /// s_k = 1 - 2^{-k}, k = k0..k1.
    static SGrid geometric(int k0 = 3, int k1 = 12);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
};

struct AbelSample {
    double s = 0.0;
    cplx g;
};

/// Outcome of one damped-pairing limit s -> 1^-. `converged` and `divergent`
/// are exclusive; neither set means inconclusive.
struct AbelResult {
    cplx value;
    double est_error = 0.0;
    bool converged = false;
    bool divergent = false;
    std::vector<AbelSample> samples;
    /// table[i][j] extrapolates samples i-j..i to s = 1; table[i][i] is the
    /// i-th diagonal extrapolant.
    std::vector<std::vector<cplx>> extrapolation_table;
    std::optional<double> growth_exponent;
    /// Grid points dropped because their truncation would exceed max_terms.
    std::size_t skipped_samples = 0;
};

struct AbelOptions {
    double tol = 1e-10;
    /// log|g| against -log(1 - s) slope above which the limit is declared
    /// divergent.
    double divergence_slope = 0.25;
};

/// Polynomial (Richardson/Neville) extrapolation in h = 1 - s to h = 0.
/// Needs at least four samples with strictly increasing s in (0, 1).
AbelResult abel_limit(std::vector<AbelSample> samples, const AbelOptions& options = {});

/// D_s v = (s^n v_n)_n, 0 < s < 1.
SeqVector damp(const SeqVector& v, double s);

/// Nodewise sum_m s^m (C v)_m conj(e_m)  (conjugated: S_ebar D_s C v), or
/// sum_m s^m (C^T v)_m e_m  (otherwise: S_e D_s C^T v).
MuFunction synthesis_damped(const CoeffMatrix& C, const SeqVector& v, double s, const DiscretizedMeasure& m,
                            bool conjugated);

/// <h, conj(e_n)>_mu (conjugated) or <h, e_n>_mu for n < order.
std::vector<cplx> analysis_coefficients(const MuFunction& h, std::size_t order, bool conjugated);

/// Entry m = sum_n c_{mn} r^n <h, conj(e_n)>_mu  (conjugated: C D_r A_ebar h),
/// or sum_n c_{nm} r^n <h, e_n>_mu  (otherwise: C^T D_r A_e h).
SeqVector analysis_damped(const CoeffMatrix& C, const MuFunction& h, double r, bool conjugated);

/// A matrix acting on sequences, possibly infinite in either direction.
/// Infinite matrices carry a bound on the modulus of their entries.
class SequenceMap {
public:
    using Index = std::size_t;
    using EntryFn = std::function<cplx(Index, Index)>;

    static SequenceMap finite(Eigen::MatrixXcd a);
    static SequenceMap from_coeff(const CoeffMatrix& C);
    /// rows/cols == nullopt means infinite.
    static SequenceMap generated(std::optional<Index> rows, std::optional<Index> cols, EntryFn entry,
                                 double entry_bound, std::string name);

    /// (1, 1, 1, ...) as a 1 x infinity row.
    static SequenceMap ones_row();
    /// (1, -1, 1, -1, ...)^T as an infinity x 1 column.
    static SequenceMap alternating_column();
    /// (1, 1, 1, ...)^T as an infinity x 1 column.
    static SequenceMap ones_column();

    std::optional<Index> rows() const noexcept { return rows_; }
    std::optional<Index> cols() const noexcept { return cols_; }
    double entry_bound() const noexcept { return bound_; }
    const std::string& name() const noexcept { return name_; }
    cplx entry(Index i, Index j) const;

    /// (T x)_k for k < limit.
    std::vector<cplx> apply_prefix(const SeqVector& x, Index limit) const;
    /// sum_i T_{ik} conj(y_i) for k < limit, i.e. the coefficients of
    /// <T u, y> = sum_k u_k a_k.
    std::vector<cplx> pairing_row(const SeqVector& y, Index limit) const;

private:
    std::optional<Index> rows_, cols_;
    double bound_ = 0.0;
    std::string name_;
    std::optional<CoeffMatrix> coeff_;
    std::optional<Eigen::MatrixXcd> dense_;
    EntryFn fn_;
};

/// S_e (or S_ebar when conjugated) into L^2(m).
struct Synthesis {
    DiscretizedMeasure measure;
    bool conjugated = false;
};

/// A_e (or A_ebar when conjugated) out of L^2(m).
struct Analysis {
    DiscretizedMeasure measure;
    bool conjugated = false;
};

using LeftOperator = std::variant<SequenceMap, Synthesis>;
using RightOperator = std::variant<SequenceMap, Analysis>;
using PairingVector = std::variant<SeqVector, MuFunction>;

struct PairingOptions {
    double tol = 1e-10;
    double divergence_slope = 0.25;
    /// Cap on the number of terms summed for one damping parameter.
    std::size_t max_terms = 20000;
};

/// Thrown for operator combinations the pairing does not support.
class UnsupportedCombination : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Samples g(s) = <T2 D_s T1 x, y> on the grid and extrapolates s -> 1^-.
/// Supported: (matrix, matrix), (synthesis, matrix), (matrix, analysis).
/// Infinite sums are truncated per s so that the tail is at most tol / 10;
/// grid points needing more than max_terms terms are skipped. Divergence is
/// reported in the result, never thrown.
AbelResult abel_pairing(const LeftOperator& t2, const RightOperator& t1, const PairingVector& x,
                        const PairingVector& y, const SGrid& grid, const PairingOptions& options = {});

} // namespace abelkernel

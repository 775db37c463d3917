#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "abelkernel/coeff.hpp"
#include "abelkernel/measures.hpp"

namespace abelkernel {

/// Schema violation in a JSON document; `pointer()` is a JSON pointer to
/// the offending value.
class SpecError : public InvalidArgument {
public:
    SpecError(std::string pointer, const std::string& message);
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

using nlohmann::json;

/// A measure spec together with the discretization resolution to use.
/// Without an explicit resolution, Lebesgue uses 512 nodes and densities
/// their full grid; atomic and IFS measures ignore it.
struct MeasureDocument {
    MeasureSpec spec;
    std::optional<std::size_t> resolution;

    std::size_t effective_resolution() const;
    DiscretizedMeasure discretize() const;
};

inline constexpr std::size_t kDefaultLebesgueResolution = 512;

/// Accepts a complex number as a JSON number or an [re, im] pair.
cplx parse_complex(const json& j, const std::string& pointer);
json complex_to_json(cplx z);

/// Positions may be numbers, decimal strings ("0.25") or fractions ("1/3").
double parse_position(const json& j, const std::string& pointer);

MeasureDocument parse_measure(const json& j, const std::string& pointer = "");
json to_json(const MeasureDocument& m);

struct PowerLaw {
    double exponent = 1.0;
    std::size_t length = 0;
};

/// Declarative coefficient matrix. Rank-one specs give x directly or as a
/// power law x_n = (n + 1)^{-exponent}; with `normalize` the synthesized
/// function sum conj(x_n) e_n is scaled to unit norm in L^2 of the run
/// measure, or of `normalize_with` when present. `scale` multiplies C.
struct MatrixSpec {
    enum class Kind { identity, diagonal, rank_one, dense };

    Kind kind = Kind::identity;
    std::size_t order = 0;
    std::vector<cplx> values;
    std::optional<PowerLaw> power_law;
    bool normalize = false;
    std::optional<MeasureDocument> normalize_with;
    Eigen::MatrixXcd entries;
    double scale = 1.0;

    /// True if building needs the run measure.
    bool needs_measure() const noexcept;
};

MatrixSpec parse_matrix(const json& j, const std::string& pointer = "");
json to_json(const MatrixSpec& m);

/// `run_measure` is required only when needs_measure().
CoeffMatrix build_matrix(const MatrixSpec& spec, const DiscretizedMeasure* run_measure = nullptr);

/// Reads and parses a JSON file; I/O and syntax errors become SpecError
/// with an empty pointer.
json read_json_file(const std::string& path);

} // namespace abelkernel

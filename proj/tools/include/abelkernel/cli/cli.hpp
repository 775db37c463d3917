#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelkernel/abel.hpp"
#include "abelkernel/spec_json.hpp"
#include "abelkernel/verify.hpp"

namespace abelkernel::cli {

using nlohmann::json;

/// Exit codes. verify-measure maps its verdict onto pass/fail/inconclusive;
/// other subcommands return ok, usage, or inconclusive when a numerical
/// failure is embedded in the report.
enum ExitCode : int { ok = 0, failed = 1, inconclusive = 2, usage = 3 };

struct GridParams {
    int k0 = 3;
    int k1 = 12;

    SGrid grid() const { return SGrid::geometric(k0, k1); }
};

/// Everything a run depends on. Paths are resolved to specs before run();
/// `config_json` of the resolved config is what gets hashed.
struct RunConfig {
    std::string subcommand;

    std::optional<MatrixSpec> matrix;
    std::optional<MeasureDocument> measure;

    double tol = 1e-8;
    GridParams grid;
    double divergence_slope = 0.25;
    std::size_t max_terms = 20000;
    std::uint64_t seed = DiscSampleSet::kDefaultSeed;
    std::size_t combos = 8;
    std::size_t reproduction_pairs = 10;

    // moments / bessel
    std::size_t kmax = 16;
    std::vector<std::size_t> orders{8, 16, 32, 64};
    // kernel-eval
    std::vector<cplx> points;
    // abel-eval
    json t2, t1, x, y;
    // boundary
    cplx w;

    std::filesystem::path out_dir = ".";
    bool write_report = false;
    bool emit_trace = false;
    bool reproducible = false;
};

/// Serializes the parts of the config that affect results.
json config_json(const RunConfig& c);

/// Reads a combined config document for verify-measure:
/// {"matrix": {...}, "measure": {...}, "tol": ..., "grid": {"k0", "k1"},
///  "seed": ..., "combos": ..., "reproduction_pairs": ..., "divergence_slope": ...}.
/// Fields absent from the document keep their values in `base`.
RunConfig parse_verify_config(const json& j, RunConfig base = {});

/// 64-bit FNV-1a of the compact config serialization, as 16 hex digits.
std::string config_hash(const json& config);

struct Trace {
    std::string name;
    AbelResult result;
};

struct Report {
    json body;
    std::vector<Trace> traces;
    /// CSV payload for subcommands whose primary output is tabular.
    std::optional<std::string> csv;
    int exit_code = ExitCode::ok;
};

/// Dispatches on config.subcommand. Numerical failures end up in the report;
/// SpecError and InvalidArgument propagate as usage errors.
Report run(const RunConfig& config);

/// Writes one CSV per trace into `dir`: s, Re g(s), Im g(s), extrapolant,
/// est_error. Returns the files written; an empty trace list writes nothing
/// and prints a warning.
std::vector<std::filesystem::path> emit_trace(const Report& report, const std::filesystem::path& dir,
                                              std::ostream& warnings);

/// CSV for a single Abel result (header included).
std::string trace_csv(const AbelResult& r);

/// Parses an abel-eval operator spec.
LeftOperator parse_left_operator(const json& j, const std::string& pointer);
RightOperator parse_right_operator(const json& j, const std::string& pointer);
/// Parses a vector spec; function-valued specs are evaluated on `measure`.
PairingVector parse_pairing_vector(const json& j, const std::string& pointer, const DiscretizedMeasure* measure);

/// Full command-line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Truncation cap from ABEL_KERNEL_MAX_N, or `fallback`.
std::size_t max_terms_from_env(std::size_t fallback = 20000);

} // namespace abelkernel::cli

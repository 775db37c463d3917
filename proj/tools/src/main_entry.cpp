#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "abelkernel/cli/cli.hpp"

namespace abelkernel::cli {

namespace {

/// Inline JSON when the argument looks like JSON, otherwise a file path.
json json_arg(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\n");
    if (first != std::string::npos && (s[first] == '{' || s[first] == '[')) {
        try {
            return json::parse(s);
        } catch (const json::parse_error& e) {
            throw SpecError("", std::string("inline JSON does not parse: ") + e.what());
        }
    }
    return read_json_file(s);
}

cplx parse_pair(const std::string& s, const char* what)
{
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos)
            return std::stod(s);
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(what) + ": expected RE,IM");
    }
}

GridParams parse_grid(const std::string& s)
{
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw InvalidArgument("--grid: expected K0,K1");
    try {
        GridParams g{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
        if (g.k0 < 1 || g.k1 > 50 || g.k1 - g.k0 + 1 < 4)
            throw InvalidArgument("--grid: need 1 <= K0 and at least four points up to K1 <= 50");
        return g;
    } catch (const std::logic_error&) {
        throw InvalidArgument("--grid: expected K0,K1");
    }
}

struct Args {
    std::string matrix, measure, config, points, t2, t1, x, y, grid, w, out;
    double tol = 0.0;
    double slope = 0.0;
    std::uint64_t seed = 0;
    std::size_t kmax = 16, combos = 8, pairs = 10;
    std::vector<std::size_t> orders;
    bool emit_trace = false, reproducible = false;
};

} // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical toolkit for Abel products, boundary functions and representing measures of "
                 "positive-matrix kernels"};
    app.require_subcommand(1);
    Args a;

    auto common = [&](CLI::App* s) {
        s->add_option("--tol", a.tol, "Tolerance (> 0)");
        s->add_option("--out", a.out, "Directory for report.json, CSV output and traces");
        s->add_flag("--reproducible", a.reproducible, "Omit the timestamp from the report");
        s->add_option("--grid", a.grid, "s-grid exponents K0,K1 for s_k = 1 - 2^-k");
        s->add_option("--divergence-slope", a.slope, "Log-log growth slope declaring divergence");
    };

    auto* moments = app.add_subcommand("moments", "Fourier coefficients of a measure as CSV");
    moments->add_option("--measure", a.measure, "Measure spec (file or inline JSON)")->required();
    moments->add_option("--kmax", a.kmax, "Largest k");
    common(moments);

    auto* bessel = app.add_subcommand("bessel", "Largest moment-matrix eigenvalue against truncation order");
    bessel->add_option("--measure", a.measure, "Measure spec")->required();
    bessel->add_option("--orders", a.orders, "Orders, comma separated")->delimiter(',');
    common(bessel);

    auto* keval = app.add_subcommand("kernel-eval", "K_C(w, z) on all pairs of the given points");
    keval->add_option("--matrix", a.matrix, "Matrix spec")->required();
    keval->add_option("--measure", a.measure, "Measure for normalized rank-one specs");
    keval->add_option("--points", a.points, "JSON list of [re, im] points (file or inline)")->required();
    common(keval);

    auto* aeval = app.add_subcommand("abel-eval", "Abel-damped pairing <T2 D_s T1 x, y> as s -> 1");
    aeval->add_option("--t2", a.t2, "Left operator spec")->required();
    aeval->add_option("--t1", a.t1, "Right operator spec")->required();
    aeval->add_option("--x", a.x, "Vector spec")->required();
    aeval->add_option("--y", a.y, "Vector spec")->required();
    aeval->add_flag("--emit-trace", a.emit_trace, "Write the (s, g(s)) trace as CSV");
    common(aeval);

    auto* bnd = app.add_subcommand("boundary", "Boundary function K*_w on the measure nodes");
    bnd->add_option("--matrix", a.matrix, "Matrix spec")->required();
    bnd->add_option("--measure", a.measure, "Measure spec")->required();
    bnd->add_option("--w", a.w, "Disc point RE,IM")->required();
    common(bnd);

    auto* ver = app.add_subcommand("verify-measure", "Test whether a measure represents K_C");
    auto* m_opt = ver->add_option("--matrix", a.matrix, "Matrix spec");
    auto* mu_opt = ver->add_option("--measure", a.measure, "Measure spec");
    auto* c_opt = ver->add_option("--config", a.config, "Combined config with matrix and measure");
    c_opt->excludes(m_opt)->excludes(mu_opt);
    m_opt->needs(mu_opt);
    mu_opt->needs(m_opt);
    ver->add_option("--seed", a.seed, "Seed for the random V-sample combinations");
    ver->add_option("--combos", a.combos, "Number of random 3-term combinations");
    ver->add_option("--pairs", a.pairs, "Number of reproduction pairs");
    ver->add_flag("--emit-trace", a.emit_trace, "Write per-sample (s, g(s)) CSVs");
    common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto given = [sub](const char* name) {
        const CLI::Option* o = sub->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    try {
        RunConfig c;
        c.subcommand = sub->get_name();
        c.max_terms = max_terms_from_env();
        if (!a.config.empty()) {
            c = parse_verify_config(read_json_file(a.config), c);
        } else if (c.subcommand == "verify-measure" && a.matrix.empty()) {
            throw InvalidArgument("verify-measure needs --config or both --matrix and --measure");
        }
        if (!a.measure.empty())
            c.measure = parse_measure(json_arg(a.measure), "");
        if (!a.matrix.empty())
            c.matrix = parse_matrix(json_arg(a.matrix), "");
        if (given("--tol")) {
            if (!(a.tol > 0.0))
                throw InvalidArgument("--tol must be positive");
            c.tol = a.tol;
        }
        if (given("--grid"))
            c.grid = parse_grid(a.grid);
        if (given("--divergence-slope"))
            c.divergence_slope = a.slope;
        if (given("--seed"))
            c.seed = a.seed;
        if (given("--combos"))
            c.combos = a.combos;
        if (given("--pairs"))
            c.reproduction_pairs = a.pairs;
        if (given("--kmax"))
            c.kmax = a.kmax;
        if (given("--orders"))
            c.orders = a.orders;
        if (!a.points.empty()) {
            const json p = json_arg(a.points);
            if (!p.is_array())
                throw SpecError("", "points must be a JSON array");
            for (std::size_t i = 0; i < p.size(); ++i)
                c.points.push_back(parse_complex(p[i], "/" + std::to_string(i)));
        }
        if (c.subcommand == "abel-eval") {
            c.t2 = json_arg(a.t2);
            c.t1 = json_arg(a.t1);
            c.x = a.x.front() == '{' || a.x.front() == '[' ? json_arg(a.x) : json::parse(a.x);
            c.y = a.y.front() == '{' || a.y.front() == '[' ? json_arg(a.y) : json::parse(a.y);
        }
        if (!a.w.empty())
            c.w = parse_pair(a.w, "--w");
        c.emit_trace = a.emit_trace;
        c.reproducible = a.reproducible;
        if (!a.out.empty()) {
            c.out_dir = a.out;
            c.write_report = true;
        }

        const Report r = run(c);
        const std::string body = r.body.dump(2) + "\n";
        if (r.csv)
            out << *r.csv;
        else
            out << body;
        if (c.write_report) {
            std::filesystem::create_directories(c.out_dir);
            std::ofstream(c.out_dir / "report.json") << body;
            if (r.csv)
                std::ofstream(c.out_dir / (c.subcommand + ".csv")) << *r.csv;
        }
        if (c.emit_trace)
            for (const auto& p : emit_trace(r, c.out_dir, err))
                err << "wrote " << p.string() << "\n";
        return r.exit_code;
    } catch (const SpecError& e) {
        err << "error: schema violation at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.what()
            << "\n";
        return ExitCode::usage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::usage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::inconclusive;
    }
}

} // namespace abelkernel::cli

#include <cstdio>
#include <cstdlib>

#include "abelkernel/cli/cli.hpp"

namespace abelkernel::cli {

json config_json(const RunConfig& c)
{
    json j;
    j["subcommand"] = c.subcommand;
    if (c.matrix)
        j["matrix"] = to_json(*c.matrix);
    if (c.measure)
        j["measure"] = to_json(*c.measure);
    j["tol"] = c.tol;
    j["grid"] = {{"k0", c.grid.k0}, {"k1", c.grid.k1}};
    j["divergence_slope"] = c.divergence_slope;
    j["max_terms"] = c.max_terms;
    j["seed"] = c.seed;
    if (c.subcommand == "verify-measure") {
        j["combos"] = c.combos;
        j["reproduction_pairs"] = c.reproduction_pairs;
    } else if (c.subcommand == "moments") {
        j["kmax"] = c.kmax;
    } else if (c.subcommand == "bessel") {
        j["orders"] = c.orders;
    } else if (c.subcommand == "kernel-eval") {
        json pts = json::array();
        for (cplx z : c.points)
            pts.push_back(complex_to_json(z));
        j["points"] = std::move(pts);
    } else if (c.subcommand == "abel-eval") {
        j["t2"] = c.t2;
        j["t1"] = c.t1;
        j["x"] = c.x;
        j["y"] = c.y;
    } else if (c.subcommand == "boundary") {
        j["w"] = complex_to_json(c.w);
    }
    return j;
}

namespace {

double positive(const json& j, const std::string& p)
{
    if (!j.is_number() || !(j.get<double>() > 0.0))
        throw SpecError(p, "expected a positive number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& p)
{
    if (!j.is_number_unsigned())
        throw SpecError(p, "expected a non-negative integer");
    return j.get<std::size_t>();
}

} // namespace

RunConfig parse_verify_config(const json& j, RunConfig base)
{
    if (!j.is_object())
        throw SpecError("", "expected an object");
    static const char* const allowed[] = {"subcommand", "matrix", "measure", "tol", "grid", "divergence_slope",
                                          "max_terms", "seed", "combos", "reproduction_pairs", "description"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw SpecError("/" + it.key(), "unknown field");
    }
    RunConfig c = std::move(base);
    if (j.contains("subcommand") && j["subcommand"] != "verify-measure")
        throw SpecError("/subcommand", "combined configs are for verify-measure");
    c.subcommand = "verify-measure";
    if (!j.contains("matrix"))
        throw SpecError("/matrix", "missing required field");
    if (!j.contains("measure"))
        throw SpecError("/measure", "missing required field");
    c.matrix = parse_matrix(j["matrix"], "/matrix");
    c.measure = parse_measure(j["measure"], "/measure");
    if (j.contains("tol"))
        c.tol = positive(j["tol"], "/tol");
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object() || !g.contains("k0") || !g.contains("k1") || !g["k0"].is_number_integer() ||
            !g["k1"].is_number_integer())
            throw SpecError("/grid", "expected {\"k0\": int, \"k1\": int}");
        c.grid = {g["k0"].get<int>(), g["k1"].get<int>()};
        if (c.grid.k0 < 1 || c.grid.k1 - c.grid.k0 + 1 < 4 || c.grid.k1 > 50)
            throw SpecError("/grid", "need 1 <= k0 and at least four grid points up to k1 <= 50");
    }
    if (j.contains("divergence_slope"))
        c.divergence_slope = positive(j["divergence_slope"], "/divergence_slope");
    if (j.contains("max_terms"))
        c.max_terms = count(j["max_terms"], "/max_terms");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw SpecError("/seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("combos"))
        c.combos = count(j["combos"], "/combos");
    if (j.contains("reproduction_pairs"))
        c.reproduction_pairs = count(j["reproduction_pairs"], "/reproduction_pairs");
    return c;
}

std::string config_hash(const json& config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::size_t max_terms_from_env(std::size_t fallback)
{
    const char* v = std::getenv("ABEL_KERNEL_MAX_N");
    if (v == nullptr || *v == '\0')
        return fallback;
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n < 1)
        throw InvalidArgument("ABEL_KERNEL_MAX_N must be a positive integer");
    return static_cast<std::size_t>(n);
}

} // namespace abelkernel::cli

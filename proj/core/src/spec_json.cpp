#include "abelkernel/spec_json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace abelkernel {

SpecError::SpecError(std::string pointer, const std::string& message)
    : InvalidArgument((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(std::move(pointer))
{
}

namespace {

std::string child(const std::string& p, const std::string& key) { return p + "/" + key; }
std::string child(const std::string& p, std::size_t i) { return p + "/" + std::to_string(i); }

const json& require(const json& j, const std::string& p, const char* key)
{
    if (!j.is_object())
        throw SpecError(p, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SpecError(child(p, key), "missing required field");
    return *it;
}

double as_number(const json& j, const std::string& p)
{
    if (!j.is_number())
        throw SpecError(p, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw SpecError(p, "expected a finite number");
    return v;
}

std::size_t as_count(const json& j, const std::string& p)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw SpecError(p, "expected a non-negative integer");
    return j.get<std::size_t>();
}

const json& as_array(const json& j, const std::string& p)
{
    if (!j.is_array())
        throw SpecError(p, "expected an array");
    return j;
}

std::string type_of(const json& j, const std::string& p)
{
    const json& t = require(j, p, "type");
    if (!t.is_string())
        throw SpecError(child(p, "type"), "expected a string");
    return t.get<std::string>();
}

void reject_unknown(const json& j, const std::string& p, std::initializer_list<const char*> allowed)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw SpecError(child(p, it.key()), "unknown field");
    }
}

bool parse_double_strict(std::string_view s, double& out)
{
    // from_chars for double is available in libstdc++ 11.
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

template <class Fn>
auto wrap(const std::string& p, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const SpecError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw SpecError(p, e.what());
    }
}

std::vector<cplx> complex_list(const json& j, const std::string& p)
{
    std::vector<cplx> out;
    const json& a = as_array(j, p);
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(parse_complex(a[i], child(p, i)));
    return out;
}

} // namespace

cplx parse_complex(const json& j, const std::string& p)
{
    if (j.is_number())
        return as_number(j, p);
    if (j.is_array() && j.size() == 2)
        return {as_number(j[0], child(p, 0)), as_number(j[1], child(p, 1))};
    throw SpecError(p, "expected a number or an [re, im] pair");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

double parse_position(const json& j, const std::string& p)
{
    double x = 0.0;
    if (j.is_number()) {
        x = as_number(j, p);
    } else if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) {
            if (!parse_double_strict(s, x))
                throw SpecError(p, "malformed decimal position '" + s + "'");
        } else {
            double num = 0.0, den = 0.0;
            if (!parse_double_strict(std::string_view(s).substr(0, slash), num) ||
                !parse_double_strict(std::string_view(s).substr(slash + 1), den) || den == 0.0)
                throw SpecError(p, "malformed fractional position '" + s + "'");
            x = num / den;
        }
    } else {
        throw SpecError(p, "expected a position (number or string)");
    }
    if (!(x >= 0.0 && x < 1.0))
        throw SpecError(p, "position must lie in [0, 1)");
    return x;
}

std::size_t MeasureDocument::effective_resolution() const
{
    if (resolution)
        return *resolution;
    if (spec.get_if<LebesgueMeasure>())
        return kDefaultLebesgueResolution;
    if (const auto* d = spec.get_if<DensityMeasure>())
        return d->grid.size();
    return 1;
}

DiscretizedMeasure MeasureDocument::discretize() const
{
    return abelkernel::discretize(spec, effective_resolution());
}

MeasureDocument parse_measure(const json& j, const std::string& p)
{
    const std::string type = type_of(j, p);
    std::optional<std::size_t> resolution;
    if (j.contains("resolution")) {
        resolution = as_count(j["resolution"], child(p, "resolution"));
        if (*resolution < 1)
            throw SpecError(child(p, "resolution"), "resolution must be >= 1");
    }

    if (type == "atomic") {
        reject_unknown(j, p, {"type", "atoms", "resolution"});
        const std::string ap = child(p, "atoms");
        const json& atoms = as_array(require(j, p, "atoms"), ap);
        std::vector<Atom> out;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const std::string ip = child(ap, i);
            if (!atoms[i].is_array() || atoms[i].size() != 2)
                throw SpecError(ip, "expected an [x, weight] pair");
            const double x = parse_position(atoms[i][0], child(ip, 0));
            const double w = as_number(atoms[i][1], child(ip, 1));
            if (!(w > 0.0))
                throw SpecError(child(ip, 1), "atom weight must be positive");
            out.push_back({CirclePoint(x), w});
        }
        return {wrap(ap, [&] { return MeasureSpec::atomic(std::move(out)); }), resolution};
    }
    if (type == "lebesgue") {
        reject_unknown(j, p, {"type", "mass", "resolution"});
        const double mass = j.contains("mass") ? as_number(j["mass"], child(p, "mass")) : 1.0;
        return {wrap(child(p, "mass"), [&] { return MeasureSpec::lebesgue(mass); }), resolution};
    }
    if (type == "density") {
        reject_unknown(j, p, {"type", "grid", "mass", "resolution"});
        const std::string gp = child(p, "grid");
        const json& g = as_array(require(j, p, "grid"), gp);
        std::vector<double> grid;
        for (std::size_t i = 0; i < g.size(); ++i)
            grid.push_back(as_number(g[i], child(gp, i)));
        double mass = 0.0;
        if (j.contains("mass")) {
            mass = as_number(j["mass"], child(p, "mass"));
        } else {
            for (double v : grid)
                mass += v;
            mass /= grid.empty() ? 1.0 : static_cast<double>(grid.size());
        }
        return {wrap(p, [&] { return MeasureSpec::density(std::move(grid), mass); }), resolution};
    }
    if (type == "ifs") {
        reject_unknown(j, p, {"type", "scale", "digits", "depth", "mass", "resolution"});
        const json& sc = require(j, p, "scale");
        if (!sc.is_number_integer())
            throw SpecError(child(p, "scale"), "expected an integer");
        const std::string dp = child(p, "digits");
        const json& d = as_array(require(j, p, "digits"), dp);
        std::vector<double> digits;
        for (std::size_t i = 0; i < d.size(); ++i)
            digits.push_back(as_number(d[i], child(dp, i)));
        int depth = 8;
        if (j.contains("depth")) {
            if (!j["depth"].is_number_integer())
                throw SpecError(child(p, "depth"), "expected an integer");
            depth = j["depth"].get<int>();
        }
        const double mass = j.contains("mass") ? as_number(j["mass"], child(p, "mass")) : 1.0;
        return {wrap(p, [&] { return MeasureSpec::ifs(sc.get<int>(), std::move(digits), depth, mass); }),
                resolution};
    }
    throw SpecError(child(p, "type"), "unknown measure type '" + type + "'");
}

json to_json(const MeasureDocument& m)
{
    json j;
    j["type"] = std::string(m.spec.kind());
    if (const auto* a = m.spec.get_if<AtomicMeasure>()) {
        json atoms = json::array();
        for (const auto& at : a->atoms)
            atoms.push_back(json::array({at.position.value(), at.weight}));
        j["atoms"] = std::move(atoms);
    } else if (const auto* l = m.spec.get_if<LebesgueMeasure>()) {
        j["mass"] = l->mass;
    } else if (const auto* d = m.spec.get_if<DensityMeasure>()) {
        j["grid"] = d->grid;
        j["mass"] = d->mass;
    } else if (const auto* f = m.spec.get_if<IfsMeasure>()) {
        j["scale"] = f->scale;
        j["digits"] = f->digits;
        j["depth"] = f->depth;
        j["mass"] = f->mass;
    }
    if (m.resolution)
        j["resolution"] = *m.resolution;
    return j;
}

bool MatrixSpec::needs_measure() const noexcept
{
    return kind == Kind::rank_one && normalize && !normalize_with;
}

MatrixSpec parse_matrix(const json& j, const std::string& p)
{
    const std::string type = type_of(j, p);
    MatrixSpec m;
    if (j.contains("scale")) {
        m.scale = as_number(j["scale"], child(p, "scale"));
        if (!(m.scale >= 0.0))
            throw SpecError(child(p, "scale"), "scale must be non-negative");
    }

    if (type == "identity") {
        reject_unknown(j, p, {"type", "order", "scale"});
        m.kind = MatrixSpec::Kind::identity;
        m.order = as_count(require(j, p, "order"), child(p, "order"));
        if (m.order < 1)
            throw SpecError(child(p, "order"), "order must be >= 1");
        return m;
    }
    if (type == "diagonal") {
        reject_unknown(j, p, {"type", "d", "scale"});
        m.kind = MatrixSpec::Kind::diagonal;
        m.values = complex_list(require(j, p, "d"), child(p, "d"));
        wrap(child(p, "d"), [&] { return CoeffMatrix::diagonal(m.values); });
        return m;
    }
    if (type == "rank_one") {
        reject_unknown(j, p, {"type", "x", "power_law", "normalize", "normalize_with", "scale"});
        m.kind = MatrixSpec::Kind::rank_one;
        const bool has_x = j.contains("x");
        const bool has_pl = j.contains("power_law");
        if (has_x == has_pl)
            throw SpecError(p, "rank_one needs exactly one of 'x' and 'power_law'");
        if (has_x) {
            m.values = complex_list(j["x"], child(p, "x"));
            if (m.values.empty())
                throw SpecError(child(p, "x"), "x must be non-empty");
        } else {
            const std::string pp = child(p, "power_law");
            const json& pl = j["power_law"];
            reject_unknown(pl, pp, {"exponent", "length"});
            m.power_law = PowerLaw{as_number(require(pl, pp, "exponent"), child(pp, "exponent")),
                                   as_count(require(pl, pp, "length"), child(pp, "length"))};
            if (m.power_law->length < 1)
                throw SpecError(child(pp, "length"), "length must be >= 1");
        }
        if (j.contains("normalize")) {
            if (!j["normalize"].is_boolean())
                throw SpecError(child(p, "normalize"), "expected a boolean");
            m.normalize = j["normalize"].get<bool>();
        }
        if (j.contains("normalize_with")) {
            if (!m.normalize)
                throw SpecError(child(p, "normalize_with"), "requires \"normalize\": true");
            m.normalize_with = parse_measure(j["normalize_with"], child(p, "normalize_with"));
        }
        return m;
    }
    if (type == "dense") {
        reject_unknown(j, p, {"type", "entries", "scale"});
        m.kind = MatrixSpec::Kind::dense;
        const std::string ep = child(p, "entries");
        const json& rows = as_array(require(j, p, "entries"), ep);
        const std::size_t n = rows.size();
        if (n < 1)
            throw SpecError(ep, "entries must be non-empty");
        m.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t r = 0; r < n; ++r) {
            const std::string rp = child(ep, r);
            const json& row = as_array(rows[r], rp);
            if (row.size() != n)
                throw SpecError(rp, "matrix must be square");
            for (std::size_t c = 0; c < n; ++c)
                m.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    parse_complex(row[c], child(rp, c));
        }
        wrap(ep, [&] { return CoeffMatrix::dense(m.entries); });
        return m;
    }
    throw SpecError(child(p, "type"), "unknown matrix type '" + type + "'");
}

json to_json(const MatrixSpec& m)
{
    json j;
    auto list = [](const std::vector<cplx>& v) {
        json a = json::array();
        for (cplx z : v)
            a.push_back(complex_to_json(z));
        return a;
    };
    switch (m.kind) {
    case MatrixSpec::Kind::identity:
        j["type"] = "identity";
        j["order"] = m.order;
        break;
    case MatrixSpec::Kind::diagonal:
        j["type"] = "diagonal";
        j["d"] = list(m.values);
        break;
    case MatrixSpec::Kind::rank_one:
        j["type"] = "rank_one";
        if (m.power_law)
            j["power_law"] = {{"exponent", m.power_law->exponent}, {"length", m.power_law->length}};
        else
            j["x"] = list(m.values);
        j["normalize"] = m.normalize;
        if (m.normalize_with)
            j["normalize_with"] = to_json(*m.normalize_with);
        break;
    case MatrixSpec::Kind::dense: {
        j["type"] = "dense";
        json rows = json::array();
        for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.entries.cols(); ++c)
                row.push_back(complex_to_json(m.entries(r, c)));
            rows.push_back(std::move(row));
        }
        j["entries"] = std::move(rows);
        break;
    }
    }
    if (m.scale != 1.0)
        j["scale"] = m.scale;
    return j;
}

CoeffMatrix build_matrix(const MatrixSpec& spec, const DiscretizedMeasure* run_measure)
{
    CoeffMatrix c = CoeffMatrix::identity(1);
    switch (spec.kind) {
    case MatrixSpec::Kind::identity:
        c = CoeffMatrix::identity(spec.order);
        break;
    case MatrixSpec::Kind::diagonal:
        c = CoeffMatrix::diagonal(spec.values);
        break;
    case MatrixSpec::Kind::dense:
        c = CoeffMatrix::dense(spec.entries);
        break;
    case MatrixSpec::Kind::rank_one: {
        std::vector<cplx> x = spec.values;
        if (spec.power_law) {
            x.resize(spec.power_law->length);
            for (std::size_t n = 0; n < x.size(); ++n)
                x[n] = std::pow(static_cast<double>(n + 1), -spec.power_law->exponent);
        }
        if (!spec.normalize) {
            c = CoeffMatrix::rank_one(std::move(x));
        } else if (spec.normalize_with) {
            c = rank_one_from_coeffs(x, spec.normalize_with->discretize(), true);
        } else {
            if (run_measure == nullptr)
                throw InvalidArgument("build_matrix: normalization needs a measure");
            c = rank_one_from_coeffs(x, *run_measure, true);
        }
        break;
    }
    }
    return spec.scale == 1.0 ? c : c.scaled(spec.scale);
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError("", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("", "'" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace abelkernel

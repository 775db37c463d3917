#include "abelkernel/cli/cli.hpp"

namespace abelkernel::cli {

namespace {

std::string child(const std::string& p, const char* key) { return p + "/" + key; }

std::string type_of(const json& j, const std::string& p)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw SpecError(child(p, "type"), "expected an object with a string 'type'");
    return j["type"].get<std::string>();
}

bool flag(const json& j, const std::string& p, const char* key)
{
    if (!j.contains(key))
        return false;
    if (!j[key].is_boolean())
        throw SpecError(child(p, key), "expected a boolean");
    return j[key].get<bool>();
}

DiscretizedMeasure operator_measure(const json& j, const std::string& p)
{
    if (!j.contains("measure"))
        throw SpecError(child(p, "measure"), "missing required field");
    return parse_measure(j["measure"], child(p, "measure")).discretize();
}

std::optional<SequenceMap> parse_sequence_map(const json& j, const std::string& p, const std::string& type)
{
    if (type == "ones_row")
        return SequenceMap::ones_row();
    if (type == "ones_column")
        return SequenceMap::ones_column();
    if (type == "alternating_column")
        return SequenceMap::alternating_column();
    if (type == "coeff") {
        if (!j.contains("matrix"))
            throw SpecError(child(p, "matrix"), "missing required field");
        const MatrixSpec spec = parse_matrix(j["matrix"], child(p, "matrix"));
        if (spec.needs_measure())
            throw SpecError(child(p, "matrix"), "normalization needs 'normalize_with' here");
        return SequenceMap::from_coeff(build_matrix(spec));
    }
    if (type == "matrix") {
        const std::string ep = child(p, "entries");
        if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty())
            throw SpecError(ep, "expected a non-empty array of rows");
        const json& rows = j["entries"];
        const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
        if (cols == 0)
            throw SpecError(ep + "/0", "expected a non-empty row");
        Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string rp = ep + "/" + std::to_string(r);
            if (!rows[r].is_array() || rows[r].size() != cols)
                throw SpecError(rp, "rows must have equal length");
            for (std::size_t c = 0; c < cols; ++c)
                a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    parse_complex(rows[r][c], rp + "/" + std::to_string(c));
        }
        return SequenceMap::finite(std::move(a));
    }
    return std::nullopt;
}

} // namespace

LeftOperator parse_left_operator(const json& j, const std::string& p)
{
    const std::string type = type_of(j, p);
    if (auto m = parse_sequence_map(j, p, type))
        return std::move(*m);
    if (type == "synthesis")
        return Synthesis{operator_measure(j, p), flag(j, p, "conjugated")};
    throw SpecError(child(p, "type"), "unknown left operator type '" + type + "'");
}

RightOperator parse_right_operator(const json& j, const std::string& p)
{
    const std::string type = type_of(j, p);
    if (auto m = parse_sequence_map(j, p, type))
        return std::move(*m);
    if (type == "analysis")
        return Analysis{operator_measure(j, p), flag(j, p, "conjugated")};
    throw SpecError(child(p, "type"), "unknown right operator type '" + type + "'");
}

PairingVector parse_pairing_vector(const json& j, const std::string& p, const DiscretizedMeasure* measure)
{
    if (j.is_array() || j.is_number()) {
        std::vector<cplx> v;
        if (j.is_number())
            v.push_back(parse_complex(j, p));
        else
            for (std::size_t i = 0; i < j.size(); ++i)
                v.push_back(parse_complex(j[i], p + "/" + std::to_string(i)));
        return SeqVector(std::move(v));
    }
    const std::string type = type_of(j, p);
    if (type == "geometric") {
        if (!j.contains("z") || !j.contains("length") || !j["length"].is_number_unsigned())
            throw SpecError(p, "geometric vectors need 'z' and a non-negative integer 'length'");
        const cplx z = parse_complex(j["z"], child(p, "z"));
        if (!(std::abs(z) < 1.0))
            throw SpecError(child(p, "z"), "|z| must be below 1");
        return SeqVector::geometric(z, j["length"].get<std::size_t>());
    }
    if (type == "basis") {
        if (!j.contains("n") || !j["n"].is_number_unsigned())
            throw SpecError(child(p, "n"), "expected a non-negative integer");
        const std::size_t n = j["n"].get<std::size_t>();
        return SeqVector::basis(n, n + 1);
    }
    if (type == "constant" || type == "exponential" || type == "values") {
        if (measure == nullptr)
            throw SpecError(p, "function vectors need a synthesis or analysis operator to supply the measure");
        if (type == "constant") {
            const cplx c = j.contains("value") ? parse_complex(j["value"], child(p, "value")) : cplx{1.0};
            return MuFunction::constant(*measure, c);
        }
        if (type == "exponential") {
            if (!j.contains("n") || !j["n"].is_number_integer())
                throw SpecError(child(p, "n"), "expected an integer");
            return exponential(*measure, j["n"].get<std::int64_t>());
        }
        const std::string vp = child(p, "values");
        if (!j.contains("values") || !j["values"].is_array() || j["values"].size() != measure->size())
            throw SpecError(vp, "expected one value per measure node (" + std::to_string(measure->size()) + ")");
        std::vector<cplx> vals;
        for (std::size_t i = 0; i < measure->size(); ++i)
            vals.push_back(parse_complex(j["values"][i], vp + "/" + std::to_string(i)));
        return MuFunction(*measure, std::move(vals));
    }
    throw SpecError(child(p, "type"), "unknown vector type '" + type + "'");
}

} // namespace abelkernel::cli

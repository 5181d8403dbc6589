#include "slantsub/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slantsub/expr.hpp"

namespace slantsub {

using nlohmann::json;

const SubmersionMap& Scenario::require_submersion() const {
    if (!submersion) fail("UsageError", "scenario '" + name + "' has no submersion map");
    return *submersion;
}

std::optional<double> Scenario::constant(const std::string& key) const {
    auto it = constants.find(key);
    if (it == constants.end()) return std::nullopt;
    return it->second;
}

namespace {

ExprPtr as_expr(const json& v, int dim, const std::map<std::string, double>& constants,
                const std::string& where) {
    if (v.is_number()) return make_const(v.get<double>());
    if (v.is_string()) return parse_expression(v.get<std::string>(), dim, constants);
    fail("ShapeMismatch", where + " entries must be numbers or expression strings");
}

std::vector<std::vector<ExprPtr>> expr_matrix(const json& v, int rows, int cols, int dim,
                                              const std::map<std::string, double>& constants,
                                              const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        fail("ShapeMismatch", where + " must be a " + std::to_string(rows) + "x" +
                                  std::to_string(cols) + " array");
    std::vector<std::vector<ExprPtr>> out(rows);
    for (int i = 0; i < rows; ++i) {
        const json& row = v[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            fail("ShapeMismatch", where + " must be a " + std::to_string(rows) + "x" +
                                      std::to_string(cols) + " array");
        for (int j = 0; j < cols; ++j)
            out[i].push_back(as_expr(row[j], dim, constants, where));
    }
    return out;
}

std::vector<ExprPtr> expr_vector(const json& v, int len, int dim,
                                 const std::map<std::string, double>& constants,
                                 const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != len)
        fail("ShapeMismatch", where + " must be an array of length " + std::to_string(len));
    std::vector<ExprPtr> out;
    out.reserve(len);
    for (int j = 0; j < len; ++j) out.push_back(as_expr(v[j], dim, constants, where));
    return out;
}

Mat eval_matrix(const std::vector<std::vector<ExprPtr>>& m, const Vec& coords) {
    Mat out(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            out(static_cast<int>(i), static_cast<int>(j)) = eval_expr(*m[i][j], coords);
    return out;
}

Vec eval_vector(const std::vector<ExprPtr>& m, const Vec& coords) {
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[static_cast<int>(i)] = eval_expr(*m[i], coords);
    return out;
}

Box parse_box(const json& v, int dim, const std::string& where) {
    for (const auto& [key, val] : v.items()) {
        (void)val;
        if (key != "lo" && key != "hi")
            fail("ShapeMismatch", where + ": unknown key '" + key + "'");
    }
    if (!v.contains("lo") || !v.contains("hi"))
        fail("ShapeMismatch", where + " needs 'lo' and 'hi' arrays");
    const json& lo = v["lo"];
    const json& hi = v["hi"];
    if (!lo.is_array() || !hi.is_array() || static_cast<int>(lo.size()) != dim ||
        static_cast<int>(hi.size()) != dim)
        fail("ShapeMismatch", where + " bounds must have length " + std::to_string(dim));
    Box box;
    box.lo = Vec(dim);
    box.hi = Vec(dim);
    for (int i = 0; i < dim; ++i) {
        box.lo[i] = lo[i].get<double>();
        box.hi[i] = hi[i].get<double>();
    }
    return box;
}

MetricField metric_from_json(const json& v, int dim,
                             const std::map<std::string, double>& constants,
                             const std::string& where) {
    if (v.is_string() && v.get<std::string>() == "identity") return MetricField::euclidean();
    auto entries = expr_matrix(v, dim, dim, dim, constants, where);
    return MetricField([entries](const Point& p) { return eval_matrix(entries, p.coords()); });
}

} // namespace

Scenario load_scenario_text(const std::string& json_text, const std::string& display_name) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.byte, std::string("valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) fail("ShapeMismatch", "scenario document must be a JSON object");

    static const std::vector<std::string> allowed = {
        "name", "dimension", "domain", "metric",    "phi",     "xi",
        "eta",  "map",       "target", "constants", "expected"};
    for (const auto& [key, val] : doc.items()) {
        (void)val;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail("ShapeMismatch", "unknown scenario key '" + key + "'");
    }
    for (const char* req : {"name", "dimension", "metric", "phi", "xi", "eta"})
        if (!doc.contains(req))
            fail("ShapeMismatch", std::string("scenario is missing required key '") + req + "'");

    const int dim = doc["dimension"].get<int>();
    if (dim < 1 || dim % 2 == 0)
        fail("ShapeMismatch", "scenario dimension must be odd and positive");

    std::map<std::string, double> constants;
    if (doc.contains("constants")) {
        if (!doc["constants"].is_object())
            fail("ShapeMismatch", "'constants' must be an object of numbers");
        for (const auto& [key, val] : doc["constants"].items()) {
            if (!val.is_number()) fail("ShapeMismatch", "constant '" + key + "' must be a number");
            constants[key] = val.get<double>();
        }
    }

    Box box = doc.contains("domain") ? parse_box(doc["domain"], dim, "'domain'")
                                     : Box::centered(dim, 0.9);

    MetricField metric = metric_from_json(doc["metric"], dim, constants, "'metric'");
    auto phi_entries = expr_matrix(doc["phi"], dim, dim, dim, constants, "'phi'");
    auto xi_entries = expr_vector(doc["xi"], dim, dim, constants, "'xi'");
    auto eta_entries = expr_vector(doc["eta"], dim, dim, constants, "'eta'");

    const std::string name = doc["name"].get<std::string>();
    ModelPtr model = make_model(name, dim, std::move(box), std::move(metric));
    AlmostContactStructure structure = AlmostContactStructure::make(
        model,
        EndomorphismField(
            [phi_entries](const Point& p) { return eval_matrix(phi_entries, p.coords()); }),
        VectorField([xi_entries](const Point& p) { return eval_vector(xi_entries, p.coords()); }),
        OneFormField(
            [eta_entries](const Point& p) { return eval_vector(eta_entries, p.coords()); }));

    Scenario sc{name, std::move(structure), std::nullopt, {}, {}, {}, {}, {}};
    sc.constants = constants;

    if (doc.contains("map") != doc.contains("target"))
        fail("ShapeMismatch", "'map' and 'target' must be given together");
    if (doc.contains("map")) {
        const json& tgt = doc["target"];
        if (!tgt.is_object()) fail("ShapeMismatch", "'target' must be an object");
        for (const auto& [key, val] : tgt.items()) {
            (void)val;
            if (key != "dimension" && key != "metric" && key != "domain")
                fail("ShapeMismatch", "unknown target key '" + key + "'");
        }
        if (!tgt.contains("dimension")) fail("ShapeMismatch", "'target' needs 'dimension'");
        const int tdim = tgt["dimension"].get<int>();
        if (tdim < 1 || tdim > dim)
            fail("ShapeMismatch", "target dimension must be between 1 and the source dimension");
        Box tbox = tgt.contains("domain") ? parse_box(tgt["domain"], tdim, "target 'domain'")
                                          : Box::centered(tdim, 2.0);
        MetricField tmetric = tgt.contains("metric")
                                  ? metric_from_json(tgt["metric"], tdim, constants,
                                                     "target 'metric'")
                                  : MetricField::euclidean();
        auto map_entries = expr_vector(doc["map"], tdim, dim, constants, "'map'");

        // Analytic Jacobian from the expression derivatives when the whole
        // matrix stays inside the language.
        std::vector<std::vector<ExprPtr>> jac(tdim);
        bool analytic = true;
        for (int a = 0; a < tdim && analytic; ++a)
            for (int j = 0; j < dim; ++j) {
                ExprPtr d = try_differentiate(map_entries[a], j);
                if (!d) {
                    analytic = false;
                    break;
                }
                jac[a].push_back(d);
            }

        SubmersionMap F{
            sc.structure,
            make_model(name + "-target", tdim, std::move(tbox), std::move(tmetric)),
            [map_entries](const Point& p) { return eval_vector(map_entries, p.coords()); },
            nullptr,
        };
        if (analytic)
            F.jacobian = [jac](const Point& p) { return eval_matrix(jac, p.coords()); };
        sc.submersion = std::move(F);
    }

    if (doc.contains("expected")) {
        const json& exp = doc["expected"];
        if (!exp.is_object()) fail("ShapeMismatch", "'expected' must be an object");
        for (const auto& [key, val] : exp.items()) {
            if (!val.is_object() || !val.contains("value") || !val.contains("provenance"))
                fail("ShapeMismatch",
                     "expected entry '" + key + "' needs 'value' and 'provenance'");
            for (const auto& [k2, v2] : val.items()) {
                (void)v2;
                if (k2 != "value" && k2 != "provenance")
                    fail("ShapeMismatch", "expected entry '" + key + "': unknown key '" + k2 + "'");
            }
            const std::string prov = val["provenance"].get<std::string>();
            if (val["value"].is_number())
                sc.expected_numbers[key] = {val["value"].get<double>(), prov};
            else if (val["value"].is_string())
                sc.expected_labels[key] = {val["value"].get<std::string>(), prov};
            else
                fail("ShapeMismatch", "expected entry '" + key + "' must be number or string");
        }
    }

    (void)display_name;
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("UsageError", "cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario_text(ss.str(), path);
}

Scenario load_scenario(const std::string& name_or_path) {
    if (is_builtin_name(name_or_path)) return builtin_scenario(name_or_path);
    if (std::filesystem::exists(name_or_path)) return load_scenario_file(name_or_path);
    fail("UsageError",
         "'" + name_or_path + "' is neither a builtin scenario nor a scenario file");
}

} // namespace slantsub

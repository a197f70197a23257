#include "json_io.hpp"

#include "adapters.hpp"
#include "text.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>

namespace cpl {

using nlohmann::json;

namespace {

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(where + " must be finite (NaN/Inf rejected)");
    return v;
}

const json& field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

double number_field(const json& j, const char* key, const std::string& where) {
    return finite_number(field(j, key, where), where + "." + key);
}

double number_field_or(const json& j, const char* key, const std::string& where, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    return finite_number(*it, where + "." + key);
}

// 1-based node index in documents, 0-based internally.
int node_index(const json& j, const char* key, std::size_t count, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer()) throw ParseError(where + "." + key + " must be an integer");
    const long long idx = v.get<long long>();
    if (idx < 1 || static_cast<std::size_t>(idx) > count) {
        throw ParseError(where + "." + key + " out of range");
    }
    return static_cast<int>(idx - 1);
}

Vector vector_field(const json& j, const char* key, int n, const std::string& where) {
    const json& arr = field(j, key, where);
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
        throw ParseError(where + "." + key + " must be an array of length " + std::to_string(n));
    }
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = finite_number(arr[i], where + "." + key + "[" + std::to_string(i) + "]");
    }
    return v;
}

LoadedSystem load_raw(const json& j) {
    const json& jn = field(j, "n", "raw");
    if (!jn.is_number_integer() || jn.get<long long>() < 1) {
        throw ParseError("raw.n must be a positive integer");
    }
    const int n = jn.get<int>();
    const json& ja = field(j, "A", "raw");
    if (!ja.is_array() || static_cast<int>(ja.size()) != n) {
        throw ParseError("raw.A must be an n x n array of arrays");
    }
    SystemData sys;
    sys.A = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = ja[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ParseError("raw.A row " + std::to_string(i + 1) + " must have n entries");
        }
        for (int k = 0; k < n; ++k) {
            sys.A(i, k) = finite_number(row[k], "raw.A entry");
        }
    }
    sys.b = vector_field(j, "b", n, "raw");
    sys.w = vector_field(j, "w", n, "raw");

    LoadedSystem loaded;
    loaded.model = "raw";
    loaded.validation = validate_system(sys);
    loaded.warnings = loaded.validation.warnings;
    loaded.sys = loaded.validation.passed ? symmetrized(std::move(sys)) : std::move(sys);
    return loaded;
}

LoadedSystem from_adapter(std::string model, AdapterResult result) {
    LoadedSystem loaded;
    loaded.model = std::move(model);
    loaded.sys = std::move(result.sys);
    loaded.validation = std::move(result.validation);
    loaded.warnings = std::move(result.warnings);
    return loaded;
}

LoadedSystem load_ac(const json& j) {
    AcGridSpec spec;
    const json& nodes = field(j, "nodes", "ac");
    if (!nodes.is_array() || nodes.empty()) throw ParseError("ac.nodes must be a non-empty array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string where = "ac.nodes[" + std::to_string(i + 1) + "]";
        AcNode node;
        node.shunt_admittance = number_field(nodes[i], "Y", where);
        node.constant_current = number_field(nodes[i], "k", where);
        node.reactive_power = number_field(nodes[i], "Q", where);
        spec.nodes.push_back(node);
    }
    const json& lines = field(j, "lines", "ac");
    if (!lines.is_array()) throw ParseError("ac.lines must be an array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = "ac.lines[" + std::to_string(i + 1) + "]";
        AcLine line;
        line.from = node_index(lines[i], "from", spec.nodes.size(), where);
        line.to = node_index(lines[i], "to", spec.nodes.size(), where);
        line.susceptance = number_field(lines[i], "B", where);
        spec.lines.push_back(line);
    }
    try {
        return from_adapter("ac", build_from_ac(spec));
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("ac spec: ") + err.what());
    }
}

HvdcEndpoint hvdc_endpoint(const json& j, const char* key, const HvdcSpec& spec,
                           const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_string()) throw ParseError(where + "." + key + " must be a node id like \"V1\" or \"P2\"");
    const std::string id = v.get<std::string>();
    if (id.size() < 2) throw ParseError(where + "." + key + ": bad node id \"" + id + "\"");
    const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(id[0])));
    if (kind != 'V' && kind != 'P') {
        throw ParseError(where + "." + key + ": node id must start with V or P");
    }
    int idx = 0;
    for (std::size_t i = 1; i < id.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) {
            throw ParseError(where + "." + key + ": bad node id \"" + id + "\"");
        }
        idx = idx * 10 + (id[i] - '0');
    }
    const std::size_t count =
        kind == 'V' ? spec.source_voltages.size() : spec.power_setpoints.size();
    if (idx < 1 || static_cast<std::size_t>(idx) > count) {
        throw ParseError(where + "." + key + ": node id \"" + id + "\" out of range");
    }
    return HvdcEndpoint{kind == 'V', idx - 1};
}

LoadedSystem load_hvdc(const json& j) {
    HvdcSpec spec;
    const json& vnodes = field(j, "v_nodes", "hvdc");
    if (!vnodes.is_array()) throw ParseError("hvdc.v_nodes must be an array");
    for (std::size_t i = 0; i < vnodes.size(); ++i) {
        spec.source_voltages.push_back(
            number_field(vnodes[i], "V", "hvdc.v_nodes[" + std::to_string(i + 1) + "]"));
    }
    const json& pnodes = field(j, "p_nodes", "hvdc");
    if (!pnodes.is_array() || pnodes.empty()) {
        throw ParseError("hvdc.p_nodes must be a non-empty array");
    }
    for (std::size_t i = 0; i < pnodes.size(); ++i) {
        const std::string where = "hvdc.p_nodes[" + std::to_string(i + 1) + "]";
        spec.power_setpoints.push_back(number_field(pnodes[i], "P", where));
        spec.shunt_conductances.push_back(number_field_or(pnodes[i], "G", where, 0.0));
    }
    const json& lines = field(j, "lines", "hvdc");
    if (!lines.is_array()) throw ParseError("hvdc.lines must be an array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = "hvdc.lines[" + std::to_string(i + 1) + "]";
        HvdcLine line;
        line.from = hvdc_endpoint(lines[i], "from", spec, where);
        line.to = hvdc_endpoint(lines[i], "to", spec, where);
        line.resistance = number_field(lines[i], "r", where);
        line.inductance = number_field_or(lines[i], "L", where, 0.0);
        spec.lines.push_back(line);
    }
    try {
        return from_adapter("hvdc", build_from_hvdc(spec));
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("hvdc spec: ") + err.what());
    }
}

LoadedSystem load_dc_microgrid(const json& j) {
    DcMicrogridSpec spec;
    const json& nodes = field(j, "nodes", "dc_microgrid");
    if (!nodes.is_array() || nodes.empty()) {
        throw ParseError("dc_microgrid.nodes must be a non-empty array");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string where = "dc_microgrid.nodes[" + std::to_string(i + 1) + "]";
        MicrogridNode node;
        node.filter_resistance = number_field(nodes[i], "Rt", where);
        node.shunt_admittance = number_field(nodes[i], "Y", where);
        node.constant_current = number_field(nodes[i], "k", where);
        node.power = number_field(nodes[i], "P", where);
        node.source_voltage = number_field(nodes[i], "u", where);
        node.filter_inductance = number_field_or(nodes[i], "Lt", where, 0.0);
        node.shunt_capacitance = number_field_or(nodes[i], "Ct", where, 0.0);
        spec.nodes.push_back(node);
    }
    const json& lines = field(j, "lines", "dc_microgrid");
    if (!lines.is_array()) throw ParseError("dc_microgrid.lines must be an array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = "dc_microgrid.lines[" + std::to_string(i + 1) + "]";
        MicrogridLine line;
        line.from = node_index(lines[i], "from", spec.nodes.size(), where);
        line.to = node_index(lines[i], "to", spec.nodes.size(), where);
        line.resistance = number_field(lines[i], "R", where);
        line.inductance = number_field_or(lines[i], "L", where, 0.0);
        spec.lines.push_back(line);
    }
    try {
        return from_adapter("dc_microgrid", build_from_dc_microgrid(spec));
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("dc_microgrid spec: ") + err.what());
    }
}

json to_json_array(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json validation_to_json(const ValidationReport& report) {
    json j;
    j["passed"] = report.passed;
    j["violations"] = json::array();
    for (const auto& v : report.violations) {
        j["violations"].push_back({{"rule", v.rule}, {"detail", v.detail}});
    }
    j["warnings"] = report.warnings;
    return j;
}

json stability_to_json(const StabilityReport& report) {
    json j;
    j["eigenvalues"] = to_json_array(report.eigenvalues);
    j["hurwitz"] = report.hurwitz;
    j["hyperbolicity_margin"] = report.hyperbolicity_margin;
    j["long_term_stable"] = report.long_term_stable;
    if (report.unique_stable.has_value()) j["unique_stable"] = *report.unique_stable;
    j["non_hyperbolic_suspect"] = report.non_hyperbolic_suspect;
    return j;
}

}  // namespace

LoadedSystem load_system_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw ParseError(std::string("invalid document: ") + err.what());
    }
    if (!j.is_object()) throw ParseError("top-level value must be an object");
    const json& model = field(j, "model", "input");
    if (!model.is_string()) throw ParseError("\"model\" must be a string");
    const std::string kind = model.get<std::string>();
    if (kind == "raw") return load_raw(j);
    if (kind == "ac") return load_ac(j);
    if (kind == "hvdc") return load_hvdc(j);
    if (kind == "dc_microgrid") return load_dc_microgrid(j);
    throw ParseError("unknown model \"" + kind + "\" (expected raw | ac | hvdc | dc_microgrid)");
}

std::string system_json(const SystemData& sys) {
    json j;
    j["model"] = "raw";
    j["n"] = sys.n();
    json rows = json::array();
    for (int i = 0; i < sys.n(); ++i) rows.push_back(to_json_array(sys.A.row(i)));
    j["A"] = rows;
    j["b"] = to_json_array(sys.b);
    j["w"] = to_json_array(sys.w);
    return j.dump(2);
}

std::string validation_json(const ValidationReport& report) {
    return validation_to_json(report).dump(2);
}

std::string analysis_report_json(const LoadedSystem& input, const Analysis& analysis,
                                 const std::optional<std::string>& trajectory_file,
                                 const std::optional<ReportTimings>& timings) {
    json j;
    j["input"] = {{"model", input.model}, {"n", input.sys.n()}};
    j["validation"] = validation_to_json(input.validation);
    j["seed"] = {{"z", to_json_array(analysis.seed.z)},
                 {"mu", analysis.seed.mu},
                 {"x0", to_json_array(analysis.seed.x0)},
                 {"margin", analysis.seed.margin}};

    const Outcome& out = analysis.outcome;
    json jout;
    jout["kind"] = outcome_name(out.kind);
    switch (out.kind) {
        case OutcomeKind::Dominant:
            jout["x_max"] = to_json_array(out.x_max);
            jout["residual"] = out.residual;
            break;
        case OutcomeKind::NoEquilibrium: {
            json idx = json::array();
            for (int i : out.collapsed) idx.push_back(i + 1);  // 1-based in reports
            jout["collapsed"] = idx;
            jout["t_collapse"] = out.t_collapse;
            break;
        }
        case OutcomeKind::Inconclusive:
            jout["detail"] = out.detail;
            jout["non_hyperbolic_suspect"] = out.non_hyperbolic_suspect;
            if (out.last_state.size() > 0) jout["last_state"] = to_json_array(out.last_state);
            break;
    }
    j["outcome"] = jout;
    if (out.stability.has_value()) j["stability"] = stability_to_json(*out.stability);
    if (trajectory_file.has_value()) j["trajectory_file"] = *trajectory_file;
    if (timings.has_value()) {
        j["timings"] = {{"total_ms", timings->total_ms}, {"analysis_ms", timings->analysis_ms}};
    }
    return j.dump(2);
}

std::string oracle_json(const EquilibriumList& list) {
    json j;
    j["points"] = json::array();
    for (const auto& p : list.points) {
        j["points"].push_back({{"x", to_json_array(p.x)}, {"hurwitz", p.hurwitz}});
    }
    j["exhaustive"] = list.exhaustive;
    if (list.grid_density > 0) j["grid_density"] = list.grid_density;
    if (list.scalar_case.has_value()) j["case"] = scalar_case_name(*list.scalar_case);
    return j.dump(2);
}

std::string trajectory_csv(const Trajectory& traj, int n) {
    std::string out = "t";
    for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
    out += "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += fmt_g17(traj.times[k]);
        for (int i = 0; i < n; ++i) {
            out += ',';
            out += fmt_g17(traj.states[k][i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace cpl

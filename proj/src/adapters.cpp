#include "adapters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace cpl {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

void require_index(int idx, std::size_t count, const char* what) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= count) {
        throw std::invalid_argument(std::string(what) + " index out of range");
    }
}

// Conductance-weighted graph Laplacian from (i, j, g) line entries. Lines are
// stamped in canonical order so the result is independent of list order.
Matrix line_laplacian(int n, std::vector<std::tuple<int, int, double>> lines) {
    for (auto& [i, j, g] : lines) {
        if (i > j) std::swap(i, j);
    }
    std::sort(lines.begin(), lines.end());
    Matrix lap = Matrix::Zero(n, n);
    for (const auto& [i, j, g] : lines) {
        lap(i, i) += g;
        lap(j, j) += g;
        lap(i, j) -= g;
        lap(j, i) -= g;
    }
    // Structural sanity of the weighted Laplacian; cannot trip for positive g.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && lap(i, j) > 0.0) {
                throw std::logic_error("line_laplacian: positive off-diagonal entry");
            }
        }
    }
    return lap;
}

AdapterResult finish(SystemData sys) {
    AdapterResult result;
    result.validation = validate_system(sys);
    result.warnings = result.validation.warnings;
    result.sys = result.validation.passed ? symmetrized(std::move(sys)) : std::move(sys);
    return result;
}

}  // namespace

AdapterResult build_from_ac(const AcGridSpec& spec) {
    const int n = static_cast<int>(spec.nodes.size());
    if (n < 1) throw std::invalid_argument("ac spec: at least one node required");
    for (const auto& node : spec.nodes) {
        require_finite(node.shunt_admittance, "ac node Y");
        require_finite(node.constant_current, "ac node k");
        require_finite(node.reactive_power, "ac node Q");
    }
    std::vector<std::tuple<int, int, double>> weighted;
    weighted.reserve(spec.lines.size());
    for (const auto& line : spec.lines) {
        require_index(line.from, spec.nodes.size(), "ac line from");
        require_index(line.to, spec.nodes.size(), "ac line to");
        if (line.from == line.to) throw std::invalid_argument("ac line endpoints must differ");
        require_finite(line.susceptance, "ac line B");
        if (line.susceptance > 0.0) {
            throw std::invalid_argument("ac line susceptance must be non-positive");
        }
        weighted.emplace_back(line.from, line.to, -line.susceptance);
    }

    SystemData sys;
    sys.A = line_laplacian(n, std::move(weighted));
    sys.b = Vector(n);
    sys.w = Vector(n);
    for (int i = 0; i < n; ++i) {
        sys.A(i, i) -= spec.nodes[i].shunt_admittance;
        sys.b[i] = -spec.nodes[i].reactive_power;
        sys.w[i] = spec.nodes[i].constant_current;
    }
    return finish(std::move(sys));
}

AdapterResult build_from_hvdc(const HvdcSpec& spec) {
    const int n = static_cast<int>(spec.power_setpoints.size());
    const int s = static_cast<int>(spec.source_voltages.size());
    if (n < 1) throw std::invalid_argument("hvdc spec: at least one power-controlled node required");
    if (spec.shunt_conductances.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("hvdc spec: one shunt conductance per power-controlled node");
    }
    for (double v : spec.source_voltages) require_finite(v, "hvdc source voltage");
    for (double p : spec.power_setpoints) require_finite(p, "hvdc power setpoint");
    for (double g : spec.shunt_conductances) require_finite(g, "hvdc shunt conductance");

    // Canonical line order: voltage-controlled nodes precede power-controlled
    // ones in the stacked numbering, lower stacked index first.
    auto stacked = [&](const HvdcEndpoint& e) {
        require_index(e.index, e.voltage_controlled ? spec.source_voltages.size()
                                                    : spec.power_setpoints.size(),
                      "hvdc line endpoint");
        return e.voltage_controlled ? e.index : s + e.index;
    };
    std::vector<std::tuple<int, int, double>> ordered;
    ordered.reserve(spec.lines.size());
    for (const auto& line : spec.lines) {
        require_finite(line.resistance, "hvdc line resistance");
        if (!(line.resistance > 0.0)) {
            throw std::invalid_argument("hvdc line resistance must be positive");
        }
        int a = stacked(line.from);
        int b = stacked(line.to);
        if (a == b) throw std::invalid_argument("hvdc line endpoints must differ");
        if (a > b) std::swap(a, b);
        ordered.emplace_back(a, b, line.resistance);
    }
    std::sort(ordered.begin(), ordered.end());

    SystemData sys;
    sys.A = Matrix::Zero(n, n);
    sys.b = Vector(n);
    sys.w = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
        sys.A(i, i) = spec.shunt_conductances[i];
        sys.b[i] = spec.power_setpoints[i];
    }
    for (const auto& [a, b, r] : ordered) {
        const double g = 1.0 / r;
        const bool a_is_v = a < s;
        const bool b_is_v = b < s;
        if (a_is_v && b_is_v) continue;  // no contribution to the reduction
        if (!a_is_v && !b_is_v) {
            const int p = a - s, q = b - s;
            sys.A(p, p) += g;
            sys.A(q, q) += g;
            sys.A(p, q) -= g;
            sys.A(q, p) -= g;
        } else {
            const int p = (a_is_v ? b : a) - s;
            const int v = a_is_v ? a : b;
            sys.A(p, p) += g;
            sys.w[p] += spec.source_voltages[v] * g;
        }
    }
    return finish(std::move(sys));
}

AdapterResult build_from_dc_microgrid(const DcMicrogridSpec& spec) {
    const int n = static_cast<int>(spec.nodes.size());
    if (n < 1) throw std::invalid_argument("dc_microgrid spec: at least one node required");
    for (const auto& node : spec.nodes) {
        require_finite(node.filter_resistance, "microgrid node Rt");
        require_finite(node.shunt_admittance, "microgrid node Y");
        require_finite(node.constant_current, "microgrid node k");
        require_finite(node.power, "microgrid node P");
        require_finite(node.source_voltage, "microgrid node u");
        if (!(node.filter_resistance > 0.0)) {
            throw std::invalid_argument("microgrid filter resistance must be positive");
        }
        if (node.shunt_admittance < 0.0) {
            throw std::invalid_argument("microgrid shunt admittance must be nonnegative");
        }
    }
    std::vector<std::tuple<int, int, double>> weighted;
    weighted.reserve(spec.lines.size());
    for (const auto& line : spec.lines) {
        require_index(line.from, spec.nodes.size(), "microgrid line from");
        require_index(line.to, spec.nodes.size(), "microgrid line to");
        if (line.from == line.to) throw std::invalid_argument("microgrid line endpoints must differ");
        require_finite(line.resistance, "microgrid line resistance");
        if (!(line.resistance > 0.0)) {
            throw std::invalid_argument("microgrid line resistance must be positive");
        }
        weighted.emplace_back(line.from, line.to, 1.0 / line.resistance);
    }

    SystemData sys;
    sys.A = line_laplacian(n, std::move(weighted));
    sys.b = Vector(n);
    sys.w = Vector(n);
    for (int i = 0; i < n; ++i) {
        const auto& node = spec.nodes[i];
        sys.A(i, i) += 1.0 / node.filter_resistance + node.shunt_admittance;
        sys.b[i] = node.power;
        sys.w[i] = node.source_voltage / node.filter_resistance - node.constant_current;
    }
    return finish(std::move(sys));
}

}  // namespace cpl

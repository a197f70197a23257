#include "sweep.hpp"

#include "text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cpl {

namespace {

void check_spec(const SweepSpec& spec) {
    const int n = spec.base.n();
    if (spec.axis_i < 0 || spec.axis_j < 0 || spec.axis_i >= n || spec.axis_j >= n ||
        spec.axis_i == spec.axis_j) {
        throw std::invalid_argument("sweep: axis indices must be distinct and within the system");
    }
    if (spec.steps_i < 2 || spec.steps_j < 2) {
        throw std::invalid_argument("sweep: each axis needs at least 2 steps");
    }
    if (!std::isfinite(spec.lo_i) || !std::isfinite(spec.hi_i) || !std::isfinite(spec.lo_j) ||
        !std::isfinite(spec.hi_j)) {
        throw std::invalid_argument("sweep: ranges must be finite");
    }
}

double grid_value(double lo, double hi, int steps, int k) {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

SweepCell classify_cell(const SystemData& base, int axis_i, int axis_j, double vi, double vj,
                        const IntegrationOptions& opts) {
    SweepCell cell;
    cell.value_i = vi;
    cell.value_j = vj;
    if (vi == 0.0) cell.warnings.push_back("b axis value crosses zero on axis i");
    if (vj == 0.0) cell.warnings.push_back("b axis value crosses zero on axis j");

    SystemData sys = base;
    sys.b[axis_i] = vi;
    sys.b[axis_j] = vj;
    try {
        const Analysis analysis = classify(sys, opts);
        cell.kind = analysis.outcome.kind;
        if (cell.kind == OutcomeKind::Dominant) {
            cell.x_max = analysis.outcome.x_max;
        }
    } catch (const std::exception& err) {
        cell.kind = OutcomeKind::Inconclusive;
        cell.warnings.push_back(err.what());
    }
    return cell;
}

}  // namespace

RegionMap sweep(const SweepSpec& spec, const IntegrationOptions& opts, int workers) {
    check_spec(spec);
    RegionMap map;
    map.steps_i = spec.steps_i;
    map.steps_j = spec.steps_j;
    const int total = spec.steps_i * spec.steps_j;
    map.cells.resize(total);

    IntegrationOptions cell_opts = opts;
    cell_opts.record_trajectory = false;

    auto run_cell = [&](int idx) {
        const int ki = idx / spec.steps_j;
        const int kj = idx % spec.steps_j;
        const double vi = grid_value(spec.lo_i, spec.hi_i, spec.steps_i, ki);
        const double vj = grid_value(spec.lo_j, spec.hi_j, spec.steps_j, kj);
        map.cells[idx] = classify_cell(spec.base, spec.axis_i, spec.axis_j, vi, vj, cell_opts);
    };

    workers = std::clamp(workers, 1, total);
    if (workers == 1) {
        for (int idx = 0; idx < total; ++idx) run_cell(idx);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
                    run_cell(idx);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    auto is_boundary_pair = [&](int a, int b) {
        const OutcomeKind ka = map.cells[a].kind;
        const OutcomeKind kb = map.cells[b].kind;
        return (ka == OutcomeKind::Dominant && kb == OutcomeKind::NoEquilibrium) ||
               (ka == OutcomeKind::NoEquilibrium && kb == OutcomeKind::Dominant);
    };
    for (int ki = 0; ki < spec.steps_i; ++ki) {
        for (int kj = 0; kj < spec.steps_j; ++kj) {
            const int idx = ki * spec.steps_j + kj;
            if (kj + 1 < spec.steps_j && is_boundary_pair(idx, idx + 1)) {
                map.boundary.emplace_back(idx, idx + 1);
            }
            if (ki + 1 < spec.steps_i && is_boundary_pair(idx, idx + spec.steps_j)) {
                map.boundary.emplace_back(idx, idx + spec.steps_j);
            }
        }
    }
    return map;
}

std::string region_csv(const RegionMap& map, int n) {
    std::string out = "b_i,b_j,outcome";
    for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
    out += "\n";
    for (const auto& cell : map.cells) {
        out += fmt_g17(cell.value_i);
        out += ',';
        out += fmt_g17(cell.value_j);
        out += ',';
        out += outcome_name(cell.kind);
        for (int i = 0; i < n; ++i) {
            out += ',';
            if (cell.kind == OutcomeKind::Dominant) out += fmt_g17(cell.x_max[i]);
        }
        out += '\n';
    }
    return out;
}

std::array<double, 2> bisect_boundary(const SystemData& base, int axis_i, int axis_j,
                                      std::array<double, 2> point_a, std::array<double, 2> point_b,
                                      const IntegrationOptions& opts, double rel_tol) {
    IntegrationOptions cell_opts = opts;
    cell_opts.record_trajectory = false;
    auto kind_at = [&](const std::array<double, 2>& p) {
        return classify_cell(base, axis_i, axis_j, p[0], p[1], cell_opts).kind;
    };
    OutcomeKind kind_a = kind_at(point_a);
    const OutcomeKind kind_b = kind_at(point_b);
    if (kind_a == kind_b) {
        throw std::invalid_argument("bisect_boundary: endpoints classify identically");
    }

    auto width = [&] {
        return std::max(std::abs(point_a[0] - point_b[0]), std::abs(point_a[1] - point_b[1]));
    };
    auto magnitude = [&] {
        return std::max({std::abs(point_a[0]), std::abs(point_a[1]), std::abs(point_b[0]),
                         std::abs(point_b[1]), 1.0});
    };
    while (width() > rel_tol * magnitude()) {
        const std::array<double, 2> mid{0.5 * (point_a[0] + point_b[0]),
                                        0.5 * (point_a[1] + point_b[1])};
        const OutcomeKind kind_mid = kind_at(mid);
        if (kind_mid == kind_a) {
            point_a = mid;
        } else if (kind_mid == kind_b) {
            point_b = mid;
        } else {
            // An inconclusive midpoint sits on the fold itself.
            return mid;
        }
    }
    return {0.5 * (point_a[0] + point_b[0]), 0.5 * (point_a[1] + point_b[1])};
}

std::vector<std::array<double, 2>> refine_boundary(const SweepSpec& spec, const RegionMap& map,
                                                   const IntegrationOptions& opts) {
    std::vector<std::array<double, 2>> points;
    points.reserve(map.boundary.size());
    for (const auto& [a, b] : map.boundary) {
        const auto& ca = map.cells[a];
        const auto& cb = map.cells[b];
        points.push_back(bisect_boundary(spec.base, spec.axis_i, spec.axis_j,
                                         {ca.value_i, ca.value_j}, {cb.value_i, cb.value_j}, opts));
    }
    return points;
}

std::string boundary_csv(const std::vector<std::array<double, 2>>& points) {
    std::string out = "b_i,b_j\n";
    for (const auto& p : points) {
        out += fmt_g17(p[0]);
        out += ',';
        out += fmt_g17(p[1]);
        out += '\n';
    }
    return out;
}

}  // namespace cpl

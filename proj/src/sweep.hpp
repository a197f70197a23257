#pragma once

#include "classify.hpp"
#include "system.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace cpl {

/// Two-axis slice through the power coefficients of a validated base system.
struct SweepSpec {
    SystemData base;
    int axis_i = 0;  // 0-based indices into b, distinct
    int axis_j = 1;
    double lo_i = 0.0, hi_i = 0.0;
    int steps_i = 2;
    double lo_j = 0.0, hi_j = 0.0;
    int steps_j = 2;
};

struct SweepCell {
    double value_i = 0.0;
    double value_j = 0.0;
    OutcomeKind kind = OutcomeKind::Inconclusive;
    Vector x_max;  // filled only for dominant cells
    std::vector<std::string> warnings;
};

struct RegionMap {
    int steps_i = 0;
    int steps_j = 0;
    std::vector<SweepCell> cells;  // row-major, index = ki * steps_j + kj
    // Adjacent cell pairs where a dominant cell touches an infeasible one.
    std::vector<std::pair<int, int>> boundary;
};

/// Classifies every grid cell independently (no warm starting, so results do
/// not depend on evaluation order or worker count). Per-cell failures are
/// recorded as inconclusive; the sweep itself never aborts.
RegionMap sweep(const SweepSpec& spec, const IntegrationOptions& opts, int workers = 1);

/// CSV with header  b_i,b_j,outcome,x1,...,xn ; x columns are empty unless
/// the cell is dominant. Byte-identical for identical inputs.
std::string region_csv(const RegionMap& map, int n);

/// Bisects the segment between two differently-classified parameter points
/// until the bracket shrinks to rel_tol of its magnitude; returns the
/// midpoint of the final bracket.
std::array<double, 2> bisect_boundary(const SystemData& base, int axis_i, int axis_j,
                                      std::array<double, 2> point_a, std::array<double, 2> point_b,
                                      const IntegrationOptions& opts, double rel_tol = 1e-3);

/// Refined boundary points for every boundary pair of a computed map.
std::vector<std::array<double, 2>> refine_boundary(const SweepSpec& spec, const RegionMap& map,
                                                   const IntegrationOptions& opts);

std::string boundary_csv(const std::vector<std::array<double, 2>>& points);

}  // namespace cpl

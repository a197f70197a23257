#pragma once

#include "system.hpp"

#include <optional>
#include <vector>

namespace cpl {

/// Qualitative behavior of the scalar system  x' = -a x - b/x + w.
enum class ScalarCase {
    UniqueAttractive,      // b < 0: one positive root, globally attractive
    NoEquilibrium,         // b > 0 and the quadratic has no positive roots
    NonHyperbolicDouble,   // b > 0, discriminant zero: a single double root
    StableUnstablePair,    // b > 0: two roots, the larger one stable
};

const char* scalar_case_name(ScalarCase c);

struct EquilibriumPoint {
    Vector x;
    bool hurwitz = false;
};

/// Equilibria found by an enumeration independent of the trajectory-based
/// classifier. Points are sorted lexicographically and pairwise separated.
struct EquilibriumList {
    std::vector<EquilibriumPoint> points;
    bool exhaustive = false;  // true only for the n = 1 closed form
    int grid_density = 0;
    std::optional<ScalarCase> scalar_case;
};

/// Positive roots of  a x^2 - w x + b = 0  with stability read off the sign of
/// -a + b/x^2. Requires a > 0 and b != 0.
EquilibriumList solve_scalar(double a, double b, double w);

/// Best-effort enumeration for n = 2: scans a logarithmic grid over the box
/// bracketing all equilibria, launches damped Newton from every cell where
/// both residual components change sign, and deduplicates. A larger
/// grid_density tightens the sweep.
EquilibriumList enumerate_equilibria_2d(const SystemData& sys, int grid_density = 400);

}  // namespace cpl

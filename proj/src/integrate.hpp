#pragma once

#include "system.hpp"

#include <string>
#include <vector>

namespace cpl {

struct IntegrationOptions {
    // The integrator noise floor in f is roughly |J| * rel_tol * |x|; it must
    // sit well below converge_tol * residual_scale or the convergence test
    // drowns in step noise, hence the two-decade gap between the defaults.
    double rel_tol = 1e-10;
    double abs_tol = 0.0;              // <= 0 selects 1e-12 * max_i x0_i
    double collapse_threshold = 1e-6;  // fraction of the initial coordinate
    double converge_tol = 1e-8;        // on |f(x)|_inf relative to residual_scale
    double max_time = 1e4;
    long max_steps = 2'000'000;
    double seed_safety = 1.05;         // forwarded to build_characteristic_seed
    bool record_trajectory = true;
};

struct TrajectoryEvent {
    double time = 0.0;
    std::string kind;  // "collapse" | "converged" | "budget"
};

/// Accepted integration steps of one run. When record_trajectory is off only
/// the first and last samples are kept.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<bool> derivative_negative;  // all components of f(x) < 0
    std::vector<TrajectoryEvent> events;
};

struct RawOutcome {
    enum class Kind { Collapsed, Converged, BudgetExhausted };
    Kind kind = Kind::BudgetExhausted;
    std::vector<int> collapsed_indices;  // 0-based, all with b_i > 0
    double t_collapse = 0.0;
    Vector x_limit;      // Converged
    Vector last_state;   // BudgetExhausted
    double last_time = 0.0;
    long steps = 0;
};

/// Adaptive Dormand-Prince 5(4) run of  x' = f(x)  from x0. A step that would
/// drive a coordinate to zero or below is bisected; once a coordinate falls
/// under collapse_threshold * x0_i with b_i > 0 and a negative, growing
/// derivative, the crossing is localized to 1e-3 relative time and reported as
/// Collapsed. Convergence means |f(x)|_inf <= converge_tol * residual_scale.
std::pair<Trajectory, RawOutcome> integrate_characteristic(const SystemData& sys, const Vector& x0,
                                                           const IntegrationOptions& opts);

/// Same stepper, but forced to land exactly on each requested grid time;
/// returns the states at the grid times it reached (the run stops early on
/// collapse). Used by order-preservation comparisons.
std::vector<Vector> integrate_on_grid(const SystemData& sys, const Vector& x0,
                                      const std::vector<double>& grid,
                                      const IntegrationOptions& opts);

/// Damped Newton polish of f(x) = 0 from a near-equilibrium start. Iterates
/// while the residual improves (all iterates stay positive) and throws
/// std::runtime_error if it cannot reach 1e-9 * residual_scale, which is the
/// signature of a non-hyperbolic suspect.
Vector refine_equilibrium(const SystemData& sys, const Vector& x_approx, int max_iter = 100);

inline constexpr double kRefineTol = 1e-9;

}  // namespace cpl

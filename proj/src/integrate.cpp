#include "integrate.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpl {

namespace {

// Dormand-Prince 5(4) tableau. The last stage is FSAL: k7 = f(x_new).
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

constexpr double kMinShrink = 0.2;
constexpr double kMaxGrow = 5.0;
constexpr double kSafety = 0.9;

bool all_positive(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) return false;
    }
    return true;
}

struct StepResult {
    bool stage_positive = false;
    double error = 0.0;  // scaled RMS error; accept when <= 1
    Vector x_new;
    Vector f_new;  // FSAL derivative at x_new
};

class Stepper {
  public:
    Stepper(const SystemData& sys, double rel_tol, double abs_tol)
        : sys_(sys), rel_tol_(rel_tol), abs_tol_(abs_tol) {}

    // One trial step from (x, k1 = f(x)) with size h.
    StepResult attempt(const Vector& x, const Vector& k1, double h) {
        StepResult res;
        Vector y = x + h * kA21 * k1;
        if (!all_positive(y)) return res;
        const Vector k2 = rhs(y);
        y = x + h * (kA31 * k1 + kA32 * k2);
        if (!all_positive(y)) return res;
        const Vector k3 = rhs(y);
        y = x + h * (kA41 * k1 + kA42 * k2 + kA43 * k3);
        if (!all_positive(y)) return res;
        const Vector k4 = rhs(y);
        y = x + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
        if (!all_positive(y)) return res;
        const Vector k5 = rhs(y);
        y = x + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
        if (!all_positive(y)) return res;
        const Vector k6 = rhs(y);
        res.x_new = x + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        if (!all_positive(res.x_new)) return res;
        res.f_new = rhs(res.x_new);
        res.stage_positive = true;

        const Vector err_vec =
            h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * res.f_new);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double sc = abs_tol_ + rel_tol_ * std::max(std::abs(x[i]), std::abs(res.x_new[i]));
            const double e = err_vec[i] / sc;
            acc += e * e;
        }
        res.error = std::sqrt(acc / static_cast<double>(x.size()));
        return res;
    }

    Vector rhs(const Vector& x) const { return -sys_.A * x - sys_.b.cwiseQuotient(x) + sys_.w; }

  private:
    const SystemData& sys_;
    double rel_tol_;
    double abs_tol_;
};

double initial_step(const Vector& x0, const Vector& f0, double max_time) {
    const double xn = x0.cwiseAbs().maxCoeff();
    const double fn = f0.cwiseAbs().maxCoeff();
    double h = fn > 0.0 ? 0.01 * xn / fn : 1e-3 * max_time;
    return std::clamp(h, 1e-12 * std::max(1.0, max_time), 0.1 * max_time);
}

double resolve_abs_tol(const IntegrationOptions& opts, const Vector& x0) {
    return opts.abs_tol > 0.0 ? opts.abs_tol : 1e-12 * x0.cwiseAbs().maxCoeff();
}

void check_options(const IntegrationOptions& opts) {
    if (!(opts.rel_tol > 0.0) || !(opts.converge_tol > 0.0) || !(opts.max_time > 0.0) ||
        opts.max_steps <= 0 || !(opts.collapse_threshold > 0.0) ||
        !(opts.collapse_threshold < 1.0)) {
        throw std::invalid_argument("integration options must be positive "
                                    "(collapse threshold strictly inside (0,1))");
    }
}

}  // namespace

std::pair<Trajectory, RawOutcome> integrate_characteristic(const SystemData& sys, const Vector& x0,
                                                           const IntegrationOptions& opts) {
    detail::require_positive_state(x0, sys.n(), "integrate_characteristic");
    check_options(opts);
    const int n = sys.n();
    const double conv_tol = opts.converge_tol * residual_scale(sys);
    Stepper stepper(sys, opts.rel_tol, resolve_abs_tol(opts, x0));

    Trajectory traj;
    RawOutcome out;

    double t = 0.0;
    Vector x = x0;
    Vector f = stepper.rhs(x0);
    Vector f_prev = f;

    auto record = [&](double tt, const Vector& xx, const Vector& ff) {
        if (!opts.record_trajectory && traj.times.size() >= 2) {
            traj.times.back() = tt;
            traj.states.back() = xx;
            traj.derivative_negative.back() = (ff.maxCoeff() < 0.0);
            return;
        }
        traj.times.push_back(tt);
        traj.states.push_back(xx);
        traj.derivative_negative.push_back(ff.maxCoeff() < 0.0);
    };
    record(t, x, f);

    if (f.cwiseAbs().maxCoeff() <= conv_tol) {
        out.kind = RawOutcome::Kind::Converged;
        out.x_limit = x;
        out.last_time = 0.0;
        traj.events.push_back({0.0, "converged"});
        return {std::move(traj), std::move(out)};
    }

    // Indices below the collapse threshold with b_i > 0 and a negative,
    // still-growing derivative; empty when the state is healthy.
    auto collapse_set = [&](const Vector& xx, const Vector& ff, const Vector& ff_ref) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i) {
            if (xx[i] < opts.collapse_threshold * x0[i] && sys.b[i] > 0.0 && ff[i] < 0.0 &&
                std::abs(ff[i]) >= std::abs(ff_ref[i])) {
                idx.push_back(i);
            }
        }
        return idx;
    };

    double h = initial_step(x0, f, opts.max_time);
    double h_detect = 0.0;  // step size at first collapse detection, for localization at tiny t
    long steps = 0;

    while (true) {
        if (t >= opts.max_time || steps >= opts.max_steps) {
            out.kind = RawOutcome::Kind::BudgetExhausted;
            out.last_state = x;
            out.last_time = t;
            out.steps = steps;
            traj.events.push_back({t, "budget"});
            return {std::move(traj), std::move(out)};
        }
        h = std::min(h, opts.max_time - t);
        const double h_floor = 1e-14 * std::max(1.0, t);
        if (h < h_floor) {
            // Stepper pinched at fixed t: the field is singular ahead. The
            // only singularity of this rhs is a coordinate reaching zero,
            // and coordinates with b_i < 0 are repelled from it, so a far
            // fallen coordinate with b_i > 0 and negative derivative is the
            // collapse signature even when it sits above the strict
            // threshold (which can be unreachable within the step floor).
            std::vector<int> idx = collapse_set(x, f, f_prev);
            if (idx.empty()) {
                for (int i = 0; i < n; ++i) {
                    if (sys.b[i] > 0.0 && f[i] < 0.0 && x[i] < 1e-2 * x0[i]) idx.push_back(i);
                }
            }
            if (!idx.empty()) {
                out.kind = RawOutcome::Kind::Collapsed;
                out.collapsed_indices = idx;
                out.t_collapse = t;
                out.last_time = t;
                out.steps = steps;
                traj.events.push_back({t, "collapse"});
            } else {
                out.kind = RawOutcome::Kind::BudgetExhausted;
                out.last_state = x;
                out.last_time = t;
                out.steps = steps;
                traj.events.push_back({t, "budget"});
            }
            return {std::move(traj), std::move(out)};
        }

        StepResult step = stepper.attempt(x, f, h);
        ++steps;
        if (!step.stage_positive) {
            h *= 0.5;
            continue;
        }
        if (step.error > 1.0) {
            h *= std::clamp(kSafety * std::pow(step.error, -0.2), kMinShrink, 1.0);
            continue;
        }

        const double t_new = t + h;
        const auto collapsed = collapse_set(step.x_new, step.f_new, f);
        if (!collapsed.empty()) {
            if (h_detect == 0.0) h_detect = h;
            // Localize the threshold crossing to 1e-3 relative by bisecting
            // the step instead of accepting it.
            if (h > 1e-3 * t_new && h > 1e-3 * h_detect) {
                h *= 0.5;
                continue;
            }
            record(t_new, step.x_new, step.f_new);
            out.kind = RawOutcome::Kind::Collapsed;
            out.collapsed_indices = collapsed;
            out.t_collapse = t_new;
            out.last_time = t_new;
            out.steps = steps;
            traj.events.push_back({t_new, "collapse"});
            return {std::move(traj), std::move(out)};
        }

        t = t_new;
        f_prev = f;
        x = step.x_new;
        f = step.f_new;
        record(t, x, f);

        if (f.cwiseAbs().maxCoeff() <= conv_tol) {
            out.kind = RawOutcome::Kind::Converged;
            out.x_limit = x;
            out.last_time = t;
            out.steps = steps;
            traj.events.push_back({t, "converged"});
            return {std::move(traj), std::move(out)};
        }

        h *= std::clamp(kSafety * std::pow(std::max(step.error, 1e-10), -0.2), kMinShrink, kMaxGrow);
    }
}

std::vector<Vector> integrate_on_grid(const SystemData& sys, const Vector& x0,
                                      const std::vector<double>& grid,
                                      const IntegrationOptions& opts) {
    detail::require_positive_state(x0, sys.n(), "integrate_on_grid");
    check_options(opts);
    Stepper stepper(sys, opts.rel_tol, resolve_abs_tol(opts, x0));

    std::vector<Vector> states;
    double t = 0.0;
    Vector x = x0;
    Vector f = stepper.rhs(x0);
    std::size_t next = 0;
    if (next < grid.size() && grid[next] <= 0.0) {
        states.push_back(x);
        ++next;
    }
    double h = initial_step(x0, f, grid.empty() ? 1.0 : grid.back());
    long steps = 0;

    while (next < grid.size() && steps < opts.max_steps) {
        const double target = grid[next];
        h = std::min(h, target - t);
        if (h < 1e-14 * std::max(1.0, t)) break;  // stalled (finite-time collapse ahead)

        StepResult step = stepper.attempt(x, f, h);
        ++steps;
        if (!step.stage_positive) {
            h *= 0.5;
            continue;
        }
        if (step.error > 1.0) {
            h *= std::clamp(kSafety * std::pow(step.error, -0.2), kMinShrink, 1.0);
            continue;
        }
        t += h;
        x = step.x_new;
        f = step.f_new;
        if (t >= target * (1.0 - 1e-14) || std::abs(t - target) < 1e-14 * std::max(1.0, target)) {
            states.push_back(x);
            ++next;
        }
        h *= std::clamp(kSafety * std::pow(std::max(step.error, 1e-10), -0.2), kMinShrink, kMaxGrow);
    }
    return states;
}

Vector refine_equilibrium(const SystemData& sys, const Vector& x_approx, int max_iter) {
    detail::require_positive_state(x_approx, sys.n(), "refine_equilibrium");
    const double scale = residual_scale(sys);
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * scale;

    Vector x = x_approx;
    Vector F = eval_rhs(sys, x);
    double res = F.cwiseAbs().maxCoeff();

    for (int iter = 0; iter < max_iter && res > floor; ++iter) {
        const Matrix J = eval_jacobian(sys, x);
        const Vector dx = Eigen::PartialPivLU<Matrix>(J).solve(-F);
        if (!dx.allFinite()) break;

        // Damp to stay in the positive orthant and to force residual descent.
        double alpha = 1.0;
        while (alpha > 1e-12 && !all_positive(x + alpha * dx)) alpha *= 0.5;
        bool improved = false;
        while (alpha > 1e-12) {
            const Vector x_try = x + alpha * dx;
            const Vector F_try = eval_rhs(sys, x_try);
            const double res_try = F_try.cwiseAbs().maxCoeff();
            if (res_try < res) {
                x = x_try;
                F = F_try;
                res = res_try;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) break;
    }

    if (res > kRefineTol * scale) {
        throw std::runtime_error("refine_equilibrium: Newton stalled at residual " +
                                 std::to_string(res) + " (non-hyperbolic suspect)");
    }
    return x;
}

}  // namespace cpl

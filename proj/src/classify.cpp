#include "classify.hpp"

#include <stdexcept>

namespace cpl {

const char* outcome_name(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Dominant: return "dominant";
        case OutcomeKind::NoEquilibrium: return "none";
        case OutcomeKind::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Analysis classify(const SystemData& sys, const IntegrationOptions& opts) {
    Analysis analysis;
    analysis.seed = build_characteristic_seed(sys, opts.seed_safety);
    auto [traj, raw] = integrate_characteristic(sys, analysis.seed.x0, opts);
    analysis.trajectory = std::move(traj);

    Outcome& out = analysis.outcome;
    switch (raw.kind) {
        case RawOutcome::Kind::Collapsed:
            out.kind = OutcomeKind::NoEquilibrium;
            out.collapsed = raw.collapsed_indices;
            out.t_collapse = raw.t_collapse;
            return analysis;

        case RawOutcome::Kind::BudgetExhausted:
            out.kind = OutcomeKind::Inconclusive;
            out.detail = "integration budget exhausted at t = " + std::to_string(raw.last_time);
            out.last_state = raw.last_state;
            return analysis;

        case RawOutcome::Kind::Converged: {
            Vector x_bar;
            try {
                x_bar = refine_equilibrium(sys, raw.x_limit);
            } catch (const std::runtime_error& err) {
                out.kind = OutcomeKind::Inconclusive;
                out.detail = err.what();
                out.non_hyperbolic_suspect = true;
                out.last_state = raw.x_limit;
                return analysis;
            }
            const StabilityReport report = assess(sys, x_bar);
            if (report.non_hyperbolic_suspect) {
                out.kind = OutcomeKind::Inconclusive;
                out.detail = "equilibrium found but its hyperbolicity margin is below tolerance";
                out.non_hyperbolic_suspect = true;
                out.last_state = x_bar;
                out.stability = report;
                return analysis;
            }
            out.kind = OutcomeKind::Dominant;
            out.x_max = x_bar;
            out.residual = eval_rhs(sys, x_bar).cwiseAbs().maxCoeff();
            out.stability = report;
            return analysis;
        }
    }
    return analysis;
}

}  // namespace cpl

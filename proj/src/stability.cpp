#include "stability.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace cpl {

StabilityReport assess(const SystemData& sys, const Vector& x_bar, double hyper_tol) {
    detail::require_positive_state(x_bar, sys.n(), "assess");

    Matrix jac = eval_jacobian(sys, x_bar);
    jac = 0.5 * (jac + jac.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(jac);

    StabilityReport report;
    report.eigenvalues = eig.eigenvalues();  // ascending
    const double lam_min = report.eigenvalues.cwiseAbs().minCoeff();
    const double lam_max = report.eigenvalues.cwiseAbs().maxCoeff();
    report.hurwitz = report.eigenvalues.maxCoeff() < 0.0;
    report.long_term_stable = report.hurwitz;
    report.hyperbolicity_margin = lam_min;

    // For n = 1 the largest |eigenvalue| is itself the margin, so the
    // reference also includes the entry scale of -A + diag(b_i/x_i^2) before
    // cancellation; a double root then still stands out.
    const double entry_scale = sys.A.cwiseAbs().rowwise().sum().maxCoeff() +
                               sys.b.cwiseQuotient(x_bar.cwiseProduct(x_bar)).cwiseAbs().maxCoeff();
    report.non_hyperbolic_suspect = lam_min < hyper_tol * std::max(lam_max, entry_scale);

    const bool all_pos = (sys.b.array() > 0.0).all();
    const bool all_neg = (sys.b.array() < 0.0).all();
    if (all_pos || all_neg) {
        report.unique_stable = report.hurwitz;
    }
    return report;
}

}  // namespace cpl

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace cpl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Canonical algebraic system  -A x - stack(b_i / x_i) + w  over the positive
/// orthant. A is a conductance-like symmetric matrix, b holds the constant
/// power coefficients and w the constant current / source terms.
struct SystemData {
    Matrix A;
    Vector b;
    Vector w;

    [[nodiscard]] int n() const { return static_cast<int>(b.size()); }
};

struct Violation {
    std::string rule;
    std::string detail;
};

/// Outcome of checking the model assumptions on (A, b, w). Failures are
/// report entries, never exceptions.
struct ValidationReport {
    bool passed = false;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
};

inline constexpr double kSymmetryRelTol = 1e-10;

/// Checks that A is symmetric, positive definite (positive-pivot Cholesky)
/// and has non-positive off-diagonal entries, and that dimensions are
/// consistent. Zero b entries pass with a warning.
ValidationReport validate_system(const SystemData& sys);

/// Replaces A by (A + A^T)/2 so downstream code can rely on exact symmetry.
/// Call after validate_system has passed.
SystemData symmetrized(SystemData sys);

/// Right-hand side  f(x) = -A x - stack(b_i / x_i) + w.  Throws
/// std::domain_error unless x > 0 componentwise.
Vector eval_rhs(const SystemData& sys, const Vector& x);

/// Jacobian  -A + diag(b_i / x_i^2); symmetric whenever A is.
Matrix eval_jacobian(const SystemData& sys, const Vector& x);

/// min_i [ (A x)_i - <w_i> - <-b_i>/x_i ]  where <a> = max(a, 0).
/// Returns -infinity when some x_i <= 0 (such points are never members).
double characteristic_margin(const SystemData& sys, const Vector& x);

/// Membership in the characteristic set: every row inequality must hold with
/// slack strictly greater than `margin`.
bool in_characteristic_set(const SystemData& sys, const Vector& x, double margin = 0.0);

/// Convergence tolerances are measured against max(1, |w|_inf) so volt-scale
/// and hundred-kilovolt-scale systems share defaults.
double residual_scale(const SystemData& sys);

namespace detail {
void require_positive_state(const Vector& x, int n, const char* where);
}

}  // namespace cpl

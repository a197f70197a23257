#include "system.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpl {

namespace detail {

void require_positive_state(const Vector& x, int n, const char* where) {
    if (x.size() != n) {
        throw std::domain_error(std::string(where) + ": state has size " +
                                std::to_string(x.size()) + ", system has n = " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) {
            throw std::domain_error(std::string(where) + ": state component " +
                                    std::to_string(i + 1) + " is not strictly positive");
        }
    }
}

}  // namespace detail

namespace {

inline double clip_pos(double a) { return a > 0.0 ? a : 0.0; }

}  // namespace

ValidationReport validate_system(const SystemData& sys) {
    ValidationReport report;
    const auto n = sys.b.size();

    if (n < 1 || sys.A.rows() != n || sys.A.cols() != n || sys.w.size() != n) {
        report.violations.push_back({"dimensions",
                                     "A must be n x n with b and w of length n >= 1"});
        report.passed = false;
        return report;
    }

    const double a_max = sys.A.cwiseAbs().maxCoeff();
    const double asym = (sys.A - sys.A.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryRelTol * a_max) {
        report.violations.push_back({"symmetry",
                                     "max |A_ij - A_ji| = " + std::to_string(asym) +
                                         " exceeds relative tolerance"});
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j && sys.A(i, j) > 0.0) {
                report.violations.push_back(
                    {"offdiagonal_sign", "A(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                             ") = " + std::to_string(sys.A(i, j)) + " is positive"});
            }
        }
    }

    // Positive pivots of the symmetric Cholesky factorization decide
    // definiteness.
    const Matrix sym = 0.5 * (sys.A + sys.A.transpose());
    Eigen::LLT<Matrix> llt(sym);
    if (llt.info() != Eigen::Success) {
        report.violations.push_back({"positive_definite",
                                     "symmetric factorization failed: A is not positive definite"});
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        if (sys.b[i] == 0.0) {
            report.warnings.push_back("b[" + std::to_string(i + 1) +
                                      "] = 0 deviates from the strict model assumption b_i != 0");
        }
    }

    report.passed = report.violations.empty();
    return report;
}

SystemData symmetrized(SystemData sys) {
    sys.A = (0.5 * (sys.A + sys.A.transpose())).eval();
    return sys;
}

Vector eval_rhs(const SystemData& sys, const Vector& x) {
    detail::require_positive_state(x, sys.n(), "eval_rhs");
    return -sys.A * x - sys.b.cwiseQuotient(x) + sys.w;
}

Matrix eval_jacobian(const SystemData& sys, const Vector& x) {
    detail::require_positive_state(x, sys.n(), "eval_jacobian");
    Matrix jac = -sys.A;
    jac.diagonal() += sys.b.cwiseQuotient(x.cwiseProduct(x));
    return jac;
}

double characteristic_margin(const SystemData& sys, const Vector& x) {
    const int n = sys.n();
    if (x.size() != n) {
        throw std::domain_error("characteristic_margin: state size mismatch");
    }
    for (int i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) return -std::numeric_limits<double>::infinity();
    }
    const Vector ax = sys.A * x;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double slack = ax[i] - clip_pos(sys.w[i]) - clip_pos(-sys.b[i]) / x[i];
        margin = std::min(margin, slack);
    }
    return margin;
}

bool in_characteristic_set(const SystemData& sys, const Vector& x, double margin) {
    return characteristic_margin(sys, x) > margin;
}

double residual_scale(const SystemData& sys) {
    return std::max(1.0, sys.w.cwiseAbs().maxCoeff());
}

}  // namespace cpl

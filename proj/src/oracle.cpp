#include "oracle.hpp"

#include "seed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpl {

const char* scalar_case_name(ScalarCase c) {
    switch (c) {
        case ScalarCase::UniqueAttractive: return "unique_attractive";
        case ScalarCase::NoEquilibrium: return "no_equilibrium";
        case ScalarCase::NonHyperbolicDouble: return "non_hyperbolic_double";
        case ScalarCase::StableUnstablePair: return "stable_unstable_pair";
    }
    return "no_equilibrium";
}

EquilibriumList solve_scalar(double a, double b, double w) {
    if (!(a > 0.0)) throw std::invalid_argument("solve_scalar: a must be positive");
    if (b == 0.0) throw std::invalid_argument("solve_scalar: b must be nonzero");

    EquilibriumList list;
    list.exhaustive = true;
    auto add = [&](double x) {
        EquilibriumPoint p;
        p.x = Vector::Constant(1, x);
        p.hurwitz = -a + b / (x * x) < 0.0;
        list.points.push_back(std::move(p));
    };

    const double disc = w * w - 4.0 * a * b;
    if (b < 0.0) {
        // Root product is negative: exactly one positive root, always stable.
        add((w + std::sqrt(disc)) / (2.0 * a));
        list.scalar_case = ScalarCase::UniqueAttractive;
        return list;
    }
    const double disc_tol = 1e-12 * std::max(w * w, 4.0 * a * b);
    if (w <= 0.0 || disc < -disc_tol) {
        list.scalar_case = ScalarCase::NoEquilibrium;
        return list;
    }
    if (disc <= disc_tol) {
        add(w / (2.0 * a));
        list.scalar_case = ScalarCase::NonHyperbolicDouble;
        return list;
    }
    const double root = std::sqrt(disc);
    add((w - root) / (2.0 * a));
    add((w + root) / (2.0 * a));
    list.scalar_case = ScalarCase::StableUnstablePair;
    return list;
}

namespace {

// Local damped Newton; kept separate from the engine's polish so the
// enumeration remains an independent check of the classifier.
std::optional<Vector> newton_2d(const SystemData& sys, Vector x, double tol) {
    Vector f = -sys.A * x - sys.b.cwiseQuotient(x) + sys.w;
    double res = f.cwiseAbs().maxCoeff();
    for (int iter = 0; iter < 80 && res > tol; ++iter) {
        Matrix jac = -sys.A;
        jac.diagonal() += sys.b.cwiseQuotient(x.cwiseProduct(x));
        const double det = jac(0, 0) * jac(1, 1) - jac(0, 1) * jac(1, 0);
        if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
        Vector dx(2);
        dx[0] = (-f[0] * jac(1, 1) + f[1] * jac(0, 1)) / det;
        dx[1] = (-f[1] * jac(0, 0) + f[0] * jac(1, 0)) / det;

        double alpha = 1.0;
        bool improved = false;
        while (alpha > 1e-14) {
            const Vector x_try = x + alpha * dx;
            if (x_try[0] > 0.0 && x_try[1] > 0.0) {
                const Vector f_try = -sys.A * x_try - sys.b.cwiseQuotient(x_try) + sys.w;
                const double res_try = f_try.cwiseAbs().maxCoeff();
                if (res_try < res) {
                    x = x_try;
                    f = f_try;
                    res = res_try;
                    improved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!improved) return std::nullopt;
    }
    if (res > tol) return std::nullopt;
    return x;
}

bool same_point(const Vector& a, const Vector& b) {
    const double sep = 1e-6 * std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    return (a - b).cwiseAbs().maxCoeff() <= sep;
}

}  // namespace

EquilibriumList enumerate_equilibria_2d(const SystemData& sys, int grid_density) {
    if (sys.n() != 2) {
        throw std::invalid_argument("enumerate_equilibria_2d: requires n = 2");
    }
    if (grid_density < 8) {
        throw std::invalid_argument("enumerate_equilibria_2d: grid density too small");
    }
    const double tol = 1e-9 * residual_scale(sys);

    // Box bracketing every equilibrium: the seed dominates all of them from
    // above, and each coordinate stays above |b_i| / (2W) with W the rhs
    // bound over the box.
    const CharacteristicSeed seed = build_characteristic_seed(sys);
    const double x_hi = seed.x0.maxCoeff();
    double w_bound = 0.0;
    for (int i = 0; i < 2; ++i) {
        w_bound = std::max(w_bound, std::abs(sys.w[i]) + x_hi * sys.A.row(i).cwiseAbs().sum());
    }
    double eps_box = std::min(std::abs(sys.b[0]), std::abs(sys.b[1])) / (2.0 * w_bound);
    eps_box = std::max(eps_box * 0.5, 1e-12 * x_hi);
    eps_box = std::min(eps_box, 0.25 * x_hi);

    const int N = grid_density;
    std::vector<double> xs(N);
    const double log_lo = std::log(eps_box);
    const double log_hi = std::log(x_hi);
    for (int k = 0; k < N; ++k) {
        xs[k] = std::exp(log_lo + (log_hi - log_lo) * k / (N - 1));
    }

    std::vector<double> f1(static_cast<std::size_t>(N) * N);
    std::vector<double> f2(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const double x0 = xs[i], x1 = xs[j];
            const std::size_t at = static_cast<std::size_t>(i) * N + j;
            f1[at] = -sys.A(0, 0) * x0 - sys.A(0, 1) * x1 - sys.b[0] / x0 + sys.w[0];
            f2[at] = -sys.A(1, 0) * x0 - sys.A(1, 1) * x1 - sys.b[1] / x1 + sys.w[1];
        }
    }

    EquilibriumList list;
    list.exhaustive = false;
    list.grid_density = N;

    auto straddles = [](double a, double b, double c, double d) {
        const double lo = std::min(std::min(a, b), std::min(c, d));
        const double hi = std::max(std::max(a, b), std::max(c, d));
        return lo <= 0.0 && hi >= 0.0;
    };

    for (int i = 0; i + 1 < N; ++i) {
        for (int j = 0; j + 1 < N; ++j) {
            const std::size_t at = static_cast<std::size_t>(i) * N + j;
            const std::size_t right = at + 1, down = at + N, diag = at + N + 1;
            if (!straddles(f1[at], f1[right], f1[down], f1[diag])) continue;
            if (!straddles(f2[at], f2[right], f2[down], f2[diag])) continue;
            Vector center(2);
            center[0] = std::sqrt(xs[i] * xs[i + 1]);
            center[1] = std::sqrt(xs[j] * xs[j + 1]);
            auto root = newton_2d(sys, center, tol);
            if (!root) continue;
            bool known = false;
            for (const auto& p : list.points) {
                if (same_point(p.x, *root)) {
                    known = true;
                    break;
                }
            }
            if (known) continue;
            EquilibriumPoint p;
            p.x = *root;
            // 2x2 symmetric Jacobian: Hurwitz iff trace < 0 and det > 0.
            Matrix jac = -sys.A;
            jac.diagonal() += sys.b.cwiseQuotient(p.x.cwiseProduct(p.x));
            p.hurwitz = jac.trace() < 0.0 && jac.determinant() > 0.0;
            list.points.push_back(std::move(p));
        }
    }

    std::sort(list.points.begin(), list.points.end(),
              [](const EquilibriumPoint& a, const EquilibriumPoint& b) {
                  if (a.x[0] != b.x[0]) return a.x[0] < b.x[0];
                  return a.x[1] < b.x[1];
              });
    return list;
}

}  // namespace cpl

#pragma once

#include "schema_check.hpp"
#include "system.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace cpltest {

using cpl::Matrix;
using cpl::SystemData;
using cpl::Vector;

// Random system satisfying the model assumptions by construction: symmetric,
// strictly diagonally dominant with positive diagonal and non-positive
// off-diagonals, b bounded away from zero.
inline SystemData random_system(std::mt19937_64& rng, int n_min = 1, int n_max = 8) {
    std::uniform_int_distribution<int> size(n_min, n_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coupling(0.2, 2.0);
    std::uniform_real_distribution<double> shunt(0.1, 2.0);
    std::uniform_real_distribution<double> box(-5.0, 5.0);

    const int n = size(rng);
    SystemData sys;
    sys.A = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (unit(rng) < 0.6) {
                const double g = coupling(rng);
                sys.A(i, j) = -g;
                sys.A(j, i) = -g;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        sys.A(i, i) = -sys.A.row(i).sum() + sys.A(i, i) + shunt(rng);
    }
    sys.b = Vector(n);
    sys.w = Vector(n);
    for (int i = 0; i < n; ++i) {
        double b = 0.0;
        while (std::abs(b) < 0.05) b = box(rng);
        sys.b[i] = b;
        sys.w[i] = box(rng);
    }
    return sys;
}

inline Vector random_positive_state(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> log_range(-1.5, 1.5);
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = scale * std::exp(log_range(rng));
    return x;
}

inline Matrix fd_jacobian(const SystemData& sys, const Vector& x) {
    const int n = sys.n();
    Matrix jac(n, n);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(std::abs(x[j]), 1e-2);
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        jac.col(j) = (cpl::eval_rhs(sys, xp) - cpl::eval_rhs(sys, xm)) / (2.0 * h);
    }
    return jac;
}

// Eigenvalues of a symmetric n <= 3 matrix through its characteristic
// polynomial (trigonometric cubic for n = 3); sorted ascending.
inline std::vector<double> charpoly_eigenvalues(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<double> roots;
    if (n == 1) {
        roots = {m(0, 0)};
    } else if (n == 2) {
        const double tr = m(0, 0) + m(1, 1);
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        const double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
        roots = {0.5 * tr - disc, 0.5 * tr + disc};
    } else {
        // lambda^3 - c2 lambda^2 + c1 lambda - c0, shifted to t^3 + p t + q.
        const double c2 = m.trace();
        const double c1 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                          m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        const double c0 = m.determinant();
        const double p = c1 - c2 * c2 / 3.0;
        const double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
        if (p >= -1e-300) {
            const double t = std::cbrt(-q);
            roots = {t + c2 / 3.0, t + c2 / 3.0, t + c2 / 3.0};
        } else {
            const double r = 2.0 * std::sqrt(-p / 3.0);
            double arg = 3.0 * q / (p * r);
            arg = std::clamp(arg, -1.0, 1.0);
            const double theta = std::acos(arg);
            roots.resize(3);
            for (int k = 0; k < 3; ++k) {
                roots[k] = r * std::cos((theta - 2.0 * M_PI * k) / 3.0) + c2 / 3.0;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// The componentwise-dominant entry of an equilibrium list: it maximizes every
// coordinate, hence also the coordinate sum (robust against the tie noise
// lexicographic ordering is exposed to).
template <typename List>
const cpl::Vector& dominant_point(const List& list) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < list.points.size(); ++i) {
        if (list.points[i].x.sum() > list.points[best].x.sum()) best = i;
    }
    return list.points[best].x;
}

// Canonical 2-node benchmark (feasible loading unless b is overridden).
inline SystemData rlc_system(double b1 = 500.0, double b2 = 450.0) {
    const double r1 = 0.04, r2 = 0.06, e = 24.0;
    SystemData sys;
    sys.A = Matrix(2, 2);
    sys.A << 1.0 / r2 + 1.0 / r1, -1.0 / r2, -1.0 / r2, 1.0 / r2;
    sys.b = Vector(2);
    sys.b << b1, b2;
    sys.w = Vector(2);
    sys.w << e / r1, 0.0;
    return sys;
}

inline SystemData symmetric_pair_system() {
    SystemData sys;
    sys.A = Matrix(2, 2);
    sys.A << 2.0, -1.0, -1.0, 2.0;
    sys.b = Vector(2);
    sys.b << 1.0, 1.0;
    sys.w = Vector(2);
    sys.w << 3.0, 3.0;
    return sys;
}

inline SystemData scalar_system(double a, double b, double w) {
    SystemData sys;
    sys.A = Matrix::Constant(1, 1, a);
    sys.b = Vector::Constant(1, b);
    sys.w = Vector::Constant(1, w);
    return sys;
}

inline std::string read_text_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) return {};
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, got);
    std::fclose(f);
    return out;
}

}  // namespace cpltest

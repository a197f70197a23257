#include "seed.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace cpl {

namespace {
inline double clip_pos(double a) { return a > 0.0 ? a : 0.0; }
}  // namespace

Vector find_positive_cone_point(const Matrix& A) {
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("find_positive_cone_point: factorization failed, A is not positive definite");
    }
    const Vector z = llt.solve(Vector::Ones(A.rows()));
    const Vector az = A * z;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0) || !(az[i] > 0.0)) {
            throw std::runtime_error("find_positive_cone_point: solve produced a non-positive component");
        }
    }
    return z;
}

CharacteristicSeed build_characteristic_seed(const SystemData& sys, double safety) {
    if (!(safety > 1.0)) {
        throw std::invalid_argument("build_characteristic_seed: safety factor must exceed 1");
    }
    CharacteristicSeed seed;
    seed.z = find_positive_cone_point(sys.A);
    const Vector az = sys.A * seed.z;

    double bound = 0.0;
    for (int i = 0; i < sys.n(); ++i) {
        const double wp = clip_pos(sys.w[i]);
        const double bm = clip_pos(-sys.b[i]);
        const double row = (wp + std::sqrt(wp * wp + 4.0 * az[i] * bm / seed.z[i])) / (2.0 * az[i]);
        bound = std::max(bound, row);
    }
    seed.mu = bound > 0.0 ? safety * bound : safety;
    seed.x0 = seed.mu * seed.z;
    seed.margin = characteristic_margin(sys, seed.x0);
    if (!(seed.margin > 0.0)) {
        throw std::runtime_error("build_characteristic_seed: scaled point missed the characteristic set");
    }
    return seed;
}

}  // namespace cpl

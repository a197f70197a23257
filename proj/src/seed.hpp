#pragma once

#include "system.hpp"

namespace cpl {

/// A constructively built member of the characteristic set: x0 = mu * z with
/// z > 0, A z > 0, and mu large enough that every row inequality holds with
/// strictly positive slack.
struct CharacteristicSeed {
    Vector z;
    double mu = 0.0;
    Vector x0;
    double margin = 0.0;
};

/// Solves A z = 1. For a validated A (symmetric positive definite, non-positive
/// off-diagonals) the inverse is entrywise nonnegative with positive diagonal,
/// so z > 0 and A z = 1 > 0 hold by construction. Throws std::runtime_error if
/// the factorization fails or either sign condition does not come out strict.
Vector find_positive_cone_point(const Matrix& A);

/// Scales the cone point by mu = safety * max_i of the per-row bound
///   [ <w_i> + sqrt(<w_i>^2 + 4 (Az)_i <-b_i> / z_i) ] / (2 (Az)_i),
/// which reduces to <w_i>/(Az)_i when b_i > 0. When every bound is zero any
/// positive mu works and mu = safety is returned. Requires safety > 1.
CharacteristicSeed build_characteristic_seed(const SystemData& sys, double safety = 1.05);

}  // namespace cpl

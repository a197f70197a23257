#pragma once

#include "system.hpp"

#include <optional>

namespace cpl {

inline constexpr double kHyperbolicityTol = 1e-6;

/// Spectrum-based certificate for a refined equilibrium.
struct StabilityReport {
    Vector eigenvalues;                 // of the symmetric Jacobian, ascending
    bool hurwitz = false;               // max eigenvalue < 0
    double hyperbolicity_margin = 0.0;  // min |eigenvalue|
    bool long_term_stable = false;      // == hurwitz
    std::optional<bool> unique_stable;  // only meaningful when all b_i share one sign
    bool non_hyperbolic_suspect = false;
};

/// Symmetric eigen-decomposition of -A + diag(b_i / x_bar_i^2). The
/// hyperbolicity margin is compared against hyper_tol times the Jacobian's
/// natural entry scale (covers n = 1, where min and max eigenvalue coincide).
StabilityReport assess(const SystemData& sys, const Vector& x_bar,
                       double hyper_tol = kHyperbolicityTol);

}  // namespace cpl

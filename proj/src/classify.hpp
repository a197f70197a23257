#pragma once

#include "integrate.hpp"
#include "seed.hpp"
#include "stability.hpp"
#include "system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpl {

enum class OutcomeKind { Dominant, NoEquilibrium, Inconclusive };

const char* outcome_name(OutcomeKind kind);  // "dominant" | "none" | "inconclusive"

struct Outcome {
    OutcomeKind kind = OutcomeKind::Inconclusive;

    // Dominant
    Vector x_max;
    double residual = 0.0;
    std::optional<StabilityReport> stability;  // also filled for a non-hyperbolic suspect

    // NoEquilibrium
    std::vector<int> collapsed;  // 0-based indices, reported 1-based externally
    double t_collapse = 0.0;

    // Inconclusive
    std::string detail;
    bool non_hyperbolic_suspect = false;
    Vector last_state;
};

/// Everything one run of the classification procedure produced.
struct Analysis {
    CharacteristicSeed seed;
    Trajectory trajectory;
    Outcome outcome;
};

/// The end-to-end existence test: build a characteristic seed, integrate the
/// decaying trajectory, then either report NoEquilibrium (a coordinate
/// collapsed in finite time), refine and certify the dominant equilibrium, or
/// admit Inconclusive (budget exhausted, Newton stall, or a non-hyperbolic
/// suspect). Expects a validated system.
Analysis classify(const SystemData& sys, const IntegrationOptions& opts = {});

}  // namespace cpl

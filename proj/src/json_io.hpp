#pragma once

#include "classify.hpp"
#include "oracle.hpp"
#include "system.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpl {

/// Malformed document or malformed network spec; distinct from a validation
/// failure, which is data that parses fine but violates the model assumptions.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed input: the canonical system (symmetrized when validation passed),
/// the validation verdict and the model tag it came from.
struct LoadedSystem {
    std::string model;  // "raw" | "ac" | "hvdc" | "dc_microgrid"
    SystemData sys;
    ValidationReport validation;
    std::vector<std::string> warnings;
};

/// Parses a document with a top-level "model" tag and dispatches to the
/// matching network adapter ("raw" reads A, b, w directly). Rejects NaN and
/// infinite numbers. Throws ParseError; validation failures are returned.
LoadedSystem load_system_json(const std::string& text);

std::string system_json(const SystemData& sys);

std::string validation_json(const ValidationReport& report);

struct ReportTimings {
    double total_ms = 0.0;
    double analysis_ms = 0.0;
};

/// Full analysis report: input echo, validation, seed provenance, outcome,
/// stability when available. Deterministic for identical inputs when timings
/// are left out.
std::string analysis_report_json(const LoadedSystem& input, const Analysis& analysis,
                                 const std::optional<std::string>& trajectory_file,
                                 const std::optional<ReportTimings>& timings);

std::string oracle_json(const EquilibriumList& list);

/// Header t,x1,...,xn; one row per accepted step.
std::string trajectory_csv(const Trajectory& traj, int n);

}  // namespace cpl

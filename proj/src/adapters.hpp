#pragma once

#include "system.hpp"

#include <string>
#include <vector>

namespace cpl {

// --- AC grid (decoupled reactive power balance, ZIP loads) ---

struct AcNode {
    double shunt_admittance = 0.0;  // Y_i, siemens
    double constant_current = 0.0;  // k_i, amperes
    double reactive_power = 0.0;    // Q_i, var
};

struct AcLine {
    int from = 0;  // 0-based node indices
    int to = 0;
    double susceptance = 0.0;  // B_ij <= 0, siemens
};

struct AcGridSpec {
    std::vector<AcNode> nodes;
    std::vector<AcLine> lines;
};

// --- MT-HVDC network (voltage- and power-controlled terminals) ---

struct HvdcEndpoint {
    bool voltage_controlled = false;
    int index = 0;  // 0-based within its kind
};

struct HvdcLine {
    HvdcEndpoint from;
    HvdcEndpoint to;
    double resistance = 0.0;  // ohms
    double inductance = 0.0;  // recorded, unused by the steady-state reduction
};

struct HvdcSpec {
    std::vector<double> source_voltages;      // V at voltage-controlled nodes
    std::vector<double> power_setpoints;      // W at power-controlled nodes
    std::vector<double> shunt_conductances;   // S at power-controlled nodes
    std::vector<HvdcLine> lines;
};

// --- DC microgrid (converter units behind RL filters, ZIP loads) ---

struct MicrogridNode {
    double filter_resistance = 0.0;  // R_t, ohms, > 0
    double shunt_admittance = 0.0;   // Y, siemens, >= 0
    double constant_current = 0.0;   // k, amperes
    double power = 0.0;              // P, watts
    double source_voltage = 0.0;     // u, volts
    double filter_inductance = 0.0;  // recorded, unused
    double shunt_capacitance = 0.0;  // recorded, unused
};

struct MicrogridLine {
    int from = 0;
    int to = 0;
    double resistance = 0.0;  // ohms, > 0
    double inductance = 0.0;  // recorded, unused
};

struct DcMicrogridSpec {
    std::vector<MicrogridNode> nodes;
    std::vector<MicrogridLine> lines;
};

/// Canonical system plus the validation verdict; a failed validation is
/// returned, never hidden. A passing A is symmetrized before return.
struct AdapterResult {
    SystemData sys;
    ValidationReport validation;
    std::vector<std::string> warnings;
};

/// A_ii = sum_j |B_ij| - Y_i,  A_ij = -|B_ij|,  w = k,  b = -Q.
/// Throws std::invalid_argument on a malformed spec.
AdapterResult build_from_ac(const AcGridSpec& spec);

/// A = B_P R^-1 B_P^T + G,  b = P,  w = -B_P R^-1 B_V^T V. A line between two
/// voltage-controlled nodes drops out of the reduction.
AdapterResult build_from_hvdc(const HvdcSpec& spec);

/// A = R_t^-1 + Y + B R^-1 B^T,  b = P,  w = R_t^-1 u - k.
AdapterResult build_from_dc_microgrid(const DcMicrogridSpec& spec);

}  // namespace cpl

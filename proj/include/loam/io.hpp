#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "loam/constellation.hpp"
#include "loam/simulator.hpp"

namespace loam {

/// IEEE-754 double with 17 significant digits (round-trips exactly).
std::string format_double(double value);

/// {scheme, order, regime, ray_phase, spacing, points, magnitudes} in that order.
std::string design_to_json(const DesignOutcome& design);

/// Same document for a fixed baseline evaluated at `state`. PAM reports
/// ray_phase 0 and its level spacing; QAM/PSK have no ray and emit null.
std::string baseline_to_json(const Constellation& constellation, const ChannelState& state);

inline constexpr std::string_view kSerCsvHeader = "scheme,order,snr_db,trials,errors,ser,ci95";

void write_ser_csv(std::ostream& out, std::span<const SerPoint> points);
std::string ser_to_json(std::span<const SerPoint> points);

/// Parses and validates a sweep configuration document. Keys must match the
/// SweepConfig field names; unknown keys are rejected. Throws ConfigError
/// carrying the JSON pointer of the first offending entry.
SweepConfig parse_sweep_config(std::string_view text);

} // namespace loam

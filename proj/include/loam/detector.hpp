#pragma once

#include <span>
#include <vector>

#include "loam/channel_model.hpp"

namespace loam {

/// Nearest-amplitude (ML under the Euclidean amplitude metric) decision table.
///
/// Slots are sorted by (magnitude, original index). Magnitudes that agree to
/// 1e-12 relative are snapped to a single value and `ambiguous` is set; the
/// tie then always resolves to the lowest original index.
struct DetectorTable {
    std::vector<double> magnitudes;
    std::vector<int> symbol_index;
    /// thresholds[k] = (magnitudes[k] + magnitudes[k+1]) / 2
    std::vector<double> thresholds;
    bool ambiguous = false;
};

DetectorTable build_detector(std::span<const ComplexValue> points, ComplexValue h, ComplexValue b);

/// Table over precomputed transformed magnitudes (index i = symbol i).
DetectorTable build_detector(std::span<const double> magnitudes);

/// Symbol whose magnitude is nearest to z. Exact midpoint ties go to the lower
/// magnitude, coincident magnitudes to the lowest symbol index.
int detect(const DetectorTable& table, double z);

} // namespace loam

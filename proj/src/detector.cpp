#include "loam/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loam/errors.hpp"

namespace loam {

namespace {

constexpr double kTieTolerance = 1e-12;

} // namespace

DetectorTable build_detector(std::span<const double> magnitudes) {
    const std::size_t m = magnitudes.size();
    if (m < 2) {
        throw InvalidArgument("detector needs at least two symbols");
    }
    for (double r : magnitudes) {
        if (!std::isfinite(r) || r < 0.0) {
            throw InvalidArgument("magnitudes must be finite and >= 0");
        }
    }

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int lhs, int rhs) { return magnitudes[lhs] < magnitudes[rhs]; });

    DetectorTable table;
    table.magnitudes.reserve(m);
    table.symbol_index = std::move(order);
    double group = magnitudes[table.symbol_index[0]];
    for (int idx : table.symbol_index) {
        const double r = magnitudes[idx];
        if (r - group <= kTieTolerance * std::max(group, r)) {
            if (!table.magnitudes.empty()) {
                table.ambiguous = true;
            }
        } else {
            group = r;
        }
        table.magnitudes.push_back(group);
    }
    // Within a snapped group the raw order is arbitrary; lowest index first.
    for (std::size_t lo = 0; lo < m;) {
        std::size_t hi = lo + 1;
        while (hi < m && table.magnitudes[hi] == table.magnitudes[lo]) {
            ++hi;
        }
        std::sort(table.symbol_index.begin() + lo, table.symbol_index.begin() + hi);
        lo = hi;
    }

    table.thresholds.reserve(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        table.thresholds.push_back((table.magnitudes[k] + table.magnitudes[k + 1]) / 2.0);
    }
    return table;
}

DetectorTable build_detector(std::span<const ComplexValue> points, ComplexValue h, ComplexValue b) {
    std::vector<double> r;
    r.reserve(points.size());
    for (const auto& x : points) {
        r.push_back(transformed_magnitude(x, h, b));
    }
    return build_detector(r);
}

int detect(const DetectorTable& table, double z) {
    if (!std::isfinite(z) || z < 0.0) {
        throw InvalidArgument("observation must be finite and >= 0");
    }
    const auto& mags = table.magnitudes;
    const auto dist = [&](std::size_t k) {
        const double e = z - mags[k];
        return e * e;
    };

    // Thresholds give the slot up to rounding in the midpoints; the local walk
    // below makes the answer the exact argmin of (z - r)^2.
    std::size_t k = static_cast<std::size_t>(
        std::lower_bound(table.thresholds.begin(), table.thresholds.end(), z) - table.thresholds.begin());
    if (k < table.thresholds.size() && z == table.thresholds[k]) {
        // On a midpoint the lower magnitude wins.
        while (k > 0 && mags[k - 1] == mags[k]) {
            --k;
        }
        return table.symbol_index[k];
    }
    while (k + 1 < mags.size() && dist(k + 1) < dist(k)) {
        ++k;
    }
    while (k > 0 && dist(k - 1) <= dist(k)) {
        --k;
    }
    return table.symbol_index[k];
}

} // namespace loam

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loam/constellation.hpp"

namespace loam {

/// Random scenario in the requested regime: |h| in [0.2, 3], uniform phases,
/// |b|^2 uniform in (0, threshold) for weak and in [threshold, 5 threshold]
/// for strong references.
ChannelState random_scenario(RandomStream& rng, Regime regime, int order, double power);

struct VerifyOptions {
    int order = 4;
    /// Random scenarios per regime.
    int scenarios = 20;
    /// Free-search grid points per real dimension (M = 2 search).
    int free_grid = 60;
    /// Coarse cells of the ray search.
    int ray_steps = 2000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    /// "measured ... expected ..." summary, deterministic for fixed options.
    std::string detail;
};

/// Cross-checks the closed-form LOAM designs against the brute-force oracles
/// on seeded random scenarios.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

std::string format_report(const std::vector<CheckResult>& checks);

} // namespace loam

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "loam/constellation.hpp"
#include "loam/detector.hpp"

namespace loam {

struct FixedChannel {
    ComplexValue h{1.0, 0.0};
};
/// h ~ CN(0, 1) drawn per trial; SNR is referenced to E|h|^2 = 1.
struct RayleighPerTrial {};
using ChannelMode = std::variant<FixedChannel, RayleighPerTrial>;

struct ZeroReference {};
struct FixedReference {
    ComplexValue b;
};
/// |b|^2 = ratio * 3P(M-1)|h|^2/(M+1). Phase 0 with a fixed channel, uniform
/// per trial under Rayleigh fading.
struct ThresholdRatio {
    double ratio = 1.0;
};
using ReferenceMode = std::variant<ZeroReference, FixedReference, ThresholdRatio>;

struct SweepConfig {
    std::vector<Scheme> schemes;
    int order = 4;
    std::vector<double> snr_grid_db;
    std::uint64_t trials_per_point = 100000;
    std::uint64_t seed = 0;
    ChannelMode channel_mode = FixedChannel{};
    ReferenceMode reference_mode = ZeroReference{};
    double power = 1.0;
};

struct SerPoint {
    Scheme scheme = Scheme::Loam;
    int order = 0;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double ser = 0.0;
    double ci95_halfwidth = 0.0;
};

/// Throws ConfigError naming the first offending entry.
void validate(const SweepConfig& config);

/// A constellation paired with the receiver's decision table for one (h, b).
struct Link {
    Constellation constellation;
    DetectorTable detector;
};

/// LOAM is redesigned for the given (h, b); baselines are channel-independent
/// but their tables still depend on (h, b).
Link make_link(Scheme scheme, const ChannelState& state);

/// One symbol: uniform index, noise, amplitude observation, detection.
/// Returns true on a symbol error.
bool run_trial(const Link& link, const ChannelState& state, RandomStream& rng);

/// One SerPoint per (scheme, snr) in config order. Bit-identical for any
/// `threads` (0 = hardware concurrency).
std::vector<SerPoint> run_sweep(const SweepConfig& config, unsigned threads = 0);

/// Q(x) = P(N(0,1) > x)
double gaussian_tail(double x);

/// High-amplitude Gaussian approximation of the nearest-amplitude detector's
/// SER for M equally spaced magnitudes with gap delta:
/// 2(M-1)/M * Q(delta / (2 sqrt(sigma2/2))).
double theoretical_ser_asymptotic(double delta, double sigma2, int order);

/// sigma2 at which theoretical_ser_asymptotic equals `target` (bisection).
double sigma2_for_asymptotic_ser(double delta, int order, double target);

} // namespace loam

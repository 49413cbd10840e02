#pragma once

#include <complex>
#include <span>

#include "loam/random_stream.hpp"

namespace loam {

/// Symbols, channel gain, LO reference and noise samples are all plain
/// complex doubles. Finiteness is checked at the API boundary.
using ComplexValue = std::complex<double>;

inline bool is_finite(ComplexValue z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// One design/detection scenario: fading gain h, LO reference b, average
/// power budget P, alphabet size M and complex noise variance sigma2.
///
/// Construction validates everything, so any ChannelState in hand satisfies
/// |h| > 0, M >= 2, P > 0 and sigma2 >= 0.
class ChannelState {
public:
    ChannelState(ComplexValue h, ComplexValue b, double power, int order, double sigma2 = 0.0);

    ComplexValue h() const noexcept { return h_; }
    ComplexValue b() const noexcept { return b_; }
    double power() const noexcept { return power_; }
    int order() const noexcept { return order_; }
    double sigma2() const noexcept { return sigma2_; }

    ChannelState with_sigma2(double sigma2) const { return {h_, b_, power_, order_, sigma2}; }

private:
    ComplexValue h_;
    ComplexValue b_;
    double power_;
    int order_;
    double sigma2_;
};

/// Noiseless receiver amplitude |h*x + b|.
double transformed_magnitude(ComplexValue x, ComplexValue h, ComplexValue b);

/// Detected amplitude |h*x + b + noise| for a caller-drawn noise sample.
double observe(ComplexValue x, const ChannelState& state, ComplexValue noise);

/// Circularly-symmetric complex Gaussian sample, variance sigma2/2 per component.
ComplexValue draw_complex_noise(RandomStream& rng, double sigma2);

/// sigma2 = P*|h|^2 / 10^(snr_db/10). The LO reference is receiver-side and
/// does not count as signal power.
double snr_db_to_sigma2(double snr_db, const ChannelState& state);
double snr_db_to_sigma2(double snr_db, double power, double gain_power);

/// min_{i != j} |r_i - r_j| over the transformed magnitudes of `points`.
double effective_min_distance(std::span<const ComplexValue> points, ComplexValue h, ComplexValue b);

} // namespace loam

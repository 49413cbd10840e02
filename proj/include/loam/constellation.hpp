#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loam/channel_model.hpp"

namespace loam {

enum class Regime { StrongReference, WeakReference, LoFree };

enum class Scheme { Loam, Pam, Qam, Psk };

std::string_view to_string(Regime regime) noexcept;
std::string_view to_string(Scheme scheme) noexcept;

/// Accepts the lower-case labels used by the CLI and configs: loam, pam, qam, psk.
Scheme parse_scheme(std::string_view label);

/// Index i is symbol i.
struct Constellation {
    Scheme scheme = Scheme::Loam;
    int order = 0;
    std::vector<ComplexValue> points;
};

struct DesignOutcome {
    Constellation constellation;
    Regime regime = Regime::LoFree;
    /// Phase of the ray through c = -b/h (0 when b = 0).
    double ray_phase = 0.0;
    /// Point spacing along the ray.
    double spacing = 0.0;
    /// |h*x_i + b|, same order as the points and strictly increasing.
    std::vector<double> magnitudes;
};

/// |b|^2 at which the origin-centred design stops fitting on one side of c.
double regime_threshold(double power, int order, ComplexValue h);

/// Boundary equality (within 1e-12 relative) counts as StrongReference.
/// LoFree when |b| <= 1e-12 * sqrt(P) * |h|.
Regime classify_regime(const ChannelState& state);

/// Largest spacing of an origin-centred equally spaced line of M points with
/// mean power P: sqrt(12P / (M^2 - 1)).
double spacing_strong(double power, int order);

/// Spacing d of the anchored line c, c - d, ..., c - (M-1)d (points walk from
/// c towards and past the origin) that exactly spends the power budget: the
/// larger root of d^2 (M-1)(2M-1)/6 - c(M-1) d + (c^2 - P) = 0.
/// Throws InfeasibleDesign when the quadratic has no real root, which happens
/// only above the regime threshold.
double spacing_anchor(double c_mag, double power, int order);

/// Spacing of the outward-anchored line c, c + d, ..., c + (M-1)d: positive
/// root of d^2 (M-1)(2M-1)/6 + c(M-1) d + (c^2 - P) = 0. Kept for comparison
/// with the optimal inward anchoring; throws InfeasibleDesign when c^2 >= P.
double spacing_anchor_outward(double c_mag, double power, int order);

/// Max-min amplitude-distance constellation for a known (h, b).
DesignOutcome design_loam(const ChannelState& state);

/// Same as design_loam, except that in the weak regime the points extend
/// outward from c (c + i*d). Strictly worse than design_loam whenever 0 < |c|
/// and the weak regime applies; exposed for the verify report and tests.
DesignOutcome design_loam_outward(const ChannelState& state);

Constellation gen_pam(double power, int order);
Constellation gen_psk(double power, int order);
/// Square QAM; order must be a perfect square.
Constellation gen_qam(double power, int order);

/// Fixed (channel-independent) baseline for a non-LOAM scheme.
Constellation gen_baseline(Scheme scheme, double power, int order);

double mean_power(std::span<const ComplexValue> points);

} // namespace loam

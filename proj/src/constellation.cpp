#include "loam/constellation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "loam/errors.hpp"

namespace loam {

namespace {

constexpr double kLoFreeTolerance = 1e-12;
constexpr double kBoundaryTolerance = 1e-12;

void require_power_order(double power, int order) {
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw InvalidArgument("power must be > 0");
    }
    if (order < 2) {
        throw InvalidArgument("order must be >= 2");
    }
}

// Sum of i and i^2 over i = 0..M-1, divided by M.
double mean_index(int m) { return (m - 1) / 2.0; }
double mean_index_sq(int m) { return (m - 1) * (2.0 * m - 1) / 6.0; }

std::vector<double> magnitudes_of(const std::vector<ComplexValue>& points, ComplexValue h, ComplexValue b) {
    std::vector<double> r;
    r.reserve(points.size());
    for (const auto& x : points) {
        r.push_back(transformed_magnitude(x, h, b));
    }
    return r;
}

enum class Anchor { TowardOrigin, Outward };

DesignOutcome design(const ChannelState& state, Anchor anchor) {
    const int m = state.order();
    const double p = state.power();

    DesignOutcome out;
    out.regime = classify_regime(state);
    out.constellation.scheme = Scheme::Loam;
    out.constellation.order = m;
    auto& points = out.constellation.points;
    points.reserve(m);

    if (out.regime == Regime::LoFree) {
        // No preferred direction; unipolar ramp on the positive real axis.
        out.ray_phase = 0.0;
        out.spacing = spacing_anchor(0.0, p, m);
        for (int i = 0; i < m; ++i) {
            points.emplace_back(i * out.spacing, 0.0);
        }
    } else {
        const ComplexValue c = -state.b() / state.h();
        const double c_mag = std::abs(c);
        out.ray_phase = std::arg(c);
        const ComplexValue dir = std::polar(1.0, out.ray_phase);

        // Positions along the ray, ordered so |x~ - c~| increases with i.
        double start = c_mag;
        double step = 0.0;
        if (out.regime == Regime::StrongReference) {
            out.spacing = spacing_strong(p, m);
            start = (m - 1) * out.spacing / 2.0;
            step = -out.spacing;
        } else if (anchor == Anchor::TowardOrigin) {
            out.spacing = spacing_anchor(c_mag, p, m);
            step = -out.spacing;
        } else {
            out.spacing = spacing_anchor_outward(c_mag, p, m);
            step = out.spacing;
        }
        for (int i = 0; i < m; ++i) {
            points.push_back(dir * (start + i * step));
        }
    }
    out.magnitudes = magnitudes_of(points, state.h(), state.b());
    return out;
}

} // namespace

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
    case Regime::StrongReference: return "StrongReference";
    case Regime::WeakReference: return "WeakReference";
    case Regime::LoFree: return "LoFree";
    }
    return "unknown";
}

std::string_view to_string(Scheme scheme) noexcept {
    switch (scheme) {
    case Scheme::Loam: return "loam";
    case Scheme::Pam: return "pam";
    case Scheme::Qam: return "qam";
    case Scheme::Psk: return "psk";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view label) {
    if (label == "loam") return Scheme::Loam;
    if (label == "pam") return Scheme::Pam;
    if (label == "qam") return Scheme::Qam;
    if (label == "psk") return Scheme::Psk;
    throw InvalidArgument("unknown scheme '" + std::string(label) + "' (expected loam|pam|qam|psk)");
}

double regime_threshold(double power, int order, ComplexValue h) {
    return 3.0 * power * (order - 1) * std::norm(h) / (order + 1);
}

Regime classify_regime(const ChannelState& state) {
    const double b_mag = std::abs(state.b());
    if (b_mag <= kLoFreeTolerance * std::sqrt(state.power()) * std::abs(state.h())) {
        return Regime::LoFree;
    }
    const double threshold = regime_threshold(state.power(), state.order(), state.h());
    return std::norm(state.b()) >= threshold * (1.0 - kBoundaryTolerance) ? Regime::StrongReference
                                                                          : Regime::WeakReference;
}

double spacing_strong(double power, int order) {
    require_power_order(power, order);
    return std::sqrt(12.0 * power / (static_cast<double>(order) * order - 1.0));
}

double spacing_anchor(double c_mag, double power, int order) {
    require_power_order(power, order);
    if (!(c_mag >= 0.0) || !std::isfinite(c_mag)) {
        throw InvalidArgument("anchor magnitude must be finite and >= 0");
    }
    // mean of (c - i d)^2 = c^2 - 2 c d E[i] + d^2 E[i^2] = P
    const double a = mean_index_sq(order);
    const double b = 2.0 * c_mag * mean_index(order);
    const double c = c_mag * c_mag - power;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw InfeasibleDesign("anchored design has no real spacing for |c| = " + std::to_string(c_mag));
    }
    return (b + std::sqrt(disc)) / (2.0 * a);
}

double spacing_anchor_outward(double c_mag, double power, int order) {
    require_power_order(power, order);
    if (!(c_mag >= 0.0) || !std::isfinite(c_mag)) {
        throw InvalidArgument("anchor magnitude must be finite and >= 0");
    }
    const double a = mean_index_sq(order);
    const double b = 2.0 * c_mag * mean_index(order);
    const double c = c_mag * c_mag - power;
    if (c >= 0.0) {
        throw InfeasibleDesign("outward-anchored design needs |c|^2 < P, got |c| = " + std::to_string(c_mag));
    }
    // Cancellation-free form of (-b + sqrt(b^2 - 4ac)) / 2a.
    return -2.0 * c / (b + std::sqrt(b * b - 4.0 * a * c));
}

DesignOutcome design_loam(const ChannelState& state) { return design(state, Anchor::TowardOrigin); }

DesignOutcome design_loam_outward(const ChannelState& state) { return design(state, Anchor::Outward); }

Constellation gen_pam(double power, int order) {
    const double d = spacing_strong(power, order);
    Constellation out{Scheme::Pam, order, {}};
    out.points.reserve(order);
    for (int i = 0; i < order; ++i) {
        out.points.emplace_back(-(order - 1) * d / 2.0 + i * d, 0.0);
    }
    return out;
}

Constellation gen_psk(double power, int order) {
    require_power_order(power, order);
    Constellation out{Scheme::Psk, order, {}};
    out.points.reserve(order);
    const double radius = std::sqrt(power);
    for (int k = 0; k < order; ++k) {
        out.points.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / order));
    }
    return out;
}

Constellation gen_qam(double power, int order) {
    require_power_order(power, order);
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    if (side * side != order) {
        throw InvalidArgument("QAM order must be a perfect square, got " + std::to_string(order));
    }
    // Odd-integer grid has mean power 2(M-1)/3.
    const double scale = std::sqrt(power * 3.0 / (2.0 * (order - 1)));
    Constellation out{Scheme::Qam, order, {}};
    out.points.reserve(order);
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            out.points.emplace_back(scale * (2 * col - side + 1), scale * (2 * row - side + 1));
        }
    }
    return out;
}

Constellation gen_baseline(Scheme scheme, double power, int order) {
    switch (scheme) {
    case Scheme::Pam: return gen_pam(power, order);
    case Scheme::Qam: return gen_qam(power, order);
    case Scheme::Psk: return gen_psk(power, order);
    case Scheme::Loam: break;
    }
    throw InvalidArgument("LOAM is channel-adaptive; use design_loam");
}

double mean_power(std::span<const ComplexValue> points) {
    if (points.empty()) {
        throw InvalidArgument("mean_power of an empty point set");
    }
    double sum = 0.0;
    for (const auto& x : points) {
        sum += std::norm(x);
    }
    return sum / static_cast<double>(points.size());
}

} // namespace loam

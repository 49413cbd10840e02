#include "loam/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "loam/errors.hpp"

namespace loam {

namespace {

void require_finite(ComplexValue z, const char* name) {
    if (!is_finite(z)) {
        throw InvalidArgument(std::string(name) + " must be finite");
    }
}

} // namespace

ChannelState::ChannelState(ComplexValue h, ComplexValue b, double power, int order, double sigma2)
    : h_(h), b_(b), power_(power), order_(order), sigma2_(sigma2) {
    require_finite(h, "h");
    require_finite(b, "b");
    if (std::abs(h) == 0.0) {
        throw InvalidArgument("channel gain h must be non-zero");
    }
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw InvalidArgument("power must be > 0");
    }
    if (order < 2) {
        throw InvalidArgument("order must be >= 2");
    }
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw InvalidArgument("sigma2 must be >= 0");
    }
}

double transformed_magnitude(ComplexValue x, ComplexValue h, ComplexValue b) {
    require_finite(x, "x");
    require_finite(h, "h");
    require_finite(b, "b");
    return std::abs(h * x + b);
}

double observe(ComplexValue x, const ChannelState& state, ComplexValue noise) {
    require_finite(x, "x");
    require_finite(noise, "noise");
    return std::abs(state.h() * x + state.b() + noise);
}

ComplexValue draw_complex_noise(RandomStream& rng, double sigma2) {
    if (!(sigma2 >= 0.0)) {
        throw InvalidArgument("sigma2 must be >= 0");
    }
    if (sigma2 == 0.0) {
        return {0.0, 0.0};
    }
    const double scale = std::sqrt(sigma2 / 2.0);
    const double re = rng.normal();
    const double im = rng.normal();
    return {scale * re, scale * im};
}

double snr_db_to_sigma2(double snr_db, double power, double gain_power) {
    return power * gain_power / std::pow(10.0, snr_db / 10.0);
}

double snr_db_to_sigma2(double snr_db, const ChannelState& state) {
    return snr_db_to_sigma2(snr_db, state.power(), std::norm(state.h()));
}

double effective_min_distance(std::span<const ComplexValue> points, ComplexValue h, ComplexValue b) {
    if (points.size() < 2) {
        throw InvalidArgument("effective_min_distance needs at least two points");
    }
    std::vector<double> r;
    r.reserve(points.size());
    for (const auto& x : points) {
        r.push_back(transformed_magnitude(x, h, b));
    }
    // Min pairwise gap of reals is the min consecutive gap after sorting.
    std::sort(r.begin(), r.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < r.size(); ++i) {
        best = std::min(best, r[i] - r[i - 1]);
    }
    return best;
}

} // namespace loam

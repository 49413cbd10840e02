#include "loam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "loam/oracle.hpp"

namespace loam {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

constexpr Regime kRegimes[] = {Regime::StrongReference, Regime::WeakReference, Regime::LoFree};

std::uint32_t regime_tag(Regime regime) { return 0x100u + static_cast<std::uint32_t>(regime); }

std::vector<ChannelState> scenarios_for(const VerifyOptions& options, Regime regime, int order) {
    std::vector<ChannelState> out;
    for (int i = 0; i < options.scenarios; ++i) {
        RandomStream rng(options.seed, regime_tag(regime), static_cast<std::uint64_t>(i));
        out.push_back(random_scenario(rng, regime, order, 1.0));
    }
    return out;
}

double spacing_deviation(const std::vector<double>& magnitudes) {
    const double span = magnitudes.back() - magnitudes.front();
    const double step = span / (magnitudes.size() - 1);
    double worst = 0.0;
    for (std::size_t i = 1; i < magnitudes.size(); ++i) {
        worst = std::max(worst, std::abs((magnitudes[i] - magnitudes[i - 1]) - step) / step);
    }
    return worst;
}

} // namespace

ChannelState random_scenario(RandomStream& rng, Regime regime, int order, double power) {
    const ComplexValue h = std::polar(0.2 + 2.8 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    const double threshold = regime_threshold(power, order, h);
    const double b_phase = 2.0 * std::numbers::pi * rng.uniform();
    const double u = rng.uniform();
    ComplexValue b;
    switch (regime) {
    case Regime::StrongReference: b = std::polar(std::sqrt(threshold * (1.0 + 4.0 * u)), b_phase); break;
    case Regime::WeakReference: b = std::polar(std::sqrt(threshold * (0.001 + 0.998 * u)), b_phase); break;
    case Regime::LoFree: break;
    }
    return {h, b, power, order};
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckResult> checks;
    const int m = options.order;

    for (Regime regime : kRegimes) {
        const auto scenarios = scenarios_for(options, regime, m);
        const std::string tag = std::string(to_string(regime));

        double worst_power = 0.0;
        double worst_spacing = 0.0;
        double worst_excess = -1.0;
        double worst_shortfall = 0.0;
        double worst_dominance = 0.0;
        for (const auto& state : scenarios) {
            const DesignOutcome design = design_loam(state);
            const auto& pts = design.constellation.points;
            worst_power = std::max(worst_power, std::abs(mean_power(pts) - state.power()) / state.power());
            worst_spacing = std::max(worst_spacing, spacing_deviation(design.magnitudes));

            const double closed = effective_min_distance(pts, state.h(), state.b());
            const double searched = oracle_ray_search(state, options.ray_steps).min_distance;
            worst_excess = std::max(worst_excess, (searched - closed) / closed);
            worst_shortfall = std::max(worst_shortfall, (closed - searched) / closed);

            for (Scheme s : {Scheme::Pam, Scheme::Qam, Scheme::Psk}) {
                if (s == Scheme::Qam && std::lround(std::sqrt(m)) * std::lround(std::sqrt(m)) != m) {
                    continue;
                }
                const auto base = gen_baseline(s, state.power(), m);
                const double other = effective_min_distance(base.points, state.h(), state.b());
                worst_dominance = std::max(worst_dominance, other - closed);
            }
        }
        checks.push_back({"power saturation [" + tag + "]", worst_power < 1e-6,
                          "max |mean_power - P|/P = " + sci(worst_power) + ", expected < 1e-6"});
        checks.push_back({"equal magnitude spacing [" + tag + "]", worst_spacing < 1e-9,
                          "max relative step deviation = " + sci(worst_spacing) + ", expected < 1e-9"});
        checks.push_back({"ray-search vs closed-form spacing [" + tag + "]",
                          worst_excess <= 1e-3 && worst_shortfall <= 1e-2,
                          "max excess = " + sci(worst_excess) + " (<= 1e-3), max shortfall = " +
                              sci(worst_shortfall) + " (<= 1e-2)"});
        checks.push_back({"dominance over pam/qam/psk [" + tag + "]", worst_dominance <= 1e-9,
                          "max baseline advantage = " + sci(worst_dominance) + ", expected <= 1e-9"});
    }

    {
        // Outward anchoring (points beyond c) against the inward design.
        double worst = 0.0;
        int compared = 0;
        for (const auto& state : scenarios_for(options, Regime::WeakReference, m)) {
            if (std::norm(state.b() / state.h()) >= state.power()) {
                continue;
            }
            const auto inward = design_loam(state);
            const auto outward = design_loam_outward(state);
            worst = std::max(worst, outward.spacing - inward.spacing);
            ++compared;
        }
        checks.push_back({"outward anchoring dominated", worst <= 0.0,
                          "max outward - inward spacing = " + sci(worst) + " over " + std::to_string(compared) +
                              " scenarios, expected <= 0"});
    }

    {
        const ComplexValue h = std::polar(1.3, 0.7);
        const double threshold = regime_threshold(1.0, m, h);
        const Regime expected[] = {Regime::WeakReference, Regime::StrongReference, Regime::StrongReference};
        const double ratios[] = {0.99, 1.0, 1.01};
        bool flips = true;
        std::string seen;
        for (int k = 0; k < 3; ++k) {
            const ChannelState state(h, std::polar(std::sqrt(threshold * ratios[k]), -0.4), 1.0, m);
            const Regime got = classify_regime(state);
            flips = flips && got == expected[k];
            seen += (k ? "," : "") + std::string(to_string(got));
        }
        const ChannelState boundary(h, std::polar(std::sqrt(threshold), -0.4), 1.0, m);
        const auto design = design_loam(boundary);
        double outer = 0.0;
        for (const auto& x : design.constellation.points) {
            outer = std::max(outer, std::abs(x));
        }
        const double c_mag = std::abs(boundary.b() / boundary.h());
        const double gap = std::abs(outer - c_mag);
        checks.push_back({"regime threshold flip", flips && gap < 1e-9,
                          "regimes at 0.99/1.00/1.01 = " + seen + ", | |x_max| - |c| | = " + sci(gap)});
    }

    {
        double worst_off_ray = 0.0;
        double worst_gain = -1.0;
        for (int i = 0; i < options.scenarios; ++i) {
            RandomStream rng(options.seed, 0x200, static_cast<std::uint64_t>(i));
            const Regime regime = i % 2 == 0 ? Regime::StrongReference : Regime::WeakReference;
            const ChannelState state = random_scenario(rng, regime, 2, 1.0);
            const auto found = oracle_free_search_m2(state.h(), state.b(), 1.0, options.free_grid, options.threads);
            const ComplexValue c = -state.b() / state.h();
            const ComplexValue derotate = std::polar(1.0, -std::arg(c));
            worst_off_ray = std::max({worst_off_ray, std::abs((found.x0 * derotate).imag()),
                                      std::abs((found.x1 * derotate).imag())});
            const auto design = design_loam(state);
            const double closed = effective_min_distance(design.constellation.points, state.h(), state.b());
            worst_gain = std::max(worst_gain, (found.min_distance - closed) / closed);
        }
        checks.push_back({"free-search collinearity", worst_off_ray < 0.02,
                          "max |Im(x e^{-j arg c})| = " + sci(worst_off_ray) + ", expected < 2.000e-02"});
        checks.push_back({"free-search does not beat the ray", worst_gain <= 1e-3,
                          "max relative gain = " + sci(worst_gain) + ", expected <= 1e-3"});
    }
    return checks;
}

std::string format_report(const std::vector<CheckResult>& checks) {
    std::string out;
    int failed = 0;
    for (const auto& check : checks) {
        out += (check.passed ? "PASS  " : "FAIL  ") + check.name + ": " + check.detail + "\n";
        failed += check.passed ? 0 : 1;
    }
    out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks passed\n";
    return out;
}

} // namespace loam

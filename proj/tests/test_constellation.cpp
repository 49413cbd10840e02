#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "loam/constellation.hpp"
#include "loam/errors.hpp"
#include "loam/oracle.hpp"
#include "loam/verify.hpp"

using namespace loam;
using doctest::Approx;

namespace {

// Largest d on a bisection grid whose explicitly built anchored line passes
// power_feasible. Independent of the closed-form roots.
double feasible_spacing(double c_mag, double power, int order, double direction) {
    auto fits = [&](double d) {
        std::vector<ComplexValue> pts;
        for (int i = 0; i < order; ++i) {
            pts.emplace_back(c_mag + direction * i * d, 0.0);
        }
        return power_feasible(pts, power);
    };
    double lo = 0.0;
    double hi = 10.0 * std::sqrt(power);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<ComplexValue> rotate(const std::vector<ComplexValue>& pts, double phi) {
    std::vector<ComplexValue> out;
    for (auto x : pts) {
        out.push_back(x * std::polar(1.0, phi));
    }
    return out;
}

} // namespace

TEST_CASE("classify_regime") {
    CHECK(classify_regime({{1, 0}, {0, 0}, 1.0, 4}) == Regime::LoFree);
    CHECK(classify_regime({{1, 0}, {2, 0}, 1.0, 4}) == Regime::StrongReference);
    CHECK(classify_regime({{1, 0}, {0.6, 0}, 1.0, 4}) == Regime::WeakReference);
    CHECK(regime_threshold(1.0, 4, {1, 0}) == Approx(1.8));
    // Boundary equality is strong.
    CHECK(classify_regime({{1, 0}, {std::sqrt(1.8), 0}, 1.0, 4}) == Regime::StrongReference);
}

TEST_CASE("spacing_strong") {
    CHECK(spacing_strong(1.0, 2) == Approx(2.0));
    CHECK(spacing_strong(1.0, 4) == Approx(0.894427).epsilon(1e-6));
    for (int m : {2, 3, 4, 8, 16, 64}) {
        for (double p : {0.3, 1.0, 7.5}) {
            const double d = spacing_strong(p, m);
            CHECK((m * m - 1) * d * d / 12.0 == Approx(p).epsilon(1e-14));
        }
    }
}

TEST_CASE("spacing_anchor against the power-feasibility oracle") {
    CHECK(spacing_anchor(0.0, 1.0, 2) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(spacing_anchor(0.0, 1.0, 4) == Approx(0.534522).epsilon(1e-6));
    // Inward anchoring (c, c - d, ...) at c = 0.6: 3.5 d^2 - 1.8 d - 0.64 = 0.
    CHECK(spacing_anchor(0.6, 1.0, 4) == Approx(0.7561214056).epsilon(1e-9));

    for (double c : {0.0, 0.1, 0.6, 0.9, 1.2}) {
        for (int m : {2, 4, 8}) {
            if (c * c >= regime_threshold(1.0, m, {1, 0})) {
                continue;
            }
            CHECK(spacing_anchor(c, 1.0, m) == Approx(feasible_spacing(c, 1.0, m, -1.0)).epsilon(1e-9));
        }
    }
}

TEST_CASE("spacing_anchor_outward reproduces the outward root") {
    CHECK(spacing_anchor_outward(0.0, 1.0, 2) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(spacing_anchor_outward(0.6, 1.0, 4) == Approx(0.241826).epsilon(1e-4));
    CHECK(spacing_anchor_outward(0.6, 1.0, 4) == Approx(feasible_spacing(0.6, 1.0, 4, 1.0)).epsilon(1e-9));
    CHECK_THROWS_AS(spacing_anchor_outward(1.0, 1.0, 4), InfeasibleDesign);
    CHECK_THROWS_AS(spacing_anchor(2.0, 1.0, 4), InfeasibleDesign);
}

TEST_CASE("design_loam strong reference example") {
    const auto out = design_loam({{1, 0}, {2, 0}, 1.0, 4});
    CHECK(out.regime == Regime::StrongReference);
    CHECK(out.ray_phase == Approx(std::numbers::pi));
    CHECK(out.spacing == Approx(0.894427).epsilon(1e-6));
    const double expected_re[] = {-1.3416408, -0.4472136, 0.4472136, 1.3416408};
    const double expected_r[] = {0.6583592, 1.5527864, 2.4472136, 3.3416408};
    for (int i = 0; i < 4; ++i) {
        CHECK(out.constellation.points[i].real() == Approx(expected_re[i]).epsilon(1e-7));
        CHECK(std::abs(out.constellation.points[i].imag()) < 1e-12);
        CHECK(out.magnitudes[i] == Approx(expected_r[i]).epsilon(1e-7));
    }
    CHECK(effective_min_distance(out.constellation.points, {1, 0}, {2, 0}) == Approx(0.894427).epsilon(1e-6));
}

TEST_CASE("design_loam weak reference example") {
    const auto out = design_loam({{1, 0}, {0.6, 0}, 1.0, 4});
    CHECK(out.regime == Regime::WeakReference);
    const double expected_re[] = {-0.6, 0.1561214056, 0.9122428112, 1.6683642168};
    for (int i = 0; i < 4; ++i) {
        CHECK(out.constellation.points[i].real() == Approx(expected_re[i]).epsilon(1e-9));
        CHECK(out.magnitudes[i] == Approx(i * 0.7561214056).epsilon(1e-9));
    }
    CHECK(mean_power(out.constellation.points) == Approx(1.0).epsilon(1e-12));

    // The outward form is feasible here but strictly worse.
    const auto outward = design_loam_outward({{1, 0}, {0.6, 0}, 1.0, 4});
    const double outward_re[] = {-0.6, -0.8418357, -1.0836714, -1.3255071};
    for (int i = 0; i < 4; ++i) {
        CHECK(outward.constellation.points[i].real() == Approx(outward_re[i]).epsilon(1e-6));
    }
    CHECK(mean_power(outward.constellation.points) == Approx(1.0).epsilon(1e-6));
    CHECK(outward.spacing < out.spacing);
}

TEST_CASE("design_loam LO-free example") {
    const auto out = design_loam({{1, 0}, {0, 0}, 1.0, 2});
    CHECK(out.regime == Regime::LoFree);
    CHECK(out.ray_phase == 0.0);
    CHECK(out.constellation.points[0] == ComplexValue(0, 0));
    CHECK(out.constellation.points[1].real() == Approx(std::sqrt(2.0)));
    CHECK(out.magnitudes[1] == Approx(std::sqrt(2.0)));
}

TEST_CASE("design invariants over random scenarios") {
    for (Regime regime : {Regime::StrongReference, Regime::WeakReference, Regime::LoFree}) {
        for (int i = 0; i < 3000; ++i) {
            RandomStream rng(77, static_cast<std::uint32_t>(regime), i);
            const int m = 2 << rng.below(5); // 2..32
            const ChannelState state = random_scenario(rng, regime, m, 0.2 + 3.0 * rng.uniform());
            const auto out = design_loam(state);
            REQUIRE(out.regime == regime);
            const auto& pts = out.constellation.points;
            REQUIRE(pts.size() == static_cast<std::size_t>(m));

            // Power saturates the budget.
            CHECK(mean_power(pts) == Approx(state.power()).epsilon(1e-9));
            CHECK(power_feasible(pts, state.power()));

            // Magnitudes match |hx+b|, increase, and are equally spaced.
            const double step = (out.magnitudes.back() - out.magnitudes.front()) / (m - 1);
            for (int k = 0; k < m; ++k) {
                CHECK(out.magnitudes[k] == Approx(transformed_magnitude(pts[k], state.h(), state.b())).epsilon(1e-9));
                if (k > 0) {
                    CHECK(out.magnitudes[k] > out.magnitudes[k - 1]);
                    CHECK(std::abs(out.magnitudes[k] - out.magnitudes[k - 1] - step) <= 1e-9 * step);
                }
            }
            CHECK(step == Approx(std::abs(state.h()) * out.spacing).epsilon(1e-9));

            // Co-linear along the ray through c, all on the origin side of c.
            if (regime != Regime::LoFree) {
                const ComplexValue c = -state.b() / state.h();
                const ComplexValue derotate = std::polar(1.0, -std::arg(c));
                for (const auto& x : pts) {
                    const ComplexValue xr = x * derotate;
                    CHECK(std::abs(xr.imag()) <= 1e-9 * std::sqrt(state.power()));
                    CHECK(xr.real() <= std::abs(c) * (1 + 1e-12) + 1e-12);
                }
            }

            // Dominance over the fixed baselines.
            const double loam_gap = effective_min_distance(pts, state.h(), state.b());
            for (Scheme s : {Scheme::Pam, Scheme::Psk}) {
                const auto base = gen_baseline(s, state.power(), m);
                CHECK(loam_gap >= effective_min_distance(base.points, state.h(), state.b()) - 1e-9);
            }
            if (m == 4 || m == 16) {
                const auto qam = gen_qam(state.power(), m);
                CHECK(loam_gap >= effective_min_distance(qam.points, state.h(), state.b()) - 1e-9);
            }
        }
    }
}

TEST_CASE("rotating h rotates the design by the opposite angle") {
    for (int i = 0; i < 500; ++i) {
        RandomStream rng(91, 0, i);
        const Regime regime = i % 2 ? Regime::StrongReference : Regime::WeakReference;
        const ChannelState base = random_scenario(rng, regime, 4, 1.0);
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const ChannelState spun(base.h() * std::polar(1.0, phi), base.b(), 1.0, 4);
        const auto a = design_loam(base);
        const auto b = design_loam(spun);
        const auto expected = rotate(a.constellation.points, -phi);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(b.constellation.points[k] - expected[k]) <= 1e-9);
            CHECK(b.magnitudes[k] == Approx(a.magnitudes[k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("scaling h and b together keeps the points and scales the magnitudes") {
    const ChannelState base({0.3, -0.8}, {0.2, 0.5}, 1.0, 8);
    for (double t : {0.01, 0.5, 3.0, 250.0}) {
        const auto a = design_loam(base);
        const auto b = design_loam({base.h() * t, base.b() * t, 1.0, 8});
        for (int k = 0; k < 8; ++k) {
            CHECK(std::abs(a.constellation.points[k] - b.constellation.points[k]) <= 1e-12);
            CHECK(b.magnitudes[k] == Approx(t * a.magnitudes[k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("regime boundary: outermost point reaches c") {
    for (int m : {2, 4, 8, 64}) {
        const ComplexValue h = std::polar(0.7, 1.1);
        const double threshold = regime_threshold(1.0, m, h);
        const auto at = [&](double ratio) {
            return ChannelState(h, std::polar(std::sqrt(threshold * ratio), -2.0), 1.0, m);
        };
        CHECK(classify_regime(at(0.99)) == Regime::WeakReference);
        CHECK(classify_regime(at(1.0)) == Regime::StrongReference);
        CHECK(classify_regime(at(1.01)) == Regime::StrongReference);

        const auto boundary = at(1.0);
        const auto out = design_loam(boundary);
        double outer = 0.0;
        for (auto x : out.constellation.points) {
            outer = std::max(outer, std::abs(x));
        }
        CHECK(std::abs(outer - std::abs(boundary.b() / boundary.h())) <= 1e-9);
        // The weak design converges to the strong one at the threshold.
        const auto just_below = design_loam(at(1.0 - 1e-9));
        CHECK(just_below.spacing == Approx(out.spacing).epsilon(1e-6));
    }
}

TEST_CASE("baselines") {
    const auto pam2 = gen_pam(1.0, 2);
    CHECK(pam2.points[0] == ComplexValue(-1, 0));
    CHECK(pam2.points[1] == ComplexValue(1, 0));
    const auto pam4 = gen_pam(1.0, 4);
    const double pam4_re[] = {-1.3416408, -0.4472136, 0.4472136, 1.3416408};
    for (int i = 0; i < 4; ++i) {
        CHECK(pam4.points[i].real() == Approx(pam4_re[i]).epsilon(1e-7));
    }

    const auto psk = gen_psk(1.0, 4);
    const ComplexValue psk_expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(psk.points[i] - psk_expected[i]) < 1e-15);
    }
    CHECK(effective_min_distance(gen_psk(2.0, 8).points, {0.3, 0.9}, {0, 0}) < 1e-12);

    const auto qam = gen_qam(1.0, 4);
    for (auto x : qam.points) {
        CHECK(std::abs(std::abs(x.real()) - 1 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(std::abs(x.imag()) - 1 / std::sqrt(2.0)) < 1e-15);
    }
    CHECK_THROWS_AS(gen_qam(1.0, 8), InvalidArgument);

    for (int i = 0; i < 200; ++i) {
        RandomStream rng(3, 0, i);
        const double p = 0.1 + 5.0 * rng.uniform();
        const int m = 2 + static_cast<int>(rng.below(63));
        CHECK(mean_power(gen_pam(p, m).points) == Approx(p).epsilon(1e-12));
        CHECK(mean_power(gen_psk(p, m).points) == Approx(p).epsilon(1e-12));
        for (auto x : gen_psk(p, m).points) {
            CHECK(std::abs(x) == Approx(std::sqrt(p)).epsilon(1e-12));
        }
    }
    CHECK(mean_power(gen_qam(1.0, 64).points) == Approx(1.0).epsilon(1e-12));
    CHECK(mean_power(gen_qam(2.5, 16).points) == Approx(2.5).epsilon(1e-12));
}

TEST_CASE("mean_power") {
    const std::vector<ComplexValue> zero{{0, 0}};
    CHECK(mean_power(zero) == 0.0);
    const std::vector<ComplexValue> antipodal{{-1, 0}, {1, 0}};
    CHECK(mean_power(antipodal) == 1.0);
    CHECK_THROWS_AS(mean_power(std::vector<ComplexValue>{}), InvalidArgument);
}

TEST_CASE("scheme labels round-trip") {
    for (Scheme s : {Scheme::Loam, Scheme::Pam, Scheme::Qam, Scheme::Psk}) {
        CHECK(parse_scheme(to_string(s)) == s);
    }
    CHECK_THROWS_AS(parse_scheme("ask"), InvalidArgument);
}

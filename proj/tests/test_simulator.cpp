#include <doctest.h>

#include <cmath>
#include <string>

#include "loam/errors.hpp"
#include "loam/simulator.hpp"

using namespace loam;
using doctest::Approx;

namespace {

SweepConfig base_config() {
    SweepConfig config;
    config.schemes = {Scheme::Loam};
    config.order = 4;
    config.snr_grid_db = {20.0};
    config.trials_per_point = 1000;
    config.seed = 1;
    return config;
}

std::string error_path(const SweepConfig& config) {
    try {
        validate(config);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "";
}

} // namespace

TEST_CASE("validate names the offending entry") {
    CHECK(error_path(base_config()).empty());

    auto c = base_config();
    c.order = 1;
    CHECK(error_path(c) == "/order");

    c = base_config();
    c.schemes = {};
    CHECK(error_path(c) == "/schemes");

    c = base_config();
    c.order = 8;
    c.schemes = {Scheme::Loam, Scheme::Qam};
    CHECK(error_path(c) == "/schemes/1");

    c = base_config();
    c.snr_grid_db = {};
    CHECK(error_path(c) == "/snr_grid_db");

    c = base_config();
    c.snr_grid_db = {1.0, std::nan("")};
    CHECK(error_path(c) == "/snr_grid_db/1");

    c = base_config();
    c.trials_per_point = 999;
    CHECK(error_path(c) == "/trials_per_point");

    c = base_config();
    c.power = 0.0;
    CHECK(error_path(c) == "/power");

    c = base_config();
    c.channel_mode = FixedChannel{{0, 0}};
    CHECK(error_path(c) == "/channel_mode/h");

    c = base_config();
    c.reference_mode = ThresholdRatio{-1.0};
    CHECK(error_path(c) == "/reference_mode/ratio");

    CHECK_THROWS_AS(run_sweep(c), ConfigError);
}

TEST_CASE("noise-free LOAM links never err") {
    for (auto mode : {ReferenceMode{ZeroReference{}}, ReferenceMode{FixedReference{{2, 0}}},
                      ReferenceMode{ThresholdRatio{0.5}}}) {
        auto c = base_config();
        c.order = 8;
        c.snr_grid_db = {250.0};
        c.trials_per_point = 10000;
        c.channel_mode = FixedChannel{std::polar(0.7, 1.1)};
        c.reference_mode = mode;
        const auto points = run_sweep(c, 2);
        REQUIRE(points.size() == 1);
        CHECK(points[0].errors == 0);
        CHECK(points[0].ser == 0.0);
        CHECK(points[0].ci95_halfwidth == 0.0);
    }
}

TEST_CASE("baselines plateau under a zero reference") {
    auto c = base_config();
    c.schemes = {Scheme::Pam, Scheme::Qam, Scheme::Psk};
    c.snr_grid_db = {120.0};
    c.trials_per_point = 40000;
    const auto points = run_sweep(c, 4);
    REQUIRE(points.size() == 3);
    // Every PAM level shares its magnitude with its mirror image.
    CHECK(points[0].ser == Approx(0.5).epsilon(0.03));
    // QAM-4 and PSK-4 are single-ring: only symbol 0 is ever decoded.
    CHECK(points[1].ser == Approx(0.75).epsilon(0.03));
    CHECK(points[2].ser == Approx(0.75).epsilon(0.03));
}

TEST_CASE("sweeps are deterministic and independent of the thread count") {
    auto c = base_config();
    c.schemes = {Scheme::Loam, Scheme::Pam, Scheme::Qam, Scheme::Psk};
    c.snr_grid_db = {0.0, 10.0, 20.0};
    c.trials_per_point = 20000;
    c.channel_mode = RayleighPerTrial{};
    c.reference_mode = ThresholdRatio{0.4};
    const auto one = run_sweep(c, 1);
    const auto many = run_sweep(c, 8);
    const auto again = run_sweep(c, 3);
    REQUIRE(one.size() == 12);
    REQUIRE(many.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].errors == many[i].errors);
        CHECK(one[i].errors == again[i].errors);
        CHECK(one[i].ser == many[i].ser);
    }
    // Config order: scheme-major, then SNR.
    CHECK(one[3].scheme == Scheme::Pam);
    CHECK(one[3].snr_db == 0.0);

    c.seed = 2;
    const auto other = run_sweep(c, 8);
    int differing = 0;
    for (std::size_t i = 0; i < one.size(); ++i) {
        differing += other[i].errors != one[i].errors ? 1 : 0;
    }
    CHECK(differing > 0);
}

TEST_CASE("SerPoint invariants and monotone decay with SNR") {
    auto c = base_config();
    c.schemes = {Scheme::Loam, Scheme::Pam};
    c.snr_grid_db = {-5.0, 5.0, 15.0, 25.0};
    c.trials_per_point = 50000;
    c.reference_mode = FixedReference{{1.5, 0.5}};
    const auto points = run_sweep(c);
    for (const auto& p : points) {
        CHECK(p.order == 4);
        CHECK(p.trials == 50000);
        CHECK(p.errors <= p.trials);
        CHECK(p.ser == static_cast<double>(p.errors) / static_cast<double>(p.trials));
        CHECK(p.ci95_halfwidth == Approx(1.96 * std::sqrt(p.ser * (1 - p.ser) / p.trials)));
    }
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 1; k < 4; ++k) {
            CHECK(points[s * 4 + k].ser <= points[s * 4 + k - 1].ser);
        }
    }
}

TEST_CASE("gaussian_tail and the asymptotic SER law") {
    CHECK(gaussian_tail(0.0) == Approx(0.5));
    CHECK(gaussian_tail(1.0) == Approx(0.158655254).epsilon(1e-8));
    CHECK(gaussian_tail(-1.0) == Approx(0.841344746).epsilon(1e-8));

    CHECK(theoretical_ser_asymptotic(1e6, 0.1, 4) == 0.0);
    CHECK(theoretical_ser_asymptotic(2.0, 0.01, 2) < 1e-20);
    CHECK(theoretical_ser_asymptotic(1e-12, 0.1, 4) == Approx(0.75));
    CHECK_THROWS_AS(theoretical_ser_asymptotic(-1.0, 0.1, 4), InvalidArgument);
    CHECK_THROWS_AS(theoretical_ser_asymptotic(1.0, 0.0, 4), InvalidArgument);
    CHECK_THROWS_AS(theoretical_ser_asymptotic(1.0, 0.1, 1), InvalidArgument);

    const double sigma2 = sigma2_for_asymptotic_ser(2.0, 2, 1e-3);
    CHECK(theoretical_ser_asymptotic(2.0, sigma2, 2) == Approx(1e-3).epsilon(1e-9));
    CHECK(sigma2 == Approx(0.2095).epsilon(1e-3));
}

TEST_CASE("Monte-Carlo SER tracks the asymptotic law for a strong reference") {
    // M = 2, b = 10: magnitudes 9 and 11, gap 2.
    const double sigma2 = sigma2_for_asymptotic_ser(2.0, 2, 1e-2);
    auto c = base_config();
    c.order = 2;
    c.reference_mode = FixedReference{{10, 0}};
    c.snr_grid_db = {10.0 * std::log10(1.0 / sigma2)};
    c.trials_per_point = 200000;
    const auto points = run_sweep(c);
    const double se = std::sqrt(1e-2 * (1 - 1e-2) / 200000.0);
    CHECK(std::abs(points[0].ser - 1e-2) < 4 * se);
}

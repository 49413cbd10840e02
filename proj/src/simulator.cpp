#include "loam/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "loam/errors.hpp"

namespace loam {

namespace {

constexpr std::uint64_t kTrialsPerBlock = 8192;
constexpr std::uint64_t kMinTrials = 1000;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ComplexValue threshold_reference(double ratio, double power, int order, ComplexValue h, double phase) {
    return std::polar(std::sqrt(ratio * regime_threshold(power, order, h)), phase);
}

// Everything a worker needs for one (scheme, snr) grid point.
struct PointPlan {
    Scheme scheme;
    std::uint32_t tag;
    double sigma2;
    // Populated for FixedChannel only.
    std::optional<ChannelState> state;
    std::optional<Link> link;
};

struct WorkUnit {
    std::size_t point;
    std::uint64_t first_trial;
    std::uint64_t trials;
};

std::uint64_t count_errors(const SweepConfig& config, const PointPlan& plan, const WorkUnit& unit) {
    std::uint64_t errors = 0;
    for (std::uint64_t t = unit.first_trial; t < unit.first_trial + unit.trials; ++t) {
        RandomStream rng(config.seed, plan.tag, t);
        if (plan.link) {
            errors += run_trial(*plan.link, *plan.state, rng) ? 1 : 0;
            continue;
        }
        const ComplexValue h(rng.normal() / std::numbers::sqrt2, rng.normal() / std::numbers::sqrt2);
        const ComplexValue b = std::visit(
            overloaded{
                [](const ZeroReference&) { return ComplexValue{}; },
                [](const FixedReference& ref) { return ref.b; },
                [&](const ThresholdRatio& ref) {
                    return threshold_reference(ref.ratio, config.power, config.order, h,
                                               2.0 * std::numbers::pi * rng.uniform());
                },
            },
            config.reference_mode);
        const ChannelState state(h, b, config.power, config.order, plan.sigma2);
        const Link link = make_link(plan.scheme, state);
        errors += run_trial(link, state, rng) ? 1 : 0;
    }
    return errors;
}

} // namespace

void validate(const SweepConfig& config) {
    if (config.order < 2) {
        throw ConfigError("/order", "order must be >= 2");
    }
    if (config.schemes.empty()) {
        throw ConfigError("/schemes", "at least one scheme is required");
    }
    if (config.schemes.size() > 0xFFFF) {
        throw ConfigError("/schemes", "too many schemes");
    }
    for (std::size_t i = 0; i < config.schemes.size(); ++i) {
        if (config.schemes[i] == Scheme::Qam) {
            const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(config.order))));
            if (side * side != config.order) {
                throw ConfigError("/schemes/" + std::to_string(i),
                                  "qam requires a square order, got " + std::to_string(config.order));
            }
        }
    }
    if (config.snr_grid_db.empty()) {
        throw ConfigError("/snr_grid_db", "at least one SNR value is required");
    }
    if (config.snr_grid_db.size() > 0xFFFF) {
        throw ConfigError("/snr_grid_db", "too many SNR values");
    }
    for (std::size_t i = 0; i < config.snr_grid_db.size(); ++i) {
        if (!std::isfinite(config.snr_grid_db[i])) {
            throw ConfigError("/snr_grid_db/" + std::to_string(i), "SNR must be finite");
        }
    }
    if (config.trials_per_point < kMinTrials) {
        throw ConfigError("/trials_per_point", "must be >= 1000");
    }
    if (!(config.power > 0.0) || !std::isfinite(config.power)) {
        throw ConfigError("/power", "must be > 0");
    }
    if (const auto* fixed = std::get_if<FixedChannel>(&config.channel_mode)) {
        if (!is_finite(fixed->h) || std::abs(fixed->h) == 0.0) {
            throw ConfigError("/channel_mode/h", "must be finite and non-zero");
        }
    }
    if (const auto* ref = std::get_if<FixedReference>(&config.reference_mode)) {
        if (!is_finite(ref->b)) {
            throw ConfigError("/reference_mode/b", "must be finite");
        }
    }
    if (const auto* ref = std::get_if<ThresholdRatio>(&config.reference_mode)) {
        if (!(ref->ratio >= 0.0) || !std::isfinite(ref->ratio)) {
            throw ConfigError("/reference_mode/ratio", "must be finite and >= 0");
        }
    }
}

Link make_link(Scheme scheme, const ChannelState& state) {
    Link link;
    if (scheme == Scheme::Loam) {
        DesignOutcome design = design_loam(state);
        link.detector = build_detector(design.magnitudes);
        link.constellation = std::move(design.constellation);
    } else {
        link.constellation = gen_baseline(scheme, state.power(), state.order());
        link.detector = build_detector(link.constellation.points, state.h(), state.b());
    }
    return link;
}

bool run_trial(const Link& link, const ChannelState& state, RandomStream& rng) {
    const auto& points = link.constellation.points;
    const auto sent = static_cast<int>(rng.below(points.size()));
    const ComplexValue noise = draw_complex_noise(rng, state.sigma2());
    const double z = observe(points[sent], state, noise);
    return detect(link.detector, z) != sent;
}

std::vector<SerPoint> run_sweep(const SweepConfig& config, unsigned threads) {
    validate(config);

    const bool fixed = std::holds_alternative<FixedChannel>(config.channel_mode);
    std::vector<PointPlan> plans;
    plans.reserve(config.schemes.size() * config.snr_grid_db.size());
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
        for (std::size_t k = 0; k < config.snr_grid_db.size(); ++k) {
            PointPlan plan{config.schemes[s], static_cast<std::uint32_t>((s << 16) | k), 0.0, {}, {}};
            if (fixed) {
                const ComplexValue h = std::get<FixedChannel>(config.channel_mode).h;
                const ComplexValue b = std::visit(
                    overloaded{
                        [](const ZeroReference&) { return ComplexValue{}; },
                        [](const FixedReference& ref) { return ref.b; },
                        [&](const ThresholdRatio& ref) {
                            return threshold_reference(ref.ratio, config.power, config.order, h, 0.0);
                        },
                    },
                    config.reference_mode);
                plan.sigma2 = snr_db_to_sigma2(config.snr_grid_db[k], config.power, std::norm(h));
                plan.state.emplace(h, b, config.power, config.order, plan.sigma2);
                plan.link = make_link(plan.scheme, *plan.state);
            } else {
                plan.sigma2 = snr_db_to_sigma2(config.snr_grid_db[k], config.power, 1.0);
            }
            plans.push_back(std::move(plan));
        }
    }

    std::vector<WorkUnit> units;
    for (std::size_t p = 0; p < plans.size(); ++p) {
        for (std::uint64_t first = 0; first < config.trials_per_point; first += kTrialsPerBlock) {
            units.push_back({p, first, std::min(kTrialsPerBlock, config.trials_per_point - first)});
        }
    }

    std::vector<std::uint64_t> unit_errors(units.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t u = next.fetch_add(1); u < units.size(); u = next.fetch_add(1)) {
            unit_errors[u] = count_errors(config, plans[units[u].point], units[u]);
        }
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, units.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    std::vector<std::uint64_t> errors(plans.size(), 0);
    for (std::size_t u = 0; u < units.size(); ++u) {
        errors[units[u].point] += unit_errors[u];
    }

    std::vector<SerPoint> out;
    out.reserve(plans.size());
    for (std::size_t p = 0; p < plans.size(); ++p) {
        SerPoint point;
        point.scheme = plans[p].scheme;
        point.order = config.order;
        point.snr_db = config.snr_grid_db[p % config.snr_grid_db.size()];
        point.trials = config.trials_per_point;
        point.errors = errors[p];
        point.ser = static_cast<double>(point.errors) / static_cast<double>(point.trials);
        point.ci95_halfwidth = 1.96 * std::sqrt(point.ser * (1.0 - point.ser) / static_cast<double>(point.trials));
        out.push_back(point);
    }
    return out;
}

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double theoretical_ser_asymptotic(double delta, double sigma2, int order) {
    if (!(delta > 0.0) || !(sigma2 > 0.0) || order < 2) {
        throw InvalidArgument("theoretical_ser_asymptotic needs delta > 0, sigma2 > 0, order >= 2");
    }
    return 2.0 * (order - 1) / order * gaussian_tail(delta / (2.0 * std::sqrt(sigma2 / 2.0)));
}

double sigma2_for_asymptotic_ser(double delta, int order, double target) {
    const double ceiling = static_cast<double>(order - 1) / order;
    if (!(target > 0.0) || !(target < ceiling)) {
        throw InvalidArgument("target SER must lie in (0, (M-1)/M)");
    }
    double lo = std::log(delta * delta * 1e-12);
    double hi = std::log(delta * delta * 1e6);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (theoretical_ser_asymptotic(delta, std::exp(mid), order) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

} // namespace loam

#include "loam/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>
#include <tuple>

#include "loam/errors.hpp"

namespace loam {

namespace {

constexpr double kPowerSlack = 1e-9;

// ---------------------------------------------------------------------------
// Ray search
// ---------------------------------------------------------------------------

class RayProblem {
public:
    RayProblem(double anchor, int order, double budget) : anchor_(anchor), order_(order), budget_(budget) {}

    /// Best selection from `positions` (max of the min distance-from-anchor gap
    /// subject to the power budget). Empty when nothing is feasible.
    std::vector<double> solve(std::vector<double> positions) {
        std::sort(positions.begin(), positions.end(),
                  [&](double lhs, double rhs) { return key(lhs) < key(rhs); });
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        pos_ = std::move(positions);
        dist_.resize(pos_.size());
        cost_.resize(pos_.size());
        for (std::size_t k = 0; k < pos_.size(); ++k) {
            dist_[k] = std::abs(pos_[k] - anchor_);
            cost_[k] = pos_[k] * pos_[k];
        }
        if (pos_.size() < static_cast<std::size_t>(order_)) {
            return {};
        }

        double lo = 0.0;
        double hi = dist_.back() - dist_.front();
        if (min_cost(hi / (order_ - 1) * (1.0 + 1e-12), false) <= budget_) {
            lo = hi / (order_ - 1);
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (min_cost(mid, false) <= budget_) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!(lo > 0.0) || min_cost(lo, true) > budget_) {
            return {};
        }
        return selection_;
    }

private:
    // Sort by distance from the anchor, ties by position.
    std::pair<double, double> key(double y) const { return {std::abs(y - anchor_), y}; }

    // Cheapest total power of `order_` picks whose distances from the anchor
    // are pairwise >= gap.
    double min_cost(double gap, bool record) {
        const std::size_t n = pos_.size();
        constexpr double inf = std::numeric_limits<double>::infinity();
        std::vector<double> prev(cost_);
        std::vector<double> cur(n);
        std::vector<std::vector<int>> parent;
        if (record) {
            parent.assign(order_, std::vector<int>(n, -1));
        }
        for (int level = 1; level < order_; ++level) {
            std::size_t next = 0;
            double best = inf;
            int best_at = -1;
            for (std::size_t k = 0; k < n; ++k) {
                while (next < n && dist_[next] <= dist_[k] - gap) {
                    if (prev[next] < best) {
                        best = prev[next];
                        best_at = static_cast<int>(next);
                    }
                    ++next;
                }
                cur[k] = cost_[k] + best;
                if (record) {
                    parent[level][k] = best_at;
                }
            }
            std::swap(prev, cur);
        }
        const auto it = std::min_element(prev.begin(), prev.end());
        if (record && std::isfinite(*it)) {
            selection_.assign(order_, 0.0);
            int k = static_cast<int>(it - prev.begin());
            for (int level = order_ - 1; level >= 0; --level) {
                selection_[level] = pos_[k];
                if (level > 0) {
                    k = parent[level][k];
                }
            }
        }
        return *it;
    }

    double anchor_;
    int order_;
    double budget_;
    std::vector<double> pos_;
    std::vector<double> dist_;
    std::vector<double> cost_;
    std::vector<double> selection_;
};

double min_gap_of(std::span<const ComplexValue> points, ComplexValue h, ComplexValue b) {
    return effective_min_distance(points, h, b);
}

// ---------------------------------------------------------------------------
// Free search (M = 2)
// ---------------------------------------------------------------------------

struct PairCandidate {
    double value = -1.0;
    ComplexValue x0;
    ComplexValue x1;
};

auto lex(const PairCandidate& c) {
    return std::make_tuple(c.x0.real(), c.x0.imag(), c.x1.real(), c.x1.imag());
}

// Larger value wins; exact ties go to the lexicographically smaller pair.
bool better(const PairCandidate& lhs, const PairCandidate& rhs) {
    if (lhs.value != rhs.value) {
        return lhs.value > rhs.value;
    }
    return lex(lhs) < lex(rhs);
}

} // namespace

bool power_feasible(std::span<const ComplexValue> points, double power) {
    if (points.empty()) {
        throw InvalidArgument("power_feasible of an empty point set");
    }
    double sum = 0.0;
    for (const auto& x : points) {
        sum += std::norm(x);
    }
    return sum / static_cast<double>(points.size()) <= power * (1.0 + kPowerSlack);
}

RaySearchResult oracle_ray_search(const ChannelState& state, int steps) {
    if (steps < 1000) {
        throw InvalidArgument("oracle_ray_search needs steps >= 1000");
    }
    const int m = state.order();
    const double p = state.power();
    const ComplexValue c = -state.b() / state.h();
    const double anchor = std::abs(c);
    const ComplexValue dir = std::polar(1.0, anchor > 0.0 ? std::arg(c) : 0.0);
    const double reach = std::sqrt(m * p);

    RayProblem problem(anchor, m, m * p * (1.0 + kPowerSlack));

    std::vector<double> grid(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        grid[k] = -reach + 2.0 * reach * k / steps;
    }
    std::vector<double> best = problem.solve(grid);
    if (best.empty()) {
        throw InfeasibleDesign("ray search found no feasible configuration; increase steps");
    }

    auto to_points = [&](const std::vector<double>& offsets) {
        std::vector<ComplexValue> pts;
        pts.reserve(offsets.size());
        for (double y : offsets) {
            pts.push_back(dir * y);
        }
        return pts;
    };

    double cell = 2.0 * reach / steps;
    double gap = min_gap_of(to_points(best), state.h(), state.b()) / std::abs(state.h());
    constexpr int kHalfWindow = 50;
    while (cell > 1e-4 * gap) {
        const double fine = cell / 10.0;
        std::vector<double> cands;
        cands.reserve(best.size() * (2 * kHalfWindow + 1));
        for (double y : best) {
            for (int k = -kHalfWindow; k <= kHalfWindow; ++k) {
                const double v = y + k * fine;
                if (v >= -reach && v <= reach) {
                    cands.push_back(v);
                }
            }
        }
        auto refined = problem.solve(std::move(cands));
        if (!refined.empty()) {
            const double refined_gap = min_gap_of(to_points(refined), state.h(), state.b()) / std::abs(state.h());
            if (refined_gap >= gap) {
                best = std::move(refined);
                gap = refined_gap;
            }
        }
        cell = fine;
    }

    RaySearchResult out;
    out.points = to_points(best);
    out.min_distance = min_gap_of(out.points, state.h(), state.b());
    out.offsets = std::move(best);
    return out;
}

FreeSearchResult oracle_free_search_m2(ComplexValue h, ComplexValue b, double power, int grid, int threads) {
    if (grid < 50) {
        throw InvalidArgument("oracle_free_search_m2 needs grid >= 50");
    }
    // Validates h, b and power.
    const ChannelState state(h, b, power, 2);
    const double radius = std::sqrt(2.0 * power);
    const double budget = 2.0 * power * (1.0 + kPowerSlack);

    struct Sample {
        ComplexValue x;
        double energy;
        double magnitude;
    };
    std::vector<Sample> disk;
    const double step = 2.0 * radius / (grid - 1);
    for (int i = 0; i < grid; ++i) {
        for (int k = 0; k < grid; ++k) {
            const ComplexValue x(-radius + i * step, -radius + k * step);
            if (std::norm(x) <= budget) {
                disk.push_back({x, std::norm(x), std::abs(h * x + b)});
            }
        }
    }

    threads = std::max(1, threads);
    std::vector<PairCandidate> shard_best(threads);
    auto scan = [&](int shard) {
        PairCandidate local;
        for (std::size_t i = shard; i < disk.size(); i += threads) {
            const Sample& s0 = disk[i];
            for (const Sample& s1 : disk) {
                if (s0.energy + s1.energy > budget) {
                    continue;
                }
                const PairCandidate cand{std::abs(s1.magnitude - s0.magnitude), s0.x, s1.x};
                if (better(cand, local)) {
                    local = cand;
                }
            }
        }
        shard_best[shard] = local;
    };
    if (threads == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(scan, t);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    PairCandidate best = shard_best[0];
    for (const auto& cand : shard_best) {
        if (better(cand, best)) {
            best = cand;
        }
    }

    // Zoom in per-point polar coordinates: x0 = R cos(a) e^{j p0},
    // x1 = R sin(a) e^{j p1} with R/sqrt(budget) in [0, 1] and a in [0, pi/2].
    // Total power is R^2, so the constraint is a box and either point can
    // slide along its own circle while the other stays put (the optimum
    // typically sits on the power boundary, often with one point pinned at
    // the kink |h x + b| = 0). 9 points per coordinate across +-window; the
    // window is kept while it improves and halves otherwise.
    const double scale = std::sqrt(budget);
    auto to_polar = [&](ComplexValue x0, ComplexValue x1) {
        const double r0 = std::abs(x0);
        const double r1 = std::abs(x1);
        return std::array<double, 4>{std::min(1.0, std::hypot(r0, r1) / scale), std::atan2(r1, r0), std::arg(x0),
                                     std::arg(x1)};
    };
    auto from_polar = [&](const std::array<double, 4>& s) {
        const double r = s[0] * scale;
        return std::pair<ComplexValue, ComplexValue>{std::polar(r * std::cos(s[1]), s[2]),
                                                     std::polar(r * std::sin(s[1]), s[3])};
    };
    auto evaluate = [&](ComplexValue x0, ComplexValue x1) {
        return PairCandidate{std::abs(std::abs(h * x1 + b) - std::abs(h * x0 + b)), x0, x1};
    };
    double window = step / radius;
    int moves = 0;
    while (window > 1e-10) {
        const PairCandidate center = best;
        const auto origin = to_polar(center.x0, center.x1);
        const double delta = window / 4.0;
        for (int i0 = -4; i0 <= 4; ++i0) {
            const double rho = origin[0] + i0 * delta;
            if (rho < 0.0 || rho > 1.0) {
                continue;
            }
            for (int i1 = -4; i1 <= 4; ++i1) {
                const double split = origin[1] + i1 * delta;
                if (split < 0.0 || split > std::numbers::pi / 2) {
                    continue;
                }
                for (int i2 = -4; i2 <= 4; ++i2) {
                    for (int i3 = -4; i3 <= 4; ++i3) {
                        const auto [x0, x1] =
                            from_polar({rho, split, origin[2] + i2 * delta, origin[3] + i3 * delta});
                        if (std::norm(x0) + std::norm(x1) > budget) {
                            continue;
                        }
                        const PairCandidate cand = evaluate(x0, x1);
                        if (better(cand, best)) {
                            best = cand;
                        }
                    }
                }
            }
        }
        if (best.value > center.value && ++moves < 1000) {
            continue;
        }
        moves = 0;
        window /= 2.0;
    }
    return {best.value, best.x0, best.x1};
}

} // namespace loam

#pragma once

#include <span>
#include <vector>

#include "loam/channel_model.hpp"

namespace loam {

/// Brute-force searches used to certify the closed-form designs. Nothing on
/// the design path calls into this module.

/// mean |x|^2 <= P * (1 + 1e-9)
bool power_feasible(std::span<const ComplexValue> points, double power);

struct RaySearchResult {
    /// min_{i != j} |r_i - r_j| of the best configuration found.
    double min_distance = 0.0;
    /// Signed positions along the line through the origin and c = -b/h
    /// (x = e^{j arg c} * offset), sorted by magnitude.
    std::vector<double> offsets;
    std::vector<ComplexValue> points;
};

/// Max-min search over M points restricted to the line through c.
///
/// Positions live on a grid over [-sqrt(MP), sqrt(MP)] with `steps` cells.
/// For a trial gap d, a dynamic program over grid points sorted by distance
/// from c finds the cheapest M-point selection whose magnitudes are pairwise
/// >= |h| d apart; bisection on d then gives the best grid configuration.
/// Windowed re-gridding around the winner refines to 1e-4 relative.
/// Requires steps >= 1000.
RaySearchResult oracle_ray_search(const ChannelState& state, int steps = 2000);

struct FreeSearchResult {
    double min_distance = 0.0;
    ComplexValue x0;
    ComplexValue x1;
};

/// Unrestricted 2-point search in C^2 (no co-linearity assumed): a `grid`^4
/// sweep over the disk |x| <= sqrt(2P), sharded over `threads` workers, then
/// zoom refinement. The result does not depend on `threads`.
/// Requires grid >= 50.
FreeSearchResult oracle_free_search_m2(ComplexValue h, ComplexValue b, double power, int grid = 60,
                                       int threads = 1);

} // namespace loam

#pragma once

#include <span>
#include <vector>

#include "boolperc/estimate.hpp"
#include "boolperc/measure.hpp"
#include "boolperc/rng.hpp"

namespace boolperc {

// The crossing events themselves, evaluated on one configuration. The
// rectangle is [0,3a] x [0,a]^(d-1) centered at the origin; the slab box is
// [0,K] x [-length/2,length/2] x [-length,length]^(d-2) crossed along axis 1.
// Both restrict paths to grains intersecting the region.
bool rectangle_crossed(const Configuration& c, double a);
bool slab_box_crossed(const Configuration& c, double K, double length);

// P{ a grain path joins the two short faces of a 3a x a rectangle }, with the
// path restricted to grains intersecting the rectangle. For d >= 3 the
// rectangle is [0,3a] x [0,a]^(d-1).
Estimate crossing_probability(const RadiusMeasure& F, double t, double a, int d, std::size_t reps,
                              const SeedSpec& seed, int workers = 1);

struct ThresholdResult {
    double tc_hat = 0;
    double ci_half_width = 0;
    std::vector<double> sizes_used;
    struct PerSize {
        double size = 0;
        double t_half = 0;
        double std_error = 0;
    };
    std::vector<PerSize> per_size;
};

// Bisects the crossing probability to 1/2 at each size; the largest size
// gives tc_hat and the spread between the two largest sizes feeds the
// confidence half-width.
ThresholdResult estimate_tc(const RadiusMeasure& F, std::span<const double> sizes, int d,
                            std::size_t reps, double tol, const SeedSpec& seed, int workers = 1);

// Long-way crossing of [0,length] x [0,K] x [-length,length]^(d-2) by grains
// whose centers are confined to the slab of thickness K. Requires d >= 3.
Estimate slab_crossing(const RadiusMeasure& F, double t, double K, double length, int d,
                       std::size_t reps, const SeedSpec& seed, int workers = 1);

// Coupled slab crossings along an increasing thickness grid (restriction
// coupling, so the means are nondecreasing in K exactly).
std::vector<Estimate> slab_crossing_grid(const RadiusMeasure& F, double t,
                                         std::span<const double> K_grid, double length, int d,
                                         std::size_t reps, const SeedSpec& seed, int workers = 1);

} // namespace boolperc

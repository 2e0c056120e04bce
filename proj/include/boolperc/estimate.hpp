#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "boolperc/geom.hpp"
#include "boolperc/measure.hpp"
#include "boolperc/pointproc.hpp"
#include "boolperc/rng.hpp"

namespace boolperc {

// Monte Carlo mean with its standard error. Reduction is always done in
// replication-index order with compensated summation, so the value does not
// depend on the worker count.
struct Estimate {
    double mean = 0;
    double std_error = 0;
    std::size_t reps = 0;
    std::string seed;
};

Estimate reduce_estimate(const std::vector<double>& values, const SeedSpec& seed);

// Runs body(i) for i in [0, reps). Each index must touch only its own output
// slot; scheduling is work-stealing but has no effect on results.
template <class Fn>
void parallel_replications(std::size_t reps, int workers, Fn&& body) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < reps; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= reps) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(reps);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// P{ L is joined to the complement of B_n } under intensity t, estimated on a
// box window of half-width n + b.
Estimate estimate_theta(const RadiusMeasure& F, double t, const TargetSet& L, double box_radius,
                        int d, std::size_t reps, const SeedSpec& seed, int workers = 1);

// Coupled estimates along an increasing intensity grid; each replication uses
// one monotone coupling, so the means are nondecreasing exactly.
std::vector<Estimate> estimate_theta_grid(const RadiusMeasure& F, std::span<const double> t_grid,
                                          const TargetSet& L, double box_radius, int d,
                                          std::size_t reps, const SeedSpec& seed, int workers = 1);

// Shared-sample estimates for several box radii (decreasing event in n).
std::vector<Estimate> estimate_theta_boxes(const RadiusMeasure& F, double t, const TargetSet& L,
                                           std::span<const double> box_radii, int d,
                                           std::size_t reps, const SeedSpec& seed, int workers = 1);

Estimate estimate_volume_fraction(const RadiusMeasure& F, double t, int d, std::size_t reps,
                                  const SeedSpec& seed, int workers = 1);

// P{ B_rho fully covered } at grid resolution delta.
Estimate estimate_alpha(const RadiusMeasure& F, double t, double rho, int d, std::size_t reps,
                        double delta, const SeedSpec& seed, int workers = 1);

// Intensity derivative via expected pivotal-grain counts over t.
Estimate russo_derivative(const RadiusMeasure& F, double t, const TargetSet& L, double box_radius,
                          int d, std::size_t reps, const SeedSpec& seed, int workers = 1);

// Forward difference quotient on the monotone coupling; every summand is >= 0.
Estimate finite_difference_derivative(const RadiusMeasure& F, double t, double dt,
                                      const TargetSet& L, double box_radius, int d,
                                      std::size_t reps, const SeedSpec& seed, int workers = 1);

// Volume of bridging positions, integrated by Monte Carlo over the cluster
// hull and the radius measure.
Estimate added_grain_derivative(const RadiusMeasure& F, double t, const TargetSet& L,
                                double box_radius, int d, std::size_t reps,
                                std::size_t mc_points, const SeedSpec& seed, int workers = 1);

// Directional derivative of the connection probability along the signed
// measure G, at the configuration intensity given by F itself.
Estimate directional_derivative(const RadiusMeasure& F, const SignedRadiusMeasure& G,
                                const TargetSet& L, double box_radius, int d, std::size_t reps,
                                std::size_t mc_points, const SeedSpec& seed, int workers = 1);

// Iterated add-one-point difference of the connection indicator; exact
// integer, symmetric in the points.
int difference_operator(const Configuration& c, const TargetSet& L, double box_radius,
                        std::span<const MarkedPoint> points);

// Both sides of the point-process exchange identity for the test function
// f((x,r), phi) = 1{x in B_R} 1{phi(B_R) <= m}; max_count empty means no
// count restriction (the first-moment case, whose right side is constant).
std::pair<Estimate, Estimate> mecke_check(const RadiusMeasure& F, double t, int d,
                                          double region_radius, std::optional<long> max_count,
                                          std::size_t reps, const SeedSpec& seed, int workers = 1);

struct DerivativeReport {
    double t = 0;
    Estimate finite_difference;
    Estimate russo;
    Estimate added_grain;
};

DerivativeReport derivative_report(const RadiusMeasure& F, double t, double dt, const TargetSet& L,
                                   double box_radius, int d, std::size_t reps,
                                   std::size_t mc_points, const SeedSpec& seed, int workers = 1);

struct RateBoundReport {
    std::vector<double> t_grid;
    std::vector<Estimate> theta;
    Estimate theta_at_tc;
    Estimate alpha_hat;
    double sigma = 3;
    int violations = 0;           // bound failures beyond sigma combined stderr
    int violations_alpha_one = 0; // same test with the coverage constant forced to 1
};

// Checks theta(t) - theta(tc) >= alpha (t - tc)(1 - theta(t)) / t on the grid.
RateBoundReport rate_bound_report(const RadiusMeasure& F, std::span<const double> t_grid,
                                  double tc_hat, const TargetSet& L, double box_radius, int d,
                                  double ball_radius, std::size_t reps, double delta,
                                  const SeedSpec& seed, int workers = 1, double sigma = 3.0);

} // namespace boolperc

#include "boolperc/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boolperc/errors.hpp"
#include "boolperc/geom.hpp"

namespace boolperc {

namespace {

// True when some cluster of grains intersecting `region` touches both faces.
bool region_crossed(const Configuration& c, const TargetSet& region, const TargetSet& face_a,
                    const TargetSet& face_b) {
    Configuration kept;
    kept.window = c.window;
    kept.margin = c.margin;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (region.distance(c.position(i)) > c.radii[i]) continue;
        const double* p = c.position(i);
        kept.coords.insert(kept.coords.end(), p, p + c.dim());
        kept.radii.push_back(c.radii[i]);
    }
    if (kept.size() == 0) return false;
    const ClusterIndex ci = label_clusters(kept);
    std::vector<char> hits_a(ci.component_count, 0), hits_b(ci.component_count, 0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double* p = kept.position(i);
        if (face_a.distance(p) <= kept.radii[i]) hits_a[ci.label[i]] = 1;
        if (face_b.distance(p) <= kept.radii[i]) hits_b[ci.label[i]] = 1;
    }
    for (std::int32_t k = 0; k < ci.component_count; ++k)
        if (hits_a[k] && hits_b[k]) return true;
    return false;
}

struct CrossingGeometry {
    TargetSet region;
    TargetSet face_a;
    TargetSet face_b;
};

// Rectangle [0,3a] x [0,a]^(d-1), centered at the origin.
CrossingGeometry rectangle_geometry(int d, double a) {
    std::vector<double> lo(d), hi(d);
    lo[0] = -1.5 * a;
    hi[0] = 1.5 * a;
    for (int j = 1; j < d; ++j) {
        lo[j] = -0.5 * a;
        hi[j] = 0.5 * a;
    }
    std::vector<double> la = lo, ha = hi, lb = lo, hb = hi;
    ha[0] = lo[0];
    lb[0] = hi[0];
    return {TargetSet::box(lo, hi), TargetSet::box(la, ha), TargetSet::box(lb, hb)};
}

// Box [0,K] x [-L/2,L/2] x [-L,L]^(d-2); the crossing runs along axis 1.
CrossingGeometry slab_geometry(int d, double K, double length) {
    std::vector<double> lo(d), hi(d);
    lo[0] = 0.0;
    hi[0] = K;
    lo[1] = -0.5 * length;
    hi[1] = 0.5 * length;
    for (int j = 2; j < d; ++j) {
        lo[j] = -length;
        hi[j] = length;
    }
    std::vector<double> la = lo, ha = hi, lb = lo, hb = hi;
    ha[1] = lo[1];
    lb[1] = hi[1];
    return {TargetSet::box(lo, hi), TargetSet::box(la, ha), TargetSet::box(lb, hb)};
}

} // namespace

bool rectangle_crossed(const Configuration& c, double a) {
    const CrossingGeometry geo = rectangle_geometry(c.dim(), a);
    return region_crossed(c, geo.region, geo.face_a, geo.face_b);
}

bool slab_box_crossed(const Configuration& c, double K, double length) {
    const CrossingGeometry geo = slab_geometry(c.dim(), K, length);
    return region_crossed(c, geo.region, geo.face_a, geo.face_b);
}

Estimate crossing_probability(const RadiusMeasure& F, double t, double a, int d, std::size_t reps,
                              const SeedSpec& seed, int workers) {
    const double b = F.support_bound();
    if (!(a > 4.0 * b)) throw ConfigError("rectangle size must exceed 4b");
    if (!(t > 0.0)) throw InvalidIntensity("intensity must be positive");
    const CrossingGeometry geo = rectangle_geometry(d, a);
    const Window w = Window::box(d, 1.5 * a);
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        vals[i] = region_crossed(c, geo.region, geo.face_a, geo.face_b) ? 1.0 : 0.0;
    });
    return reduce_estimate(vals, seed);
}

ThresholdResult estimate_tc(const RadiusMeasure& F, std::span<const double> sizes, int d,
                            std::size_t reps, double tol, const SeedSpec& seed, int workers) {
    if (sizes.size() < 3) throw NoBracket("finite-size scaling needs at least 3 sizes");
    for (std::size_t k = 1; k < sizes.size(); ++k)
        if (!(sizes[k] > sizes[k - 1])) throw ConfigError("sizes must be increasing");
    if (!(tol > 0.0) || tol >= 1.0) throw ConfigError("bisection tolerance must lie in (0,1)");

    // Bracket around the known order of magnitude of the mean-coverage scale.
    const double scale = 1.0 / (unit_ball_volume(d) * F.moment(d));
    ThresholdResult result;
    result.sizes_used.assign(sizes.begin(), sizes.end());

    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const double a = sizes[si];
        const std::string tag = "#s" + std::to_string(si);
        double lo = 0.05 * scale;
        double hi = 20.0 * scale;
        int probe = 0;
        auto crossing_at = [&](double t) {
            return crossing_probability(F, t, a, d, reps,
                                        seed.sub(tag + "#p" + std::to_string(probe++)), workers);
        };
        const double p_lo = crossing_at(lo).mean;
        const double p_hi = crossing_at(hi).mean;
        if (p_lo >= 0.5 || p_hi <= 0.5)
            throw NoBracket("crossing probability does not straddle 1/2: p(" +
                            std::to_string(lo) + ") = " + std::to_string(p_lo) + ", p(" +
                            std::to_string(hi) + ") = " + std::to_string(p_hi));
        while (hi - lo > tol * 0.5 * (hi + lo)) {
            const double mid = 0.5 * (lo + hi);
            if (crossing_at(mid).mean < 0.5)
                lo = mid;
            else
                hi = mid;
        }
        const double t_half = 0.5 * (lo + hi);

        // Delta-method error: Bernoulli noise at the half point divided by the
        // local slope of the crossing curve, plus the bisection width.
        const double dt = std::max(4.0 * tol, 0.02) * t_half;
        const double p_minus = crossing_at(t_half - dt).mean;
        const double p_plus = crossing_at(t_half + dt).mean;
        const double slope = std::max((p_plus - p_minus) / (2.0 * dt), 1e-3 / t_half);
        const double se_p = std::sqrt(0.25 / static_cast<double>(reps));
        const double se_t = se_p / slope + 0.5 * (hi - lo);
        result.per_size.push_back({a, t_half, se_t});
    }

    const auto& last = result.per_size[result.per_size.size() - 1];
    const auto& prev = result.per_size[result.per_size.size() - 2];
    result.tc_hat = last.t_half;
    result.ci_half_width = std::max(std::abs(last.t_half - prev.t_half),
                                    tol * result.tc_hat + 3.0 * last.std_error);
    return result;
}

Estimate slab_crossing(const RadiusMeasure& F, double t, double K, double length, int d,
                       std::size_t reps, const SeedSpec& seed, int workers) {
    const std::vector<double> grid{K};
    return slab_crossing_grid(F, t, grid, length, d, reps, seed, workers).front();
}

std::vector<Estimate> slab_crossing_grid(const RadiusMeasure& F, double t,
                                         std::span<const double> K_grid, double length, int d,
                                         std::size_t reps, const SeedSpec& seed, int workers) {
    if (d < 3) throw DimensionError("slab experiments need d >= 3");
    if (!(t > 0.0)) throw InvalidIntensity("intensity must be positive");
    const double b = F.support_bound();
    if (K_grid.empty()) throw ConfigError("empty thickness grid");
    for (double K : K_grid)
        if (!(K > 2.0 * b)) throw ConfigError("slab thickness must exceed 2b");
    for (std::size_t k = 1; k < K_grid.size(); ++k)
        if (!(K_grid[k] > K_grid[k - 1])) throw ConfigError("thickness grid must be increasing");
    if (!(length > 0.0)) throw ConfigError("crossing length must be positive");

    const double K_max = K_grid.back();
    const Window w_max = Window::slab(d, K_max, length);
    std::vector<std::vector<double>> vals(K_grid.size(), std::vector<double>(reps));
    parallel_replications(reps, workers, [&](std::size_t i) {
        // One sample at the thickest slab; thinner slabs are its restriction.
        const Configuration full = sample_poisson(F, t, w_max, seed.with_replication(i));
        for (std::size_t k = 0; k < K_grid.size(); ++k) {
            const double K = K_grid[k];
            Configuration sub;
            sub.window = Window::slab(d, K, length);
            sub.margin = full.margin;
            for (std::size_t j = 0; j < full.size(); ++j) {
                if (full.position(j)[0] > K) continue;
                const double* p = full.position(j);
                sub.coords.insert(sub.coords.end(), p, p + d);
                sub.radii.push_back(full.radii[j]);
            }
            vals[k][i] = slab_box_crossed(sub, K, length) ? 1.0 : 0.0;
        }
    });
    std::vector<Estimate> out;
    out.reserve(K_grid.size());
    for (const auto& v : vals) out.push_back(reduce_estimate(v, seed));
    return out;
}

} // namespace boolperc

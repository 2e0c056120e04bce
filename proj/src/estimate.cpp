#include "boolperc/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "boolperc/errors.hpp"

namespace boolperc {

namespace {

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

void require_reps(std::size_t reps) {
    if (reps < 2) throw ConfigError("estimators need at least 2 replications");
}

void require_positive_intensity(double t) {
    if (!(t > 0.0)) throw InvalidIntensity("intensity must be positive");
}

Window theta_window(int d, double box_radius, double b) {
    // Every grain that can meet B_n has its center within n + b.
    return Window::box(d, box_radius + b);
}

double euclidean_norm(const double* x, int d) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += x[j] * x[j];
    return std::sqrt(s);
}

} // namespace

Estimate reduce_estimate(const std::vector<double>& values, const SeedSpec& seed) {
    require_reps(values.size());
    const auto n = static_cast<double>(values.size());
    const double mean = kahan_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dev = values[i] - mean;
        sq[i] = dev * dev;
    }
    const double var = kahan_sum(sq) / (n - 1.0);
    Estimate e;
    e.mean = mean;
    e.std_error = std::sqrt(var / n);
    e.reps = values.size();
    e.seed = seed.summary();
    return e;
}

Estimate estimate_theta(const RadiusMeasure& F, double t, const TargetSet& L, double box_radius,
                        int d, std::size_t reps, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    const Window w = theta_window(d, box_radius, F.support_bound());
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        vals[i] = connects_J(build_graph(c, L, box_radius)) ? 1.0 : 0.0;
    });
    return reduce_estimate(vals, seed);
}

std::vector<Estimate> estimate_theta_grid(const RadiusMeasure& F, std::span<const double> t_grid,
                                          const TargetSet& L, double box_radius, int d,
                                          std::size_t reps, const SeedSpec& seed, int workers) {
    if (t_grid.empty()) throw ConfigError("empty intensity grid");
    require_positive_intensity(t_grid.front());
    for (std::size_t j = 1; j < t_grid.size(); ++j)
        if (!(t_grid[j] > t_grid[j - 1])) throw ConfigError("intensity grid must be increasing");
    require_reps(reps);

    const Window w = theta_window(d, box_radius, F.support_bound());
    std::vector<std::vector<double>> vals(t_grid.size(), std::vector<double>(reps));
    parallel_replications(reps, workers, [&](std::size_t i) {
        const SeedSpec si = seed.with_replication(i);
        Configuration c = sample_poisson(F, t_grid.front(), w, si);
        vals[0][i] = connects_J(build_graph(c, L, box_radius)) ? 1.0 : 0.0;
        for (std::size_t j = 1; j < t_grid.size(); ++j) {
            const Configuration inc = sample_poisson(F, t_grid[j] - t_grid[j - 1], w,
                                                     si.sub("#g" + std::to_string(j)));
            c = superpose(c, inc);
            vals[j][i] = connects_J(build_graph(c, L, box_radius)) ? 1.0 : 0.0;
        }
    });
    std::vector<Estimate> out;
    out.reserve(t_grid.size());
    for (const auto& v : vals) out.push_back(reduce_estimate(v, seed));
    return out;
}

std::vector<Estimate> estimate_theta_boxes(const RadiusMeasure& F, double t, const TargetSet& L,
                                           std::span<const double> box_radii, int d,
                                           std::size_t reps, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    if (box_radii.empty()) throw ConfigError("empty box-radius list");
    const double n_max = *std::max_element(box_radii.begin(), box_radii.end());
    const Window w = theta_window(d, n_max, F.support_bound());
    std::vector<std::vector<double>> vals(box_radii.size(), std::vector<double>(reps));
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        for (std::size_t j = 0; j < box_radii.size(); ++j)
            vals[j][i] = connects_J(build_graph(c, L, box_radii[j])) ? 1.0 : 0.0;
    });
    std::vector<Estimate> out;
    out.reserve(box_radii.size());
    for (const auto& v : vals) out.push_back(reduce_estimate(v, seed));
    return out;
}

Estimate estimate_volume_fraction(const RadiusMeasure& F, double t, int d, std::size_t reps,
                                  const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    const Window w = Window::box(d, F.support_bound());
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        double covered = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            if (euclidean_norm(c.position(k), d) <= c.radii[k]) {
                covered = 1.0;
                break;
            }
        vals[i] = covered;
    });
    return reduce_estimate(vals, seed);
}

Estimate estimate_alpha(const RadiusMeasure& F, double t, double rho, int d, std::size_t reps,
                        double delta, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    if (!(delta > 0.0)) throw ConfigError("coverage resolution must be positive");
    const Window w = Window::box(d, std::max(rho, F.support_bound()));
    const std::vector<double> origin(d, 0.0);
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        vals[i] = ball_covered(c, origin, rho, delta) ? 1.0 : 0.0;
    });
    return reduce_estimate(vals, seed);
}

Estimate russo_derivative(const RadiusMeasure& F, double t, const TargetSet& L, double box_radius,
                          int d, std::size_t reps, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    const Window w = theta_window(d, box_radius, F.support_bound());
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        const PivotalReport rep = pivotal_report(build_graph(c, L, box_radius));
        vals[i] = static_cast<double>(rep.pivotal.size()) / t;
    });
    return reduce_estimate(vals, seed);
}

Estimate finite_difference_derivative(const RadiusMeasure& F, double t, double dt,
                                      const TargetSet& L, double box_radius, int d,
                                      std::size_t reps, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    if (!(dt > 0.0) || dt > t / 10.0)
        throw ConfigError("difference step must satisfy 0 < dt <= t/10");
    const Window w = theta_window(d, box_radius, F.support_bound());
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const auto [lower, upper] = coupled_pair(F, t, dt, w, seed.with_replication(i));
        const double f0 = connects_J(build_graph(lower, L, box_radius)) ? 1.0 : 0.0;
        const double f1 = connects_J(build_graph(upper, L, box_radius)) ? 1.0 : 0.0;
        vals[i] = (f1 - f0) / dt;
    });
    return reduce_estimate(vals, seed);
}

namespace {

// Monte Carlo volume of bridging grain positions for one configuration; the
// radius is drawn from `radii` (a normalized sampler) and the position
// uniformly from the cluster hull dilated by 2b.
double bridge_volume(const BridgeContext& ctx, const RadiusMeasure& radii, double dilation,
                     int d, std::size_t mc_points, Rng& rng) {
    std::vector<double> lo, hi;
    ctx.target_cluster_bounds(lo, hi);
    double volume = 1.0;
    for (int j = 0; j < d; ++j) {
        lo[j] -= dilation;
        hi[j] += dilation;
        volume *= hi[j] - lo[j];
    }
    std::size_t hits = 0;
    std::vector<double> x(d);
    for (std::size_t k = 0; k < mc_points; ++k) {
        for (int j = 0; j < d; ++j) x[j] = rng.uniform(lo[j], hi[j]);
        const double r = radii.quantile(rng.uniform01());
        if (ctx.bridges(x.data(), r)) ++hits;
    }
    return volume * static_cast<double>(hits) / static_cast<double>(mc_points);
}

} // namespace

Estimate added_grain_derivative(const RadiusMeasure& F, double t, const TargetSet& L,
                                double box_radius, int d, std::size_t reps,
                                std::size_t mc_points, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    if (mc_points == 0) throw ConfigError("mc_points must be positive");
    const Window w = theta_window(d, box_radius, F.support_bound());
    const double dilation = 2.0 * F.support_bound();
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const SeedSpec si = seed.with_replication(i);
        const Configuration c = sample_poisson(F, t, w, si);
        const BridgeContext ctx(c, L, box_radius);
        if (ctx.already_connected()) {
            vals[i] = 0.0;
            return;
        }
        Rng rng(si.sub("#mc"));
        vals[i] = F.total_mass() * bridge_volume(ctx, F, dilation, d, mc_points, rng);
    });
    return reduce_estimate(vals, seed);
}

Estimate directional_derivative(const RadiusMeasure& F, const SignedRadiusMeasure& G,
                                const TargetSet& L, double box_radius, int d, std::size_t reps,
                                std::size_t mc_points, const SeedSpec& seed, int workers) {
    require_reps(reps);
    if (mc_points == 0) throw ConfigError("mc_points must be positive");
    if (!(max_admissible_step(F, G) > 0.0))
        throw NotAMeasure("direction leaves the cone of measures for every step");
    const double b = std::max(F.support_bound(), G.support_bound());
    const Window w = theta_window(d, box_radius, b);
    const double dilation = 2.0 * b;
    std::vector<double> vals(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const SeedSpec si = seed.with_replication(i);
        const Configuration c = sample_poisson(F, 1.0, w, si);
        const BridgeContext ctx(c, L, box_radius);
        if (ctx.already_connected()) {
            vals[i] = 0.0;
            return;
        }
        double v = 0.0;
        if (!G.pos.is_zero()) {
            Rng rng(si.sub("#mc+"));
            v += G.pos.total_mass() * bridge_volume(ctx, G.pos, dilation, d, mc_points, rng);
        }
        if (!G.neg.is_zero()) {
            Rng rng(si.sub("#mc-"));
            v -= G.neg.total_mass() * bridge_volume(ctx, G.neg, dilation, d, mc_points, rng);
        }
        vals[i] = v;
    });
    return reduce_estimate(vals, seed);
}

int difference_operator(const Configuration& c, const TargetSet& L, double box_radius,
                        std::span<const MarkedPoint> points) {
    const auto k = static_cast<int>(points.size());
    if (k < 1 || k > 3) throw ConfigError("difference operator supports 1 to 3 points");
    int total = 0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        Configuration cfg = c;
        int bits = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                cfg = add_point(cfg, points[i].x, points[i].r);
                ++bits;
            }
        const int f = connects_J(build_graph(cfg, L, box_radius)) ? 1 : 0;
        total += ((k - bits) % 2 == 0) ? f : -f;
    }
    return total;
}

std::pair<Estimate, Estimate> mecke_check(const RadiusMeasure& F, double t, int d,
                                          double region_radius, std::optional<long> max_count,
                                          std::size_t reps, const SeedSpec& seed, int workers) {
    require_positive_intensity(t);
    require_reps(reps);
    if (!(region_radius > 0.0)) throw ConfigError("region radius must be positive");
    const Window w = Window::box(d, region_radius);
    const double region_volume = unit_ball_volume(d) * std::pow(region_radius, d);
    const double first_moment = t * F.total_mass() * region_volume;
    std::vector<double> lhs(reps), rhs(reps);
    parallel_replications(reps, workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, t, w, seed.with_replication(i));
        long count = 0;
        for (std::size_t k = 0; k < c.size(); ++k)
            if (euclidean_norm(c.position(k), d) <= region_radius) ++count;
        const bool lhs_ok = !max_count || count <= *max_count;
        const bool rhs_ok = !max_count || count + 1 <= *max_count;
        lhs[i] = lhs_ok ? static_cast<double>(count) : 0.0;
        rhs[i] = rhs_ok ? first_moment : 0.0;
    });
    return {reduce_estimate(lhs, seed), reduce_estimate(rhs, seed.sub("#rhs"))};
}

DerivativeReport derivative_report(const RadiusMeasure& F, double t, double dt, const TargetSet& L,
                                   double box_radius, int d, std::size_t reps,
                                   std::size_t mc_points, const SeedSpec& seed, int workers) {
    DerivativeReport rep;
    rep.t = t;
    rep.finite_difference =
        finite_difference_derivative(F, t, dt, L, box_radius, d, reps, seed.sub("#fd"), workers);
    rep.russo = russo_derivative(F, t, L, box_radius, d, reps, seed.sub("#russo"), workers);
    rep.added_grain = added_grain_derivative(F, t, L, box_radius, d, reps, mc_points,
                                             seed.sub("#added"), workers);
    return rep;
}

RateBoundReport rate_bound_report(const RadiusMeasure& F, std::span<const double> t_grid,
                                  double tc_hat, const TargetSet& L, double box_radius, int d,
                                  double ball_radius, std::size_t reps, double delta,
                                  const SeedSpec& seed, int workers, double sigma) {
    if (!(tc_hat > 0.0)) throw ConfigError("tc_hat must be positive");
    for (double t : t_grid)
        if (!(t > tc_hat)) throw ConfigError("rate-bound grid must lie above tc_hat");

    RateBoundReport rep;
    rep.sigma = sigma;
    rep.t_grid.assign(t_grid.begin(), t_grid.end());

    // Couple theta(tc) with the grid so the differences are estimated under
    // common randomness.
    std::vector<double> full_grid;
    full_grid.push_back(tc_hat);
    full_grid.insert(full_grid.end(), t_grid.begin(), t_grid.end());
    std::vector<Estimate> thetas =
        estimate_theta_grid(F, full_grid, L, box_radius, d, reps, seed.sub("#theta"), workers);
    rep.theta_at_tc = thetas.front();
    rep.theta.assign(thetas.begin() + 1, thetas.end());
    rep.alpha_hat =
        estimate_alpha(F, tc_hat, ball_radius, d, reps, delta, seed.sub("#alpha"), workers);

    auto count_violations = [&](double alpha, double alpha_se) {
        int bad = 0;
        for (std::size_t j = 0; j < rep.t_grid.size(); ++j) {
            const double t = rep.t_grid[j];
            const double factor = (t - tc_hat) / t;
            const double lhs = rep.theta[j].mean - rep.theta_at_tc.mean;
            const double rhs = alpha * factor * (1.0 - rep.theta[j].mean);
            // Error propagation through lhs - rhs.
            const double d_thetat = 1.0 + alpha * factor;
            const double combined = std::sqrt(
                d_thetat * d_thetat * rep.theta[j].std_error * rep.theta[j].std_error +
                rep.theta_at_tc.std_error * rep.theta_at_tc.std_error +
                factor * factor * (1.0 - rep.theta[j].mean) * (1.0 - rep.theta[j].mean) *
                    alpha_se * alpha_se);
            if (lhs - rhs < -sigma * combined) ++bad;
        }
        return bad;
    };
    rep.violations = count_violations(rep.alpha_hat.mean, rep.alpha_hat.std_error);
    rep.violations_alpha_one = count_violations(1.0, 0.0);
    return rep;
}

} // namespace boolperc

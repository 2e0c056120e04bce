#include "boolperc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "boolperc/errors.hpp"
#include "boolperc/estimate.hpp"
#include "boolperc/threshold.hpp"
#include "boolperc/version.hpp"

namespace boolperc {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json estimate_json(const Estimate& e) {
    return {{"mean", e.mean}, {"stderr", e.std_error}, {"reps", e.reps}, {"seed", e.seed}};
}

class OutputWriter {
public:
    explicit OutputWriter(fs::path dir) : dir_(std::move(dir)) {
        fs::create_directories(dir_);
    }

    // One CSV file per estimator invocation, fixed column order.
    void csv(const std::string& op, std::optional<double> t, std::optional<double> n,
             const Estimate& e, const std::string& extra) {
        char name[64];
        std::snprintf(name, sizeof name, "%03d_%s.csv", ++counter_, op.c_str());
        std::ofstream out(dir_ / name, std::ios::binary);
        out << "op,t,n,reps,mean,stderr,seed,extra\n";
        out << op << ',' << (t ? fmt17(*t) : "") << ',' << (n ? fmt17(*n) : "") << ',' << e.reps
            << ',' << fmt17(e.mean) << ',' << fmt17(e.std_error) << ',' << e.seed << ',' << extra
            << '\n';
    }

    void json(const std::string& name, const ordered_json& j) {
        std::ofstream out(dir_ / name, std::ios::binary);
        out << j.dump(2) << '\n';
    }

    void text(const std::string& name, const std::string& body) {
        std::ofstream out(dir_ / name, std::ios::binary);
        out << body;
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    int counter_ = 0;
};

// Minimal self-contained polyline plot with a +-band; no timestamps, so
// identical runs produce identical bytes.
std::string svg_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<double>& band, const std::string& x_label,
                     const std::string& y_label) {
    const double W = 640, H = 420, ml = 64, mr = 20, mt = 20, mb = 44;
    double x_lo = xs.front(), x_hi = xs.front(), y_lo = ys.front(), y_hi = ys.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_lo = std::min(x_lo, xs[i]);
        x_hi = std::max(x_hi, xs[i]);
        y_lo = std::min(y_lo, ys[i] - band[i]);
        y_hi = std::max(y_hi, ys[i] + band[i]);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y_lo) / (y_hi - y_lo) * (H - mt - mb); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<polygon fill=\"#c8d8ea\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
        svg << num(px(xs[i])) << ',' << num(py(ys[i] + band[i])) << ' ';
    for (std::size_t i = xs.size(); i-- > 0;)
        svg << num(px(xs[i])) << ',' << num(py(ys[i] - band[i])) << ' ';
    svg << "\"/>\n<polyline fill=\"none\" stroke=\"#2b5d8a\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
        svg << num(px(xs[i])) << ',' << num(py(ys[i])) << ' ';
    svg << "\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">" << num(x_lo)
        << "</text>\n";
    svg << "<text x=\"" << W - mr - 40 << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">"
        << num(x_hi) << "</text>\n";
    svg << "<text x=\"4\" y=\"" << H - mb << "\" font-size=\"11\">" << num(y_lo) << "</text>\n";
    svg << "<text x=\"4\" y=\"" << mt + 10 << "\" font-size=\"11\">" << num(y_hi) << "</text>\n";
    svg << "<text x=\"" << (W / 2 - 20) << "\" y=\"" << H - 8 << "\" font-size=\"12\">" << x_label
        << "</text>\n";
    svg << "<text x=\"4\" y=\"" << (H / 2) << "\" font-size=\"12\">" << y_label << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double slope_se = 0;
    int points = 0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit fit;
    fit.points = static_cast<int>(xs.size());
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (xs.size() > 2) {
        double sse = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - fit.intercept - fit.slope * xs[i];
            sse += r * r;
        }
        fit.slope_se = std::sqrt(sse / (m - 2.0) / sxx);
    }
    return fit;
}

double t_critical_975(int df) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                   2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                   2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                   2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) return std::numeric_limits<double>::infinity();
    if (df <= 30) return table[df - 1];
    return 1.96;
}

double combined_stderr(const Estimate& a, const Estimate& b) {
    return std::hypot(a.std_error, b.std_error);
}

// Paired estimates of theta at n and 2n from shared samples; records the
// finite-box drift of the surrogate.
ordered_json drift_diagnostic(const RadiusMeasure& F, double t, const TargetSet& L, double n,
                              const ExperimentConfig& cfg, const SeedSpec& seed) {
    const std::vector<double> radii{n, 2.0 * n};
    const auto ests = estimate_theta_boxes(F, t, L, radii, cfg.d, cfg.drift_reps, seed,
                                           cfg.workers);
    const double diff = ests[0].mean - ests[1].mean;
    const double combined = combined_stderr(ests[0], ests[1]);
    ordered_json j;
    j["t"] = t;
    j["n"] = n;
    j["theta_n"] = estimate_json(ests[0]);
    j["theta_2n"] = estimate_json(ests[1]);
    j["abs_difference"] = std::abs(diff);
    j["combined_stderr"] = combined;
    j["pass"] = std::abs(diff) <= cfg.sigma * combined;
    return j;
}

// --------------------------------------------------------------------------
// Per-kind drivers. Each returns the summary document.

ordered_json run_volume_fraction(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "volume-fraction"};
    const Estimate est =
        estimate_volume_fraction(F, *cfg.t, cfg.d, cfg.reps, seed, cfg.workers);
    const double target = closed_form_volume_fraction(F, *cfg.t, cfg.d);
    out.csv("volume_fraction", cfg.t, std::nullopt, est, "d=" + std::to_string(cfg.d));
    ordered_json j;
    j["estimate"] = estimate_json(est);
    j["closed_form"] = target;
    j["abs_error"] = std::abs(est.mean - target);
    j["pass"] = std::abs(est.mean - target) <= cfg.sigma * est.std_error;
    return j;
}

ordered_json run_mecke(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "mecke"};
    std::optional<long> m = cfg.mecke_m;
    const auto [lhs, rhs] =
        mecke_check(F, *cfg.t, cfg.d, *cfg.region_radius, m, cfg.reps, seed, cfg.workers);
    const double first_moment = *cfg.t * F.total_mass() * unit_ball_volume(cfg.d) *
                                std::pow(*cfg.region_radius, cfg.d);
    out.csv("mecke_lhs", cfg.t, std::nullopt, lhs,
            "region_radius=" + fmt17(*cfg.region_radius));
    out.csv("mecke_rhs", cfg.t, std::nullopt, rhs,
            "region_radius=" + fmt17(*cfg.region_radius));
    const double combined = combined_stderr(lhs, rhs);
    ordered_json j;
    j["lhs"] = estimate_json(lhs);
    j["rhs"] = estimate_json(rhs);
    if (m) j["max_count"] = *m;
    j["first_moment"] = first_moment;
    j["abs_difference"] = std::abs(lhs.mean - rhs.mean);
    j["combined_stderr"] = combined;
    j["pass"] = std::abs(lhs.mean - rhs.mean) <= cfg.sigma * combined;
    return j;
}

ordered_json run_theta_curve(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "theta-curve"};
    const auto ests = estimate_theta_grid(F, cfg.t_grid, *cfg.target, *cfg.n, cfg.d, cfg.reps,
                                          seed, cfg.workers);
    int inversions = 0;
    for (std::size_t i = 1; i < ests.size(); ++i)
        if (ests[i].mean < ests[i - 1].mean) ++inversions;

    ordered_json points = ordered_json::array();
    std::vector<double> means, bands;
    for (std::size_t i = 0; i < ests.size(); ++i) {
        out.csv("estimate_theta", cfg.t_grid[i], cfg.n, ests[i], "coupled_grid_index=" + std::to_string(i));
        ordered_json p = estimate_json(ests[i]);
        p["t"] = cfg.t_grid[i];
        points.push_back(p);
        means.push_back(ests[i].mean);
        bands.push_back(cfg.sigma * ests[i].std_error);
    }
    out.text("plot.svg", svg_plot(cfg.t_grid, means, bands, "t", "theta"));

    ordered_json j;
    j["points"] = points;
    j["monotone_inversions"] = inversions;
    j["monotone_pass"] = inversions == 0;
    j["drift"] = drift_diagnostic(F, cfg.t_grid.back(), *cfg.target, *cfg.n, cfg,
                                  seed.sub("#drift"));
    return j;
}

ordered_json run_derivative(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "derivative"};
    const DerivativeReport rep = derivative_report(F, *cfg.t, *cfg.dt, *cfg.target, *cfg.n, cfg.d,
                                                   cfg.reps, cfg.mc_points, seed, cfg.workers);
    out.csv("finite_difference_derivative", cfg.t, cfg.n, rep.finite_difference,
            "dt=" + fmt17(*cfg.dt));
    out.csv("russo_derivative", cfg.t, cfg.n, rep.russo, "");
    out.csv("added_grain_derivative", cfg.t, cfg.n, rep.added_grain,
            "mc_points=" + std::to_string(cfg.mc_points));

    auto pair_flag = [&](const char* name, const Estimate& a, const Estimate& b, ordered_json& j) {
        const double combined = combined_stderr(a, b);
        ordered_json p;
        p["abs_difference"] = std::abs(a.mean - b.mean);
        p["combined_stderr"] = combined;
        p["pass"] = std::abs(a.mean - b.mean) <= cfg.sigma * combined;
        j[name] = p;
    };
    ordered_json j;
    j["t"] = rep.t;
    j["finite_difference"] = estimate_json(rep.finite_difference);
    j["russo"] = estimate_json(rep.russo);
    j["added_grain"] = estimate_json(rep.added_grain);
    ordered_json agreement;
    pair_flag("fd_vs_russo", rep.finite_difference, rep.russo, agreement);
    pair_flag("fd_vs_added", rep.finite_difference, rep.added_grain, agreement);
    pair_flag("russo_vs_added", rep.russo, rep.added_grain, agreement);
    j["agreement"] = agreement;
    ordered_json positive;
    positive["finite_difference"] =
        rep.finite_difference.mean > cfg.sigma * rep.finite_difference.std_error;
    positive["russo"] = rep.russo.mean > cfg.sigma * rep.russo.std_error;
    positive["added_grain"] = rep.added_grain.mean > cfg.sigma * rep.added_grain.std_error;
    j["strictly_positive"] = positive;
    j["drift"] = drift_diagnostic(F, *cfg.t, *cfg.target, *cfg.n, cfg, seed.sub("#drift"));
    return j;
}

ordered_json run_threshold(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "threshold"};
    const ThresholdResult res =
        estimate_tc(F, cfg.sizes, cfg.d, cfg.reps, *cfg.tol, seed, cfg.workers);
    ordered_json per_size = ordered_json::array();
    for (const auto& ps : res.per_size) {
        Estimate e;
        e.mean = ps.t_half;
        e.std_error = ps.std_error;
        e.reps = cfg.reps;
        e.seed = seed.summary();
        out.csv("crossing_half_point", ps.t_half, ps.size, e, "size=" + fmt17(ps.size));
        per_size.push_back(
            {{"size", ps.size}, {"t_half", ps.t_half}, {"stderr", ps.std_error}});
    }
    ordered_json j;
    j["tc_hat"] = res.tc_hat;
    j["ci_half_width"] = res.ci_half_width;
    j["per_size"] = per_size;
    return j;
}

ordered_json run_rate_bound(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "rate-bound"};
    const double b = F.support_bound();
    const RateBoundReport rep =
        rate_bound_report(F, cfg.t_grid, *cfg.tc_hat, *cfg.target, *cfg.n, cfg.d, b, cfg.reps,
                          *cfg.delta, seed, cfg.workers, cfg.sigma);
    out.csv("estimate_theta", *cfg.tc_hat, cfg.n, rep.theta_at_tc, "grid=tc_hat");
    out.csv("estimate_alpha", *cfg.tc_hat, std::nullopt, rep.alpha_hat,
            "delta=" + fmt17(*cfg.delta));
    std::vector<double> means, bands;
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
        out.csv("estimate_theta", rep.t_grid[i], cfg.n, rep.theta[i], "");
        ordered_json p = estimate_json(rep.theta[i]);
        p["t"] = rep.t_grid[i];
        points.push_back(p);
        means.push_back(rep.theta[i].mean);
        bands.push_back(cfg.sigma * rep.theta[i].std_error);
    }
    out.text("plot.svg", svg_plot(rep.t_grid, means, bands, "t", "theta"));
    ordered_json j;
    j["tc_hat"] = *cfg.tc_hat;
    j["theta_at_tc"] = estimate_json(rep.theta_at_tc);
    j["alpha_hat"] = estimate_json(rep.alpha_hat);
    j["points"] = points;
    j["violations"] = rep.violations;
    j["pass"] = rep.violations == 0;
    j["violations_alpha_one"] = rep.violations_alpha_one;
    j["power_check_pass"] = rep.violations_alpha_one >= 1;
    j["drift"] = drift_diagnostic(F, cfg.t_grid.back(), *cfg.target, *cfg.n, cfg,
                                  seed.sub("#drift"));
    return j;
}

ordered_json run_slab(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "slab"};
    const auto ests = slab_crossing_grid(F, *cfg.t, cfg.k_grid, *cfg.length, cfg.d, cfg.reps,
                                         seed, cfg.workers);
    int inversions = 0;
    for (std::size_t i = 1; i < ests.size(); ++i)
        if (ests[i].mean < ests[i - 1].mean) ++inversions;
    ordered_json points = ordered_json::array();
    std::vector<double> means, bands;
    for (std::size_t i = 0; i < ests.size(); ++i) {
        out.csv("slab_crossing", cfg.t, std::nullopt, ests[i], "K=" + fmt17(cfg.k_grid[i]));
        ordered_json p = estimate_json(ests[i]);
        p["K"] = cfg.k_grid[i];
        points.push_back(p);
        means.push_back(ests[i].mean);
        bands.push_back(cfg.sigma * ests[i].std_error);
    }
    out.text("plot.svg", svg_plot(cfg.k_grid, means, bands, "K", "crossing probability"));
    const double gap = ests.back().mean - ests.front().mean;
    const double combined = combined_stderr(ests.front(), ests.back());
    ordered_json j;
    j["points"] = points;
    j["monotone_inversions"] = inversions;
    j["monotone_pass"] = inversions == 0;
    j["thick_minus_thin"] = gap;
    j["combined_stderr"] = combined;
    j["gap_pass"] = gap > cfg.sigma * combined;
    return j;
}

ordered_json run_stab_radius(const ExperimentConfig& cfg, OutputWriter& out) {
    const RadiusMeasure F = cfg.measure();
    const SeedSpec seed{cfg.master_seed, 0, "stab-radius"};
    const double b = F.support_bound();
    const Window w = Window::box(cfg.d, *cfg.box_half_width);
    std::vector<double> radii(cfg.reps);
    parallel_replications(cfg.reps, cfg.workers, [&](std::size_t i) {
        const Configuration c = sample_poisson(F, *cfg.t, w, seed.with_replication(i), cfg.hard_cap);
        const StabilizationRadius r = stabilization_radius(c, *cfg.target, b);
        radii[i] = r.value ? *r.value : std::numeric_limits<double>::quiet_NaN();
    });

    std::size_t censored = 0, usable = 0;
    for (double r : radii) {
        if (std::isnan(r))
            ++censored;
        else
            ++usable;
    }
    const double censored_fraction =
        static_cast<double>(censored) / static_cast<double>(cfg.reps);

    ordered_json levels = ordered_json::array();
    std::vector<double> xs, ys;
    for (int level = 1; level <= cfg.n_levels; ++level) {
        std::size_t exceed = 0;
        for (double r : radii)
            if (!std::isnan(r) && r > static_cast<double>(level) * b) ++exceed;
        const double s = usable ? static_cast<double>(exceed) / static_cast<double>(usable) : 0.0;
        Estimate e;
        e.mean = s;
        e.std_error = usable ? std::sqrt(s * (1.0 - s) / static_cast<double>(usable)) : 0.0;
        e.reps = usable;
        e.seed = seed.summary();
        out.csv("stab_survival", cfg.t, static_cast<double>(level), e,
                "level_radius=" + fmt17(level * b));
        levels.push_back({{"level", level}, {"survival", s}, {"exceed_count", exceed}});
        if (s > 0.0) {
            xs.push_back(static_cast<double>(level));
            ys.push_back(std::log(s));
        }
    }

    ordered_json j;
    j["censored"] = censored;
    j["censored_fraction"] = censored_fraction;
    j["censored_pass"] = censored_fraction < 0.05;
    j["levels"] = levels;
    if (xs.size() >= 3) {
        const LineFit fit = fit_line(xs, ys);
        const double ci = t_critical_975(fit.points - 2) * fit.slope_se;
        j["log_survival_fit"] = {{"slope", fit.slope},
                                 {"slope_stderr", fit.slope_se},
                                 {"ci95_half_width", ci},
                                 {"points", fit.points},
                                 {"decay_pass", fit.slope + ci < 0.0}};
    } else {
        j["log_survival_fit"] = {{"points", static_cast<int>(xs.size())},
                                 {"decay_pass", false}};
    }
    return j;
}

// Largest expected sample the experiment can request; lets a misconfigured
// intensity fail fast, before any sampling starts.
double max_expected_points(const ExperimentConfig& cfg) {
    const RadiusMeasure F = cfg.measure();
    const double b = F.support_bound();
    const double mass = F.total_mass();
    auto box_points = [&](double half_width, double t) {
        return t * mass * std::pow(2.0 * (half_width + b), cfg.d);
    };
    if (cfg.kind == "volume-fraction") return box_points(b, *cfg.t);
    if (cfg.kind == "mecke") return box_points(*cfg.region_radius, *cfg.t);
    if (cfg.kind == "theta-curve") return box_points(*cfg.n + b, cfg.t_grid.back());
    if (cfg.kind == "derivative") return box_points(*cfg.n + b, *cfg.t + *cfg.dt);
    if (cfg.kind == "rate-bound") return box_points(*cfg.n + b, cfg.t_grid.back());
    if (cfg.kind == "stab-radius") return box_points(*cfg.box_half_width, *cfg.t);
    if (cfg.kind == "threshold") {
        // Bisection probes never exceed the top of the default bracket.
        const double t_hi = 20.0 / (unit_ball_volume(cfg.d) * F.moment(cfg.d));
        return box_points(1.5 * cfg.sizes.back(), 1.1 * t_hi);
    }
    if (cfg.kind == "slab")
        return *cfg.t * mass * cfg.k_grid.back() *
               std::pow(2.0 * (*cfg.length + b), cfg.d - 1);
    return 0.0;
}

} // namespace

void run_experiment(const ExperimentConfig& raw) {
    const ExperimentConfig cfg = raw.resolved();
    cfg.validate();
    const double expected = max_expected_points(cfg);
    if (expected > cfg.hard_cap)
        throw ConfigError("field 'hard_cap': experiment would sample an expected " +
                          std::to_string(expected) + " points per replication, above the cap of " +
                          std::to_string(cfg.hard_cap));

    const auto start = std::chrono::steady_clock::now();
    OutputWriter out{fs::path(cfg.out_dir)};

    ordered_json manifest;
    manifest["library_version"] = kVersion;
    manifest["config"] = cfg.to_json();
    out.json("manifest.json", manifest);

    ordered_json summary;
    summary["kind"] = cfg.kind;
    if (cfg.kind == "volume-fraction") summary["result"] = run_volume_fraction(cfg, out);
    else if (cfg.kind == "mecke") summary["result"] = run_mecke(cfg, out);
    else if (cfg.kind == "theta-curve") summary["result"] = run_theta_curve(cfg, out);
    else if (cfg.kind == "derivative") summary["result"] = run_derivative(cfg, out);
    else if (cfg.kind == "threshold") summary["result"] = run_threshold(cfg, out);
    else if (cfg.kind == "rate-bound") summary["result"] = run_rate_bound(cfg, out);
    else if (cfg.kind == "slab") summary["result"] = run_slab(cfg, out);
    else if (cfg.kind == "stab-radius") summary["result"] = run_stab_radius(cfg, out);
    else throw ConfigError("field 'kind': unknown experiment kind '" + cfg.kind + "'");
    out.json("summary.json", summary);

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    out.text("timing.txt", "wall_seconds " + std::to_string(elapsed.count()) + "\n");
}

} // namespace boolperc

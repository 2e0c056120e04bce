#include "boolperc/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "boolperc/errors.hpp"

namespace boolperc {

Window Window::box(int d, double a) {
    if (d < 2) throw DimensionError("dimension must be at least 2");
    if (!(a > 0.0)) throw ConfigError("box half-width must be positive");
    Window w;
    w.kind = WindowKind::box;
    w.dim = d;
    w.half_width = a;
    return w;
}

Window Window::slab(int d, double K, double A) {
    if (d < 2) throw DimensionError("dimension must be at least 2");
    if (!(K > 0.0) || !(A > 0.0)) throw ConfigError("slab thickness and width must be positive");
    Window w;
    w.kind = WindowKind::slab;
    w.dim = d;
    w.thickness = K;
    w.lateral_half_width = A;
    return w;
}

void Window::sampling_bounds(double margin, std::vector<double>& lo, std::vector<double>& hi) const {
    lo.assign(dim, 0.0);
    hi.assign(dim, 0.0);
    if (kind == WindowKind::box) {
        for (int j = 0; j < dim; ++j) {
            lo[j] = -half_width - margin;
            hi[j] = half_width + margin;
        }
    } else {
        lo[0] = 0.0;
        hi[0] = thickness;
        for (int j = 1; j < dim; ++j) {
            lo[j] = -lateral_half_width - margin;
            hi[j] = lateral_half_width + margin;
        }
    }
}

double Window::sampling_volume(double margin) const {
    std::vector<double> lo, hi;
    sampling_bounds(margin, lo, hi);
    double v = 1.0;
    for (int j = 0; j < dim; ++j) v *= hi[j] - lo[j];
    return v;
}

double Window::sampling_inball_radius(double margin) const {
    std::vector<double> lo, hi;
    sampling_bounds(margin, lo, hi);
    double r = hi[0];
    for (int j = 0; j < dim; ++j) r = std::min({r, hi[j], -lo[j]});
    return r;
}

double Configuration::max_radius() const {
    double m = 0.0;
    for (double r : radii) m = std::max(m, r);
    return m;
}

Configuration sample_poisson(const RadiusMeasure& F, double t, const Window& w,
                             const SeedSpec& seed, double hard_cap) {
    if (t < 0.0 || !std::isfinite(t)) throw InvalidIntensity("intensity must be nonnegative");
    Configuration c;
    c.window = w;
    c.margin = F.support_bound();
    if (t == 0.0) return c;
    if (F.is_zero()) throw NotAMeasure("cannot sample from the zero measure");

    const double expected = t * F.total_mass() * w.sampling_volume(c.margin);
    if (expected > hard_cap) throw TooManyPoints("expected point count exceeds hard cap");

    std::vector<double> lo, hi;
    w.sampling_bounds(c.margin, lo, hi);

    Rng rng(seed);
    const std::uint64_t n = rng.poisson(expected);
    c.coords.reserve(n * w.dim);
    c.radii.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (int j = 0; j < w.dim; ++j) c.coords.push_back(rng.uniform(lo[j], hi[j]));
        c.radii.push_back(F.quantile(rng.uniform01()));
    }
    return c;
}

Configuration superpose(const Configuration& c1, const Configuration& c2) {
    if (!(c1.window == c2.window))
        throw WindowMismatch("superpose requires identical windows");
    Configuration out = c1;
    // Margins may differ when the parts come from measures with different
    // support bounds; the union is captured by the larger one.
    out.margin = std::max(c1.margin, c2.margin);
    out.coords.insert(out.coords.end(), c2.coords.begin(), c2.coords.end());
    out.radii.insert(out.radii.end(), c2.radii.begin(), c2.radii.end());
    return out;
}

std::pair<Configuration, Configuration> coupled_pair(const RadiusMeasure& F, double t, double dt,
                                                     const Window& w, const SeedSpec& seed,
                                                     double hard_cap) {
    if (!(t > 0.0)) throw InvalidIntensity("intensity must be positive");
    if (dt < 0.0) throw InvalidIntensity("increment must be nonnegative");
    Configuration base = sample_poisson(F, t, w, seed, hard_cap);
    if (dt == 0.0) return {base, base};
    Configuration inc = sample_poisson(F, dt, w, seed.sub("#dt"), hard_cap);
    Configuration upper = superpose(base, inc);
    return {std::move(base), std::move(upper)};
}

Configuration add_point(const Configuration& c, std::span<const double> x, double r) {
    if (static_cast<int>(x.size()) != c.dim()) throw ConfigError("point dimension mismatch");
    if (!(r > 0.0) || (c.margin > 0.0 && r > c.margin))
        throw InvalidMark("mark must lie in (0, b]");
    Configuration out = c;
    out.coords.insert(out.coords.end(), x.begin(), x.end());
    out.radii.push_back(r);
    return out;
}

void write_csv(std::ostream& os, const Configuration& c) {
    os.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double* p = c.position(i);
        for (int j = 0; j < c.dim(); ++j) os << p[j] << ',';
        os << c.radii[i] << '\n';
    }
}

} // namespace boolperc

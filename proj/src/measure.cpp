#include "boolperc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "boolperc/errors.hpp"

namespace boolperc {

RadiusMeasure::RadiusMeasure(std::vector<Atom> atoms, std::vector<Segment> segments) {
    for (const Atom& a : atoms) {
        if (!(a.radius > 0.0) || !std::isfinite(a.radius))
            throw NotAMeasure("atom radius must be positive and finite");
        if (a.weight < 0.0 || !std::isfinite(a.weight))
            throw NotAMeasure("atom weight must be nonnegative and finite");
    }
    for (const Segment& s : segments) {
        if (!(s.lo > 0.0) || !(s.hi > s.lo) || !std::isfinite(s.hi))
            throw NotAMeasure("segment must satisfy 0 < lo < hi < inf");
        if (s.weight < 0.0 || !std::isfinite(s.weight))
            throw NotAMeasure("segment weight must be nonnegative and finite");
    }

    // Merge bit-identical components; radii are compared exactly so that
    // mutual singularity of signed parts stays checkable.
    std::map<double, double> atom_w;
    for (const Atom& a : atoms) atom_w[a.radius] += a.weight;
    std::map<std::pair<double, double>, double> seg_w;
    for (const Segment& s : segments) seg_w[{s.lo, s.hi}] += s.weight;

    for (const auto& [r, w] : atom_w)
        if (w != 0.0) atoms_.push_back({r, w});
    for (const auto& [iv, w] : seg_w)
        if (w != 0.0) segments_.push_back({iv.first, iv.second, w});

    for (const Atom& a : atoms_) {
        total_mass_ += a.weight;
        support_bound_ = std::max(support_bound_, a.radius);
    }
    for (const Segment& s : segments_) {
        total_mass_ += s.weight;
        support_bound_ = std::max(support_bound_, s.hi);
    }
}

RadiusMeasure RadiusMeasure::dirac(double radius, double weight) {
    return RadiusMeasure({{radius, weight}}, {});
}

double RadiusMeasure::moment(int k) const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.weight * std::pow(a.radius, k);
    for (const Segment& s : segments_)
        m += s.weight * (std::pow(s.hi, k + 1) - std::pow(s.lo, k + 1)) /
             ((k + 1) * (s.hi - s.lo));
    return m;
}

double RadiusMeasure::quantile(double u) const {
    if (!(u >= 0.0) || u >= 1.0) throw InvalidQuantile("quantile argument must lie in [0,1)");
    if (is_zero()) throw NotAMeasure("quantile of the zero measure");

    const double target = u * total_mass_;

    // Sweep the cumulative H(r) through its critical points: atom radii and
    // segment endpoints. H is piecewise linear with jumps at atoms; we return
    // inf{r : H(r) > target}.
    struct Event {
        double r;
        double jump;    // atom weight placed at r
        double dslope;  // change in density at r
    };
    std::vector<Event> events;
    events.reserve(atoms_.size() + 2 * segments_.size());
    for (const Atom& a : atoms_) events.push_back({a.radius, a.weight, 0.0});
    for (const Segment& s : segments_) {
        const double dens = s.weight / (s.hi - s.lo);
        events.push_back({s.lo, 0.0, dens});
        events.push_back({s.hi, 0.0, -dens});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.r < b.r; });

    double cum = 0.0;
    double slope = 0.0;
    double prev_r = 0.0;
    std::size_t i = 0;
    while (i < events.size()) {
        const double r = events[i].r;
        if (slope > 0.0) {
            const double cum_at_r = cum + slope * (r - prev_r);
            if (cum_at_r > target) return prev_r + (target - cum) / slope;
            cum = cum_at_r;
        }
        double jump = 0.0;
        double dslope = 0.0;
        while (i < events.size() && events[i].r == r) {
            jump += events[i].jump;
            dslope += events[i].dslope;
            ++i;
        }
        if (cum + jump > target && jump > 0.0) return r;
        cum += jump;
        slope += dslope;
        prev_r = r;
    }
    return support_bound_; // target == |F| up to roundoff
}

SignedRadiusMeasure::SignedRadiusMeasure(RadiusMeasure p, RadiusMeasure n)
    : pos(std::move(p)), neg(std::move(n)) {
    for (const Atom& a : pos.atoms())
        for (const Atom& b : neg.atoms())
            if (a.radius == b.radius)
                throw NotAMeasure("signed measure parts share an atom radius");
    for (const Segment& s : pos.segments())
        for (const Segment& t : neg.segments())
            if (s.lo < t.hi && t.lo < s.hi)
                throw NotAMeasure("signed measure parts have overlapping segments");
}

double SignedRadiusMeasure::support_bound() const {
    return std::max(pos.support_bound(), neg.support_bound());
}

double total_mass(const RadiusMeasure& F) { return F.total_mass(); }

RadiusMeasure scale(const RadiusMeasure& F, double t) {
    if (!(t > 0.0)) throw InvalidScale("scale factor must be positive");
    std::vector<Atom> atoms = F.atoms();
    std::vector<Segment> segments = F.segments();
    for (Atom& a : atoms) a.weight *= t;
    for (Segment& s : segments) s.weight *= t;
    return RadiusMeasure(std::move(atoms), std::move(segments));
}

RadiusMeasure combine(const RadiusMeasure& F, double h, const SignedRadiusMeasure& G) {
    std::map<double, double> atom_w;
    std::map<std::pair<double, double>, double> seg_w;
    for (const Atom& a : F.atoms()) atom_w[a.radius] += a.weight;
    for (const Segment& s : F.segments()) seg_w[{s.lo, s.hi}] += s.weight;
    for (const Atom& a : G.pos.atoms()) atom_w[a.radius] += h * a.weight;
    for (const Segment& s : G.pos.segments()) seg_w[{s.lo, s.hi}] += h * s.weight;
    for (const Atom& a : G.neg.atoms()) atom_w[a.radius] -= h * a.weight;
    for (const Segment& s : G.neg.segments()) seg_w[{s.lo, s.hi}] -= h * s.weight;

    std::vector<Atom> atoms;
    std::vector<Segment> segments;
    for (const auto& [r, w] : atom_w) {
        if (w < 0.0)
            throw NotAMeasure("combination has weight " + std::to_string(w) +
                              " at the atom with radius " + std::to_string(r));
        if (w > 0.0) atoms.push_back({r, w});
    }
    for (const auto& [iv, w] : seg_w) {
        if (w < 0.0)
            throw NotAMeasure("combination has weight " + std::to_string(w) +
                              " on the segment [" + std::to_string(iv.first) + ", " +
                              std::to_string(iv.second) + "]");
        if (w > 0.0) segments.push_back({iv.first, iv.second, w});
    }
    return RadiusMeasure(std::move(atoms), std::move(segments));
}

double max_admissible_step(const RadiusMeasure& F, const SignedRadiusMeasure& G) {
    double a_max = std::numeric_limits<double>::infinity();
    for (const Atom& n : G.neg.atoms()) {
        double fw = 0.0;
        for (const Atom& f : F.atoms())
            if (f.radius == n.radius) fw = f.weight;
        a_max = std::min(a_max, fw / n.weight);
    }
    for (const Segment& n : G.neg.segments()) {
        double fw = 0.0;
        for (const Segment& f : F.segments())
            if (f.lo == n.lo && f.hi == n.hi) fw = f.weight;
        a_max = std::min(a_max, fw / n.weight);
    }
    return a_max;
}

double quantile_sample(const RadiusMeasure& F, double u) { return F.quantile(u); }

double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double closed_form_volume_fraction(const RadiusMeasure& F, double t, int d) {
    return 1.0 - std::exp(-t * unit_ball_volume(d) * F.moment(d));
}

} // namespace boolperc

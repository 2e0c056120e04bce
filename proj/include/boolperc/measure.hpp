#pragma once

#include <vector>

namespace boolperc {

struct Atom {
    double radius = 0;
    double weight = 0;
};

// Weight spread uniformly over [lo, hi].
struct Segment {
    double lo = 0;
    double hi = 0;
    double weight = 0;
};

// Finite measure on a bounded radius interval (0, b], represented as a
// mixture of atoms and uniform segments. Moments and quantiles are exact.
// The empty representation is the zero measure; it is allowed as a value
// (e.g. as one part of a signed measure) but cannot drive sampling.
class RadiusMeasure {
public:
    RadiusMeasure() = default;
    // Canonicalizes: sorts components, merges bit-identical radii/intervals,
    // drops exact-zero weights. Throws NotAMeasure on negative weights or
    // components touching radius 0.
    RadiusMeasure(std::vector<Atom> atoms, std::vector<Segment> segments);

    static RadiusMeasure dirac(double radius, double weight = 1.0);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Segment>& segments() const { return segments_; }

    bool is_zero() const { return atoms_.empty() && segments_.empty(); }
    double total_mass() const { return total_mass_; }
    double support_bound() const { return support_bound_; }

    // Integral of r^k against the measure, in closed form.
    double moment(int k) const;

    // Generalized inverse of the normalized cumulative distribution,
    // Q(u) = inf{r : H(r) > u}. Nondecreasing in u; throws InvalidQuantile
    // for u outside [0,1) and NotAMeasure on the zero measure.
    double quantile(double u) const;

private:
    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
    double total_mass_ = 0;
    double support_bound_ = 0;
};

// Hahn-Jordan pair; parts must be mutually singular (no shared atom radius,
// no overlapping segments). Either part may be the zero measure.
struct SignedRadiusMeasure {
    RadiusMeasure pos;
    RadiusMeasure neg;

    SignedRadiusMeasure() = default;
    SignedRadiusMeasure(RadiusMeasure p, RadiusMeasure n);

    double support_bound() const;
};

double total_mass(const RadiusMeasure& F);
RadiusMeasure scale(const RadiusMeasure& F, double t);

// F + h*G with components merged by bit-identical radius/interval. Throws
// NotAMeasure if any resulting weight is negative; exact-zero weights are
// dropped.
RadiusMeasure combine(const RadiusMeasure& F, double h, const SignedRadiusMeasure& G);

// Largest a >= 0 such that F + a*G is a measure (infinity when G has no
// negative part; 0 when some negative component has no matching F component).
double max_admissible_step(const RadiusMeasure& F, const SignedRadiusMeasure& G);

double quantile_sample(const RadiusMeasure& F, double u);

// Volume of the d-dimensional unit ball.
double unit_ball_volume(int d);

// 1 - exp(-t * kappa_d * moment(F, d)), the fraction of space covered.
double closed_form_volume_fraction(const RadiusMeasure& F, double t, int d);

} // namespace boolperc

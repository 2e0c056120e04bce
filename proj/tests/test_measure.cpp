#include <doctest.h>

#include <cmath>
#include <vector>

#include "boolperc/errors.hpp"
#include "boolperc/measure.hpp"
#include "boolperc/rng.hpp"

using namespace boolperc;

namespace {

RadiusMeasure two_atoms() { return RadiusMeasure({{1.0, 0.7}, {0.5, 0.3}}, {}); }

RadiusMeasure random_measure(Rng& rng) {
    std::vector<Atom> atoms;
    std::vector<Segment> segments;
    const int na = 1 + static_cast<int>(rng.uniform01() * 3);
    for (int i = 0; i < na; ++i) atoms.push_back({rng.uniform(0.1, 2.0), rng.uniform(0.05, 1.0)});
    if (rng.uniform01() < 0.7) {
        const double lo = rng.uniform(0.1, 1.0);
        segments.push_back({lo, lo + rng.uniform(0.1, 1.0), rng.uniform(0.05, 1.0)});
    }
    return RadiusMeasure(std::move(atoms), std::move(segments));
}

} // namespace

TEST_SUITE("measure") {

TEST_CASE("total mass sums weights") {
    CHECK(total_mass(two_atoms()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(total_mass(RadiusMeasure({}, {{0.5, 1.0, 2.0}})) == doctest::Approx(2.0));
    CHECK(total_mass(RadiusMeasure::dirac(1.0)) == 1.0);
}

TEST_CASE("moments in closed form") {
    CHECK(two_atoms().moment(2) == doctest::Approx(0.775).epsilon(1e-14));
    const RadiusMeasure seg({}, {{0.5, 1.5, 1.0}});
    CHECK(seg.moment(1) == doctest::Approx(1.0).epsilon(1e-14));
    Rng rng(SeedSpec{7, 0, "measure-moment"});
    for (int i = 0; i < 20; ++i) {
        const RadiusMeasure F = random_measure(rng);
        CHECK(F.moment(0) == doctest::Approx(F.total_mass()).epsilon(1e-12));
    }
}

TEST_CASE("scale multiplies weights and keeps support") {
    const RadiusMeasure F = RadiusMeasure::dirac(1.0);
    const RadiusMeasure G = scale(F, 2.0);
    CHECK(G.atoms().size() == 1);
    CHECK(G.atoms()[0].radius == 1.0);
    CHECK(G.atoms()[0].weight == 2.0);
    CHECK(scale(F, 1.0).atoms()[0].weight == 1.0);
    CHECK_THROWS_AS(scale(F, 0.0), InvalidScale);
    CHECK_THROWS_AS(scale(F, -1.0), InvalidScale);

    Rng rng(SeedSpec{8, 0, "measure-scale"});
    for (int i = 0; i < 20; ++i) {
        const RadiusMeasure F2 = random_measure(rng);
        const double t = rng.uniform(0.1, 5.0);
        for (int k = 0; k <= 4; ++k)
            CHECK(scale(F2, t).moment(k) ==
                  doctest::Approx(t * F2.moment(k)).epsilon(1e-12));
        CHECK(total_mass(scale(F2, t)) == doctest::Approx(t * total_mass(F2)).epsilon(1e-12));
    }
}

TEST_CASE("combine merges by identical component and rejects negatives") {
    const RadiusMeasure F = RadiusMeasure::dirac(1.0);
    const SignedRadiusMeasure G(RadiusMeasure::dirac(0.5, 0.5), RadiusMeasure::dirac(1.0, 0.5));

    const RadiusMeasure H = combine(F, 1.0, G);
    REQUIRE(H.atoms().size() == 2);
    CHECK(H.atoms()[0].radius == 0.5);
    CHECK(H.atoms()[0].weight == 0.5);
    CHECK(H.atoms()[1].radius == 1.0);
    CHECK(H.atoms()[1].weight == 0.5);

    CHECK_THROWS_AS(combine(F, 3.0, G), NotAMeasure);

    const RadiusMeasure same = combine(F, 0.0, G);
    CHECK(same.atoms().size() == 1);
    CHECK(same.atoms()[0].weight == 1.0);

    // Exactly-zero weights are dropped.
    const RadiusMeasure dropped = combine(F, 2.0, G);
    REQUIRE(dropped.atoms().size() == 1);
    CHECK(dropped.atoms()[0].radius == 0.5);
}

TEST_CASE("combine round trip recovers the measure") {
    Rng rng(SeedSpec{9, 0, "measure-roundtrip"});
    for (int i = 0; i < 50; ++i) {
        const RadiusMeasure F = random_measure(rng);
        // A direction drawing its negative part from F stays admissible.
        const SignedRadiusMeasure G(RadiusMeasure::dirac(3.0, rng.uniform(0.1, 1.0)),
                                    RadiusMeasure::dirac(F.atoms()[0].radius,
                                                         F.atoms()[0].weight * 0.25));
        const double h = rng.uniform(0.0, 1.0);
        const RadiusMeasure back = combine(combine(F, h, G), -h, G);
        REQUIRE(back.atoms().size() == F.atoms().size());
        for (std::size_t k = 0; k < F.atoms().size(); ++k) {
            CHECK(back.atoms()[k].radius == F.atoms()[k].radius);
            CHECK(back.atoms()[k].weight ==
                  doctest::Approx(F.atoms()[k].weight).epsilon(1e-12));
        }
    }
}

TEST_CASE("admissible step") {
    const RadiusMeasure F = RadiusMeasure::dirac(1.0);
    const SignedRadiusMeasure G(RadiusMeasure::dirac(0.5, 0.5), RadiusMeasure::dirac(1.0, 0.5));
    CHECK(max_admissible_step(F, G) == doctest::Approx(2.0));
    const SignedRadiusMeasure pos_only(RadiusMeasure::dirac(0.5), RadiusMeasure{});
    CHECK(std::isinf(max_admissible_step(F, pos_only)));
    const SignedRadiusMeasure unmatched(RadiusMeasure{}, RadiusMeasure::dirac(0.75, 1.0));
    CHECK(max_admissible_step(F, unmatched) == 0.0);
}

TEST_CASE("signed measure parts must be mutually singular") {
    CHECK_THROWS_AS(SignedRadiusMeasure(RadiusMeasure::dirac(1.0), RadiusMeasure::dirac(1.0)),
                    NotAMeasure);
    CHECK_THROWS_AS(SignedRadiusMeasure(RadiusMeasure({}, {{0.5, 1.0, 1.0}}),
                                        RadiusMeasure({}, {{0.8, 1.2, 1.0}})),
                    NotAMeasure);
    // Disjoint segments are fine.
    CHECK_NOTHROW(SignedRadiusMeasure(RadiusMeasure({}, {{0.5, 1.0, 1.0}}),
                                      RadiusMeasure({}, {{1.0, 1.2, 1.0}})));
}

TEST_CASE("quantile matches the cumulative distribution") {
    const RadiusMeasure F = two_atoms();
    CHECK(F.quantile(0.2) == 0.5);
    CHECK(F.quantile(0.9) == 1.0);
    CHECK(F.quantile(0.0) == 0.5);
    const RadiusMeasure seg({}, {{0.5, 1.5, 1.0}});
    CHECK(seg.quantile(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(F.quantile(1.0), InvalidQuantile);
    CHECK_THROWS_AS(F.quantile(-0.1), InvalidQuantile);
}

TEST_CASE("quantile is nondecreasing in u") {
    Rng rng(SeedSpec{10, 0, "measure-quantile"});
    for (int rep = 0; rep < 20; ++rep) {
        const RadiusMeasure F = random_measure(rng);
        double prev = 0.0;
        for (int i = 0; i < 400; ++i) {
            const double q = F.quantile(i / 400.0);
            CHECK(q >= prev);
            prev = q;
        }
    }
    // Overlapping components: atom inside a segment.
    const RadiusMeasure mix({{1.0, 0.5}}, {{0.5, 1.5, 0.5}});
    double prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double q = mix.quantile(i / 1000.0);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("quantile sampling reproduces atom weights") {
    const RadiusMeasure F = two_atoms();
    Rng rng(SeedSpec{11, 0, "measure-chisq"});
    const int n = 100000;
    int small = 0;
    for (int i = 0; i < n; ++i)
        if (quantile_sample(F, rng.uniform01()) == 0.5) ++small;
    const double expected = 0.3 * n;
    const double se = std::sqrt(n * 0.3 * 0.7);
    CHECK(std::abs(small - expected) < 3.0 * se);
}

TEST_CASE("closed-form volume fraction") {
    const RadiusMeasure F = RadiusMeasure::dirac(1.0);
    CHECK(closed_form_volume_fraction(F, 1.0, 2) ==
          doctest::Approx(1.0 - std::exp(-M_PI)).epsilon(1e-14));
    CHECK(closed_form_volume_fraction(F, 1.0, 3) ==
          doctest::Approx(1.0 - std::exp(-4.0 * M_PI / 3.0)).epsilon(1e-14));
    CHECK(closed_form_volume_fraction(F, 1e-12, 2) == doctest::Approx(0.0).epsilon(1e-10));

    // Strictly increasing in t and in each atom weight.
    double prev = 0.0;
    for (double t = 0.1; t < 2.0; t += 0.1) {
        const double v = closed_form_volume_fraction(F, t, 2);
        CHECK(v > prev);
        prev = v;
    }
    prev = 0.0;
    for (double w = 0.1; w < 2.0; w += 0.1) {
        const double v = closed_form_volume_fraction(RadiusMeasure::dirac(1.0, w), 1.0, 2);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("construction rejects invalid components") {
    CHECK_THROWS_AS(RadiusMeasure({{0.0, 1.0}}, {}), NotAMeasure);
    CHECK_THROWS_AS(RadiusMeasure({{1.0, -0.5}}, {}), NotAMeasure);
    CHECK_THROWS_AS(RadiusMeasure({}, {{0.0, 1.0, 1.0}}), NotAMeasure);
    CHECK_THROWS_AS(RadiusMeasure({}, {{1.0, 0.5, 1.0}}), NotAMeasure);
}

} // TEST_SUITE

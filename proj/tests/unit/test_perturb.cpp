#include "doctest.h"
#include "lorenz/errors.hpp"
#include "lorenz/perturb.hpp"

#include <cmath>

using namespace lorenz;

namespace {
PiecewisePotential tent_at_zero(double height, double radius) {
    auto phi = PiecewisePotential::constant(0.0);
    phi.left.add_bump({0.0, radius, height});
    phi.holder_K = height / radius;
    phi.sup_bound = height;
    return phi;
}
} // namespace

TEST_CASE("bump family on the period-2 doubling orbit") {
    BetaMap dbl(2.0, 0.0);
    auto orb = solve_periodic_word(dbl, "10");
    REQUIRE(orb.verified);
    auto zero = PiecewisePotential::constant(0.0);
    auto pp = build_perturbed(dbl, zero, 0.3, orb, orb, 1);

    CHECK(pp.centers.size() == 2);
    CHECK(pp.combined.left.bumps().size() + pp.combined.right.bumps().size() == 2);
    CHECK(sup_distance(dbl, zero, pp.combined, 100000, false) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(pp.increment_plus == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(periodic_average(pp.combined, orb) == doctest::Approx(0.3).epsilon(1e-14));

    const auto& f = pp.family_plus;
    for (double c : orb.orbit) {
        CHECK(bump_eval(f, c) == doctest::Approx(0.3));
        CHECK(bump_eval(f, c + 0.5 * f.delta_kl) == doctest::Approx(0.15));
        CHECK(bump_eval(f, c + f.delta_kl) == 0.0);
    }
    // supports stay clear of 0, d and 1
    CHECK(f.delta_k <= 0.4 * (1.0 / 3.0) + 1e-15);
}

TEST_CASE("shrinking supports") {
    BetaMap dbl(2.0, 0.0);
    auto orb = solve_periodic_word(dbl, "10");
    auto zero = PiecewisePotential::constant(0.0);
    double x = 2.0 / 3.0 + 0.01;
    double last = 1.0;
    for (std::size_t l : {1, 2, 4, 8, 16}) {
        auto pp = build_perturbed(dbl, zero, 0.3, orb, orb, l);
        double v = bump_eval(pp.family_plus, x);
        CHECK(v <= last);
        last = v;
        CHECK(bump_eval(pp.family_plus, 2.0 / 3.0) == doctest::Approx(0.3));
    }
    CHECK(last == 0.0);
}

TEST_CASE("preconditions") {
    BetaMap dbl(2.0, 0.0);
    auto orb = solve_periodic_word(dbl, "10");
    auto zero = PiecewisePotential::constant(0.0);
    CHECK_THROWS_AS(build_perturbed(dbl, zero, 0.0, orb, orb, 1), ConfigError);
    CHECK_THROWS_AS(build_perturbed(dbl, zero, 0.3, orb, orb, 0), ConfigError);
    auto bad = orb;
    bad.verified = false;
    CHECK_THROWS_AS(build_perturbed(dbl, zero, 0.3, bad, orb, 1), UnverifiedOrbit);
    CHECK_THROWS_AS(densify(dbl, zero, 0.0, 10), ConfigError);
}

TEST_CASE("boundary pressure decay") {
    BetaMap m(1.8, 0.1);
    std::vector<PeriodicOrbit> orbits;
    for (const auto& r : cutting_times(m, 30, {kTauCut, true, false}))
        if (r.admissible) orbits.push_back(periodic_from_cutting(m, r));
    REQUIRE(!orbits.empty());
    auto pp = build_perturbed(m, PiecewisePotential::constant(0.0), 0.3, orbits.front(), orbits.front(), 1);
    auto series = bump_boundary_pressure_decay(m, pp.family_plus, {1, 2, 4, 1024, 1u << 20});
    for (const auto& e : series)
        if (!e.overlap) CHECK(e.value == 0.0);
    CHECK_FALSE(series.back().overlap);

    auto flat = pp.family_plus;
    flat.epsilon = 0.0;
    for (const auto& e : bump_boundary_pressure_decay(m, flat, {1, 8})) CHECK(e.value == 0.0);

    BetaMap dbl(2.0, 0.0);
    auto fixed = solve_periodic_word(dbl, "0");
    REQUIRE(fixed.verified);
    BumpFamily at_zero{CutSide::plus, fixed, 0.5, 0.2, 1, 0.2};
    auto hit = bump_boundary_pressure_decay(dbl, at_zero, {1, 4});
    for (const auto& e : hit) {
        CHECK(e.overlap);
        CHECK(e.value == doctest::Approx(0.5));
    }
}

TEST_CASE("densify") {
    BetaMap m(1.8, 0.1);
    auto r0 = densify(m, PiecewisePotential::constant(0.0), 0.3, 10);
    CHECK(r0.short_circuit);
    CHECK(r0.verdict.verdict == Verdict::in_h);

    BetaMap dbl(2.0, 0.0);
    auto phi = tent_at_zero(3.0, 0.1);
    auto r = densify(dbl, phi, 0.5, 200);
    REQUIRE(r.perturbed.has_value());
    CHECK(r.verdict.verdict == Verdict::in_h);
    CHECK(r.sup_distance <= 0.5 + 1e-12);
    auto check = h_membership(dbl, r.perturbed->combined, {},
                              {r.perturbed->family_plus.orbit, r.perturbed->family_minus.orbit});
    CHECK(check.verdict == Verdict::in_h);
}

#include <doctest.h>

#include <cmath>

#include "aalab/map.hpp"
#include "aalab/rng.hpp"

using namespace aalab;

namespace {

const double kLambda1 = (3.0 + std::sqrt(5.0)) / 2.0;

MapSpec nearly_linear_spec() {
    // shrunken glue region: the map is the toral automorphism away from a
    // microscopic ball, which random sampling never hits
    MapSpec s;
    s.r0 = 1e-9;
    s.r1 = 2e-9;
    return s;
}

// spec with the coefficients of the differential example; fails the
// equilibrium-existence inequalities, so it is built unchecked
MapSpec unit_coefficient_spec() {
    MapSpec s;
    s.a = s.b = s.c = s.d = 1.0;
    s.r0 = 0.03;
    s.r1 = 0.06;
    return s;
}

}  // namespace

TEST_CASE("validate_spec accepts the default parameters") {
    MapSpec s;
    s.a = 4;
    s.b = 3;
    s.c = 1;
    s.d = 1;
    s.r0 = 0.02;
    s.r1 = 0.05;
    CHECK(validate_spec(s).empty());
}

TEST_CASE("validate_spec rejects a parabolic matrix") {
    MapSpec s;
    s.A = {{{1, 1}, {0, 1}}};
    const auto errs = validate_spec(s);
    REQUIRE_FALSE(errs.empty());
    bool found = false;
    for (const auto& e : errs)
        if (e.find("not hyperbolic") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_spec rejects a*d - b*c <= 0") {
    MapSpec s;
    s.a = 2;
    s.b = 8;
    s.c = 1;
    s.d = 1;
    const auto errs = validate_spec(s);
    bool found = false;
    for (const auto& e : errs)
        if (e.find("a*d - b*c") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_spec accepts iff every individual predicate accepts") {
    // no hidden coupling: flipping one inequality produces exactly one error
    MapSpec s;
    auto count = [](const MapSpec& sp) { return validate_spec(sp).size(); };
    CHECK(count(s) == 0);
    MapSpec bad_r = s;
    bad_r.r1 = 0.3;
    CHECK(count(bad_r) == 1);
    MapSpec bad_b = s;
    bad_b.b = 1.5;  // violates b > 2d only (a*d - b*c = 4 - 1.5 > 0)
    CHECK(count(bad_b) == 1);
}

TEST_CASE("apply fixes the origin and matches A away from the glue") {
    const AlmostAnosovMap map{MapSpec{}};
    const TorusPoint z = map.apply({0.0, 0.0});
    CHECK(z.x == 0.0);
    CHECK(z.y == 0.0);

    const TorusPoint w = map.apply({0.5, 0.5});
    CHECK(w.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w.y == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("apply equals the local normal form inside r0") {
    const AlmostAnosovMap map{MapSpec{}};
    const TorusPoint p = map.apply({0.01, 0.0});
    CHECK(p.x == doctest::Approx(0.01 * (1.0 + 4.0 * 1e-4)).epsilon(1e-14));
    CHECK(p.y == 0.0);
}

TEST_CASE("apply is exactly linear for d(p,0) >= r1") {
    const AlmostAnosovMap map{MapSpec{}};
    const Mat2 A = map.matrix();
    Rng rng(7);
    double worst = 0.0;
    int n = 0;
    while (n < 10000) {
        const TorusPoint p(rng.uniform01(), rng.uniform01());
        if (dist_to_zero(p) < map.spec().r1) continue;
        ++n;
        const TorusPoint expect = wrap_point(A * lift_nearest_zero(p));
        worst = std::max(worst, torus_dist(map.apply(p), expect));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("apply equals the closed form inside r0 exactly") {
    const AlmostAnosovMap map{MapSpec{}};
    Rng rng(8);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double r = map.spec().r0 * std::sqrt(rng.uniform01());
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        const TorusPoint p(r * std::cos(th), r * std::sin(th));
        const Vec2 v = lift_nearest_zero(p);
        const TorusPoint expect = wrap_point(map.local_form(v));
        worst = std::max(worst, torus_dist(map.apply(p), expect));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("apply_inverse examples") {
    const AlmostAnosovMap map{MapSpec{}};
    const TorusPoint z = map.apply_inverse({0.0, 0.0});
    CHECK(torus_dist(z, {0.0, 0.0}) == 0.0);

    // A^{-1} = [[1,-1],[-1,2]] applied mod 1
    const TorusPoint q = map.apply_inverse({0.5, 0.0});
    CHECK(torus_dist(q, {0.5, 0.5}) <= 1e-12);
}

TEST_CASE("inverse round-trip over random points") {
    const AlmostAnosovMap map{MapSpec{}};
    Rng rng(9);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const TorusPoint p(rng.uniform01(), rng.uniform01());
        const TorusPoint q = map.apply_inverse(map.apply(p));
        worst = std::max(worst, torus_dist(q, p));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("inverse round-trip through the glue region") {
    const AlmostAnosovMap map{MapSpec{}};
    Rng rng(10);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double r = 1.2 * map.spec().r1 * rng.uniform01();
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        const TorusPoint p(r * std::cos(th), r * std::sin(th));
        const TorusPoint q = map.apply_inverse(map.apply(p));
        worst = std::max(worst, torus_dist(q, p));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("differential at the singularity is the identity") {
    const AlmostAnosovMap map{MapSpec{}};
    CHECK((map.differential({0.0, 0.0}) - Mat2::identity()).max_abs() <= 1e-12);
}

TEST_CASE("differential equals A outside r1 and det is positive everywhere") {
    const AlmostAnosovMap map{MapSpec{}};
    CHECK((map.differential({0.5, 0.5}) - map.matrix()).max_abs() == 0.0);
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) {
            const TorusPoint p(i / 64.0, j / 64.0);
            const Mat2 df = map.differential(p);
            CHECK(df.det() > 0.0);
            if (dist_to_zero(p) >= map.spec().r1)
                CHECK(df.det() == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("differential matches the closed-form matrix of the local chart") {
    const AlmostAnosovMap map(unit_coefficient_spec(),
                              AlmostAnosovMap::unchecked_t{});
    const Mat2 df = map.differential({0.01, 0.02});
    CHECK(df.a00 == doctest::Approx(1.0007).epsilon(1e-10));
    CHECK(df.a01 == doctest::Approx(0.0004).epsilon(1e-10));
    CHECK(df.a10 == doctest::Approx(-0.0004).epsilon(1e-10));
    CHECK(df.a11 == doctest::Approx(0.9987).epsilon(1e-10));
}

TEST_CASE("analytic differential matches finite differences per region") {
    for (BumpProfile prof : {BumpProfile::Smooth, BumpProfile::Poly9}) {
        MapSpec s;
        s.bump = prof;
        const AlmostAnosovMap map{s};
        const auto rep = smoothness_check(map, 900, 123);
        CHECK(rep.max_dev_linear <= 1e-9);
        CHECK(rep.max_dev_inner <= 1e-7);
        CHECK(rep.max_dev_annulus <= 1e-6);
    }
}

TEST_CASE("bump profile endpoints and monotonicity") {
    for (BumpProfile prof : {BumpProfile::Smooth, BumpProfile::Poly9}) {
        MapSpec s;
        s.bump = prof;
        const AlmostAnosovMap map{s};
        CHECK(map.omega(s.r0) == 1.0);
        CHECK(map.omega(s.r1) == 0.0);
        CHECK(map.omega(0.5 * (s.r0 + s.r1)) ==
              doctest::Approx(0.5).epsilon(1e-12));
        double prev = 1.0;
        for (int k = 1; k <= 50; ++k) {
            const double r = s.r0 + (s.r1 - s.r0) * k / 50.0;
            const double w = map.omega(r);
            CHECK(w <= prev + 1e-15);
            CHECK(map.omega_prime(r) <= 1e-15);
            prev = w;
        }
    }
}

TEST_CASE("hyperbolicity sweep passes away from the singularity") {
    const AlmostAnosovMap map{MapSpec{}};
    const auto rep = sweep_hyperbolicity(map, 128, 1e-3);
    CHECK(rep.all_pass);
    CHECK(rep.checked > 0);
}

TEST_CASE("sweep with zero exclusion reports the origin as non-hyperbolic") {
    const AlmostAnosovMap map{MapSpec{}};
    const auto rep = sweep_hyperbolicity(map, 32, 0.0);
    CHECK_FALSE(rep.all_pass);
    CHECK(rep.failed == 1);
    CHECK(rep.worst_point.x == 0.0);
    CHECK(rep.worst_point.y == 0.0);
}

TEST_CASE("linear-region certificates coincide with the certificate of A") {
    const AlmostAnosovMap map{MapSpec{}};
    const auto ref = hyperbolicity_certificate(map.matrix());
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const TorusPoint p(rng.uniform01(), rng.uniform01());
        if (dist_to_zero(p) < map.spec().r1) continue;
        const auto rep = hyperbolicity_certificate(map.differential(p));
        CHECK(rep.lambda1 == doctest::Approx(ref.lambda1).epsilon(1e-14));
        CHECK(rep.lambda2 == doctest::Approx(ref.lambda2).epsilon(1e-14));
    }
}

TEST_CASE("nearly linear spec behaves like the automorphism") {
    const AlmostAnosovMap map(nearly_linear_spec(), AlmostAnosovMap::unchecked_t{});
    Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        const TorusPoint p(rng.uniform01(), rng.uniform01());
        const TorusPoint expect = wrap_point(map.matrix() * lift_nearest_zero(p));
        CHECK(torus_dist(map.apply(p), expect) <= 1e-12);
    }
}

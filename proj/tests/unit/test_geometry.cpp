#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aalab/geometry.hpp"
#include "aalab/rng.hpp"

using namespace aalab;

namespace {

// Independent oracle: torus distance as the explicit minimum over the nine
// nearest lattice translates.
double torus_dist_9(const TorusPoint& p, const TorusPoint& q) {
    double best = 1e300;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double dx = p.x - q.x + i;
            const double dy = p.y - q.y + j;
            best = std::min(best, std::hypot(dx, dy));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("torus points stay reduced mod 1") {
    CHECK(TorusPoint(1.25, -0.25).x == doctest::Approx(0.25));
    CHECK(TorusPoint(1.25, -0.25).y == doctest::Approx(0.75));
    CHECK(TorusPoint(3.0, -2.0).x == 0.0);
    CHECK(wrap01(1.0) == 0.0);
    CHECK(wrap01(-1e-18) < 1.0);
}

TEST_CASE("torus distance equals the 9-translate minimum") {
    Rng rng(42);
    for (int k = 0; k < 2000; ++k) {
        const TorusPoint p(rng.uniform01(), rng.uniform01());
        const TorusPoint q(rng.uniform01(), rng.uniform01());
        CHECK(torus_dist(p, q) == doctest::Approx(torus_dist_9(p, q)).epsilon(1e-12));
    }
    CHECK(dist_to_zero({0.0, 0.0}) == 0.0);
    CHECK(dist_to_zero({0.9, 0.0}) == doctest::Approx(0.1));
    CHECK(dist_to_zero({0.5, 0.5}) == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("lift picks the representative nearest the origin") {
    const Vec2 v = lift_nearest_zero({0.9, 0.1});
    CHECK(v.x == doctest::Approx(-0.1));
    CHECK(v.y == doctest::Approx(0.1));
}

TEST_CASE("Mat2 algebra") {
    const Mat2 A(2, 1, 1, 1);
    CHECK(A.det() == doctest::Approx(1.0));
    CHECK(A.trace() == doctest::Approx(3.0));
    const Mat2 I = A * A.inverse();
    CHECK((I - Mat2::identity()).max_abs() < 1e-14);
    const Vec2 w = A * Vec2{0.5, 0.5};
    CHECK(w.x == doctest::Approx(1.5));
    CHECK(w.y == doctest::Approx(1.0));
}

TEST_CASE("hyperbolicity certificate") {
    SUBCASE("identity is not hyperbolic") {
        CHECK_FALSE(hyperbolicity_certificate(Mat2::identity()).hyperbolic);
    }
    SUBCASE("cat matrix") {
        const auto rep = hyperbolicity_certificate(Mat2(2, 1, 1, 1));
        CHECK(rep.hyperbolic);
        CHECK(rep.lambda1 ==
              doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
        CHECK(rep.lambda1 * rep.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("small perturbation of identity with real straddling spectrum") {
        const auto rep =
            hyperbolicity_certificate(Mat2(1.0007, 0.0004, -0.0004, 0.9987));
        CHECK(rep.hyperbolic);
        // characteristic polynomial roots
        CHECK(rep.lambda1 == doctest::Approx(1.0006).epsilon(2e-4));
        CHECK(rep.lambda2 == doctest::Approx(0.9988).epsilon(2e-4));
    }
    SUBCASE("rotation-like matrix is rejected") {
        CHECK_FALSE(hyperbolicity_certificate(Mat2(0, -1, 1, 0)).hyperbolic);
    }
}

TEST_CASE("eigenvectors of the cat matrix are orthogonal") {
    const Mat2 A(2, 1, 1, 1);
    const auto rep = hyperbolicity_certificate(A);
    const Vec2 u = eigenvector_for(A, rep.lambda1);
    const Vec2 s = eigenvector_for(A, rep.lambda2);
    CHECK(std::abs(u.dot(s)) < 1e-12);
    CHECK((A * u - u * rep.lambda1).norm() < 1e-12);
    CHECK((A * s - s * rep.lambda2).norm() < 1e-12);
}

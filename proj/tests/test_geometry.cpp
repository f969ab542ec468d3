#include <cmath>
#include <random>

#include <doctest.h>

#include "curvfem/errors.hpp"
#include "curvfem/geometry.hpp"
#include "oracles.hpp"

using namespace curvfem;

namespace {

const Shape kTorus = TorusShape{1.0, 0.5};
const Shape kUnitSphere = SphereShape{{0.0, 0.0, 0.0}, 1.0};

bool near(const Vec3& a, const Vec3& b, double tol) { return norm(a - b) <= tol; }

// Random point in the box around the torus, rejecting the neighborhood of
// the medial axis (z axis and center circle) so all fields are smooth.
Vec3 torus_box_point(std::mt19937& rng) {
    for (;;) {
        const Vec3 p = oracles::random_point(rng, {-1.6, -1.6, -0.6}, {1.6, 1.6, 0.6});
        const double s = std::hypot(p.x, p.y);
        const double q = std::hypot(s - 1.0, p.z);
        if (s > 0.15 && q > 0.15) return p;
    }
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("signed distance matches hand values") {
    CHECK(signed_distance(kTorus, {1.5, 0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(signed_distance(kTorus, {1.0, 0.0, 0.6}) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(signed_distance(kUnitSphere, {2.0, 0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("curvature vector matches hand values") {
    CHECK(near(exact_curvature_vector(kTorus, {1.5, 0.0, 0.0}), {-8.0 / 3.0, 0.0, 0.0}, 1e-13));
    // The inner equator is a parabolic line: the two principal curvatures
    // cancel and the curvature vector vanishes.
    CHECK(near(exact_curvature_vector(kTorus, {0.5, 0.0, 0.0}), {0.0, 0.0, 0.0}, 1e-13));
    CHECK(near(exact_curvature_vector(kUnitSphere, {1.0, 0.0, 0.0}), {-2.0, 0.0, 0.0}, 1e-13));
}

TEST_CASE("closest point projects onto the surface") {
    CHECK(near(closest_point(kTorus, {2.0, 0.0, 0.0}), {1.5, 0.0, 0.0}, 1e-14));
    CHECK(near(closest_point(kTorus, {1.0, 0.0, 1.0}), {1.0, 0.0, 0.5}, 1e-14));
    CHECK(near(closest_point(kUnitSphere, {0.5, 0.0, 0.0}), {1.0, 0.0, 0.0}, 1e-14));
}

TEST_CASE("torus_point lands on the surface") {
    const TorusShape t{1.0, 0.5};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int k = 0; k < 50; ++k) {
        const Vec3 p = torus_point(t, ang(rng), ang(rng));
        CHECK(std::abs(signed_distance(kTorus, p)) <= 1e-14);
    }
    CHECK(near(torus_point(t, 0.0, 0.0), {1.5, 0.0, 0.0}, 1e-15));
    CHECK(near(torus_point(t, M_PI, M_PI), {-0.5, 0.0, 0.0}, 1e-14));
}

TEST_CASE("derivatives are rejected on the medial axis, the value is not") {
    // z axis and center circle: distance values exist ...
    CHECK(signed_distance(kTorus, {0.0, 0.0, 0.0}) == doctest::Approx(0.5));
    CHECK(signed_distance(kTorus, {1.0, 0.0, 0.0}) == doctest::Approx(-0.5));
    // ... but everything built on the gradient is undefined there.
    CHECK_THROWS_AS((void)distance_gradient(kTorus, {0.0, 0.0, 0.3}), MedialAxisPoint);
    CHECK_THROWS_AS((void)distance_laplacian(kTorus, {1.0, 0.0, 0.0}), MedialAxisPoint);
    CHECK_THROWS_AS((void)exact_curvature_vector(kTorus, {0.0, 0.0, 0.0}), MedialAxisPoint);
    CHECK_THROWS_AS((void)closest_point(kTorus, {1.0, 0.0, 0.0}), MedialAxisPoint);
    CHECK_THROWS_AS((void)distance_gradient(kUnitSphere, {0.0, 0.0, 0.0}), MedialAxisPoint);
    // Just outside the guard radius the evaluation works.
    CHECK_NOTHROW((void)distance_gradient(kTorus, {1e-6, 0.0, 0.3}));
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(validate(Shape{TorusShape{0.5, 1.0}}), ConfigError);
    CHECK_THROWS_AS(validate(Shape{TorusShape{1.0, 0.0}}), ConfigError);
    CHECK_THROWS_AS(validate(Shape{SphereShape{{0, 0, 0}, -1.0}}), ConfigError);
    CHECK_NOTHROW(validate(kTorus));
}

TEST_CASE("gradient agrees with central differences at O(delta^2)") {
    std::mt19937 rng(77);
    const auto rho = [](const Vec3& p) { return signed_distance(kTorus, p); };
    for (int k = 0; k < 100; ++k) {
        const Vec3 p = torus_box_point(rng);
        const Vec3 g = distance_gradient(kTorus, p);
        CHECK(norm(g - oracles::fd_gradient(rho, p, 1e-4)) <= 1e-6);
        CHECK(norm(g - oracles::fd_gradient(rho, p, 1e-5)) <= 1e-7);
    }
}

TEST_CASE("laplacian agrees with 6-point finite differences") {
    std::mt19937 rng(78);
    const auto rho = [](const Vec3& p) { return signed_distance(kTorus, p); };
    for (int k = 0; k < 100; ++k) {
        const Vec3 p = torus_box_point(rng);
        const double lap = distance_laplacian(kTorus, p);
        CHECK(std::abs(lap - oracles::fd_laplacian(rho, p, 1e-4)) <= 1e-4 * std::abs(lap));
    }
}

TEST_CASE("distance gradient is a unit vector (eikonal)") {
    std::mt19937 rng(79);
    for (int k = 0; k < 100; ++k) {
        const Vec3 p = torus_box_point(rng);
        CHECK(std::abs(norm(distance_gradient(kTorus, p)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("curvature magnitude on the surface matches the closed form") {
    const TorusShape t{1.0, 0.5};
    std::mt19937 rng(80);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int k = 0; k < 100; ++k) {
        const double phi = ang(rng);
        const Vec3 p = torus_point(t, ang(rng), phi);
        const double expected = std::abs(1.0 / t.r + std::cos(phi) / (t.R + t.r * std::cos(phi)));
        CHECK(norm(exact_curvature_vector(kTorus, p)) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("sample bundles the individual fields") {
    std::mt19937 rng(81);
    for (int k = 0; k < 20; ++k) {
        const Vec3 p = torus_box_point(rng);
        const ExactFieldSample s = sample(kTorus, p);
        CHECK(s.rho == signed_distance(kTorus, p));
        CHECK(near(s.grad_rho, distance_gradient(kTorus, p), 0.0));
        CHECK(s.laplacian_rho == distance_laplacian(kTorus, p));
        CHECK(near(s.curvature, exact_curvature_vector(kTorus, p), 0.0));
        CHECK(near(s.closest_point, closest_point(kTorus, p), 0.0));
        // The closest point really is on the surface and the stored normal
        // is the outward normal there.
        CHECK(std::abs(signed_distance(kTorus, s.closest_point)) <= 1e-13);
        CHECK(near(s.normal, distance_gradient(kTorus, s.closest_point), 1e-10));
    }
}

TEST_SUITE_END();

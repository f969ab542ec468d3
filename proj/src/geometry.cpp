#include "curvfem/geometry.hpp"

#include <cmath>

#include "curvfem/errors.hpp"

namespace curvfem {

namespace {

constexpr double kMedialGuard = 1e-9;

// Cylindrical decomposition of a torus query point.  With s the distance to
// the z axis and d = s - R, the distance to the center circle is
// q = sqrt(d^2 + z^2) and rho = q - r.  The medial axis consists of the
// z axis (s = 0) and the center circle (q = 0); the distance value itself is
// well defined there, its derivatives are not.
struct TorusFrame {
    double s, d, q;
};

TorusFrame torus_frame(const TorusShape& t, const Vec3& p) {
    const double s = std::hypot(p.x, p.y);
    const double d = s - t.R;
    return {s, d, std::hypot(d, p.z)};
}

// Frame for derivative evaluations; rejects the medial axis.
TorusFrame torus_smooth_frame(const TorusShape& t, const Vec3& p) {
    const TorusFrame f = torus_frame(t, p);
    if (f.s < kMedialGuard)
        throw MedialAxisPoint("torus query point on the z axis");
    if (f.q < kMedialGuard)
        throw MedialAxisPoint("torus query point on the center circle");
    return f;
}

Vec3 torus_gradient(const Vec3& p, const TorusFrame& f) {
    // d rho/d s = d/q radially, d rho/d z = z/q; the result is a unit vector.
    const double radial = f.d / (f.q * f.s);
    return {radial * p.x, radial * p.y, p.z / f.q};
}

double sphere_center_distance(const SphereShape& sph, const Vec3& p) {
    return norm(p - sph.center);
}

double sphere_smooth_distance(const SphereShape& sph, const Vec3& p) {
    const double a = sphere_center_distance(sph, p);
    if (a < kMedialGuard)
        throw MedialAxisPoint("sphere query point at the center");
    return a;
}

}  // namespace

void validate(const Shape& shape) {
    std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, TorusShape>) {
                if (!(s.R > 0.0) || !(s.r > 0.0) || !(s.R > s.r))
                    throw ConfigError("torus requires R > r > 0");
            } else {
                if (!(s.radius > 0.0))
                    throw ConfigError("sphere requires radius > 0");
            }
        },
        shape);
}

double signed_distance(const Shape& shape, const Vec3& p) {
    if (const auto* t = std::get_if<TorusShape>(&shape)) {
        return torus_frame(*t, p).q - t->r;
    }
    const auto& sph = std::get<SphereShape>(shape);
    return sphere_center_distance(sph, p) - sph.radius;
}

Vec3 distance_gradient(const Shape& shape, const Vec3& p) {
    if (const auto* t = std::get_if<TorusShape>(&shape)) {
        return torus_gradient(p, torus_smooth_frame(*t, p));
    }
    const auto& sph = std::get<SphereShape>(shape);
    return (1.0 / sphere_smooth_distance(sph, p)) * (p - sph.center);
}

double distance_laplacian(const Shape& shape, const Vec3& p) {
    if (const auto* t = std::get_if<TorusShape>(&shape)) {
        // In cylindrical coordinates rho depends on (s, z) only, so
        // lap rho = rho_ss + rho_s / s + rho_zz = 1/q + d/(s q).
        const TorusFrame f = torus_smooth_frame(*t, p);
        return 1.0 / f.q + f.d / (f.s * f.q);
    }
    const auto& sph = std::get<SphereShape>(shape);
    return 2.0 / sphere_smooth_distance(sph, p);
}

Vec3 exact_curvature_vector(const Shape& shape, const Vec3& p) {
    return -distance_laplacian(shape, p) * distance_gradient(shape, p);
}

Vec3 closest_point(const Shape& shape, const Vec3& p) {
    return p - signed_distance(shape, p) * distance_gradient(shape, p);
}

ExactFieldSample sample(const Shape& shape, const Vec3& p) {
    ExactFieldSample out;
    if (const auto* t = std::get_if<TorusShape>(&shape)) {
        const TorusFrame f = torus_smooth_frame(*t, p);
        out.rho = f.q - t->r;
        out.grad_rho = torus_gradient(p, f);
        out.laplacian_rho = 1.0 / f.q + f.d / (f.s * f.q);
    } else {
        const auto& sph = std::get<SphereShape>(shape);
        const double a = sphere_smooth_distance(sph, p);
        out.rho = a - sph.radius;
        out.grad_rho = (1.0 / a) * (p - sph.center);
        out.laplacian_rho = 2.0 / a;
    }
    out.curvature = -out.laplacian_rho * out.grad_rho;
    // The distance gradient is constant along the normal ray, so it is also
    // the outward normal at the closest point.
    out.normal = out.grad_rho;
    out.closest_point = p - out.rho * out.grad_rho;
    return out;
}

Vec3 torus_point(const TorusShape& torus, double theta, double phi) {
    const double ring = torus.R + torus.r * std::cos(phi);
    return {ring * std::cos(theta), ring * std::sin(theta), torus.r * std::sin(phi)};
}

}  // namespace curvfem

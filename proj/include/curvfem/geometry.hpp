#pragma once

#include <variant>

#include "curvfem/vec3.hpp"

namespace curvfem {

/// Torus around the z axis: center-circle radius R, tube radius r, R > r > 0.
struct TorusShape {
    double R = 1.0;
    double r = 0.5;
};

/// Sphere, used as a second closed test surface.
struct SphereShape {
    Vec3 center{0.0, 0.0, 0.0};
    double radius = 1.0;
};

using Shape = std::variant<TorusShape, SphereShape>;

/// All closed-form fields of a shape evaluated at one point.
struct ExactFieldSample {
    double rho = 0.0;            ///< signed distance, negative inside
    Vec3 grad_rho;               ///< unit gradient of the distance
    double laplacian_rho = 0.0;  ///< sum of principal curvature fields
    Vec3 curvature;              ///< mean curvature vector -laplacian_rho * grad_rho
    Vec3 normal;                 ///< outward surface normal at the closest point
    Vec3 closest_point;          ///< projection onto the surface
};

/// Throws ConfigError when the shape parameters are out of range
/// (torus needs R > r > 0, sphere needs radius > 0).
void validate(const Shape& shape);

/// Signed distance to the surface, negative inside.  Well defined for every
/// point (including the medial axis, where only the derivatives blow up).
double signed_distance(const Shape& shape, const Vec3& p);

/// Gradient of the signed distance; a unit vector away from the medial axis.
/// This and every other derivative-based operation below throws
/// MedialAxisPoint when the query point is within 1e-9 of the medial axis.
Vec3 distance_gradient(const Shape& shape, const Vec3& p);

/// Laplacian of the signed distance.  Restricted to the surface it equals
/// the sum of the principal curvatures with respect to the outward normal
/// of a convex region being positive.
double distance_laplacian(const Shape& shape, const Vec3& p);

/// Mean curvature vector field -(laplacian rho) * (grad rho), defined in the
/// whole neighborhood of the surface minus the medial axis.  On the surface
/// it points toward the center of curvature, e.g. into a sphere.
Vec3 exact_curvature_vector(const Shape& shape, const Vec3& p);

/// Orthogonal projection onto the surface (exact for a distance function):
/// p - rho(p) * grad rho(p).
Vec3 closest_point(const Shape& shape, const Vec3& p);

/// All fields at once; one traversal of the closed forms.
ExactFieldSample sample(const Shape& shape, const Vec3& p);

/// Point on the torus at angles (theta around the z axis, phi around the
/// tube): ((R + r cos phi) cos theta, (R + r cos phi) sin theta, r sin phi).
Vec3 torus_point(const TorusShape& torus, double theta, double phi);

}  // namespace curvfem

#pragma once

#include <array>

#include "curvfem/vec3.hpp"

namespace curvfem {

/// Nodal (barycentric) basis of a tetrahedron: four linear functions with
/// constant gradients.  Used by the cut extraction and the assembly.
struct TetBasis {
    Vec3 origin;                 // first vertex
    std::array<Vec3, 4> grad{};  // gradients of the four nodal functions

    /// Values of the four basis functions at x.
    std::array<double, 4> values_at(const Vec3& x) const {
        const Vec3 d = x - origin;
        const double l1 = dot(grad[1], d);
        const double l2 = dot(grad[2], d);
        const double l3 = dot(grad[3], d);
        return {1.0 - l1 - l2 - l3, l1, l2, l3};
    }
};

inline TetBasis make_tet_basis(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    const Vec3 e1 = b - a, e2 = c - a, e3 = d - a;
    const double det = dot(e1, cross(e2, e3));  // 6 * signed volume
    TetBasis basis;
    basis.origin = a;
    basis.grad[1] = (1.0 / det) * cross(e2, e3);
    basis.grad[2] = (1.0 / det) * cross(e3, e1);
    basis.grad[3] = (1.0 / det) * cross(e1, e2);
    basis.grad[0] = -(basis.grad[1] + basis.grad[2] + basis.grad[3]);
    return basis;
}

}  // namespace curvfem

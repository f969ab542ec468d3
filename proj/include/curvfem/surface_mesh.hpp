#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "curvfem/geometry.hpp"
#include "curvfem/vec3.hpp"

namespace curvfem {

/// Interior edge of an oriented triangulation.  Vertices satisfy a < b;
/// `left` is the triangle that traverses the edge as a -> b, `right` the one
/// traversing b -> a.
struct SurfaceEdge {
    std::uint32_t a = 0, b = 0;
    std::uint32_t left = 0, right = 0;
};

/// Closed triangulated surface with all vertices on the exact shape.
/// `h` is the global mesh parameter 1/sqrt(#vertices) used by error reports
/// and by the edge-jump stabilization weight.
struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<SurfaceEdge> edges;
    double h = 0.0;
};

enum class MeshKind {
    Structured,        ///< all quads split along the same diagonal
    FlippedDiagonals,  ///< each quad's diagonal flipped with probability 1/2
    Perturbed,         ///< flipped diagonals plus parameter-space node jitter
};

/// Parameters of one torus triangulation.  The parameter grid has n_theta
/// columns around the z axis and n_phi rows around the tube (both >= 3).
/// `amplitude` scales the node jitter of the Perturbed family relative to
/// the grid spacing and must stay in [0, 0.45) so triangles cannot invert.
struct MeshFamily {
    MeshKind kind = MeshKind::Structured;
    int n_theta = 32;
    int n_phi = 16;
    std::uint64_t seed = 1;
    double amplitude = 0.3;
};

/// Builds the triangulated torus for one family member.  All vertices lie
/// exactly on the torus (jitter happens in parameter space), triangles are
/// oriented so their normal has positive dot product with the outward
/// distance gradient at the centroid, and `edges` holds the manifold edge
/// list.  Throws DegenerateTriangle / NonManifoldEdge / ConfigError.
SurfaceMesh generate_torus_mesh(const TorusShape& torus, const MeshFamily& family);

/// Manifold edge list of an oriented triangle soup: every undirected edge
/// must be traversed exactly once in each direction.  Throws
/// NonManifoldEdge otherwise (boundary or inconsistent orientation).
std::vector<SurfaceEdge> build_edges(const std::vector<std::array<std::uint32_t, 3>>& triangles);

/// Sum of triangle areas.
double surface_area(const SurfaceMesh& mesh);

/// Largest ratio of triangle diameter to inscribed-circle diameter; a shape
/// regularity diagnostic (small is good, blows up for sliver triangles).
double max_shape_ratio(const SurfaceMesh& mesh);

}  // namespace curvfem

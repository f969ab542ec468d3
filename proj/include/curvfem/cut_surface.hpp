#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "curvfem/geometry.hpp"
#include "curvfem/vec3.hpp"

namespace curvfem {

constexpr std::uint32_t kNoTet = 0xffffffffu;

/// Triangular face of the tetrahedral background mesh; nodes are sorted.
/// Boundary faces have t1 == kNoTet.
struct BackgroundFace {
    std::array<std::uint32_t, 3> v{};
    std::uint32_t t0 = kNoTet, t1 = kNoTet;
};

/// Structured tetrahedral mesh of an axis-aligned box: every cell is split
/// into the six tetrahedra around its main diagonal, which makes face
/// diagonals agree between neighboring cells without any parity bookkeeping.
/// `h` is the global mesh parameter 1/cbrt(#nodes).
struct BackgroundMesh {
    Vec3 lo, hi;
    int nx = 0, ny = 0, nz = 0;  // cells per axis
    std::vector<Vec3> nodes;
    std::vector<std::array<std::uint32_t, 4>> tets;  // positively oriented
    std::vector<BackgroundFace> faces;
    double h = 0.0;
};

/// Nodal values of a level-set function on a background mesh.
struct LevelSetField {
    std::vector<double> values;
};

/// One planar polygon of the cut surface: the zero set of the nodal field
/// inside one tetrahedron.  `edge_keys[k]` identifies the background edge
/// carrying corner k (packed sorted node pair), which is how neighboring
/// polygons recognize shared corners.  `normal` is the unit polygon normal
/// oriented along the gradient of the nodal field.
struct CutCell {
    std::uint32_t tet = 0;
    int size = 0;  // 3 or 4 corners
    std::array<Vec3, 4> corners{};
    std::array<std::uint64_t, 4> edge_keys{};
    Vec3 normal;
};

/// Background face shared by two active (intersected) tetrahedra.
struct InteriorFace {
    std::array<std::uint32_t, 3> v{};
    std::uint32_t t0 = 0, t1 = 0;
};

/// Segment where two neighboring cut polygons meet; it lies inside the
/// background face `face` (index into CutSurface::interior_faces).
struct CutEdge {
    std::uint32_t face = 0;
    Vec3 p0, p1;
    std::uint32_t cell0 = 0, cell1 = 0;  // indices into CutSurface::cells
};

/// Polygonal surface extracted from a level-set field, together with the
/// connectivity the stabilized assembly needs.  Degrees of freedom live on
/// all vertices of the active tetrahedra; `dof_nodes` lists them in
/// ascending node order and `dof_of_node` inverts the list (-1 elsewhere).
struct CutSurface {
    std::vector<CutCell> cells;
    std::vector<std::uint32_t> active_tets;
    std::vector<InteriorFace> interior_faces;
    std::vector<CutEdge> cut_edges;
    std::vector<std::uint32_t> dof_nodes;
    std::vector<std::int32_t> dof_of_node;
    double h = 0.0;
};

/// Corner-index triangles a polygon is integrated over: one triangle stays
/// whole, a quadrilateral is split along its shorter diagonal.
struct PolygonSplit {
    int count = 0;
    std::array<std::array<int, 3>, 2> tri{};
};

PolygonSplit split_polygon(const CutCell& cell);

/// Kuhn-split box mesh with the given cell counts (all >= 1).
BackgroundMesh make_box_background(const Vec3& lo, const Vec3& hi, int nx, int ny, int nz);

/// Background mesh of the standard domain [-1.6, 1.6]^2 x [-0.6, 0.6] with
/// cells of edge length about 1/n_per_unit (n_per_unit >= 2).
BackgroundMesh generate_background(int n_per_unit);

/// Nodal interpolant of the signed distance.  Exact zeros (nodes on the
/// surface) are replaced by +1e-12 * max|rho| so the extraction never sees
/// a zero value.
LevelSetField interpolate_levelset(const BackgroundMesh& mesh, const Shape& shape);

/// Marching extraction of the zero set: one triangle or planar quadrilateral
/// per intersected tetrahedron (none when all four values share a sign), plus
/// active tets, interior faces and matched cut edges.  Requires a field with
/// no exact zeros.  Polygon boundary segments on box-boundary faces are
/// allowed (the surface exits the domain there) but are not cut edges;
/// an unmatched segment on an interior face throws InconsistentTopology.
CutSurface extract_cut_surface(const BackgroundMesh& mesh, const LevelSetField& field);

/// Total polygon area.
double cut_area(const CutSurface& cut);

/// Number of connected components of the polygon complex (connectivity
/// through shared cut edges).  A well-resolved closed surface has one.
int component_count(const CutSurface& cut);

/// Signed volume of a positively oriented tetrahedron (helper, used by
/// consistency tests).
double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

}  // namespace curvfem

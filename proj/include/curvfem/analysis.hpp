#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "curvfem/assembly.hpp"
#include "curvfem/cut_surface.hpp"
#include "curvfem/geometry.hpp"
#include "curvfem/surface_mesh.hpp"

namespace curvfem {

/// Nodal vector field: three coefficient arrays (one per Cartesian
/// component) indexed by degree of freedom, plus the map from degree of
/// freedom to mesh node id.
struct CurvatureField {
    std::array<std::vector<double>, 3> components;
    std::vector<std::uint32_t> dof_map;
};

/// One refinement level of a convergence study.
struct ConvergenceRecord {
    double h = 0.0;
    std::size_t dofs = 0;
    double error_l2 = 0.0;
    std::optional<double> eoc;  ///< absent on the first row of a study
    double stability_norm = 0.0;
    double geom_rho_ratio = 0.0;
    double geom_normal_ratio = 0.0;
    std::size_t cg_iterations = 0;
};

/// Per-element maxima of the two surface-approximation diagnostics:
/// rho_ratio = max |rho| / h^2 and normal_ratio = max |n(closest) - n_h| / h,
/// sampled at element vertices and centroids.
struct GeometryReport {
    double rho_ratio = 0.0;
    double normal_ratio = 0.0;
};

/// Nodal interpolant of the exact curvature field: the coefficient at each
/// degree of freedom is the exact vector evaluated at the closest surface
/// point of the node, honoring the closest-point extension convention.
/// Propagates MedialAxisPoint for nodes on the medial axis.
CurvatureField interpolate_exact(const SurfaceMesh& mesh, const Shape& shape);
CurvatureField interpolate_exact(const BackgroundMesh& mesh, const CutSurface& cut,
                                 const Shape& shape);

/// Mass-weighted distance between two coefficient fields:
/// sqrt(sum_k (a_k - b_k)^T M (a_k - b_k)).  Throws DimensionMismatch when
/// either field does not match the system dimension.
double discrete_l2_error(const DiscreteSystem& system, const CurvatureField& field_a,
                         const CurvatureField& field_b);

/// L2 distance between the piecewise-linear field and the exact curvature
/// vector, integrated with the 3-point edge-midpoint rule per (sub)triangle
/// and the exact field evaluated at the closest surface point of each
/// quadrature point.  Propagates MedialAxisPoint.
double quadrature_l2_error(const SurfaceMesh& mesh, const CurvatureField& field,
                           const Shape& shape);
double quadrature_l2_error(const BackgroundMesh& mesh, const CutSurface& cut,
                           const CurvatureField& field, const Shape& shape);

/// Estimated order of convergence between two refinement levels:
/// ln(e_coarse/e_fine) / ln(h_coarse/h_fine).  Throws NonPositiveInput when
/// any input is non-positive or the steps are not strictly decreasing.
double eoc(double h_coarse, double e_coarse, double h_fine, double e_fine);

/// Full stabilized squared norm of a field:
/// sum_k ( c_k^T M c_k + tau_e c_k^T J_E c_k + tau_f c_k^T J_F c_k ).
/// Throws DimensionMismatch when the field does not match the system.
double stability_norm(const DiscreteSystem& system, const CurvatureField& field);

/// Surface-approximation diagnostics; see GeometryReport.
GeometryReport geometry_report(const SurfaceMesh& mesh, const Shape& shape);
GeometryReport geometry_report(const BackgroundMesh& mesh, const CutSurface& cut,
                               const Shape& shape);

}  // namespace curvfem

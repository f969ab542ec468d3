#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "curvfem/cut_surface.hpp"
#include "curvfem/sparse.hpp"
#include "curvfem/surface_mesh.hpp"

namespace curvfem {

/// Everything the linear solve needs: the mass matrix, the stabilization
/// matrices, and one right-hand side per coordinate component.  The same
/// scalar matrix serves all three components because every form acts
/// componentwise.
struct DiscreteSystem {
    SparseSymMatrix mass;
    SparseSymMatrix edge_stab;                 ///< tangential-jump penalty, h-weighted
    std::optional<SparseSymMatrix> face_stab;  ///< normal-jump penalty (cut case only)
    std::array<std::vector<double>, 3> load;
    std::vector<std::uint32_t> dof_map;  ///< vertex / background-node id per dof
    double h = 0.0;
    double tau_e = 0.0;
    double tau_f = 0.0;
};

/// Mass matrix: entry (i,j) = integral of phi_i phi_j over the discrete
/// surface, integrated exactly (edge-midpoint rule per flat triangle; cut
/// polygons are split along their shorter diagonal first).  Throws
/// EmptySurface when there are no elements.
SparseSymMatrix assemble_mass(const SurfaceMesh& mesh);
SparseSymMatrix assemble_mass(const BackgroundMesh& mesh, const CutSurface& cut);

/// Right-hand side of the curvature projection, one vector per coordinate
/// component: entry i of component k is -sum_K |K| (P_K e_k) . grad phi_i
/// with P_K = I - n_K n_K^T the element tangent projector.  The sign makes
/// the projected field match exact_curvature_vector (inward on convex
/// surfaces).  Throws EmptySurface when there are no elements.
std::array<std::vector<double>, 3> assemble_load(const SurfaceMesh& mesh);
std::array<std::vector<double>, 3> assemble_load(const BackgroundMesh& mesh,
                                                 const CutSurface& cut);

/// Tangential-gradient jump penalty: entry (i,j) = sum_E h |E| J_i(E) J_j(E)
/// where J_i(E) is the conormal jump of phi_i across edge E (conormals lie
/// in their element's plane, orthogonal to E, pointing outward) and h is the
/// surface's single global mesh parameter.  Requires resolved adjacency:
/// mesh.edges for the meshed overload, cut.cut_edges for the cut one.
SparseSymMatrix assemble_edge_stab(const SurfaceMesh& mesh);
SparseSymMatrix assemble_edge_stab(const BackgroundMesh& mesh, const CutSurface& cut);

/// Normal-gradient jump penalty across interior faces of the active
/// background tets: entry (i,j) = sum_F |F| Jn_i(F) Jn_j(F), no h-weight.
/// Only the cut discretization has such faces; the meshed overload throws
/// NotApplicable.
SparseSymMatrix assemble_face_stab(const BackgroundMesh& mesh, const CutSurface& cut);
SparseSymMatrix assemble_face_stab(const SurfaceMesh& mesh);

/// Assembles everything for one surface.  Meshed surfaces have no face
/// stabilization: tau_f != 0 throws NotApplicable there.
DiscreteSystem assemble_system(const SurfaceMesh& mesh, double tau_e, double tau_f);
DiscreteSystem assemble_system(const BackgroundMesh& mesh, const CutSurface& cut,
                               double tau_e, double tau_f);

/// mass + tau_e * edge_stab + tau_f * face_stab (face term skipped when
/// absent).  Terms with a zero parameter are skipped, so tau_e = tau_f = 0
/// returns the mass matrix itself.
SparseSymMatrix system_matrix(const DiscreteSystem& system);

}  // namespace curvfem

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "curvfem/analysis.hpp"
#include "curvfem/cut_surface.hpp"
#include "curvfem/sparse.hpp"
#include "curvfem/surface_mesh.hpp"

namespace curvfem {

/// Shortest decimal form with 17 significant digits: round-trips every
/// double exactly and keeps all text output bitwise reproducible.
std::string format_number(double value);

/// One row per record under the header
/// `h,N,error,eoc,stability,rho_ratio,normal_ratio,cg_iters`; a missing
/// convergence rate (first row of a study) is written as `nan`.
void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);

/// Wavefront OBJ of the triangulated surface.
void write_obj(std::ostream& out, const SurfaceMesh& mesh);

/// Wavefront OBJ of the polygonal cut surface; quadrilaterals are split
/// along their shorter diagonal.
void write_obj(std::ostream& out, const CutSurface& cut);

/// Legacy-ASCII VTK unstructured grid of the surface with the vector field
/// attached per point as VECTORS "H" plus its magnitude as SCALARS "Hmag".
void write_vtk(std::ostream& out, const SurfaceMesh& mesh, const CurvatureField& field);

/// Cut-surface variant: points are the polygon corners and the field is
/// evaluated there through the parent tetrahedron's linear basis.
void write_vtk(std::ostream& out, const BackgroundMesh& mesh, const CutSurface& cut,
               const CurvatureField& field);

/// Legacy-ASCII VTK of the background tetrahedral mesh with the nodal
/// level-set values attached as SCALARS "phi".
void write_vtk(std::ostream& out, const BackgroundMesh& mesh,
               const LevelSetField& field);

/// MatrixMarket coordinate format (`matrix coordinate real symmetric`),
/// one stored lower-triangle entry per line, 1-based indices.
void write_matrix_market(std::ostream& out, const SparseSymMatrix& matrix);

}  // namespace curvfem

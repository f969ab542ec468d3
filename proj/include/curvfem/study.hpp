#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "curvfem/analysis.hpp"
#include "curvfem/cut_surface.hpp"
#include "curvfem/geometry.hpp"
#include "curvfem/surface_mesh.hpp"

namespace curvfem {

/// Which discretization pipeline a run uses: an explicit torus
/// triangulation or a level-set surface cut out of a background box.
enum class RunMode { Meshed, Cut };

/// Configuration of a single run or of a whole convergence study.
struct RunConfig {
    RunMode mode = RunMode::Meshed;
    MeshKind family = MeshKind::Structured;  ///< meshed mode only
    /// Refinement sizes, strictly increasing: n_theta in meshed mode
    /// (n_phi = n_theta/2), cells per unit length in cut mode.
    std::vector<std::uint32_t> levels;
    TorusShape shape;
    double tau_e = 0.1;
    double tau_f = 0.0;
    std::uint64_t seed = 1;
    double amplitude = 0.3;       ///< node jitter of the Perturbed family
    std::size_t cg_max_iter = 0;  ///< iteration cap; 0 = solver default
};

/// Everything produced at one refinement level.  The surface handles let a
/// caller export the solved field; only the handles of the active mode are
/// filled.
struct LevelResult {
    ConvergenceRecord record;
    CurvatureField field;
    SurfaceMesh mesh;           ///< meshed mode
    BackgroundMesh background;  ///< cut mode
    CutSurface cut;             ///< cut mode
};

/// Throws ConfigError when the configuration violates its invariants:
/// negative penalties, a nonzero face penalty in meshed mode, an invalid
/// shape, an empty or non-increasing level list, or meshed sizes that are
/// odd or too small to triangulate.
void validate_config(const RunConfig& config);

/// Build, assemble and solve one refinement level of the given size.
/// The record's eoc is left empty.  Throws ConfigError for invalid
/// parameters and propagates numerical errors from the solver.
LevelResult run_once(const RunConfig& config, std::uint32_t size);

/// Run every level in order and chain the convergence rates between
/// consecutive records.  Requires at least three levels.  When `finest` is
/// non-null the last level's full result is moved into it.
std::vector<ConvergenceRecord> run_study(const RunConfig& config,
                                         LevelResult* finest = nullptr);

}  // namespace curvfem

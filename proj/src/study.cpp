#include "curvfem/study.hpp"

#include <algorithm>
#include <utility>

#include "curvfem/assembly.hpp"
#include "curvfem/errors.hpp"
#include "curvfem/solve.hpp"

namespace curvfem {

namespace {

/// Checks everything except the level list, which run_once does not use.
void validate_parameters(const RunConfig& config) {
    if (config.tau_e < 0.0 || config.tau_f < 0.0)
        throw ConfigError("stabilization parameters must be non-negative");
    if (config.mode == RunMode::Meshed && config.tau_f != 0.0)
        throw ConfigError("meshed mode requires a zero face penalty");
    validate(Shape{config.shape});
}

void validate_size(const RunConfig& config, std::uint32_t size) {
    if (config.mode == RunMode::Meshed) {
        if (size < 6 || size % 2 != 0)
            throw ConfigError(
                "meshed sizes must be even and at least 6 so n_phi = n_theta/2 "
                "stays a valid row count");
    } else if (size < 2) {
        throw ConfigError("cut sizes need at least 2 cells per unit length");
    }
}

/// Solves the three component systems and fills the per-level record
/// (without eoc, which needs a previous level).
void solve_and_measure(const DiscreteSystem& system, const RunConfig& config,
                       LevelResult& result) {
    const SparseSymMatrix matrix = system_matrix(system);
    CgOptions options;
    if (config.cg_max_iter != 0) options.max_iter = static_cast<int>(config.cg_max_iter);

    result.field.dof_map = system.dof_map;
    std::size_t iterations = 0;
    for (int k = 0; k < 3; ++k) {
        auto [solution, report] = cg_solve(matrix, system.load[k], options);
        iterations = std::max(iterations, static_cast<std::size_t>(report.iterations));
        result.field.components[k] = std::move(solution);
    }

    result.record.h = system.h;
    result.record.dofs = system.mass.dim();
    result.record.stability_norm = stability_norm(system, result.field);
    result.record.cg_iterations = iterations;
}

LevelResult run_meshed(const RunConfig& config, std::uint32_t size) {
    MeshFamily family;
    family.kind = config.family;
    family.n_theta = static_cast<int>(size);
    family.n_phi = static_cast<int>(size / 2);
    family.seed = config.seed;
    family.amplitude = config.amplitude;

    LevelResult result;
    result.mesh = generate_torus_mesh(config.shape, family);
    const DiscreteSystem system = assemble_system(result.mesh, config.tau_e, 0.0);
    solve_and_measure(system, config, result);

    const Shape shape{config.shape};
    result.record.error_l2 =
        discrete_l2_error(system, result.field, interpolate_exact(result.mesh, shape));
    const GeometryReport geometry = geometry_report(result.mesh, shape);
    result.record.geom_rho_ratio = geometry.rho_ratio;
    result.record.geom_normal_ratio = geometry.normal_ratio;
    return result;
}

LevelResult run_cut(const RunConfig& config, std::uint32_t size) {
    LevelResult result;
    result.background = generate_background(size);
    const Shape shape{config.shape};
    result.cut =
        extract_cut_surface(result.background, interpolate_levelset(result.background, shape));
    const DiscreteSystem system =
        assemble_system(result.background, result.cut, config.tau_e, config.tau_f);
    solve_and_measure(system, config, result);

    result.record.error_l2 =
        quadrature_l2_error(result.background, result.cut, result.field, shape);
    const GeometryReport geometry = geometry_report(result.background, result.cut, shape);
    result.record.geom_rho_ratio = geometry.rho_ratio;
    result.record.geom_normal_ratio = geometry.normal_ratio;
    return result;
}

}  // namespace

void validate_config(const RunConfig& config) {
    validate_parameters(config);
    if (config.levels.empty()) throw ConfigError("the refinement list is empty");
    for (std::size_t i = 0; i < config.levels.size(); ++i) {
        validate_size(config, config.levels[i]);
        if (i > 0 && config.levels[i] <= config.levels[i - 1])
            throw ConfigError("the refinement list must be strictly increasing");
    }
}

LevelResult run_once(const RunConfig& config, std::uint32_t size) {
    validate_parameters(config);
    validate_size(config, size);
    return config.mode == RunMode::Meshed ? run_meshed(config, size)
                                          : run_cut(config, size);
}

std::vector<ConvergenceRecord> run_study(const RunConfig& config,
                                         LevelResult* finest) {
    validate_config(config);
    if (config.levels.size() < 3)
        throw ConfigError("a convergence study needs at least three levels");

    std::vector<ConvergenceRecord> records;
    records.reserve(config.levels.size());
    for (std::size_t i = 0; i < config.levels.size(); ++i) {
        LevelResult level = run_once(config, config.levels[i]);
        if (i > 0) {
            const ConvergenceRecord& previous = records.back();
            level.record.eoc = eoc(previous.h, previous.error_l2, level.record.h,
                                   level.record.error_l2);
        }
        records.push_back(level.record);
        if (finest != nullptr && i + 1 == config.levels.size())
            *finest = std::move(level);
    }
    return records;
}

}  // namespace curvfem

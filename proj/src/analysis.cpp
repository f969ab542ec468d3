#include "curvfem/analysis.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "curvfem/errors.hpp"
#include "curvfem/tet_basis.hpp"

namespace curvfem {

namespace {

Vec3 exact_at_closest(const Shape& shape, const Vec3& p) {
    return exact_curvature_vector(shape, closest_point(shape, p));
}

Vec3 field_vector(const CurvatureField& field, std::size_t dof) {
    return {field.components[0][dof], field.components[1][dof],
            field.components[2][dof]};
}

void check_field_dimension(const DiscreteSystem& system, const CurvatureField& field) {
    for (const auto& component : field.components)
        if (component.size() != system.mass.dim())
            throw DimensionMismatch("field dimension does not match the system");
}

/// Squared L2 distance over one triangle between a linearly interpolated
/// field (corner values v0,v1,v2) and the exact curvature vector, using the
/// 3-point edge-midpoint rule (exact for quadratic integrands).
double triangle_error_sq(const Vec3& p0, const Vec3& p1, const Vec3& p2,
                         const Vec3& v0, const Vec3& v1, const Vec3& v2,
                         const Shape& shape) {
    const double area = 0.5 * norm(cross(p1 - p0, p2 - p0));
    if (area == 0.0) return 0.0;
    const std::array<Vec3, 3> points = {0.5 * (p0 + p1), 0.5 * (p1 + p2),
                                        0.5 * (p2 + p0)};
    const std::array<Vec3, 3> values = {0.5 * (v0 + v1), 0.5 * (v1 + v2),
                                        0.5 * (v2 + v0)};
    double sum = 0.0;
    for (int q = 0; q < 3; ++q) {
        const Vec3 diff = values[q] - exact_at_closest(shape, points[q]);
        sum += dot(diff, diff);
    }
    return (area / 3.0) * sum;
}

}  // namespace

CurvatureField interpolate_exact(const SurfaceMesh& mesh, const Shape& shape) {
    CurvatureField field;
    const std::size_t n = mesh.vertices.size();
    for (auto& component : field.components) component.resize(n);
    field.dof_map.resize(n);
    std::iota(field.dof_map.begin(), field.dof_map.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 value = exact_at_closest(shape, mesh.vertices[i]);
        for (int k = 0; k < 3; ++k) field.components[k][i] = value[k];
    }
    return field;
}

CurvatureField interpolate_exact(const BackgroundMesh& mesh, const CutSurface& cut,
                                 const Shape& shape) {
    CurvatureField field;
    const std::size_t n = cut.dof_nodes.size();
    for (auto& component : field.components) component.resize(n);
    field.dof_map = cut.dof_nodes;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 value = exact_at_closest(shape, mesh.nodes[cut.dof_nodes[i]]);
        for (int k = 0; k < 3; ++k) field.components[k][i] = value[k];
    }
    return field;
}

double discrete_l2_error(const DiscreteSystem& system, const CurvatureField& field_a,
                         const CurvatureField& field_b) {
    check_field_dimension(system, field_a);
    check_field_dimension(system, field_b);
    double sum = 0.0;
    std::vector<double> diff(system.mass.dim());
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = field_a.components[k][i] - field_b.components[k][i];
        sum += system.mass.quadratic_form(diff);
    }
    return std::sqrt(std::max(sum, 0.0));
}

double quadrature_l2_error(const SurfaceMesh& mesh, const CurvatureField& field,
                           const Shape& shape) {
    double sum = 0.0;
    for (const auto& tri : mesh.triangles)
        sum += triangle_error_sq(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                 mesh.vertices[tri[2]], field_vector(field, tri[0]),
                                 field_vector(field, tri[1]),
                                 field_vector(field, tri[2]), shape);
    return std::sqrt(sum);
}

double quadrature_l2_error(const BackgroundMesh& mesh, const CutSurface& cut,
                           const CurvatureField& field, const Shape& shape) {
    double sum = 0.0;
    for (const CutCell& cell : cut.cells) {
        const auto& tet = mesh.tets[cell.tet];
        const TetBasis basis =
            make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                           mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
        std::array<Vec3, 4> nodal{};
        for (int a = 0; a < 4; ++a)
            nodal[a] = field_vector(field, static_cast<std::size_t>(
                                               cut.dof_of_node[tet[a]]));
        const auto value_at = [&](const Vec3& q) {
            const std::array<double, 4> lambda = basis.values_at(q);
            Vec3 v{0, 0, 0};
            for (int a = 0; a < 4; ++a) v += lambda[a] * nodal[a];
            return v;
        };
        const PolygonSplit split = split_polygon(cell);
        for (int t = 0; t < split.count; ++t) {
            const Vec3& p0 = cell.corners[split.tri[t][0]];
            const Vec3& p1 = cell.corners[split.tri[t][1]];
            const Vec3& p2 = cell.corners[split.tri[t][2]];
            sum += triangle_error_sq(p0, p1, p2, value_at(p0), value_at(p1),
                                     value_at(p2), shape);
        }
    }
    return std::sqrt(sum);
}

double eoc(double h_coarse, double e_coarse, double h_fine, double e_fine) {
    if (!(h_coarse > 0.0) || !(e_coarse > 0.0) || !(h_fine > 0.0) || !(e_fine > 0.0))
        throw NonPositiveInput("convergence rate needs positive steps and errors");
    if (!(h_fine < h_coarse))
        throw NonPositiveInput("convergence rate needs strictly decreasing steps");
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

double stability_norm(const DiscreteSystem& system, const CurvatureField& field) {
    check_field_dimension(system, field);
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
        const auto& c = field.components[k];
        sum += system.mass.quadratic_form(c);
        if (system.tau_e != 0.0) sum += system.tau_e * system.edge_stab.quadratic_form(c);
        if (system.tau_f != 0.0 && system.face_stab.has_value())
            sum += system.tau_f * system.face_stab->quadratic_form(c);
    }
    return sum;
}

GeometryReport geometry_report(const SurfaceMesh& mesh, const Shape& shape) {
    double max_rho = 0.0;
    double max_normal = 0.0;
    for (const auto& tri : mesh.triangles) {
        const Vec3& p0 = mesh.vertices[tri[0]];
        const Vec3& p1 = mesh.vertices[tri[1]];
        const Vec3& p2 = mesh.vertices[tri[2]];
        const Vec3 n_h = normalized(cross(p1 - p0, p2 - p0));
        for (const Vec3& s :
             {p0, p1, p2, (1.0 / 3.0) * (p0 + p1 + p2)}) {
            max_rho = std::max(max_rho, std::abs(signed_distance(shape, s)));
            max_normal = std::max(max_normal, norm(distance_gradient(shape, s) - n_h));
        }
    }
    GeometryReport report;
    if (mesh.h > 0.0) {
        report.rho_ratio = max_rho / (mesh.h * mesh.h);
        report.normal_ratio = max_normal / mesh.h;
    }
    return report;
}

GeometryReport geometry_report(const BackgroundMesh& mesh, const CutSurface& cut,
                               const Shape& shape) {
    (void)mesh;
    double max_rho = 0.0;
    double max_normal = 0.0;
    for (const CutCell& cell : cut.cells) {
        Vec3 centroid{0, 0, 0};
        for (int c = 0; c < cell.size; ++c) centroid += cell.corners[c];
        centroid = (1.0 / cell.size) * centroid;
        for (int c = 0; c <= cell.size; ++c) {
            const Vec3& s = (c == cell.size) ? centroid : cell.corners[c];
            max_rho = std::max(max_rho, std::abs(signed_distance(shape, s)));
            max_normal =
                std::max(max_normal, norm(distance_gradient(shape, s) - cell.normal));
        }
    }
    GeometryReport report;
    if (cut.h > 0.0) {
        report.rho_ratio = max_rho / (cut.h * cut.h);
        report.normal_ratio = max_normal / cut.h;
    }
    return report;
}

}  // namespace curvfem

#include "curvfem/io.hpp"

#include <cstdio>
#include <cmath>

#include "curvfem/errors.hpp"
#include "curvfem/tet_basis.hpp"

namespace curvfem {

namespace {

void check_point_count(const CurvatureField& field, std::size_t expected,
                       const char* what) {
    for (const auto& component : field.components)
        if (component.size() != expected) throw DimensionMismatch(what);
}

void write_vector_point_data(std::ostream& out, const std::vector<Vec3>& values) {
    out << "POINT_DATA " << values.size() << "\n";
    out << "VECTORS H double\n";
    for (const Vec3& v : values)
        out << format_number(v.x) << " " << format_number(v.y) << " "
            << format_number(v.z) << "\n";
    out << "SCALARS Hmag double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (const Vec3& v : values) out << format_number(norm(v)) << "\n";
}

void write_vtk_header(std::ostream& out, const char* title) {
    out << "# vtk DataFile Version 2.0\n" << title << "\nASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
}

void write_points(std::ostream& out, const std::vector<Vec3>& points) {
    out << "POINTS " << points.size() << " double\n";
    for (const Vec3& p : points)
        out << format_number(p.x) << " " << format_number(p.y) << " "
            << format_number(p.z) << "\n";
}

}  // namespace

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
    out << "h,N,error,eoc,stability,rho_ratio,normal_ratio,cg_iters\n";
    for (const ConvergenceRecord& r : records) {
        out << format_number(r.h) << "," << r.dofs << ","
            << format_number(r.error_l2) << ","
            << (r.eoc ? format_number(*r.eoc) : "nan") << ","
            << format_number(r.stability_norm) << ","
            << format_number(r.geom_rho_ratio) << ","
            << format_number(r.geom_normal_ratio) << "," << r.cg_iterations << "\n";
    }
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
    for (const Vec3& v : mesh.vertices)
        out << "v " << format_number(v.x) << " " << format_number(v.y) << " "
            << format_number(v.z) << "\n";
    for (const auto& tri : mesh.triangles)
        out << "f " << tri[0] + 1 << " " << tri[1] + 1 << " " << tri[2] + 1 << "\n";
}

void write_obj(std::ostream& out, const CutSurface& cut) {
    std::size_t base = 1;  // OBJ indices are 1-based
    std::string faces;
    for (const CutCell& cell : cut.cells) {
        for (int c = 0; c < cell.size; ++c) {
            const Vec3& v = cell.corners[c];
            out << "v " << format_number(v.x) << " " << format_number(v.y) << " "
                << format_number(v.z) << "\n";
        }
        const PolygonSplit split = split_polygon(cell);
        for (int t = 0; t < split.count; ++t) {
            faces += "f";
            for (int k = 0; k < 3; ++k)
                faces += " " + std::to_string(base + split.tri[t][k]);
            faces += "\n";
        }
        base += cell.size;
    }
    out << faces;
}

void write_vtk(std::ostream& out, const SurfaceMesh& mesh,
               const CurvatureField& field) {
    check_point_count(field, mesh.vertices.size(),
                      "field size does not match the vertex count");
    write_vtk_header(out, "triangulated surface with curvature field");
    write_points(out, mesh.vertices);
    out << "CELLS " << mesh.triangles.size() << " " << 4 * mesh.triangles.size()
        << "\n";
    for (const auto& tri : mesh.triangles)
        out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
    out << "CELL_TYPES " << mesh.triangles.size() << "\n";
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) out << "5\n";

    std::vector<Vec3> values(mesh.vertices.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = {field.components[0][i], field.components[1][i],
                     field.components[2][i]};
    write_vector_point_data(out, values);
}

void write_vtk(std::ostream& out, const BackgroundMesh& mesh, const CutSurface& cut,
               const CurvatureField& field) {
    check_point_count(field, cut.dof_nodes.size(),
                      "field size does not match the degree-of-freedom count");

    std::vector<Vec3> points;
    std::vector<Vec3> values;
    for (const CutCell& cell : cut.cells) {
        const auto& tet = mesh.tets[cell.tet];
        const TetBasis basis =
            make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                           mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
        std::array<Vec3, 4> nodal{};
        for (int a = 0; a < 4; ++a) {
            const std::size_t dof =
                static_cast<std::size_t>(cut.dof_of_node[tet[a]]);
            nodal[a] = {field.components[0][dof], field.components[1][dof],
                        field.components[2][dof]};
        }
        for (int c = 0; c < cell.size; ++c) {
            points.push_back(cell.corners[c]);
            const std::array<double, 4> lambda = basis.values_at(cell.corners[c]);
            Vec3 v{0, 0, 0};
            for (int a = 0; a < 4; ++a) v += lambda[a] * nodal[a];
            values.push_back(v);
        }
    }

    write_vtk_header(out, "cut surface with curvature field");
    write_points(out, points);
    std::size_t list_size = 0;
    for (const CutCell& cell : cut.cells) list_size += 1 + cell.size;
    out << "CELLS " << cut.cells.size() << " " << list_size << "\n";
    std::size_t base = 0;
    for (const CutCell& cell : cut.cells) {
        out << cell.size;
        for (int c = 0; c < cell.size; ++c) out << " " << base + c;
        out << "\n";
        base += cell.size;
    }
    out << "CELL_TYPES " << cut.cells.size() << "\n";
    for (const CutCell& cell : cut.cells) out << (cell.size == 3 ? "5\n" : "9\n");
    write_vector_point_data(out, values);
}

void write_vtk(std::ostream& out, const BackgroundMesh& mesh,
               const LevelSetField& field) {
    if (field.values.size() != mesh.nodes.size())
        throw DimensionMismatch("level-set size does not match the node count");
    write_vtk_header(out, "background mesh with level-set field");
    write_points(out, mesh.nodes);
    out << "CELLS " << mesh.tets.size() << " " << 5 * mesh.tets.size() << "\n";
    for (const auto& tet : mesh.tets)
        out << "4 " << tet[0] << " " << tet[1] << " " << tet[2] << " " << tet[3]
            << "\n";
    out << "CELL_TYPES " << mesh.tets.size() << "\n";
    for (std::size_t i = 0; i < mesh.tets.size(); ++i) out << "10\n";
    out << "POINT_DATA " << mesh.nodes.size() << "\n";
    out << "SCALARS phi double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (double v : field.values) out << format_number(v) << "\n";
}

void write_matrix_market(std::ostream& out, const SparseSymMatrix& matrix) {
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << matrix.dim() << " " << matrix.dim() << " " << matrix.stored_entries()
        << "\n";
    matrix.for_each_lower([&](std::size_t i, std::size_t j, double v) {
        out << i + 1 << " " << j + 1 << " " << format_number(v) << "\n";
    });
}

}  // namespace curvfem

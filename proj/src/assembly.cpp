#include "curvfem/assembly.hpp"

#include <cmath>
#include <numeric>

#include "curvfem/errors.hpp"
#include "curvfem/tet_basis.hpp"

namespace curvfem {

namespace {

// Area, unit normal, and in-plane nodal basis gradients of a flat triangle.
struct TriangleFrame {
    double area = 0.0;
    Vec3 normal;
    std::array<Vec3, 3> grad{};
};

TriangleFrame triangle_frame(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    const Vec3 cr = cross(p1 - p0, p2 - p0);
    const double doubled = norm(cr);
    if (!(doubled > 0.0))
        throw DegenerateTriangle("zero-area triangle in assembly");
    TriangleFrame f;
    f.area = 0.5 * doubled;
    f.normal = (1.0 / doubled) * cr;
    // Gradient of nodal function i: normal x (opposite edge) / (2 area).
    f.grad[0] = (1.0 / doubled) * cross(f.normal, p2 - p1);
    f.grad[1] = (1.0 / doubled) * cross(f.normal, p0 - p2);
    f.grad[2] = (1.0 / doubled) * cross(f.normal, p1 - p0);
    return f;
}

Vec3 polygon_centroid(const CutCell& cell) {
    Vec3 c{};
    for (int k = 0; k < cell.size; ++k) c += cell.corners[k];
    return (1.0 / cell.size) * c;
}

double polygon_area(const CutCell& cell) {
    const PolygonSplit split = split_polygon(cell);
    double area = 0.0;
    for (int k = 0; k < split.count; ++k)
        area += 0.5 * norm(cross(cell.corners[split.tri[k][1]] - cell.corners[split.tri[k][0]],
                                 cell.corners[split.tri[k][2]] - cell.corners[split.tri[k][0]]));
    return area;
}

// Unit vector orthogonal to the segment (p0,p1) and to `normal`, pointing
// from the polygon centroid toward the segment (i.e. out of the polygon).
Vec3 outward_conormal(const Vec3& p0, const Vec3& p1, const Vec3& unit_edge,
                      const Vec3& normal, const Vec3& centroid) {
    Vec3 d = 0.5 * (p0 + p1) - centroid;
    d -= dot(d, unit_edge) * unit_edge;
    d -= dot(d, normal) * normal;
    return normalized(d);
}

// Accumulates per-dof jump values for one edge/face, merging shared dofs.
struct JumpStencil {
    std::array<std::size_t, 8> ids{};
    std::array<double, 8> jump{};
    int n = 0;

    void add(std::size_t id, double value) {
        for (int i = 0; i < n; ++i)
            if (ids[i] == id) {
                jump[i] += value;
                return;
            }
        ids[n] = id;
        jump[n] = value;
        ++n;
    }

    void emit(std::vector<Triplet>& trips, double weight) const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                trips.push_back({ids[i], ids[j], weight * jump[i] * jump[j]});
    }
};

std::size_t cut_dof(const CutSurface& cut, std::uint32_t node) {
    return static_cast<std::size_t>(cut.dof_of_node[node]);
}

}  // namespace

SparseSymMatrix assemble_mass(const SurfaceMesh& mesh) {
    if (mesh.triangles.empty())
        throw EmptySurface("mass assembly needs at least one triangle");
    std::vector<Triplet> trips;
    trips.reserve(6 * mesh.triangles.size());
    for (const auto& tri : mesh.triangles) {
        const TriangleFrame f = triangle_frame(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                               mesh.vertices[tri[2]]);
        for (int a = 0; a < 3; ++a) {
            trips.push_back({tri[a], tri[a], f.area / 6.0});
            for (int b = 0; b < a; ++b)
                trips.push_back({tri[a], tri[b], f.area / 12.0});
        }
    }
    return SparseSymMatrix::from_triplets(mesh.vertices.size(), std::move(trips));
}

SparseSymMatrix assemble_mass(const BackgroundMesh& mesh, const CutSurface& cut) {
    if (cut.cells.empty())
        throw EmptySurface("mass assembly needs at least one cut polygon");
    std::vector<Triplet> trips;
    trips.reserve(10 * cut.cells.size());
    for (const CutCell& cell : cut.cells) {
        const auto& tet = mesh.tets[cell.tet];
        const TetBasis basis = make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                                              mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
        double local[4][4] = {};
        const PolygonSplit split = split_polygon(cell);
        for (int s = 0; s < split.count; ++s) {
            const Vec3& q0 = cell.corners[split.tri[s][0]];
            const Vec3& q1 = cell.corners[split.tri[s][1]];
            const Vec3& q2 = cell.corners[split.tri[s][2]];
            const double w = norm(cross(q1 - q0, q2 - q0)) / 6.0;  // area / 3
            for (const Vec3& mid :
                 {0.5 * (q0 + q1), 0.5 * (q1 + q2), 0.5 * (q2 + q0)}) {
                const std::array<double, 4> vals = basis.values_at(mid);
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b <= a; ++b) local[a][b] += w * vals[a] * vals[b];
            }
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b <= a; ++b)
                trips.push_back({cut_dof(cut, tet[a]), cut_dof(cut, tet[b]), local[a][b]});
    }
    return SparseSymMatrix::from_triplets(cut.dof_nodes.size(), std::move(trips));
}

std::array<std::vector<double>, 3> assemble_load(const SurfaceMesh& mesh) {
    if (mesh.triangles.empty())
        throw EmptySurface("load assembly needs at least one triangle");
    std::array<std::vector<double>, 3> load;
    for (auto& component : load) component.assign(mesh.vertices.size(), 0.0);
    for (const auto& tri : mesh.triangles) {
        const TriangleFrame f = triangle_frame(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                               mesh.vertices[tri[2]]);
        // In-plane gradients are already tangential, so the projector is a
        // no-op on them; component k of the integrand is grad_k.
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < 3; ++k) load[k][tri[a]] -= f.area * f.grad[a][k];
    }
    return load;
}

std::array<std::vector<double>, 3> assemble_load(const BackgroundMesh& mesh,
                                                 const CutSurface& cut) {
    if (cut.cells.empty())
        throw EmptySurface("load assembly needs at least one cut polygon");
    std::array<std::vector<double>, 3> load;
    for (auto& component : load) component.assign(cut.dof_nodes.size(), 0.0);
    for (const CutCell& cell : cut.cells) {
        const auto& tet = mesh.tets[cell.tet];
        const TetBasis basis = make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                                              mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
        const double area = polygon_area(cell);
        for (int a = 0; a < 4; ++a) {
            const Vec3 tangential = project_tangent(basis.grad[a], cell.normal);
            const std::size_t dof = cut_dof(cut, tet[a]);
            for (int k = 0; k < 3; ++k) load[k][dof] -= area * tangential[k];
        }
    }
    return load;
}

SparseSymMatrix assemble_edge_stab(const SurfaceMesh& mesh) {
    std::vector<Triplet> trips;
    trips.reserve(10 * mesh.edges.size());
    for (const SurfaceEdge& edge : mesh.edges) {
        const Vec3& pa = mesh.vertices[edge.a];
        const Vec3& pb = mesh.vertices[edge.b];
        const double length = norm(pb - pa);
        if (!(length > 0.0)) continue;
        const Vec3 unit_edge = (1.0 / length) * (pb - pa);

        JumpStencil stencil;
        for (const std::uint32_t t : {edge.left, edge.right}) {
            const auto& tri = mesh.triangles[t];
            const TriangleFrame f = triangle_frame(
                mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
            const Vec3 centroid = (1.0 / 3.0) * (mesh.vertices[tri[0]] +
                                                 mesh.vertices[tri[1]] +
                                                 mesh.vertices[tri[2]]);
            const Vec3 conormal = outward_conormal(pa, pb, unit_edge, f.normal, centroid);
            for (int a = 0; a < 3; ++a) stencil.add(tri[a], dot(conormal, f.grad[a]));
        }
        stencil.emit(trips, mesh.h * length);
    }
    return SparseSymMatrix::from_triplets(mesh.vertices.size(), std::move(trips));
}

SparseSymMatrix assemble_edge_stab(const BackgroundMesh& mesh, const CutSurface& cut) {
    std::vector<Triplet> trips;
    trips.reserve(16 * cut.cut_edges.size());
    for (const CutEdge& edge : cut.cut_edges) {
        const double length = norm(edge.p1 - edge.p0);
        if (!(length > 0.0)) continue;
        const Vec3 unit_edge = (1.0 / length) * (edge.p1 - edge.p0);

        JumpStencil stencil;
        for (const std::uint32_t c : {edge.cell0, edge.cell1}) {
            const CutCell& cell = cut.cells[c];
            const auto& tet = mesh.tets[cell.tet];
            const TetBasis basis = make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                                                  mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
            const Vec3 conormal = outward_conormal(edge.p0, edge.p1, unit_edge,
                                                   cell.normal, polygon_centroid(cell));
            // The conormal is orthogonal to the cell normal, so applying the
            // tangent projector to the gradient would not change the dot.
            for (int a = 0; a < 4; ++a)
                stencil.add(cut_dof(cut, tet[a]), dot(conormal, basis.grad[a]));
        }
        stencil.emit(trips, cut.h * length);
    }
    return SparseSymMatrix::from_triplets(cut.dof_nodes.size(), std::move(trips));
}

SparseSymMatrix assemble_face_stab(const BackgroundMesh& mesh, const CutSurface& cut) {
    std::vector<Triplet> trips;
    trips.reserve(16 * cut.interior_faces.size());
    for (const InteriorFace& face : cut.interior_faces) {
        const Vec3& p0 = mesh.nodes[face.v[0]];
        const Vec3& p1 = mesh.nodes[face.v[1]];
        const Vec3& p2 = mesh.nodes[face.v[2]];
        const Vec3 cr = cross(p1 - p0, p2 - p0);
        const double area = 0.5 * norm(cr);
        if (!(area > 0.0)) continue;
        Vec3 nf = (0.5 / area) * cr;

        // Point out of the first tet.
        const auto& tet0 = mesh.tets[face.t0];
        const Vec3 c0 = 0.25 * (mesh.nodes[tet0[0]] + mesh.nodes[tet0[1]] +
                                mesh.nodes[tet0[2]] + mesh.nodes[tet0[3]]);
        const Vec3 fc = (1.0 / 3.0) * (p0 + p1 + p2);
        if (dot(nf, fc - c0) < 0.0) nf = -nf;

        JumpStencil stencil;
        double side = 1.0;
        for (const std::uint32_t t : {face.t0, face.t1}) {
            const auto& tet = mesh.tets[t];
            const TetBasis basis = make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                                                  mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
            for (int a = 0; a < 4; ++a)
                stencil.add(cut_dof(cut, tet[a]), side * dot(nf, basis.grad[a]));
            side = -side;  // the exterior normal of the second tet is -nf
        }
        stencil.emit(trips, area);
    }
    return SparseSymMatrix::from_triplets(cut.dof_nodes.size(), std::move(trips));
}

SparseSymMatrix assemble_face_stab(const SurfaceMesh&) {
    throw NotApplicable(
        "face stabilization lives on background tetrahedra; a triangulated "
        "surface has none");
}

DiscreteSystem assemble_system(const SurfaceMesh& mesh, double tau_e, double tau_f) {
    if (tau_f != 0.0)
        throw NotApplicable("meshed surfaces take no face stabilization parameter");
    DiscreteSystem system;
    system.mass = assemble_mass(mesh);
    system.edge_stab = assemble_edge_stab(mesh);
    system.load = assemble_load(mesh);
    system.dof_map.resize(mesh.vertices.size());
    std::iota(system.dof_map.begin(), system.dof_map.end(), 0u);
    system.h = mesh.h;
    system.tau_e = tau_e;
    system.tau_f = 0.0;
    return system;
}

DiscreteSystem assemble_system(const BackgroundMesh& mesh, const CutSurface& cut,
                               double tau_e, double tau_f) {
    DiscreteSystem system;
    system.mass = assemble_mass(mesh, cut);
    system.edge_stab = assemble_edge_stab(mesh, cut);
    system.face_stab = assemble_face_stab(mesh, cut);
    system.load = assemble_load(mesh, cut);
    system.dof_map = cut.dof_nodes;
    system.h = cut.h;
    system.tau_e = tau_e;
    system.tau_f = tau_f;
    return system;
}

SparseSymMatrix system_matrix(const DiscreteSystem& system) {
    const bool with_edge = system.tau_e != 0.0;
    const bool with_face = system.tau_f != 0.0 && system.face_stab.has_value();
    if (with_edge && with_face)
        return SparseSymMatrix::linear_combination(
            {{1.0, &system.mass},
             {system.tau_e, &system.edge_stab},
             {system.tau_f, &*system.face_stab}});
    if (with_edge)
        return SparseSymMatrix::linear_combination(
            {{1.0, &system.mass}, {system.tau_e, &system.edge_stab}});
    if (with_face)
        return SparseSymMatrix::linear_combination(
            {{1.0, &system.mass}, {system.tau_f, &*system.face_stab}});
    return SparseSymMatrix::linear_combination({{1.0, &system.mass}});
}

}  // namespace curvfem

#include "curvfem/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "curvfem/errors.hpp"
#include "curvfem/hashrand.hpp"

namespace curvfem {

namespace {

constexpr std::uint64_t kFlipStream = 0x464c4950ull;     // quad diagonal choice
constexpr std::uint64_t kPerturbStream = 0x50455254ull;  // node jitter

double triangle_area(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    return 0.5 * norm(cross(p1 - p0, p2 - p0));
}

}  // namespace

SurfaceMesh generate_torus_mesh(const TorusShape& torus, const MeshFamily& family) {
    validate(Shape{torus});
    if (family.n_theta < 3 || family.n_phi < 3)
        throw ConfigError("torus mesh needs n_theta >= 3 and n_phi >= 3");
    if (!(family.amplitude >= 0.0) || family.amplitude >= 0.45)
        throw ConfigError("perturbation amplitude must lie in [0, 0.45)");

    const int nt = family.n_theta;
    const int np = family.n_phi;
    const double dtheta = 2.0 * M_PI / nt;
    const double dphi = 2.0 * M_PI / np;
    const bool jitter = family.kind == MeshKind::Perturbed && family.amplitude > 0.0;
    const bool flips = family.kind != MeshKind::Structured;

    SurfaceMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nt) * np);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < np; ++j) {
            double theta = i * dtheta;
            double phi = j * dphi;
            if (jitter) {
                const std::uint64_t node = static_cast<std::uint64_t>(i) * np + j;
                theta += family.amplitude * dtheta *
                         hashrand::uniform_sym(family.seed, kPerturbStream, 2 * node);
                phi += family.amplitude * dphi *
                       hashrand::uniform_sym(family.seed, kPerturbStream, 2 * node + 1);
            }
            mesh.vertices.push_back(torus_point(torus, theta, phi));
        }
    }

    const auto vid = [np](int i, int j) {
        return static_cast<std::uint32_t>(i * np + j);
    };
    mesh.triangles.reserve(2 * static_cast<std::size_t>(nt) * np);
    for (int i = 0; i < nt; ++i) {
        const int i1 = (i + 1) % nt;
        for (int j = 0; j < np; ++j) {
            const int j1 = (j + 1) % np;
            const std::uint32_t v00 = vid(i, j), v10 = vid(i1, j);
            const std::uint32_t v11 = vid(i1, j1), v01 = vid(i, j1);
            const std::uint64_t quad = static_cast<std::uint64_t>(i) * np + j;
            const bool flip =
                flips && hashrand::uniform01(family.seed, kFlipStream, quad) < 0.5;
            if (!flip) {
                // Diagonal v00 -- v11; counterclockwise in (theta, phi).
                mesh.triangles.push_back({v00, v10, v11});
                mesh.triangles.push_back({v00, v11, v01});
            } else {
                // Diagonal v10 -- v01.
                mesh.triangles.push_back({v00, v10, v01});
                mesh.triangles.push_back({v10, v11, v01});
            }
        }
    }

    const Shape shape{torus};
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec3& p0 = mesh.vertices[tri[0]];
        const Vec3& p1 = mesh.vertices[tri[1]];
        const Vec3& p2 = mesh.vertices[tri[2]];
        const Vec3 nrm = cross(p1 - p0, p2 - p0);
        if (0.5 * norm(nrm) < 1e-14)
            throw DegenerateTriangle("torus mesh triangle " + std::to_string(t) +
                                     " has vanishing area");
        const Vec3 centroid = (1.0 / 3.0) * (p0 + p1 + p2);
        if (dot(nrm, distance_gradient(shape, centroid)) <= 0.0)
            throw InconsistentTopology("torus mesh triangle " + std::to_string(t) +
                                       " is oriented inward");
    }

    mesh.edges = build_edges(mesh.triangles);
    mesh.h = 1.0 / std::sqrt(static_cast<double>(mesh.vertices.size()));
    return mesh;
}

std::vector<SurfaceEdge> build_edges(
    const std::vector<std::array<std::uint32_t, 3>>& triangles) {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    struct Slot {
        std::uint32_t left = kUnset, right = kUnset;
    };
    std::unordered_map<std::uint64_t, Slot> slots;
    slots.reserve(3 * triangles.size() / 2);

    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& tri = triangles[t];
        for (int e = 0; e < 3; ++e) {
            const std::uint32_t from = tri[e];
            const std::uint32_t to = tri[(e + 1) % 3];
            if (from == to)
                throw NonManifoldEdge("triangle " + std::to_string(t) +
                                      " repeats a vertex");
            const std::uint64_t key =
                (static_cast<std::uint64_t>(std::min(from, to)) << 32) | std::max(from, to);
            Slot& slot = slots[key];
            std::uint32_t& side = from < to ? slot.left : slot.right;
            if (side != kUnset)
                throw NonManifoldEdge("edge " + std::to_string(std::min(from, to)) + "-" +
                                      std::to_string(std::max(from, to)) +
                                      " traversed twice in the same direction");
            side = static_cast<std::uint32_t>(t);
        }
    }

    std::vector<SurfaceEdge> edges;
    edges.reserve(slots.size());
    for (const auto& [key, slot] : slots) {
        if (slot.left == kUnset || slot.right == kUnset)
            throw NonManifoldEdge("edge " + std::to_string(key >> 32) + "-" +
                                  std::to_string(key & 0xffffffffu) +
                                  " is not shared by two triangles");
        edges.push_back({static_cast<std::uint32_t>(key >> 32),
                         static_cast<std::uint32_t>(key & 0xffffffffu), slot.left,
                         slot.right});
    }
    std::sort(edges.begin(), edges.end(), [](const SurfaceEdge& l, const SurfaceEdge& r) {
        return l.a != r.a ? l.a < r.a : l.b < r.b;
    });
    return edges;
}

double surface_area(const SurfaceMesh& mesh) {
    double area = 0.0;
    for (const auto& tri : mesh.triangles)
        area += triangle_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                              mesh.vertices[tri[2]]);
    return area;
}

double max_shape_ratio(const SurfaceMesh& mesh) {
    double worst = 0.0;
    for (const auto& tri : mesh.triangles) {
        const Vec3& p0 = mesh.vertices[tri[0]];
        const Vec3& p1 = mesh.vertices[tri[1]];
        const Vec3& p2 = mesh.vertices[tri[2]];
        const double e0 = norm(p1 - p0), e1 = norm(p2 - p1), e2 = norm(p0 - p2);
        const double longest = std::max({e0, e1, e2});
        const double area = triangle_area(p0, p1, p2);
        // Inscribed circle diameter: 4 * area / perimeter.
        const double inscribed = 4.0 * area / (e0 + e1 + e2);
        worst = std::max(worst, longest / inscribed);
    }
    return worst;
}

}  // namespace curvfem

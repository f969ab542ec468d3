#include <cmath>

#include <doctest.h>

#include "curvfem/errors.hpp"
#include "curvfem/surface_mesh.hpp"

using namespace curvfem;

namespace {

const TorusShape kTorus{1.0, 0.5};

MeshFamily family(MeshKind kind, int nt, int np, std::uint64_t seed = 1,
                  double amplitude = 0.3) {
    MeshFamily f;
    f.kind = kind;
    f.n_theta = nt;
    f.n_phi = np;
    f.seed = seed;
    f.amplitude = amplitude;
    return f;
}

long euler_characteristic(const SurfaceMesh& m) {
    return static_cast<long>(m.vertices.size()) - static_cast<long>(m.edges.size()) +
           static_cast<long>(m.triangles.size());
}

}  // namespace

TEST_SUITE_BEGIN("surface_mesh");

TEST_CASE("counts and Euler characteristic of a small torus grid") {
    const SurfaceMesh m = generate_torus_mesh(kTorus, family(MeshKind::Structured, 4, 3));
    CHECK(m.vertices.size() == 12);
    CHECK(m.triangles.size() == 24);
    CHECK(m.edges.size() == 36);
    CHECK(euler_characteristic(m) == 0);
    CHECK(m.h == doctest::Approx(1.0 / std::sqrt(12.0)));
}

TEST_CASE("structured family splits every quad along the same diagonal") {
    const SurfaceMesh m = generate_torus_mesh(kTorus, family(MeshKind::Structured, 4, 4));
    // First quad (i=0, j=0) with vertex ids v(i,j) = i*n_phi + j.
    CHECK(m.triangles[0] == std::array<std::uint32_t, 3>{0, 4, 5});
    CHECK(m.triangles[1] == std::array<std::uint32_t, 3>{0, 5, 1});
}

TEST_CASE("all triangles are oriented outward") {
    const SurfaceMesh m =
        generate_torus_mesh(kTorus, family(MeshKind::Perturbed, 16, 8, 3, 0.3));
    const Shape shape{kTorus};
    for (const auto& tri : m.triangles) {
        const Vec3 c = (1.0 / 3.0) *
                       (m.vertices[tri[0]] + m.vertices[tri[1]] + m.vertices[tri[2]]);
        const Vec3 nrm = cross(m.vertices[tri[1]] - m.vertices[tri[0]],
                               m.vertices[tri[2]] - m.vertices[tri[0]]);
        CHECK(dot(nrm, distance_gradient(shape, c)) > 0.0);
    }
}

TEST_CASE("open patch is rejected as non-manifold") {
    // Two triangles sharing one edge: the four boundary edges each have only
    // one incident triangle.
    const std::vector<std::array<std::uint32_t, 3>> patch = {{0, 1, 2}, {0, 2, 3}};
    CHECK_THROWS_AS((void)build_edges(patch), NonManifoldEdge);
}

TEST_CASE("tetrahedron boundary is a closed manifold with 6 edges") {
    const std::vector<std::array<std::uint32_t, 3>> tet = {
        {0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
    const auto edges = build_edges(tet);
    CHECK(edges.size() == 6);
    // V - E + F = 4 - 6 + 4 = 2, a sphere.
    CHECK(4 - static_cast<long>(edges.size()) + 4 == 2);
    for (const auto& e : edges) {
        CHECK(e.a < e.b);
        CHECK(e.left != e.right);
    }
}

TEST_CASE("inconsistent orientation is rejected") {
    const std::vector<std::array<std::uint32_t, 3>> bad = {
        {0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}};  // last one flipped
    CHECK_THROWS_AS((void)build_edges(bad), NonManifoldEdge);
}

TEST_CASE("area converges to the exact torus area at second order") {
    // 4 pi^2 R r = 2 pi^2 for R = 1, r = 1/2.
    const double exact = 2.0 * M_PI * M_PI;
    double err[3];
    int nt = 16;
    for (int level = 0; level < 3; ++level, nt *= 2) {
        const SurfaceMesh m =
            generate_torus_mesh(kTorus, family(MeshKind::Structured, nt, nt / 2));
        err[level] = exact - surface_area(m);
        CHECK(err[level] > 0.0);  // inscribed triangles underestimate
    }
    const double rate01 = std::log2(err[0] / err[1]);
    const double rate12 = std::log2(err[1] / err[2]);
    CHECK(rate01 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(rate12 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("flip decisions are deterministic and balanced") {
    const MeshFamily f = family(MeshKind::FlippedDiagonals, 32, 16, 42);
    const SurfaceMesh a = generate_torus_mesh(kTorus, f);
    const SurfaceMesh b = generate_torus_mesh(kTorus, f);
    CHECK(a.triangles == b.triangles);

    MeshFamily g = f;
    g.seed = 43;
    const SurfaceMesh c = generate_torus_mesh(kTorus, g);
    CHECK(a.triangles != c.triangles);

    // Count flipped quads: quad q is flipped iff its first triangle is not
    // the structured one {v00, v10, v11}.
    const SurfaceMesh s = generate_torus_mesh(kTorus, family(MeshKind::Structured, 32, 16));
    int flipped = 0;
    const int quads = 32 * 16;
    for (int q = 0; q < quads; ++q)
        if (a.triangles[2 * q] != s.triangles[2 * q]) ++flipped;
    const double fraction = static_cast<double>(flipped) / quads;
    CHECK(fraction > 0.4);
    CHECK(fraction < 0.6);
}

TEST_CASE("perturbed vertices stay exactly on the torus") {
    const SurfaceMesh m =
        generate_torus_mesh(kTorus, family(MeshKind::Perturbed, 24, 12, 7, 0.3));
    const Shape shape{kTorus};
    for (const Vec3& v : m.vertices)
        CHECK(std::abs(signed_distance(shape, v)) <= 1e-12);
    // Jitter really moved the nodes off the structured grid.
    const SurfaceMesh s = generate_torus_mesh(kTorus, family(MeshKind::Structured, 24, 12));
    double moved = 0.0;
    for (std::size_t i = 0; i < m.vertices.size(); ++i)
        moved = std::max(moved, norm(m.vertices[i] - s.vertices[i]));
    CHECK(moved > 1e-3);
}

TEST_CASE("perturbed meshes keep bounded shape regularity") {
    const SurfaceMesh m =
        generate_torus_mesh(kTorus, family(MeshKind::Perturbed, 32, 16, 11, 0.3));
    CHECK(max_shape_ratio(m) < 20.0);
}

TEST_CASE("invalid family parameters are rejected") {
    CHECK_THROWS_AS((void)generate_torus_mesh(kTorus, family(MeshKind::Structured, 2, 8)),
                    ConfigError);
    CHECK_THROWS_AS((void)generate_torus_mesh(kTorus, family(MeshKind::Structured, 8, 2)),
                    ConfigError);
    CHECK_THROWS_AS(
        (void)generate_torus_mesh(kTorus, family(MeshKind::Perturbed, 8, 8, 1, 0.45)),
        ConfigError);
    CHECK_THROWS_AS(
        (void)generate_torus_mesh(kTorus, family(MeshKind::Perturbed, 8, 8, 1, -0.1)),
        ConfigError);
}

TEST_CASE("area of a hand-built single-triangle mesh") {
    SurfaceMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    m.h = 1.0;
    CHECK(surface_area(m) == doctest::Approx(0.5));
}

TEST_SUITE_END();

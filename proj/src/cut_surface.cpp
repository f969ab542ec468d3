#include "curvfem/cut_surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "curvfem/errors.hpp"
#include "curvfem/tet_basis.hpp"

namespace curvfem {

namespace {

// The six tetrahedra of the Kuhn split, as cell-corner indices with bit 0/1/2
// encoding the x/y/z offset.  All six share the main diagonal 0-7; every cell
// face is split along the diagonal through its lowest and highest corner, so
// neighboring cells agree.
constexpr std::array<std::array<int, 4>, 6> kKuhnTets = {{
    {0, 1, 3, 7},
    {0, 1, 5, 7},
    {0, 2, 3, 7},
    {0, 2, 6, 7},
    {0, 4, 5, 7},
    {0, 4, 6, 7},
}};

constexpr std::uint64_t pack_edge(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct PairKey {
    std::uint64_t a = 0, b = 0;
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        std::uint64_t h = k.a * 0x9e3779b97f4a7c15ull;
        h ^= k.b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Face nodes packed into one integer, valid while node ids stay below 2^21.
std::uint64_t pack_face(const std::array<std::uint32_t, 3>& f) {
    return (static_cast<std::uint64_t>(f[0]) << 42) |
           (static_cast<std::uint64_t>(f[1]) << 21) | f[2];
}

// The sorted node triple of the face containing two background edges that
// share exactly one node.  Consecutive corners of a well-ordered cut polygon
// always sit on such a pair; anything else means the polygon is broken.
std::array<std::uint32_t, 3> segment_face_nodes(std::uint64_t ka, std::uint64_t kb) {
    std::array<std::uint32_t, 4> ids = {
        static_cast<std::uint32_t>(ka >> 32), static_cast<std::uint32_t>(ka),
        static_cast<std::uint32_t>(kb >> 32), static_cast<std::uint32_t>(kb)};
    std::sort(ids.begin(), ids.end());
    if (ids[0] == ids[1] && ids[1] != ids[2] && ids[2] != ids[3])
        return {ids[0], ids[2], ids[3]};
    if (ids[0] != ids[1] && ids[1] == ids[2] && ids[2] != ids[3])
        return {ids[0], ids[1], ids[3]};
    if (ids[0] != ids[1] && ids[1] != ids[2] && ids[2] == ids[3])
        return {ids[0], ids[1], ids[2]};
    throw InconsistentTopology("cut segment endpoints do not span a face");
}

struct DisjointSets {
    std::vector<std::uint32_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return dot(b - a, cross(c - a, d - a)) / 6.0;
}

PolygonSplit split_polygon(const CutCell& cell) {
    PolygonSplit split;
    if (cell.size == 3) {
        split.count = 1;
        split.tri[0] = {0, 1, 2};
        return split;
    }
    split.count = 2;
    if (norm(cell.corners[2] - cell.corners[0]) <=
        norm(cell.corners[3] - cell.corners[1])) {
        split.tri[0] = {0, 1, 2};
        split.tri[1] = {0, 2, 3};
    } else {
        split.tri[0] = {0, 1, 3};
        split.tri[1] = {1, 2, 3};
    }
    return split;
}

BackgroundMesh make_box_background(const Vec3& lo, const Vec3& hi, int nx, int ny, int nz) {
    if (nx < 1 || ny < 1 || nz < 1)
        throw ConfigError("background mesh needs at least one cell per axis");
    if (!(lo.x < hi.x) || !(lo.y < hi.y) || !(lo.z < hi.z))
        throw ConfigError("background box corners are not ordered");

    BackgroundMesh mesh;
    mesh.lo = lo;
    mesh.hi = hi;
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.nz = nz;

    const int mx = nx + 1, my = ny + 1, mz = nz + 1;
    mesh.nodes.reserve(static_cast<std::size_t>(mx) * my * mz);
    for (int iz = 0; iz < mz; ++iz)
        for (int iy = 0; iy < my; ++iy)
            for (int ix = 0; ix < mx; ++ix)
                mesh.nodes.push_back({lo.x + (hi.x - lo.x) * ix / nx,
                                      lo.y + (hi.y - lo.y) * iy / ny,
                                      lo.z + (hi.z - lo.z) * iz / nz});
    const auto node_id = [mx, my](int ix, int iy, int iz) {
        return static_cast<std::uint32_t>((iz * my + iy) * mx + ix);
    };

    mesh.tets.reserve(6 * static_cast<std::size_t>(nx) * ny * nz);
    for (int iz = 0; iz < nz; ++iz)
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                std::array<std::uint32_t, 8> corner;
                for (int c = 0; c < 8; ++c)
                    corner[c] = node_id(ix + (c & 1), iy + ((c >> 1) & 1), iz + (c >> 2));
                for (const auto& pattern : kKuhnTets) {
                    std::array<std::uint32_t, 4> tet = {
                        corner[pattern[0]], corner[pattern[1]], corner[pattern[2]],
                        corner[pattern[3]]};
                    if (tet_volume(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                                   mesh.nodes[tet[2]], mesh.nodes[tet[3]]) < 0.0)
                        std::swap(tet[2], tet[3]);
                    mesh.tets.push_back(tet);
                }
            }

    // Face table via sorting: every tet contributes its four vertex triples.
    struct FaceRef {
        std::array<std::uint32_t, 3> v;
        std::uint32_t tet;
    };
    std::vector<FaceRef> refs;
    refs.reserve(4 * mesh.tets.size());
    for (std::uint32_t t = 0; t < mesh.tets.size(); ++t) {
        const auto& tet = mesh.tets[t];
        for (int skip = 0; skip < 4; ++skip) {
            std::array<std::uint32_t, 3> f{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != skip) f[k++] = tet[i];
            std::sort(f.begin(), f.end());
            refs.push_back({f, t});
        }
    }
    std::sort(refs.begin(), refs.end(), [](const FaceRef& l, const FaceRef& r) {
        return l.v != r.v ? l.v < r.v : l.tet < r.tet;
    });
    mesh.faces.reserve(refs.size() / 2 + 1);
    for (std::size_t i = 0; i < refs.size();) {
        std::size_t j = i;
        while (j < refs.size() && refs[j].v == refs[i].v) ++j;
        if (j - i > 2)
            throw InconsistentTopology("background face shared by more than two tets");
        BackgroundFace face;
        face.v = refs[i].v;
        face.t0 = refs[i].tet;
        face.t1 = (j - i == 2) ? refs[i + 1].tet : kNoTet;
        mesh.faces.push_back(face);
        i = j;
    }

    mesh.h = 1.0 / std::cbrt(static_cast<double>(mesh.nodes.size()));
    return mesh;
}

BackgroundMesh generate_background(int n_per_unit) {
    if (n_per_unit < 2)
        throw ConfigError("background resolution needs n_per_unit >= 2");
    const auto cells = [n_per_unit](double extent) {
        return std::max(1, static_cast<int>(std::lround(extent * n_per_unit)));
    };
    return make_box_background({-1.6, -1.6, -0.6}, {1.6, 1.6, 0.6}, cells(3.2), cells(3.2),
                               cells(1.2));
}

LevelSetField interpolate_levelset(const BackgroundMesh& mesh, const Shape& shape) {
    LevelSetField field;
    field.values.reserve(mesh.nodes.size());
    double max_abs = 0.0;
    for (const Vec3& p : mesh.nodes) {
        const double rho = signed_distance(shape, p);
        max_abs = std::max(max_abs, std::abs(rho));
        field.values.push_back(rho);
    }
    // Nodes sitting (numerically) on the surface get nudged to the positive
    // side so the extraction never divides by a vanishing difference.
    const double eps = 1e-12 * max_abs;
    for (double& v : field.values)
        if (std::abs(v) < eps) v = eps;
    return field;
}

CutSurface extract_cut_surface(const BackgroundMesh& mesh, const LevelSetField& field) {
    if (field.values.size() != mesh.nodes.size())
        throw DimensionMismatch("level-set field size does not match the mesh");
    for (double v : field.values)
        if (v == 0.0)
            throw std::invalid_argument(
                "level-set field contains an exact zero; perturb it first");

    CutSurface cut;
    cut.h = mesh.h;
    std::vector<std::uint8_t> active(mesh.tets.size(), 0);

    constexpr std::array<std::array<int, 2>, 6> tet_edges = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

    for (std::uint32_t t = 0; t < mesh.tets.size(); ++t) {
        const auto& tet = mesh.tets[t];
        int negatives = 0;
        for (int i = 0; i < 4; ++i)
            if (field.values[tet[i]] < 0.0) ++negatives;
        if (negatives == 0 || negatives == 4) continue;

        CutCell cell;
        cell.tet = t;
        for (const auto& [i, j] : tet_edges) {
            std::uint32_t a = tet[i], b = tet[j];
            if ((field.values[a] < 0.0) == (field.values[b] < 0.0)) continue;
            if (a > b) std::swap(a, b);  // canonical orientation: both
                                         // incident tets compute the same bits
            const double va = field.values[a], vb = field.values[b];
            const double s = va / (va - vb);
            cell.corners[cell.size] = mesh.nodes[a] + s * (mesh.nodes[b] - mesh.nodes[a]);
            cell.edge_keys[cell.size] = pack_edge(a, b);
            ++cell.size;
        }

        // Gradient of the linear interpolant; orients the polygon.
        const TetBasis basis = make_tet_basis(mesh.nodes[tet[0]], mesh.nodes[tet[1]],
                                              mesh.nodes[tet[2]], mesh.nodes[tet[3]]);
        Vec3 grad{};
        for (int i = 0; i < 4; ++i) grad += field.values[tet[i]] * basis.grad[i];

        if (cell.size == 3) {
            if (dot(cross(cell.corners[1] - cell.corners[0],
                          cell.corners[2] - cell.corners[0]),
                    grad) < 0.0) {
                std::swap(cell.corners[1], cell.corners[2]);
                std::swap(cell.edge_keys[1], cell.edge_keys[2]);
            }
        } else if (cell.size == 4) {
            // Convex planar quadrilateral: sort by angle about the centroid
            // in a right-handed frame (u1, u2, grad).
            const Vec3 centroid =
                0.25 * (cell.corners[0] + cell.corners[1] + cell.corners[2] +
                        cell.corners[3]);
            const Vec3 u1 = normalized(cell.corners[0] - centroid);
            const Vec3 u2 = normalized(cross(grad, u1));
            std::array<int, 4> order = {0, 1, 2, 3};
            std::array<double, 4> angle{};
            for (int k = 0; k < 4; ++k) {
                const Vec3 d = cell.corners[k] - centroid;
                angle[k] = std::atan2(dot(d, u2), dot(d, u1));
            }
            std::sort(order.begin(), order.end(),
                      [&angle](int l, int r) { return angle[l] < angle[r]; });
            CutCell sorted = cell;
            for (int k = 0; k < 4; ++k) {
                sorted.corners[k] = cell.corners[order[k]];
                sorted.edge_keys[k] = cell.edge_keys[order[k]];
            }
            cell = sorted;
        } else {
            throw InconsistentTopology("tetrahedron with " + std::to_string(cell.size) +
                                       " sign-change edges");
        }

        const Vec3 nrm = cross(cell.corners[1] - cell.corners[0],
                               cell.corners[2] - cell.corners[0]);
        if (!(dot(nrm, grad) > 0.0))
            throw InconsistentTopology("cut polygon could not be oriented");
        cell.normal = normalized(nrm);

        active[t] = 1;
        cut.active_tets.push_back(t);
        cut.cells.push_back(cell);
    }

    // Degrees of freedom: every vertex of an active tetrahedron.
    for (std::uint32_t t : cut.active_tets)
        for (std::uint32_t v : mesh.tets[t]) cut.dof_nodes.push_back(v);
    std::sort(cut.dof_nodes.begin(), cut.dof_nodes.end());
    cut.dof_nodes.erase(std::unique(cut.dof_nodes.begin(), cut.dof_nodes.end()),
                        cut.dof_nodes.end());
    cut.dof_of_node.assign(mesh.nodes.size(), -1);
    for (std::size_t d = 0; d < cut.dof_nodes.size(); ++d)
        cut.dof_of_node[cut.dof_nodes[d]] = static_cast<std::int32_t>(d);

    // Faces shared by two active tets.
    std::unordered_map<std::uint64_t, std::uint32_t> face_index;
    for (const BackgroundFace& f : mesh.faces) {
        if (f.t1 == kNoTet || !active[f.t0] || !active[f.t1]) continue;
        face_index.emplace(pack_face(f.v), static_cast<std::uint32_t>(
                                               cut.interior_faces.size()));
        cut.interior_faces.push_back({f.v, f.t0, f.t1});
    }

    // Match polygon boundary segments across neighboring cells.  A segment is
    // identified by the unordered pair of background edges carrying its
    // endpoints; a matched pair lies in the face the two parent tets share.
    struct Pending {
        std::uint32_t cell;
        int corner;
    };
    std::unordered_map<PairKey, Pending, PairKeyHash> open_segments;
    open_segments.reserve(2 * cut.cells.size());
    for (std::uint32_t c = 0; c < cut.cells.size(); ++c) {
        const CutCell& cell = cut.cells[c];
        for (int k = 0; k < cell.size; ++k) {
            const std::uint64_t ka = cell.edge_keys[k];
            const std::uint64_t kb = cell.edge_keys[(k + 1) % cell.size];
            const PairKey key{std::min(ka, kb), std::max(ka, kb)};
            const auto it = open_segments.find(key);
            if (it == open_segments.end()) {
                open_segments.emplace(key, Pending{c, k});
                continue;
            }
            const auto face = face_index.find(pack_face(segment_face_nodes(ka, kb)));
            if (face == face_index.end())
                throw InconsistentTopology("matched cut segment not on an interior face");

            CutEdge edge;
            edge.face = face->second;
            edge.p0 = cell.corners[k];
            edge.p1 = cell.corners[(k + 1) % cell.size];
            edge.cell0 = it->second.cell;
            edge.cell1 = c;
            cut.cut_edges.push_back(edge);
            open_segments.erase(it);
        }
    }

    // Unmatched segments are fine exactly when they lie on the box boundary
    // (the cut exits the background domain there); on an interior face they
    // mean a neighbor polygon is missing or mis-ordered.
    for (const auto& [key, pending] : open_segments) {
        const auto nodes = segment_face_nodes(key.a, key.b);
        const auto it = std::partition_point(
            mesh.faces.begin(), mesh.faces.end(),
            [&nodes](const BackgroundFace& f) { return f.v < nodes; });
        if (it == mesh.faces.end() || it->v != nodes)
            throw InconsistentTopology("cut segment not on any background face");
        if (it->t1 != kNoTet)
            throw InconsistentTopology("interior cut segment with only one polygon");
    }

    return cut;
}

double cut_area(const CutSurface& cut) {
    double area = 0.0;
    for (const CutCell& cell : cut.cells) {
        const PolygonSplit split = split_polygon(cell);
        for (int k = 0; k < split.count; ++k) {
            const auto& tri = split.tri[k];
            area += 0.5 * norm(cross(cell.corners[tri[1]] - cell.corners[tri[0]],
                                     cell.corners[tri[2]] - cell.corners[tri[0]]));
        }
    }
    return area;
}

int component_count(const CutSurface& cut) {
    DisjointSets sets(cut.cells.size());
    for (const CutEdge& e : cut.cut_edges) sets.unite(e.cell0, e.cell1);
    int count = 0;
    for (std::uint32_t c = 0; c < cut.cells.size(); ++c)
        if (sets.find(c) == c) ++count;
    return count;
}

}  // namespace curvfem

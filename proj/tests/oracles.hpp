#pragma once

// Independent numerical oracles used by the test suites.  These are written
// against the raw mathematics (finite differences, classical quadrature
// rules, Monte Carlo) and deliberately share no code with the library paths
// they check.

#include <array>
#include <cstdint>
#include <functional>
#include <random>

#include "curvfem/vec3.hpp"

namespace oracles {

using curvfem::Vec3;

/// Central-difference gradient, O(delta^2) accurate.
inline Vec3 fd_gradient(const std::function<double(const Vec3&)>& f, const Vec3& p,
                        double delta) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        Vec3 hi = p, lo = p;
        hi[i] += delta;
        lo[i] -= delta;
        g[i] = (f(hi) - f(lo)) / (2.0 * delta);
    }
    return g;
}

/// Six-point finite-difference Laplacian, O(delta^2) accurate.
inline double fd_laplacian(const std::function<double(const Vec3&)>& f, const Vec3& p,
                           double delta) {
    const double center = f(p);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        Vec3 hi = p, lo = p;
        hi[i] += delta;
        lo[i] -= delta;
        acc += f(hi) - 2.0 * center + f(lo);
    }
    return acc / (delta * delta);
}

/// Classical 7-point degree-5 triangle rule; weights sum to one and are
/// applied to barycentric sample points.
inline double quad7_triangle(const Vec3& p0, const Vec3& p1, const Vec3& p2,
                             const std::function<double(const Vec3&)>& f) {
    static constexpr double a1 = 0.059715871789769820;
    static constexpr double b1 = 0.470142064105115090;
    static constexpr double w1 = 0.132394152788506180;
    static constexpr double a2 = 0.797426985353087320;
    static constexpr double b2 = 0.101286507323456340;
    static constexpr double w2 = 0.125939180544827150;
    static constexpr double wc = 0.225;
    struct Node {
        double l0, l1, l2, w;
    };
    static constexpr std::array<Node, 7> nodes = {{
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, wc},
        {a1, b1, b1, w1},
        {b1, a1, b1, w1},
        {b1, b1, a1, w1},
        {a2, b2, b2, w2},
        {b2, a2, b2, w2},
        {b2, b2, a2, w2},
    }};
    const double area = 0.5 * curvfem::norm(curvfem::cross(p1 - p0, p2 - p0));
    double acc = 0.0;
    for (const auto& n : nodes) {
        const Vec3 x = n.l0 * p0 + n.l1 * p1 + n.l2 * p2;
        acc += n.w * f(x);
    }
    return area * acc;
}

/// Monte Carlo integral of f over a triangle with `samples` uniform points.
/// Deterministic for a fixed seed (mt19937 is fully specified).
inline double mc_triangle(const Vec3& p0, const Vec3& p1, const Vec3& p2,
                          const std::function<double(const Vec3&)>& f, int samples,
                          std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double area = 0.5 * curvfem::norm(curvfem::cross(p1 - p0, p2 - p0));
    double acc = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double su = std::sqrt(uni(rng));
        const double v = uni(rng);
        const Vec3 x = (1.0 - su) * p0 + (su * (1.0 - v)) * p1 + (su * v) * p2;
        acc += f(x);
    }
    return area * acc / samples;
}

/// Deterministic pseudo-random point in a box, independent draws per index.
inline Vec3 random_point(std::mt19937& rng, const Vec3& lo, const Vec3& hi) {
    std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y), uz(lo.z, hi.z);
    const double x = ux(rng), y = uy(rng), z = uz(rng);
    return {x, y, z};
}

}  // namespace oracles

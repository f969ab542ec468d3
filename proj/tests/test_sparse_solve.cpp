#include <random>

#include <doctest.h>

#include "curvfem/solve.hpp"
#include "curvfem/sparse.hpp"

using namespace curvfem;

namespace {

// Random diagonally dominant SPD matrix, deterministic per seed.
SparseSymMatrix random_spd(std::size_t n, std::uint32_t seed, double fill = 0.08) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    std::vector<Triplet> entries;
    std::vector<double> row_abs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (pick(rng) < fill) {
                const double v = uni(rng);
                entries.push_back({i, j, v});
                row_abs[i] += std::abs(v);
                row_abs[j] += std::abs(v);
            }
    for (std::size_t i = 0; i < n; ++i)
        entries.push_back({i, i, row_abs[i] + 1.0});
    return SparseSymMatrix::from_triplets(n, std::move(entries));
}

std::vector<double> random_vector(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    return v;
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE_BEGIN("sparse_solve");

TEST_CASE("triplets with duplicates and mirrored halves are folded") {
    // A = [[4, 1], [1, 3]] assembled in awkward pieces.
    std::vector<Triplet> ts = {{0, 0, 4.0}, {0, 1, 0.5}, {1, 0, 0.5}, {1, 1, 1.0}, {1, 1, 2.0}};
    const auto m = SparseSymMatrix::from_triplets(2, ts);
    CHECK(m.diagonal(0) == 4.0);
    CHECK(m.diagonal(1) == 3.0);
    const auto y = m.multiply({1.0, 1.0});
    CHECK(y[0] == doctest::Approx(5.0));
    CHECK(y[1] == doctest::Approx(4.0));
    CHECK(m.quadratic_form({1.0, 1.0}) == doctest::Approx(9.0));
}

TEST_CASE("missing diagonal entries are stored as zero") {
    const auto m = SparseSymMatrix::from_triplets(3, {{2, 0, 1.5}});
    CHECK(m.diagonal(0) == 0.0);
    CHECK(m.diagonal(1) == 0.0);
    CHECK(m.diagonal(2) == 0.0);
    const auto y = m.multiply({1.0, 0.0, 2.0});
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[2] == doctest::Approx(1.5));
}

TEST_CASE("multiply agrees with an explicit dense product") {
    const auto m = random_spd(60, 9001);
    const auto x = random_vector(60, 5);
    // Dense reference assembled independently from the entry visitor.
    std::vector<std::vector<double>> dense(60, std::vector<double>(60, 0.0));
    m.for_each_lower([&](std::size_t i, std::size_t j, double v) {
        dense[i][j] = v;
        dense[j][i] = v;
    });
    std::vector<double> ref(60, 0.0);
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 60; ++j) ref[i] += dense[i][j] * x[j];
    const auto y = m.multiply(x);
    for (std::size_t i = 0; i < 60; ++i) CHECK(y[i] == doctest::Approx(ref[i]).epsilon(1e-13));
    // Quadratic form consistency with the product.
    double xref = 0.0;
    for (std::size_t i = 0; i < 60; ++i) xref += x[i] * ref[i];
    CHECK(m.quadratic_form(x) == doctest::Approx(xref).epsilon(1e-13));
}

TEST_CASE("linear combination merges different sparsity patterns") {
    const auto a = SparseSymMatrix::from_triplets(3, {{0, 0, 1.0}, {1, 0, 2.0}});
    const auto b = SparseSymMatrix::from_triplets(3, {{2, 2, 4.0}, {2, 1, 1.0}});
    const auto c = SparseSymMatrix::linear_combination({{2.0, &a}, {0.5, &b}});
    const auto y = c.multiply({1.0, 1.0, 1.0});
    CHECK(y[0] == doctest::Approx(6.0));   // 2*(1 + 2)
    CHECK(y[1] == doctest::Approx(4.5));   // 2*2 + 0.5*1
    CHECK(y[2] == doctest::Approx(2.5));   // 0.5*(1 + 4)
}

TEST_CASE("cg solves the identity in one iteration") {
    std::vector<Triplet> ts;
    for (std::size_t i = 0; i < 5; ++i) ts.push_back({i, i, 1.0});
    const auto m = SparseSymMatrix::from_triplets(5, ts);
    const std::vector<double> b = {1, -2, 3, -4, 5};
    const auto [x, report] = cg_solve(m, b);
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    for (std::size_t i = 0; i < 5; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-14));
}

TEST_CASE("cg reproduces the hand-solved 2x2 system") {
    const auto m =
        SparseSymMatrix::from_triplets(2, {{0, 0, 2.0}, {1, 1, 2.0}, {1, 0, 1.0}});
    const auto [x, report] = cg_solve(m, {1.0, 0.0});
    CHECK(report.converged);
    CHECK(x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("cg matches the dense reference on random SPD systems") {
    for (std::uint32_t seed : {11u, 12u, 13u}) {
        const auto m = random_spd(120, seed);
        const auto b = random_vector(120, seed + 100);
        const auto [x, report] = cg_solve(m, b);
        CHECK(report.converged);
        CHECK(report.relative_residual <= 1e-10);
        const auto ref = dense_solve(m, b);
        CHECK(rel_diff(x, ref) <= 1e-8);
    }
}

TEST_CASE("cg is deterministic") {
    const auto m = random_spd(80, 21);
    const auto b = random_vector(80, 22);
    const auto [x1, r1] = cg_solve(m, b);
    const auto [x2, r2] = cg_solve(m, b);
    CHECK(x1 == x2);  // bitwise
    CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("zero right-hand side returns zero without iterating") {
    const auto m = random_spd(10, 31);
    const auto [x, report] = cg_solve(m, std::vector<double>(10, 0.0));
    CHECK(report.converged);
    CHECK(report.iterations == 0);
    for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("zero matrix is singular for the dense path and breaks cg") {
    const auto m = SparseSymMatrix::from_triplets(4, {});
    const std::vector<double> b = {1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)dense_solve(m, b), SingularMatrix);
    CHECK_THROWS_AS((void)cg_solve(m, b), NoConvergence);
}

TEST_CASE("iteration budget exhaustion raises NoConvergence with a report") {
    const auto m = random_spd(100, 41);
    const auto b = random_vector(100, 42);
    CgOptions opts;
    opts.max_iter = 2;
    try {
        (void)cg_solve(m, b, opts);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.report.iterations == 2);
        CHECK(e.report.relative_residual > 1e-10);
        CHECK(!e.report.converged);
    }
}

TEST_CASE("size mismatches are rejected") {
    const auto m = random_spd(10, 51);
    CHECK_THROWS_AS((void)cg_solve(m, std::vector<double>(9, 1.0)), DimensionMismatch);
    CHECK_THROWS_AS((void)dense_solve(m, std::vector<double>(11, 1.0)), DimensionMismatch);
    CHECK_THROWS_AS((void)m.multiply(std::vector<double>(4, 1.0)), DimensionMismatch);
}

TEST_CASE("dense solver refuses oversized systems") {
    std::vector<Triplet> ts;
    for (std::size_t i = 0; i < 2001; ++i) ts.push_back({i, i, 1.0});
    const auto m = SparseSymMatrix::from_triplets(2001, ts);
    CHECK_THROWS_AS((void)dense_solve(m, std::vector<double>(2001, 1.0)),
                    std::invalid_argument);
}

TEST_SUITE_END();

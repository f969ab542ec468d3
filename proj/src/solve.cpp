#include "curvfem/solve.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace curvfem {

namespace {

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

std::pair<std::vector<double>, SolveReport> cg_solve(const SparseSymMatrix& matrix,
                                                     const std::vector<double>& rhs,
                                                     const CgOptions& options) {
    const std::size_t n = matrix.dim();
    if (rhs.size() != n)
        throw DimensionMismatch("cg_solve: rhs size does not match the matrix");

    const double rhs_norm = norm2(rhs);
    std::vector<double> x(n, 0.0);
    SolveReport report;
    if (rhs_norm == 0.0) {
        report.converged = true;
        return {std::move(x), report};
    }

    // Jacobi preconditioner; rows with non-positive diagonal fall back to
    // identity scaling so semidefinite systems can still run (and fail
    // honestly via the iteration budget).
    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = matrix.diagonal(i);
        inv_diag[i] = d > 0.0 ? 1.0 / d : 1.0;
    }

    const int max_iter = options.max_iter > 0 ? options.max_iter
                                              : static_cast<int>(10 * n);
    const double target = options.tol * rhs_norm;

    std::vector<double> r = rhs;  // residual of x = 0
    std::vector<double> z(n), p(n), ap(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);

    const auto true_residual = [&]() {
        matrix.multiply(x, ap);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ri = rhs[i] - ap[i];
            acc += ri * ri;
        }
        return std::sqrt(acc);
    };

    int iter = 0;
    while (iter < max_iter) {
        matrix.multiply(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) break;  // breakdown: not positive definite along p
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        ++iter;

        if (norm2(r) <= target) {
            // The recurrence residual can drift from the true one; accept
            // only a verified residual, otherwise restart from it.
            const double res = true_residual();
            if (res <= target) {
                report.iterations = iter;
                report.relative_residual = res / rhs_norm;
                report.converged = true;
                return {std::move(x), report};
            }
            matrix.multiply(x, ap);
            for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
        }

        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    report.iterations = iter;
    report.relative_residual = true_residual() / rhs_norm;
    report.converged = false;
    throw NoConvergence(report);
}

std::vector<double> dense_solve(const SparseSymMatrix& matrix,
                                const std::vector<double>& rhs) {
    const std::size_t n = matrix.dim();
    if (rhs.size() != n)
        throw DimensionMismatch("dense_solve: rhs size does not match the matrix");
    if (n > 2000)
        throw std::invalid_argument("dense_solve is guarded to dimensions <= 2000");
    if (n == 0) return {};

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    matrix.for_each_lower([&](std::size_t i, std::size_t j, double v) {
        dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        dense(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    });

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_diag = std::max(max_diag, std::abs(matrix.diagonal(i)));
    if (max_diag == 0.0)
        throw SingularMatrix("all diagonal entries vanish");

    Eigen::LDLT<Eigen::MatrixXd> ldlt(dense);
    if (ldlt.info() != Eigen::Success)
        throw SingularMatrix("symmetric factorization failed");
    const double pivot_floor = 1e-14 * max_diag;
    const auto d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (std::abs(d(i)) < pivot_floor)
            throw SingularMatrix("factorization pivot below 1e-14 of the largest diagonal");

    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) b(static_cast<Eigen::Index>(i)) = rhs[i];
    const Eigen::VectorXd sol = ldlt.solve(b);
    return {sol.data(), sol.data() + n};
}

}  // namespace curvfem

#pragma once

#include <vector>

#include "curvfem/errors.hpp"
#include "curvfem/sparse.hpp"

namespace curvfem {

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Raised when the iterative solver exhausts its iteration budget; carries
/// the state of the failed solve.
struct NoConvergence : Error {
    SolveReport report;
    explicit NoConvergence(const SolveReport& r)
        : Error("conjugate gradients did not converge after " +
                std::to_string(r.iterations) + " iterations (relative residual " +
                std::to_string(r.relative_residual) + ")"),
          report(r) {}
};

struct CgOptions {
    double tol = 1e-10;  ///< relative residual target |Ax - b| <= tol |b|
    int max_iter = 0;    ///< <= 0 means 10 * dimension
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive
/// (semi)definite systems.  Deterministic: fixed summation order, no
/// parallel reductions.  Returns the solution and a report; throws
/// NoConvergence when the iteration budget is exhausted.
std::pair<std::vector<double>, SolveReport> cg_solve(const SparseSymMatrix& matrix,
                                                     const std::vector<double>& rhs,
                                                     const CgOptions& options = {});

/// Dense symmetric-factorization reference solver for small systems
/// (dimension <= 2000).  Throws SingularMatrix when a pivot magnitude drops
/// below 1e-14 times the largest diagonal entry.
std::vector<double> dense_solve(const SparseSymMatrix& matrix,
                                const std::vector<double>& rhs);

}  // namespace curvfem

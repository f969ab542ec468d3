#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace curvfem {

/// One assembly contribution A(i, j) += value.  Entries may address either
/// triangle of the symmetric matrix; they are folded into the lower one.
struct Triplet {
    std::size_t i = 0, j = 0;
    double value = 0.0;
};

/// Symmetric sparse matrix stored as the lower triangle (diagonal included)
/// in compressed sparse row form.  Symmetry is a property of the storage:
/// there is no way to represent a non-symmetric operator.  Columns are
/// sorted within each row and the diagonal entry is always present, so the
/// last entry of row i is A(i, i).
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;

    /// Builds from unordered triplets; duplicates are summed.  Triplets with
    /// i < j are mirrored into the lower triangle, so symmetric assembly
    /// loops may emit either or both halves (halving shared mass entries is
    /// the caller's business -- entries are summed as given).
    static SparseSymMatrix from_triplets(std::size_t dim, std::vector<Triplet> entries);

    /// Weighted sum of structurally compatible matrices (same dimension).
    static SparseSymMatrix linear_combination(
        std::initializer_list<std::pair<double, const SparseSymMatrix*>> terms);

    std::size_t dim() const { return dim_; }
    std::size_t stored_entries() const { return vals_.size(); }

    /// y = A x using both triangles of every stored entry.
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> multiply(const std::vector<double>& x) const;

    /// x^T A x, evaluated in a fixed deterministic order.
    double quadratic_form(const std::vector<double>& x) const;

    double diagonal(std::size_t i) const;

    /// Visits every stored (lower triangle) entry as fn(i, j, value).
    template <class Fn>
    void for_each_lower(Fn&& fn) const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
                fn(i, cols_[k], vals_[k]);
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> offsets_;  // dim + 1 row offsets
    std::vector<std::size_t> cols_;     // sorted per row, row ends at the diagonal
    std::vector<double> vals_;
};

}  // namespace curvfem

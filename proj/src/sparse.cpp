#include "curvfem/sparse.hpp"

#include <algorithm>

#include "curvfem/errors.hpp"

namespace curvfem {

SparseSymMatrix SparseSymMatrix::from_triplets(std::size_t dim,
                                               std::vector<Triplet> entries) {
    for (Triplet& t : entries) {
        if (t.i >= dim || t.j >= dim)
            throw DimensionMismatch("triplet index outside the matrix");
        if (t.i < t.j) std::swap(t.i, t.j);
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& l, const Triplet& r) {
        return l.i != r.i ? l.i < r.i : l.j < r.j;
    });

    SparseSymMatrix m;
    m.dim_ = dim;
    m.offsets_.assign(dim + 1, 0);
    m.cols_.reserve(entries.size() + dim);
    m.vals_.reserve(entries.size() + dim);

    std::size_t k = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        m.offsets_[i] = m.cols_.size();
        while (k < entries.size() && entries[k].i == i && entries[k].j < i) {
            const std::size_t j = entries[k].j;
            double v = 0.0;
            for (; k < entries.size() && entries[k].i == i && entries[k].j == j; ++k)
                v += entries[k].value;
            m.cols_.push_back(j);
            m.vals_.push_back(v);
        }
        double d = 0.0;  // diagonal is stored even when never assembled
        for (; k < entries.size() && entries[k].i == i; ++k) d += entries[k].value;
        m.cols_.push_back(i);
        m.vals_.push_back(d);
    }
    m.offsets_[dim] = m.cols_.size();
    return m;
}

SparseSymMatrix SparseSymMatrix::linear_combination(
    std::initializer_list<std::pair<double, const SparseSymMatrix*>> terms) {
    std::size_t dim = 0;
    bool first = true;
    for (const auto& [coeff, mat] : terms) {
        (void)coeff;
        if (first) {
            dim = mat->dim();
            first = false;
        } else if (mat->dim() != dim) {
            throw DimensionMismatch("linear combination of differently sized matrices");
        }
    }

    std::vector<Triplet> entries;
    std::size_t total = 0;
    for (const auto& [coeff, mat] : terms)
        if (coeff != 0.0) total += mat->stored_entries();
    entries.reserve(total);
    for (const auto& [coeff, mat] : terms) {
        if (coeff == 0.0) continue;
        mat->for_each_lower([&](std::size_t i, std::size_t j, double v) {
            entries.push_back({i, j, coeff * v});
        });
    }
    return from_triplets(dim, std::move(entries));
}

void SparseSymMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    if (x.size() != dim_)
        throw DimensionMismatch("matrix-vector product size mismatch");
    y.assign(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        const std::size_t end = offsets_[i + 1] - 1;  // diagonal sits at `end`
        double yi = vals_[end] * x[i];
        for (std::size_t k = offsets_[i]; k < end; ++k) {
            const std::size_t j = cols_[k];
            yi += vals_[k] * x[j];
            y[j] += vals_[k] * x[i];
        }
        y[i] += yi;
    }
}

std::vector<double> SparseSymMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y;
    multiply(x, y);
    return y;
}

double SparseSymMatrix::quadratic_form(const std::vector<double>& x) const {
    if (x.size() != dim_)
        throw DimensionMismatch("quadratic form size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        const std::size_t end = offsets_[i + 1] - 1;
        double off = 0.0;
        for (std::size_t k = offsets_[i]; k < end; ++k) off += vals_[k] * x[cols_[k]];
        acc += x[i] * (vals_[end] * x[i] + 2.0 * off);
    }
    return acc;
}

double SparseSymMatrix::diagonal(std::size_t i) const {
    if (i >= dim_)
        throw DimensionMismatch("diagonal index out of range");
    return vals_[offsets_[i + 1] - 1];
}

}  // namespace curvfem

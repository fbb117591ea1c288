// matrix.hpp - dense matrix algebra over GF(2^m).
//
// Row-vector convention throughout: a coding vector is a length-k row and
// generator matrices are n x k with one coding vector per row, so the
// linear solve is x * A = b.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "ncs/errors.hpp"
#include "ncs/galois.hpp"

namespace ncs {

class GfMatrix {
  public:
    GfMatrix() = default;

    GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), elems_(rows * cols, 0)
    {
    }

    GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<gf_t> elems)
        : field_(std::move(field)), rows_(rows), cols_(cols), elems_(std::move(elems))
    {
        if (elems_.size() != rows_ * cols_)
            throw DimensionMismatch("element count " + std::to_string(elems_.size())
                                    + " does not match " + std::to_string(rows_) + "x"
                                    + std::to_string(cols_));
        for (gf_t v : elems_)
            if (v >= field_->q())
                throw DimensionMismatch("element " + std::to_string(v) + " outside field of order "
                                        + std::to_string(field_->q()));
    }

    static GfMatrix identity(FieldPtr field, std::size_t n)
    {
        GfMatrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FieldPtr& field() const noexcept { return field_; }
    const Field& gf() const noexcept { return *field_; }

    gf_t& at(std::size_t r, std::size_t c) { return elems_[r * cols_ + c]; }
    gf_t at(std::size_t r, std::size_t c) const { return elems_[r * cols_ + c]; }
    const std::vector<gf_t>& elems() const noexcept { return elems_; }

    std::vector<gf_t> row(std::size_t r) const
    {
        return {elems_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                elems_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    void set_row(std::size_t r, const std::vector<gf_t>& v)
    {
        std::copy(v.begin(), v.end(), elems_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
    }

    // Rows at the given indices, in the given order.
    GfMatrix select_rows(const std::vector<std::size_t>& idx) const
    {
        GfMatrix out(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) out.set_row(i, row(idx[i]));
        return out;
    }

    bool operator==(const GfMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && elems_ == o.elems_
               && field_->spec() == o.field_->spec();
    }

  private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<gf_t> elems_;
};

inline GfMatrix mat_mul(const GfMatrix& a, const GfMatrix& b)
{
    if (!(a.field()->spec() == b.field()->spec()))
        throw DimensionMismatch("matrix product across different fields");
    if (a.cols() != b.rows())
        throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x"
                                + std::to_string(a.cols()) + " and " + std::to_string(b.rows())
                                + "x" + std::to_string(b.cols()));
    const Field& gf = a.gf();
    GfMatrix out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const gf_t v = a.at(i, l);
            if (v == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.at(i, j) = Field::add(out.at(i, j), gf.mul(v, b.at(l, j)));
        }
    return out;
}

namespace detail {

// In-place elimination to row echelon form. Pivoting takes the first
// nonzero entry in the column (finite fields have no magnitude to compare).
// Returns the rank; if det is non-null it receives the pivot product
// (row swaps do not flip sign in characteristic 2).
inline std::size_t echelonize(GfMatrix& m, gf_t* det)
{
    const Field& gf = m.gf();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    gf_t d = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == rows) {
            d = 0;
            continue;
        }
        if (pivot != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        d = gf.mul(d, m.at(rank, col));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const gf_t f = gf.div(m.at(r, col), m.at(rank, col));
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j)
                m.at(r, j) = Field::add(m.at(r, j), gf.mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    if (det) *det = (rank == rows && rows == cols) ? d : 0;
    return rank;
}

} // namespace detail

inline gf_t determinant(const GfMatrix& a)
{
    if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
    GfMatrix work = a;
    gf_t det = 0;
    detail::echelonize(work, &det);
    return det;
}

inline std::size_t rank(const GfMatrix& a)
{
    GfMatrix work = a;
    return detail::echelonize(work, nullptr);
}

inline bool is_nonsingular(const GfMatrix& a)
{
    return a.rows() == a.cols() && determinant(a) != 0;
}

// Gauss-Jordan inverse of a square nonsingular matrix.
inline GfMatrix mat_inv(const GfMatrix& a)
{
    if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
    const Field& gf = a.gf();
    const std::size_t n = a.rows();
    GfMatrix work = a;
    GfMatrix inv = GfMatrix::identity(a.field(), n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work.at(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix("matrix is singular at column " + std::to_string(col));
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        const gf_t p = work.at(col, col);
        if (p != 1) {
            const gf_t pi = gf.inv(p);
            for (std::size_t j = 0; j < n; ++j) {
                work.at(col, j) = gf.mul(work.at(col, j), pi);
                inv.at(col, j) = gf.mul(inv.at(col, j), pi);
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const gf_t f = work.at(r, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work.at(r, j) = Field::add(work.at(r, j), gf.mul(f, work.at(col, j)));
                inv.at(r, j) = Field::add(inv.at(r, j), gf.mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

// Rows [1, t, t^2, ..., t^(k-1)] for each evaluation point t.
inline GfMatrix vandermonde(FieldPtr field, const std::vector<gf_t>& points, std::size_t k)
{
    if (k < 1) throw DimensionMismatch("vandermonde needs k >= 1");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw DuplicatePoint("duplicate evaluation point " + std::to_string(points[i]));
    GfMatrix out(field, points.size(), k);
    const Field& gf = *field;
    for (std::size_t i = 0; i < points.size(); ++i) {
        gf_t acc = 1;
        for (std::size_t j = 0; j < k; ++j) {
            out.at(i, j) = acc;
            acc = gf.mul(acc, points[i]);
        }
    }
    return out;
}

// Solves x * A = b for a row vector x (A square nonsingular).
inline std::vector<gf_t> solve_row(const GfMatrix& a, const std::vector<gf_t>& b)
{
    if (a.rows() != a.cols()) throw DimensionMismatch("solve needs a square matrix");
    if (b.size() != a.cols()) throw DimensionMismatch("right-hand side length mismatch");
    const Field& gf = a.gf();
    const std::size_t n = a.rows();
    // Augmented elimination on A^T | b^T.
    GfMatrix aug(a.field(), n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(j, i);
        aug.at(i, n) = b[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug.at(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix("singular system");
        if (pivot != col)
            for (std::size_t j = 0; j <= n; ++j) std::swap(aug.at(pivot, j), aug.at(col, j));
        const gf_t pi = gf.inv(aug.at(col, col));
        for (std::size_t j = col; j <= n; ++j) aug.at(col, j) = gf.mul(aug.at(col, j), pi);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const gf_t f = aug.at(r, col);
            if (f == 0) continue;
            for (std::size_t j = col; j <= n; ++j)
                aug.at(r, j) = Field::add(aug.at(r, j), gf.mul(f, aug.at(col, j)));
        }
    }
    std::vector<gf_t> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug.at(i, n);
    return x;
}

// b = x * A, the substitution direction of solve_row.
inline std::vector<gf_t> row_times_matrix(const std::vector<gf_t>& x, const GfMatrix& a)
{
    if (x.size() != a.rows()) throw DimensionMismatch("row vector length mismatch");
    const Field& gf = a.gf();
    std::vector<gf_t> b(a.cols(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            b[j] = Field::add(b[j], gf.mul(x[i], a.at(i, j)));
    }
    return b;
}

} // namespace ncs

//
// Project     : tpn
// Module      : matrix
// Description : dense complex matrices, Kronecker products, vectorization,
//               rearrangement, partial trace
//

#ifndef TPN_MATRIX_HPP
#define TPN_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <tpn/errors.hpp>

namespace tpn {

using cplx = std::complex<double>;

// Dense rectangular complex matrix, row-major storage.  The universal
// carrier for everything in this library; all operations on it are pure.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw dimension_error("ComplexMatrix: entry count does not match rows*cols");
    }

    // Row-major nested initializer, e.g. {{1,2},{3,4}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        entries_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw dimension_error("ComplexMatrix: ragged initializer");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    // E_ij with a single 1 at (i, j), 0-indexed.
    static ComplexMatrix matrix_unit(std::size_t rows, std::size_t cols,
                                     std::size_t i, std::size_t j) {
        ComplexMatrix m(rows, cols);
        m(i, j) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> d) {
        return diagonal(std::span<const double>(d.begin(), d.size()));
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix column(std::vector<cplx> v) {
        const std::size_t n = v.size();
        return ComplexMatrix(n, 1, std::move(v));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const cplx> entries() const { return entries_; }
    std::span<cplx> entries() { return entries_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
        require_same_shape(rhs, "operator+=");
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
        require_same_shape(rhs, "operator-=");
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (auto& e : entries_) e *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw dimension_error("matrix product: inner dimensions differ");
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix c(rows_, cols_, entries_);
        for (auto& e : c.entries_) e = std::conj(e);
        return c;
    }

    // Conjugate transpose A*.
    ComplexMatrix adjoint() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = std::conj((*this)(i, j));
        return t;
    }

    cplx trace() const {
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& e : entries_) s += std::norm(e);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, std::abs(e));
        return m;
    }

    bool is_finite() const {
        for (const auto& e : entries_)
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    // ‖A − A*‖_F
    double hermiticity_defect() const {
        if (!is_square()) return frobenius_norm();
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
        return std::sqrt(s);
    }

    // ‖A*A − I‖_F
    double unitarity_defect() const {
        const ComplexMatrix g = adjoint() * (*this);
        double s = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                s += std::norm(g(i, j) - (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
        return std::sqrt(s);
    }

private:
    void require_same_shape(const ComplexMatrix& rhs, const char* op) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw dimension_error(std::string(op) + ": shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

// Factor dimensions (n₁,…,n_m) of a tensor space, each ≥ 2.
struct TensorShape {
    std::vector<std::size_t> dims;

    TensorShape() = default;

    explicit TensorShape(std::vector<std::size_t> d) : dims(std::move(d)) {
        if (dims.empty())
            throw dimension_error("TensorShape: need at least one factor");
        for (std::size_t n : dims)
            if (n < 2) throw dimension_error("TensorShape: factor dimensions must be >= 2");
    }

    TensorShape(std::initializer_list<std::size_t> d)
        : TensorShape(std::vector<std::size_t>(d)) {}

    std::size_t factors() const { return dims.size(); }

    std::size_t total() const {
        return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                               std::multiplies<>());
    }
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx aij = a(ia, ja);
            if (aij == cplx{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    c(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
    return c;
}

inline ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty())
        throw dimension_error("kron_all: empty factor list");
    ComplexMatrix acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = kron(acc, factors[i]);
    return acc;
}

// Column-stacking vectorization: entry (i, j) lands at position j·rows + i.
inline ComplexMatrix vec(const ComplexMatrix& a) {
    ComplexMatrix v(a.rows() * a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            v(j * a.rows() + i, 0) = a(i, j);
    return v;
}

inline ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols)
        throw dimension_error("unvec: vector length does not match rows*cols");
    ComplexMatrix a(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            a(i, j) = v(j * rows + i, 0);
    return a;
}

// Block-to-row rearrangement: view M as p×q blocks of size r×s; the output
// has p·q rows (ordered column-major in the block index) and r·s columns,
// row (i + j·p) being vec(block_ij)ᵀ.  For Kronecker products this gives
// rearrange(kron(A,B)) = vec(A)·vec(B)ᵀ.
inline ComplexMatrix rearrange(const ComplexMatrix& m,
                               std::size_t p, std::size_t q,
                               std::size_t r, std::size_t s) {
    if (m.rows() != p * r || m.cols() != q * s)
        throw dimension_error("rearrange: matrix is not (p*r) x (q*s)");
    ComplexMatrix out(p * q, r * s);
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t i = 0; i < p; ++i) {
            const std::size_t row = i + j * p;
            for (std::size_t js = 0; js < s; ++js)
                for (std::size_t ir = 0; ir < r; ++ir)
                    out(row, js * r + ir) = m(i * r + ir, j * s + js);
        }
    return out;
}

// tr₁: sends A⊗B (A m×m, B n×n) to (tr A)·B; extended linearly.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& m,
                                         std::size_t dim_first, std::size_t dim_second) {
    if (m.rows() != dim_first * dim_second || m.cols() != dim_first * dim_second)
        throw dimension_error("partial_trace_first: matrix is not (mn) x (mn)");
    ComplexMatrix out(dim_second, dim_second);
    for (std::size_t i = 0; i < dim_first; ++i)
        for (std::size_t k = 0; k < dim_second; ++k)
            for (std::size_t l = 0; l < dim_second; ++l)
                out(k, l) += m(i * dim_second + k, i * dim_second + l);
    return out;
}

} // namespace tpn

#endif // TPN_MATRIX_HPP

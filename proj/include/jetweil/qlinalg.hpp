#pragma once

// Small dense exact matrices over a field (Rational or ComplexRational).
// Everything is Gaussian elimination with exact pivots; sizes in this
// library are tiny, so no pivoting strategy beyond "first nonzero".

#include <vector>

#include "rational.hpp"

namespace jetweil {

template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational inverse(const Rational& x) {
        if (is_zero(x)) throw DivisionByNonUnit("matrix pivot is zero");
        return 1 / x;
    }
};

template <>
struct FieldOps<ComplexRational> {
    static ComplexRational zero() { return ComplexRational::zero(); }
    static ComplexRational one() { return ComplexRational::one(); }
    static bool is_zero(const ComplexRational& x) { return x.is_zero(); }
    static ComplexRational inverse(const ComplexRational& x) { return one() / x; }
};

template <class F>
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<F> data;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), data(r * c, FieldOps<F>::zero()) {}

    F& at(size_t r, size_t c) { return data[r * cols + c]; }
    const F& at(size_t r, size_t c) const { return data[r * cols + c]; }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t j = 0; j < n; ++j) m.at(j, j) = FieldOps<F>::one();
        return m;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        Mat r = *this;
        for (size_t j = 0; j < data.size(); ++j) r.data[j] = r.data[j] + o.data[j];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (size_t j = 0; j < data.size(); ++j) r.data[j] = r.data[j] - o.data[j];
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r(rows, o.cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = 0; k < cols; ++k) {
                if (FieldOps<F>::is_zero(at(i, k))) continue;
                for (size_t j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }
    Mat operator*(const F& x) const {
        Mat r = *this;
        for (auto& v : r.data) v = v * x;
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& v : r.data) v = FieldOps<F>::zero() - v;
        return r;
    }
    Mat transpose() const {
        Mat r(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    bool is_zero() const {
        for (const auto& v : data)
            if (!FieldOps<F>::is_zero(v)) return false;
        return true;
    }
    bool is_symmetric() const {
        if (rows != cols) return false;
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = i + 1; j < cols; ++j)
                if (!(at(i, j) == at(j, i))) return false;
        return true;
    }

    // Row echelon in place; returns rank.  Used by rank/kernel/solve below.
    static size_t echelon(Mat& m, std::vector<size_t>* pivot_cols = nullptr) {
        size_t rank = 0;
        for (size_t col = 0; col < m.cols && rank < m.rows; ++col) {
            size_t piv = rank;
            while (piv < m.rows && FieldOps<F>::is_zero(m.at(piv, col))) ++piv;
            if (piv == m.rows) continue;
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.data[rank * m.cols + j], m.data[piv * m.cols + j]);
            F inv = FieldOps<F>::inverse(m.at(rank, col));
            for (size_t j = col; j < m.cols; ++j) m.at(rank, j) = m.at(rank, j) * inv;
            for (size_t i = 0; i < m.rows; ++i) {
                if (i == rank || FieldOps<F>::is_zero(m.at(i, col))) continue;
                F f = m.at(i, col);
                for (size_t j = col; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
            }
            if (pivot_cols) pivot_cols->push_back(col);
            ++rank;
        }
        return rank;
    }

    size_t rank() const {
        Mat m = *this;
        return echelon(m);
    }

    F det() const {
        if (rows != cols) throw Error("determinant of non-square matrix");
        Mat m = *this;
        F d = FieldOps<F>::one();
        for (size_t col = 0; col < m.cols; ++col) {
            size_t piv = col;
            while (piv < m.rows && FieldOps<F>::is_zero(m.at(piv, col))) ++piv;
            if (piv == m.rows) return FieldOps<F>::zero();
            if (piv != col) {
                for (size_t j = 0; j < m.cols; ++j) std::swap(m.data[col * m.cols + j], m.data[piv * m.cols + j]);
                d = FieldOps<F>::zero() - d;
            }
            d = d * m.at(col, col);
            F inv = FieldOps<F>::inverse(m.at(col, col));
            for (size_t i = col + 1; i < m.rows; ++i) {
                if (FieldOps<F>::is_zero(m.at(i, col))) continue;
                F f = m.at(i, col) * inv;
                for (size_t j = col; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
            }
        }
        return d;
    }

    Mat inverse() const {
        if (rows != cols) throw Error("inverse of non-square matrix");
        Mat aug(rows, 2 * cols);
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols + i) = FieldOps<F>::one();
        }
        if (echelon(aug) != rows) throw SingularSubstitution("matrix is singular");
        Mat r(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) r.at(i, j) = aug.at(i, cols + j);
        return r;
    }

    // Basis of the right kernel, one column vector per basis element.
    std::vector<std::vector<F>> kernel_basis() const {
        Mat m = *this;
        std::vector<size_t> pivots;
        echelon(m, &pivots);
        std::vector<bool> is_pivot(cols, false);
        for (size_t c : pivots) is_pivot[c] = true;
        std::vector<std::vector<F>> basis;
        for (size_t free_col = 0; free_col < cols; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<F> v(cols, FieldOps<F>::zero());
            v[free_col] = FieldOps<F>::one();
            for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = FieldOps<F>::zero() - m.at(r, free_col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Solves this * x = b; throws if inconsistent (callers use it on known
    // consistent systems to express vectors in a spanning set).
    std::vector<F> solve(const std::vector<F>& b) const {
        Mat aug(rows, cols + 1);
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols) = b[i];
        }
        std::vector<size_t> pivots;
        echelon(aug, &pivots);
        std::vector<F> x(cols, FieldOps<F>::zero());
        for (size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] == cols) throw Error("inconsistent linear system");
            x[pivots[r]] = aug.at(r, cols);
        }
        // verify (guards against underdetermined misuse)
        for (size_t i = 0; i < rows; ++i) {
            F acc = FieldOps<F>::zero();
            for (size_t j = 0; j < cols; ++j) acc = acc + at(i, j) * x[j];
            if (!(acc == b[i])) throw Error("inconsistent linear system");
        }
        return x;
    }
};

using QMatrix = Mat<Rational>;
using CMatrix = Mat<ComplexRational>;

inline CMatrix complexify(const QMatrix& m) {
    CMatrix r(m.rows, m.cols);
    for (size_t j = 0; j < m.data.size(); ++j) r.data[j] = ComplexRational(m.data[j]);
    return r;
}

inline QMatrix real_part(const CMatrix& m) {
    QMatrix r(m.rows, m.cols);
    for (size_t j = 0; j < m.data.size(); ++j) r.data[j] = m.data[j].re;
    return r;
}

// All principal minors test: symmetric rational M is negative semidefinite
// iff every principal minor of -M is >= 0.
inline bool is_negative_semidefinite(const QMatrix& m) {
    if (!m.is_symmetric()) return false;
    size_t n = m.rows;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
        std::vector<size_t> idx;
        for (size_t j = 0; j < n; ++j)
            if (mask & (size_t{1} << j)) idx.push_back(j);
        QMatrix sub(idx.size(), idx.size());
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) sub.at(a, b) = -m.at(idx[a], idx[b]);
        if (sgn(sub.det()) < 0) return false;
    }
    return true;
}

}  // namespace jetweil

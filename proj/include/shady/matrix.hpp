#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shady/errors.hpp"
#include "shady/rational.hpp"

namespace shady {

using Vector = std::vector<Rational>;

inline Vector make_vector(std::initializer_list<Rational> values) { return Vector(values); }

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    assert(a.size() == b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vector operator+(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator-(const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vector operator*(const Rational& s, const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Vector cross(const Vector& a, const Vector& b) {
    assert(a.size() == 3 && b.size() == 3);
    return Vector{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

inline Rational squared_norm(const Vector& a) { return dot(a, a); }

inline std::string to_string(const Vector& v, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += to_string(v[i]);
    }
    return out;
}

/// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vector>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
        }
        return m;
    }

    static Matrix diagonal(const Vector& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row_span(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    Vector row(std::size_t i) const {
        auto r = row_span(i);
        return Vector(r.begin(), r.end());
    }
    Vector col(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Rational trace() const {
        Rational s = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
        return r;
    }

    friend Matrix operator*(const Rational& s, const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend Vector operator*(const Matrix& a, const Vector& x) {
        if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        Vector r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) r[i] = dot(a.row_span(i), x);
        return r;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

namespace detail {

// Row echelon form in place; returns pivot columns. Exact, first nonzero pivot.
inline std::vector<std::size_t> row_reduce(Matrix& m, Rational* det_sign_product = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    Rational det = 1;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) {
            det = 0;
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
            det = -det;
        }
        det *= m(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    if (det_sign_product) *det_sign_product = pivots.size() == m.rows() ? det : Rational(0);
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix m) { return detail::row_reduce(m).size(); }

inline Rational determinant(Matrix m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    Rational det;
    detail::row_reduce(m, &det);
    return det;
}

inline Rational determinant3(const Vector& a, const Vector& b, const Vector& c) { return dot(a, cross(b, c)); }

/// Exact solution of A x = b for square nonsingular A.
inline Vector solve_linear(const Matrix& a, const Vector& b) {
    if (!a.is_square()) throw std::invalid_argument("solve_linear needs a square matrix");
    if (a.rows() != b.size()) throw std::invalid_argument("right-hand side size mismatch");
    const std::size_t n = a.rows();
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = detail::row_reduce(aug);
    if (pivots.size() < n || pivots.back() >= n) throw SingularMatrix();
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational s = aug(ii, n);
        for (std::size_t j = ii + 1; j < n; ++j) s -= aug(ii, j) * x[j];
        x[ii] = s / aug(ii, ii);
    }
    return x;
}

inline Matrix inverse(const Matrix& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    // Gauss-Jordan.
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && aug(p, c) == 0) ++p;
        if (p == n) throw SingularMatrix();
        if (p != c)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(p, j), aug(c, j));
        Rational inv = 1 / aug(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) aug(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug(i, c) == 0) continue;
            Rational f = aug(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(c, j);
        }
    }
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

struct LdlFactors {
    Matrix lower;     ///< unit lower triangular
    Vector diagonal;  ///< strictly positive
};

/// M = L diag(D) L^T without pivoting. A non-positive pivot means M is not
/// positive definite and is reported as such.
inline LdlFactors ldl_decompose(const Matrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("ldl_decompose needs a symmetric matrix");
    const std::size_t n = m.rows();
    Matrix l = Matrix::identity(n);
    Vector d(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational dj = m(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            if (l(j, k) != 0) dj -= l(j, k) * l(j, k) * d[k];
        }
        if (dj <= 0) throw NotPositiveDefinite(j);
        d[j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                if (l(i, k) != 0 && l(j, k) != 0) s -= l(i, k) * l(j, k) * d[k];
            }
            l(i, j) = s / dj;
        }
    }
    return {std::move(l), std::move(d)};
}

}  // namespace shady

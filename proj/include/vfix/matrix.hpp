#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vfix/error.hpp"
#include "vfix/series.hpp"

namespace vfix {

// Dense matrix over a commutative ring whose elements know their own zero and
// one (FieldElement or Series).  Inversion uses unit pivots, which is exact
// over fields and over local rings such as K[s]/(s^n).
template <class T>
class Matrix {
public:
    Matrix(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, fill)
    {
        if (rows < 1 || cols < 1)
            throw PreconditionError("matrix dimensions must be positive");
    }

    static Matrix zero(int rows, int cols, const T& proto) { return Matrix(rows, cols, zero_like(proto)); }
    static Matrix identity(int n, const T& proto)
    {
        Matrix m = zero(n, n, proto);
        for (int i = 0; i < n; ++i)
            m(i, i) = one_like(proto);
        return m;
    }
    static Matrix scalar(int n, const T& value)
    {
        Matrix m = zero(n, n, value);
        for (int i = 0; i < n; ++i)
            m(i, i) = value;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix operator+(const Matrix& o) const
    {
        check_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k)
            r.e_[k] = e_[k] + o.e_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const
    {
        check_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k)
            r.e_[k] = e_[k] - o.e_[k];
        return r;
    }
    Matrix operator*(const Matrix& o) const
    {
        if (cols_ != o.rows_)
            throw PreconditionError("matrix product shape mismatch");
        Matrix r = zero(rows_, o.cols_, e_.front());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) {
                T acc = zero_like(e_.front());
                for (int k = 0; k < cols_; ++k)
                    acc += (*this)(i, k) * o(k, j);
                r(i, j) = acc;
            }
        return r;
    }
    Matrix scaled(const T& c) const
    {
        Matrix r = *this;
        for (auto& a : r.e_)
            a = a * c;
        return r;
    }
    Matrix pow(std::uint64_t e) const
    {
        Matrix r = identity(rows_, e_.front());
        Matrix b = *this;
        while (e) {
            if (e & 1)
                r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_identity() const { return *this == identity(rows_, e_.front()); }

    // Entrywise map to another ring (twists, embeddings, truncations).
    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))>
    {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> r(rows_, cols_, f(e_.front()));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r(i, j) = f((*this)(i, j));
        return r;
    }

    T determinant() const
    {
        if (!is_square())
            throw PreconditionError("determinant of a non-square matrix");
        return det_minor(std::vector<int>(), 0);
    }

    std::optional<Matrix> inverse() const
    {
        if (!is_square())
            throw PreconditionError("inverse of a non-square matrix");
        const int n = rows_;
        Matrix a = *this;
        Matrix inv = identity(n, e_.front());
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r) {
                if (a(r, col).is_unit()) {
                    piv = r;
                    break;
                }
            }
            if (piv < 0)
                return std::nullopt;
            if (piv != col) {
                for (int j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            }
            const T pi = a(col, col).inverse();
            for (int j = 0; j < n; ++j) {
                a(col, j) = a(col, j) * pi;
                inv(col, j) = inv(col, j) * pi;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || a(r, col).is_zero())
                    continue;
                const T f = a(r, col);
                for (int j = 0; j < n; ++j) {
                    a(r, j) = a(r, j) - f * a(col, j);
                    inv(r, j) = inv(r, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

    bool is_invertible() const { return determinant().is_unit(); }

    const std::vector<T>& entries() const { return e_; }

private:
    void check_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw PreconditionError("matrix shape mismatch");
    }

    // Laplace expansion along row `row` over the columns not in `used`.
    T det_minor(std::vector<int> used, int row) const
    {
        if (row == rows_)
            return one_like(e_.front());
        T acc = zero_like(e_.front());
        for (int c = 0; c < cols_; ++c) {
            bool skip = false;
            for (int u : used)
                skip = skip || u == c;
            if (skip || (*this)(row, c).is_zero())
                continue;
            used.push_back(c);
            // Characteristic 2 only: signs vanish.
            acc += (*this)(row, c) * det_minor(used, row + 1);
            used.pop_back();
        }
        return acc;
    }

    int rows_;
    int cols_;
    std::vector<T> e_;
};

using FieldMatrix = Matrix<FieldElement>;
using SeriesMatrix = Matrix<Series>;

}  // namespace vfix

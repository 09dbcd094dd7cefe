#pragma once

#include <cassert>
#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace obstructk {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const T& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    // Elementary operations used by the normal-form routines.
    void add_row_multiple(std::size_t target, std::size_t source, const T& factor) {
        if (factor == 0) return;
        T* dst = data_.data() + target * cols_;
        const T* src = data_.data() + source * cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (src[c] != 0) dst[c] += factor * src[c];
    }
    void add_col_multiple(std::size_t target, std::size_t source, const T& factor) {
        if (factor == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) {
            const T& s = data_[r * cols_ + source];
            if (s != 0) data_[r * cols_ + target] += factor * s;
        }
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap(data_[r * cols_ + a], data_[r * cols_ + b]);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) data_[r * cols_ + c] = -data_[r * cols_ + c];
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) data_[r * cols_ + c] = -data_[r * cols_ + c];
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) out(i, j) += x * b(k, j);
            }
        return out;
    }

    std::vector<T> operator*(std::span<const T> v) const {
        assert(v.size() == cols_);
        std::vector<T> out(rows_, T(0));
        for (std::size_t r = 0; r < rows_; ++r) {
            const T* row_ptr = data_.data() + r * cols_;
            T acc(0);
            for (std::size_t c = 0; c < cols_; ++c)
                if (row_ptr[c] != 0 && v[c] != 0) acc += row_ptr[c] * v[c];
            out[r] = std::move(acc);
        }
        return out;
    }
    std::vector<T> operator*(const std::vector<T>& v) const { return (*this) * std::span<const T>(v); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << "[";
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
            os << "]\n";
        }
        return os;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Converts entrywise between exact scalar types.
template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
    Matrix<To> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = To(m(r, c));
    return out;
}

}  // namespace obstructk

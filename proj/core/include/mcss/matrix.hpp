#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "mcss/ring.hpp"

namespace mcss {

/// Dense row-major matrix of exact scalars over a fixed ring. Entries are
/// always stored normalized (see Ring::normalize).
class Mat {
public:
    Mat() : ring_(Ring::rationals()) {}
    Mat(Ring ring, std::size_t rows, std::size_t cols);
    /// Builds from nested integer/rational rows; all rows must have equal length.
    Mat(Ring ring, std::initializer_list<std::initializer_list<Scalar>> rows);

    static Mat zero(Ring ring, std::size_t rows, std::size_t cols) { return Mat(ring, rows, cols); }
    static Mat identity(Ring ring, std::size_t n);
    /// Single column.
    static Mat column(Ring ring, const Vec& v);
    /// Columns given as vectors of equal length `rows`.
    static Mat from_columns(Ring ring, std::size_t rows, const std::vector<Vec>& cols);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    /// Normalizes the value before storing.
    void set(std::size_t i, std::size_t j, const Scalar& v) { data_[i * cols_ + j] = ring_.normalize(v); }

    Vec col(std::size_t j) const;
    Vec row(std::size_t i) const;

    bool is_zero() const;
    Mat transpose() const;
    /// Columns listed in `idx`, in that order.
    Mat select_columns(const std::vector<std::size_t>& idx) const;
    Mat select_rows(const std::vector<std::size_t>& idx) const;
    /// [this | other]
    Mat hstack(const Mat& other) const;
    /// [this ; other]
    Mat vstack(const Mat& other) const;
    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void paste(const Mat& block, std::size_t r0, std::size_t c0);
    Mat block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

    /// Reinterprets all entries in another ring (entries must be admissible).
    Mat over(const Ring& ring) const;

    Vec apply(const Vec& x) const;

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Scalar& s) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// "[[1, 0], [0, 1]]"
    std::string str() const;

private:
    Ring ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Vec zero_vec(std::size_t n);
Vec add(const Ring& ring, const Vec& x, const Vec& y);
Vec sub(const Ring& ring, const Vec& x, const Vec& y);
Vec scale(const Ring& ring, const Scalar& s, const Vec& x);
Vec unit_vec(std::size_t n, std::size_t i);
std::string vec_str(const Vec& v);

}  // namespace mcss

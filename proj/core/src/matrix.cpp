#include "mcss/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace mcss {

Mat::Mat(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols)
{
}

Mat::Mat(Ring ring, std::initializer_list<std::initializer_list<Scalar>> rows)
    : ring_(ring), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw Error("ragged matrix literal");
        for (const auto& v : r)
            data_.push_back(ring_.normalize(v));
    }
}

Mat Mat::identity(Ring ring, std::size_t n)
{
    Mat m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i * n + i] = 1;
    return m;
}

Mat Mat::column(Ring ring, const Vec& v)
{
    Mat m(ring, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        m.set(i, 0, v[i]);
    return m;
}

Mat Mat::from_columns(Ring ring, std::size_t rows, const std::vector<Vec>& cols)
{
    Mat m(ring, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw Error("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m.set(i, j, cols[j][i]);
    }
    return m;
}

Vec Mat::col(std::size_t j) const
{
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(std::size_t i) const
{
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

bool Mat::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s == 0; });
}

Mat Mat::transpose() const
{
    Mat t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
}

Mat Mat::select_columns(const std::vector<std::size_t>& idx) const
{
    Mat m(ring_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < idx.size(); ++k)
            m.data_[i * idx.size() + k] = (*this)(i, idx[k]);
    return m;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const
{
    Mat m(ring_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j)
            m.data_[k * cols_ + j] = (*this)(idx[k], j);
    return m;
}

Mat Mat::hstack(const Mat& other) const
{
    if (other.rows_ != rows_)
        throw Error("hstack: row count mismatch");
    Mat m(ring_, rows_, cols_ + other.cols_);
    m.paste(*this, 0, 0);
    m.paste(other, 0, cols_);
    return m;
}

Mat Mat::vstack(const Mat& other) const
{
    if (other.cols_ != cols_)
        throw Error("vstack: column count mismatch");
    Mat m(ring_, rows_ + other.rows_, cols_);
    m.paste(*this, 0, 0);
    m.paste(other, rows_, 0);
    return m;
}

void Mat::paste(const Mat& block, std::size_t r0, std::size_t c0)
{
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
        throw Error("paste: block out of range");
    for (std::size_t i = 0; i < block.rows_; ++i)
        for (std::size_t j = 0; j < block.cols_; ++j)
            data_[(r0 + i) * cols_ + c0 + j] = block(i, j);
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const
{
    if (r0 + nrows > rows_ || c0 + ncols > cols_)
        throw Error("block: out of range");
    Mat m(ring_, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            m.data_[i * ncols + j] = (*this)(r0 + i, c0 + j);
    return m;
}

Mat Mat::over(const Ring& ring) const
{
    Mat m(ring, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] = ring.normalize(data_[k]);
    return m;
}

Vec Mat::apply(const Vec& x) const
{
    if (x.size() != cols_)
        throw Error("apply: length mismatch");
    Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (x[j] != 0 && (*this)(i, j) != 0)
                s += (*this)(i, j) * x[j];
        y[i] = ring_.normalize(s);
    }
    return y;
}

Mat Mat::operator*(const Mat& o) const
{
    if (cols_ != o.rows_)
        throw Error("matrix product: dimension mismatch");
    Mat m(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0)
                    m.data_[i * o.cols_ + j] += a * o(k, j);
        }
    }
    if (ring_.kind() == RingKind::PrimeField)
        for (auto& v : m.data_)
            v = ring_.normalize(v);
    return m;
}

Mat Mat::operator+(const Mat& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix sum: dimension mismatch");
    Mat m(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] = ring_.add(data_[k], o.data_[k]);
    return m;
}

Mat Mat::operator-(const Mat& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("matrix difference: dimension mismatch");
    Mat m(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] = ring_.sub(data_[k], o.data_[k]);
    return m;
}

Mat Mat::operator-() const
{
    Mat m(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] = ring_.neg(data_[k]);
    return m;
}

Mat Mat::scaled(const Scalar& s) const
{
    Mat m(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] = ring_.mul(s, data_[k]);
    return m;
}

bool Mat::operator==(const Mat& o) const
{
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string Mat::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << to_string((*this)(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec add(const Ring& ring, const Vec& x, const Vec& y)
{
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = ring.add(x[i], y[i]);
    return z;
}

Vec sub(const Ring& ring, const Vec& x, const Vec& y)
{
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = ring.sub(x[i], y[i]);
    return z;
}

Vec scale(const Ring& ring, const Scalar& s, const Vec& x)
{
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = ring.mul(s, x[i]);
    return z;
}

Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n);
    v[i] = 1;
    return v;
}

std::string vec_str(const Vec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

}  // namespace mcss

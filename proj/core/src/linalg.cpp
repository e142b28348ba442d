#include "mcss/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace mcss {

namespace {

// ---------------------------------------------------------------------------
// Field elimination, templated over the element arithmetic so that F_p runs on
// machine integers while Q stays exact.

struct RationalOps {
    using T = Scalar;
    T from(const Scalar& s) const { return s; }
    Scalar to(const T& x) const { return x; }
    static bool is_zero(const T& x) { return x == 0; }
    T inv(const T& x) const { return 1 / x; }
    void axpy(T& y, const T& a, const T& x) const { y -= a * x; }  // y -= a x
    void scale(T& y, const T& a) const { y *= a; }
};

struct PrimeOps {
    std::int64_t p;
    using T = std::int64_t;
    T from(const Scalar& s) const { return s.small_num(); }
    Scalar to(const T& x) const { return Scalar(static_cast<long>(x)); }
    static bool is_zero(const T& x) { return x == 0; }
    T inv(T x) const
    {
        T r = 1, e = p - 2;
        while (e) {
            if (e & 1)
                r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    }
    void axpy(T& y, const T& a, const T& x) const { y = ((y - a * x % p) % p + p) % p; }
    void scale(T& y, const T& a) const { y = y * a % p; }
};

template <class T>
struct Dense {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;
    T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class F>
Dense<typename F::T> to_dense(const F& f, const Mat& m)
{
    Dense<typename F::T> d{m.rows(), m.cols(), {}};
    d.a.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            d.a.push_back(f.from(m(i, j)));
    return d;
}

template <class F>
Vec row_of(const F& f, const Dense<typename F::T>& d, std::size_t i)
{
    Vec v(d.cols);
    for (std::size_t j = 0; j < d.cols; ++j)
        v[j] = f.to(d.at(i, j));
    return v;
}

// Reduced row echelon form in place; pivoting on the first nonzero entry of
// each column in column order. Only the first `pivot_cols` columns may hold
// pivots. Returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Dense<typename F::T>& d, std::size_t pivot_cols)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < d.rows; ++c) {
        std::size_t k = r;
        while (k < d.rows && F::is_zero(d.at(k, c)))
            ++k;
        if (k == d.rows)
            continue;
        if (k != r)
            for (std::size_t j = 0; j < d.cols; ++j)
                std::swap(d.at(k, j), d.at(r, j));
        auto inv = f.inv(d.at(r, c));
        for (std::size_t j = c; j < d.cols; ++j)
            f.scale(d.at(r, j), inv);
        for (std::size_t i = 0; i < d.rows; ++i) {
            if (i == r || F::is_zero(d.at(i, c)))
                continue;
            auto factor = d.at(i, c);
            for (std::size_t j = c; j < d.cols; ++j)
                if (!F::is_zero(d.at(r, j)))
                    f.axpy(d.at(i, j), factor, d.at(r, j));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class Fn>
decltype(auto) with_field(const Ring& ring, Fn&& fn)
{
    if (ring.kind() == RingKind::PrimeField)
        return fn(PrimeOps{ring.characteristic()});
    return fn(RationalOps{});
}

// ---------------------------------------------------------------------------
// Integer matrices.

struct ZMat {
    std::size_t rows = 0, cols = 0;
    std::vector<mpz_class> a;

    ZMat() = default;
    ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static ZMat identity(std::size_t n)
    {
        ZMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }
    mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    void swap_rows(std::size_t i, std::size_t k)
    {
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(at(i, j), at(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k)
    {
        for (std::size_t i = 0; i < rows; ++i)
            std::swap(at(i, j), at(i, k));
    }
    // row_i += q row_k
    void add_row(std::size_t i, std::size_t k, const mpz_class& q)
    {
        if (q == 0)
            return;
        for (std::size_t j = 0; j < cols; ++j)
            if (at(k, j) != 0)
                at(i, j) += q * at(k, j);
    }
    // col_j += q col_k
    void add_col(std::size_t j, std::size_t k, const mpz_class& q)
    {
        if (q == 0)
            return;
        for (std::size_t i = 0; i < rows; ++i)
            if (at(i, k) != 0)
                at(i, j) += q * at(i, k);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols; ++j)
            at(i, j) = -at(i, j);
    }
    // (row_i, row_k) <- (s row_i + t row_k, u row_i + v row_k)
    void combine_rows(std::size_t i, std::size_t k, const mpz_class& s, const mpz_class& t,
                      const mpz_class& u, const mpz_class& v)
    {
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class x = at(i, j), y = at(k, j);
            at(i, j) = s * x + t * y;
            at(k, j) = u * x + v * y;
        }
    }
};

ZMat to_z(const Mat& m)
{
    ZMat z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1)
                throw Error("non-integral entry in integer matrix");
            z.at(i, j) = m(i, j).get_num();
        }
    return z;
}

Mat from_z(const ZMat& z)
{
    Mat m(Ring::integers(), z.rows, z.cols);
    for (std::size_t i = 0; i < z.rows; ++i)
        for (std::size_t j = 0; j < z.cols; ++j)
            m.set(i, j, Scalar(z.at(i, j)));
    return m;
}

ZMat transpose(const ZMat& z)
{
    ZMat t(z.cols, z.rows);
    for (std::size_t i = 0; i < z.rows; ++i)
        for (std::size_t j = 0; j < z.cols; ++j)
            t.at(j, i) = z.at(i, j);
    return t;
}

struct RowHermite {
    ZMat H;  // row HNF, nonzero rows first
    ZMat U;  // unimodular, U A = H
    std::vector<std::size_t> pivots;
};

// Row-style Hermite normal form with transform. Pivot columns strictly
// increase, pivots are positive and entries above a pivot lie in [0, pivot).
RowHermite row_hermite(ZMat A, bool with_transform)
{
    RowHermite out;
    ZMat U = with_transform ? ZMat::identity(A.rows) : ZMat();
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
        for (std::size_t i = r + 1; i < A.rows; ++i) {
            if (A.at(i, c) == 0)
                continue;
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), A.at(r, c).get_mpz_t(),
                       A.at(i, c).get_mpz_t());
            mpz_class u = -A.at(i, c) / g, v = A.at(r, c) / g;
            A.combine_rows(r, i, s, t, u, v);
            if (with_transform)
                U.combine_rows(r, i, s, t, u, v);
        }
        if (A.at(r, c) == 0)
            continue;
        if (A.at(r, c) < 0) {
            A.negate_row(r);
            if (with_transform)
                U.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (A.at(i, c) == 0)
                continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A.at(i, c).get_mpz_t(), A.at(r, c).get_mpz_t());
            A.add_row(i, r, -q);
            if (with_transform)
                U.add_row(i, r, -q);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.H = std::move(A);
    out.U = std::move(U);
    return out;
}

// ---------------------------------------------------------------------------

std::pair<Mat, std::vector<std::size_t>> field_span(const Mat& gens)
{
    const Ring& ring = gens.ring();
    return with_field(ring, [&](const auto& f) {
        auto d = to_dense(f, gens.transpose());
        auto piv = rref(f, d, d.cols);
        std::vector<Vec> cols;
        for (std::size_t i = 0; i < piv.size(); ++i)
            cols.push_back(row_of(f, d, i));
        Mat g = Mat::from_columns(ring, gens.rows(), cols);
        return std::pair{g, piv};
    });
}

}  // namespace

// ---------------------------------------------------------------------------

Submodule Submodule::zero(const Ring& ring, std::size_t ambient)
{
    return Submodule(Mat(ring, ambient, 0), {});
}

Submodule Submodule::full(const Ring& ring, std::size_t ambient)
{
    std::vector<std::size_t> piv(ambient);
    for (std::size_t i = 0; i < ambient; ++i)
        piv[i] = i;
    return Submodule(Mat::identity(ring, ambient), piv);
}

std::optional<Vec> Submodule::coords(const Vec& x) const
{
    if (x.size() != ambient())
        throw Error("coords: ambient length mismatch");
    const Ring& R = ring();
    Vec c(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
        Scalar v = x[pivots_[j]];
        if (R.is_field()) {
            c[j] = v;  // reduced echelon: pivot entries are 1, other pivot rows 0
        } else {
            for (std::size_t k = 0; k < j; ++k)
                v -= gens_(pivots_[j], k) * c[k];
            v /= gens_(pivots_[j], j);
            if (v.get_den() != 1)
                return std::nullopt;
            c[j] = v;
        }
    }
    if (gens_.apply(c) != x)
        return std::nullopt;
    return c;
}

bool Submodule::contains(const Submodule& other) const
{
    for (std::size_t j = 0; j < other.rank(); ++j)
        if (!contains(other.gens().col(j)))
            return false;
    return true;
}

Submodule span(const Mat& gens)
{
    if (gens.ring().is_field()) {
        auto [g, piv] = field_span(gens);
        return Submodule(std::move(g), std::move(piv));
    }
    auto h = row_hermite(transpose(to_z(gens)), false);
    ZMat rows(h.pivots.size(), gens.rows());
    for (std::size_t i = 0; i < h.pivots.size(); ++i)
        for (std::size_t j = 0; j < gens.rows(); ++j)
            rows.at(i, j) = h.H.at(i, j);
    return Submodule(from_z(transpose(rows)), h.pivots);
}

Submodule image(const Mat& m) { return span(m); }

Submodule kernel(const Mat& m)
{
    const Ring& ring = m.ring();
    if (ring.is_field()) {
        Mat basis = with_field(ring, [&](const auto& f) {
            auto d = to_dense(f, m);
            auto piv = rref(f, d, d.cols);
            std::vector<bool> is_piv(m.cols(), false);
            for (auto c : piv)
                is_piv[c] = true;
            std::vector<Vec> cols;
            for (std::size_t fc = 0; fc < m.cols(); ++fc) {
                if (is_piv[fc])
                    continue;
                Vec v(m.cols());
                v[fc] = 1;
                for (std::size_t i = 0; i < piv.size(); ++i)
                    v[piv[i]] = ring.neg(f.to(d.at(i, fc)));
                cols.push_back(std::move(v));
            }
            return Mat::from_columns(ring, m.cols(), cols);
        });
        return span(basis);
    }
    auto h = row_hermite(transpose(to_z(m)), true);
    std::size_t rk = h.pivots.size();
    ZMat k(m.cols(), m.cols() - rk);
    for (std::size_t i = rk; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            k.at(j, i - rk) = h.U.at(i, j);
    return span(from_z(k));
}

Submodule sum(const Submodule& a, const Submodule& b)
{
    if (a.ring() != b.ring() || a.ambient() != b.ambient())
        throw Error("sum: incompatible submodules");
    return span(a.gens().hstack(b.gens()));
}

Submodule map_submodule(const Mat& m, const Submodule& s)
{
    return span(m * s.gens());
}

std::optional<Vec> solve(const Mat& m, const Vec& b)
{
    if (b.size() != m.rows())
        throw Error("solve: right-hand side length mismatch");
    const Ring& ring = m.ring();
    if (ring.is_field()) {
        return with_field(ring, [&](const auto& f) -> std::optional<Vec> {
            auto d = to_dense(f, m.hstack(Mat::column(ring, b)));
            auto piv = rref(f, d, d.cols);
            if (!piv.empty() && piv.back() == m.cols())
                return std::nullopt;
            Vec x(m.cols());
            for (std::size_t i = 0; i < piv.size(); ++i)
                x[piv[i]] = f.to(d.at(i, m.cols()));
            return x;
        });
    }
    // U m^T = H, so m U^T = H^T, a column echelon matrix L.
    auto h = row_hermite(transpose(to_z(m)), true);
    std::size_t rk = h.pivots.size();
    std::vector<mpz_class> y(m.cols());
    for (std::size_t j = 0; j < rk; ++j) {
        std::size_t pr = h.pivots[j];
        mpz_class v = b[pr].get_num();
        if (b[pr].get_den() != 1)
            return std::nullopt;
        for (std::size_t k = 0; k < j; ++k)
            v -= h.H.at(k, pr) * y[k];
        if (!mpz_divisible_p(v.get_mpz_t(), h.H.at(j, pr).get_mpz_t()))
            return std::nullopt;
        mpz_divexact(y[j].get_mpz_t(), v.get_mpz_t(), h.H.at(j, pr).get_mpz_t());
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < rk; ++k)
            s += h.H.at(k, i) * y[k];
        if (Scalar(s) != b[i])
            return std::nullopt;
    }
    Vec x(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < rk; ++k)
            s += h.U.at(k, j) * y[k];
        x[j] = s;
    }
    return x;
}

std::size_t rank(const Mat& m)
{
    Ring ring = m.ring().is_field() ? m.ring() : Ring::rationals();
    return with_field(ring, [&](const auto& f) {
        auto d = to_dense(f, m);
        return rref(f, d, d.cols).size();
    });
}

Scalar determinant(const Mat& m)
{
    if (m.rows() != m.cols())
        throw Error("determinant of a non-square matrix");
    Ring ring = m.ring().is_field() ? m.ring() : Ring::rationals();
    return with_field(ring, [&](const auto& f) {
        auto d = to_dense(f, m);
        using T = typename std::decay_t<decltype(f)>::T;
        T det = f.from(Scalar(1));
        std::size_t n = d.rows;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t k = c;
            while (k < n && std::decay_t<decltype(f)>::is_zero(d.at(k, c)))
                ++k;
            if (k == n)
                return Scalar(0);
            if (k != c) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(d.at(k, j), d.at(c, j));
                det = f.from(ring.neg(f.to(det)));
            }
            f.scale(det, d.at(c, c));
            auto inv = f.inv(d.at(c, c));
            for (std::size_t i = c + 1; i < n; ++i) {
                if (std::decay_t<decltype(f)>::is_zero(d.at(i, c)))
                    continue;
                auto factor = d.at(i, c);
                f.scale(factor, inv);
                for (std::size_t j = c; j < n; ++j)
                    f.axpy(d.at(i, j), factor, d.at(c, j));
            }
        }
        return ring.normalize(f.to(det));
    });
}

std::optional<Mat> inverse(const Mat& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    std::size_t n = m.rows();
    const Ring& target = m.ring();
    Ring ring = target.is_field() ? target : Ring::rationals();
    auto inv = with_field(ring, [&](const auto& f) -> std::optional<Mat> {
        auto d = to_dense(f, m.over(ring).hstack(Mat::identity(ring, n)));
        auto piv = rref(f, d, n);
        if (piv.size() != n)
            return std::nullopt;
        Mat r(ring, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r.set(i, j, f.to(d.at(i, n + j)));
        return r;
    });
    if (!inv)
        return std::nullopt;
    if (!target.is_field()) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((*inv)(i, j).get_den() != 1)
                    return std::nullopt;
        return inv->over(target);
    }
    return inv;
}

SmithForm snf(const Mat& m)
{
    if (m.ring().is_field())
        throw Error("snf: integer matrix expected");
    ZMat A = to_z(m);
    ZMat U = ZMat::identity(A.rows), V = ZMat::identity(A.cols);
    const std::size_t lim = std::min(A.rows, A.cols);

    auto move_min_to = [&](std::size_t t, bool only_cross) {
        std::size_t bi = A.rows, bj = A.cols;
        mpz_class best;
        auto consider = [&](std::size_t i, std::size_t j) {
            if (A.at(i, j) == 0)
                return;
            mpz_class v = abs(A.at(i, j));
            if (bi == A.rows || v < best) {
                best = v;
                bi = i;
                bj = j;
            }
        };
        if (only_cross) {
            for (std::size_t i = t; i < A.rows; ++i)
                consider(i, t);
            for (std::size_t j = t + 1; j < A.cols; ++j)
                consider(t, j);
        } else {
            for (std::size_t i = t; i < A.rows; ++i)
                for (std::size_t j = t; j < A.cols; ++j)
                    consider(i, j);
        }
        if (bi == A.rows)
            return false;
        if (bi != t) {
            A.swap_rows(bi, t);
            U.swap_rows(bi, t);
        }
        if (bj != t) {
            A.swap_cols(bj, t);
            V.swap_cols(bj, t);
        }
        return true;
    };

    for (std::size_t t = 0; t < lim; ++t) {
        if (!move_min_to(t, false))
            break;
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < A.rows; ++i) {
                if (A.at(i, t) == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A.at(i, t).get_mpz_t(), A.at(t, t).get_mpz_t());
                A.add_row(i, t, -q);
                U.add_row(i, t, -q);
                dirty = dirty || A.at(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < A.cols; ++j) {
                if (A.at(t, j) == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A.at(t, j).get_mpz_t(), A.at(t, t).get_mpz_t());
                A.add_col(j, t, -q);
                V.add_col(j, t, -q);
                dirty = dirty || A.at(t, j) != 0;
            }
            if (dirty) {
                move_min_to(t, true);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < A.rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < A.cols && !fixed; ++j)
                    if (!mpz_divisible_p(A.at(i, j).get_mpz_t(), A.at(t, t).get_mpz_t())) {
                        A.add_row(t, i, 1);
                        U.add_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
        if (A.at(t, t) < 0) {
            A.negate_row(t);
            U.negate_row(t);
        }
    }
    return SmithForm{from_z(U), from_z(A), from_z(V)};
}

// ---------------------------------------------------------------------------

std::size_t Quotient::free_rank() const
{
    return static_cast<std::size_t>(std::count(orders_.begin(), orders_.end(), 0));
}

mpz_class Quotient::torsion_order() const
{
    mpz_class o = 1;
    for (const auto& d : orders_)
        if (d != 0)
            o *= d;
    return o;
}

Vec Quotient::normalize(Vec y) const
{
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = ring().normalize(y[i]);
        if (i < orders_.size() && orders_[i] != 0) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), y[i].get_num().get_mpz_t(), orders_[i].get_mpz_t());
            y[i] = r;
        }
    }
    return y;
}

Vec Quotient::reduce(const Vec& x) const
{
    auto c = numerator_.coords(x);
    if (!c)
        throw Error("reduce: element " + vec_str(x) + " is not in the numerator submodule");
    return normalize(coord_map_.apply(*c));
}

std::string describe_orders(const Ring& ring, const std::vector<mpz_class>& orders)
{
    if (ring.is_field())
        return std::to_string(orders.size());
    if (orders.empty())
        return "0";
    std::string s;
    std::size_t free = 0;
    for (const auto& d : orders) {
        if (d == 0) {
            ++free;
            continue;
        }
        s += (s.empty() ? "" : " ⊕ ") + std::string("Z/") + d.get_str();
    }
    if (free)
        s += (s.empty() ? "" : " ⊕ ") + std::string("Z^") + std::to_string(free);
    return s;
}

std::string Quotient::describe() const { return describe_orders(ring(), orders_); }

Quotient subquotient(const Submodule& z, const Submodule& b)
{
    if (z.ring() != b.ring() || z.ambient() != b.ambient())
        throw Error("subquotient: incompatible submodules");
    const Ring& ring = z.ring();
    const std::size_t k = z.rank();

    std::vector<Vec> bz;
    for (std::size_t j = 0; j < b.rank(); ++j) {
        auto c = z.coords(b.gens().col(j));
        if (!c)
            throw Error("subquotient: denominator generator " + vec_str(b.gens().col(j)) +
                        " is not contained in the numerator");
        bz.push_back(std::move(*c));
    }
    Mat B = Mat::from_columns(ring, k, bz);

    Quotient q;
    q.numerator_ = z;
    q.denominator_ = b;
    if (ring.is_field()) {
        // Row-reduce the relations; non-pivot coordinates index the quotient.
        Submodule rel = span(B);
        std::vector<bool> is_piv(k, false);
        for (auto p : rel.pivots())
            is_piv[p] = true;
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < k; ++i)
            if (!is_piv[i])
                free.push_back(i);
        Mat T(ring, free.size(), k);
        for (std::size_t a = 0; a < free.size(); ++a)
            T.set(a, free[a], 1);
        for (std::size_t g = 0; g < rel.rank(); ++g)
            for (std::size_t a = 0; a < free.size(); ++a)
                T.set(a, rel.pivots()[g], ring.neg(rel.gens()(free[a], g)));
        q.coord_map_ = std::move(T);
        q.lifts_ = z.gens().select_columns(free);
        q.orders_.assign(free.size(), 0);
        return q;
    }

    SmithForm s = snf(B);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i) {
        Scalar d = i < B.cols() ? s.D(i, i) : Scalar(0);
        if (d == 1)
            continue;
        keep.push_back(i);
        q.orders_.push_back(d.get_num());
    }
    auto uinv = inverse(s.U);
    if (!uinv)
        throw Error("subquotient: Smith transform is not unimodular");
    q.coord_map_ = s.U.select_rows(keep);
    q.lifts_ = z.gens() * uinv->select_columns(keep);
    return q;
}

}  // namespace mcss

#include "mcss/scalar.hpp"

#include <numeric>

#include "mcss/ring.hpp"

namespace mcss {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b)
{
    while (b) {
        if ((a >> 64) == 0 && (b >> 64) == 0)
            return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class wide_to_mpz(__int128 v)
{
    const bool neg = v < 0;
    u128 u = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Scalar::Scalar(const mpz_class& v)
{
    if (v.fits_slong_p()) {
        const long s = v.get_si();
        if (s >= -kLimit && s <= kLimit) {
            n_ = s;
            return;
        }
    }
    big_ = std::make_shared<const mpq_class>(v);
}

Scalar::Scalar(const mpq_class& v)
{
    mpq_class c(v);
    c.canonicalize();
    const mpz_class& num = c.get_num();
    const mpz_class& den = c.get_den();
    if (num.fits_slong_p() && den.fits_slong_p()) {
        const long a = num.get_si(), b = den.get_si();
        if (a >= -kLimit && a <= kLimit && b <= kLimit) {
            n_ = a;
            d_ = b;
            return;
        }
    }
    big_ = std::make_shared<const mpq_class>(std::move(c));
}

mpq_class Scalar::to_mpq() const
{
    if (big_)
        return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

std::string Scalar::str() const
{
    if (!big_)
        return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    if (big_->get_den() == 1)
        return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

Scalar Scalar::from_wide(__int128 n, __int128 d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (d != 1) {
        u128 g = gcd128(n < 0 ? -static_cast<u128>(n) : static_cast<u128>(n), static_cast<u128>(d));
        if (g > 1) {
            n /= static_cast<__int128>(g);
            d /= static_cast<__int128>(g);
        }
    }
    Scalar s;
    if (n >= -kLimit && n <= kLimit && d <= kLimit) {
        s.n_ = static_cast<std::int64_t>(n);
        s.d_ = static_cast<std::int64_t>(d);
        return s;
    }
    s.big_ = std::make_shared<const mpq_class>(wide_to_mpz(n), wide_to_mpz(d));
    return s;
}

Scalar operator+(const Scalar& a, const Scalar& b)
{
    if (!a.big_ && !b.big_) {
        if (a.d_ == 1 && b.d_ == 1)
            return Scalar::from_wide(static_cast<__int128>(a.n_) + b.n_, 1);
        return Scalar::from_wide(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                                 static_cast<__int128>(a.d_) * b.d_);
    }
    return Scalar(mpq_class(a.to_mpq() + b.to_mpq()));
}

Scalar operator-(const Scalar& a, const Scalar& b)
{
    if (!a.big_ && !b.big_) {
        if (a.d_ == 1 && b.d_ == 1)
            return Scalar::from_wide(static_cast<__int128>(a.n_) - b.n_, 1);
        return Scalar::from_wide(static_cast<__int128>(a.n_) * b.d_ - static_cast<__int128>(b.n_) * a.d_,
                                 static_cast<__int128>(a.d_) * b.d_);
    }
    return Scalar(mpq_class(a.to_mpq() - b.to_mpq()));
}

Scalar operator*(const Scalar& a, const Scalar& b)
{
    if (!a.big_ && !b.big_)
        return Scalar::from_wide(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
    return Scalar(mpq_class(a.to_mpq() * b.to_mpq()));
}

Scalar operator/(const Scalar& a, const Scalar& b)
{
    if (b.sign() == 0)
        throw Error("division by zero");
    if (!a.big_ && !b.big_)
        return Scalar::from_wide(static_cast<__int128>(a.n_) * b.d_, static_cast<__int128>(a.d_) * b.n_);
    return Scalar(mpq_class(a.to_mpq() / b.to_mpq()));
}

Scalar Scalar::operator-() const
{
    if (!big_) {
        Scalar s;
        s.n_ = -n_;
        s.d_ = d_;
        return s;
    }
    return Scalar(mpq_class(-*big_));
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b)
{
    if (!a.big_ && !b.big_) {
        const __int128 l = static_cast<__int128>(a.n_) * b.d_;
        const __int128 r = static_cast<__int128>(b.n_) * a.d_;
        return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

}  // namespace mcss

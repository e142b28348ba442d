#include "mcss/ring.hpp"

#include <algorithm>

namespace mcss {

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

Ring Ring::prime_field(std::int64_t p)
{
    if (p >= (std::int64_t{1} << 31) || !is_prime(p))
        throw Error("characteristic " + std::to_string(p) + " is not a prime below 2^31");
    return Ring(RingKind::PrimeField, p);
}

namespace {

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::int64_t mod_small(std::int64_t a, std::int64_t p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p)
{
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1) {
        std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return mod_small(s0, p);
}

}  // namespace

bool Ring::admits(const Scalar& x) const
{
    switch (kind_) {
    case RingKind::Rationals:
        return true;
    case RingKind::Integers:
        return x.is_integer();
    case RingKind::PrimeField:
        if (x.is_small())
            return x.small_den() % p_ != 0;
        return mod_nonneg(x.get_den(), mpz_class(static_cast<long>(p_))) != 0;
    }
    return false;
}

Scalar Ring::normalize(const Scalar& x) const
{
    switch (kind_) {
    case RingKind::Rationals:
        return x;
    case RingKind::Integers:
        if (!x.is_integer())
            throw Error("non-integral value " + to_string(x) + " over Z");
        return x;
    case RingKind::PrimeField: {
        std::int64_t num, den;
        if (x.is_small()) {
            num = mod_small(x.small_num(), p_);
            den = mod_small(x.small_den(), p_);
        } else {
            mpz_class p(static_cast<long>(p_));
            num = mod_nonneg(x.get_num(), p).get_si();
            den = mod_nonneg(x.get_den(), p).get_si();
        }
        if (den == 0)
            throw Error("denominator of " + to_string(x) + " vanishes mod " + std::to_string(p_));
        if (den == 1)
            return Scalar(num);
        return Scalar(num * inv_mod(den, p_) % p_);
    }
    }
    return x;
}

Scalar Ring::add(const Scalar& x, const Scalar& y) const
{
    if (kind_ == RingKind::PrimeField) {
        std::int64_t s = x.small_num() + y.small_num();
        return Scalar(s >= p_ ? s - p_ : s);
    }
    return x + y;
}

Scalar Ring::sub(const Scalar& x, const Scalar& y) const
{
    if (kind_ == RingKind::PrimeField) {
        std::int64_t s = x.small_num() - y.small_num();
        return Scalar(s < 0 ? s + p_ : s);
    }
    return x - y;
}

Scalar Ring::mul(const Scalar& x, const Scalar& y) const
{
    if (kind_ == RingKind::PrimeField)
        return Scalar(x.small_num() * y.small_num() % p_);
    return x * y;
}

Scalar Ring::neg(const Scalar& x) const
{
    if (kind_ == RingKind::PrimeField)
        return x.small_num() == 0 ? x : Scalar(p_ - x.small_num());
    return -x;
}

Scalar Ring::inv(const Scalar& x) const
{
    if (x == 0)
        throw Error("inverse of zero");
    switch (kind_) {
    case RingKind::Rationals:
        return 1 / x;
    case RingKind::Integers:
        if (x == 1 || x == -1)
            return x;
        throw Error("non-unit " + to_string(x) + " has no inverse over Z");
    case RingKind::PrimeField:
        return Scalar(inv_mod(x.small_num(), p_));
    }
    return x;
}

std::string Ring::name() const
{
    switch (kind_) {
    case RingKind::Rationals:
        return "Q";
    case RingKind::Integers:
        return "Z";
    case RingKind::PrimeField:
        return "F " + std::to_string(p_);
    }
    return "?";
}

std::string to_string(const Scalar& x)
{
    return x.str();
}

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

}  // namespace mcss

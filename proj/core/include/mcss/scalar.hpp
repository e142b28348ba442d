#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace mcss {

/// Exact rational number. Values whose reduced numerator and denominator fit
/// in 62 bits are stored inline; anything larger moves to a shared, immutable
/// GMP rational. Always kept reduced with a positive denominator, so equal
/// values have equal representations.
class Scalar {
public:
    Scalar() = default;

    template <std::integral I>
    Scalar(I v)
    {
        if constexpr (std::is_signed_v<I>) {
            if (v >= -kLimit && v <= kLimit) {
                n_ = static_cast<std::int64_t>(v);
                return;
            }
            *this = Scalar(mpz_class(static_cast<long>(v)));
        } else {
            if (v <= static_cast<std::uint64_t>(kLimit)) {
                n_ = static_cast<std::int64_t>(v);
                return;
            }
            *this = Scalar(mpz_class(static_cast<unsigned long>(v)));
        }
    }
    Scalar(const mpz_class& v);
    Scalar(const mpq_class& v);

    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    /// True when stored inline.
    bool is_small() const { return !big_; }
    /// Numerator of an inline value; only meaningful when is_small().
    std::int64_t small_num() const { return n_; }
    std::int64_t small_den() const { return d_; }

    mpz_class get_num() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
    mpz_class get_den() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }
    mpq_class to_mpq() const;
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }

    /// Integer or "n/d".
    std::string str() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    /// Throws mcss::Error on division by zero.
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (!a.big_ && !b.big_)
            return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_)
            return *a.big_ == *b.big_;
        return false;  // representations are canonical
    }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

private:
    static constexpr std::int64_t kLimit = (std::int64_t{1} << 62) - 1;

    static Scalar from_wide(__int128 n, __int128 d);

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

}  // namespace mcss

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcss/scalar.hpp"

namespace mcss {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every ring stores its elements as reduced fractions: integers have
/// denominator 1, residues mod p are kept in [0, p).
using Vec = std::vector<Scalar>;

enum class RingKind { Rationals, PrimeField, Integers };

/// Ground ring: Q, F_p (p prime, p < 2^31) or Z.
class Ring {
public:
    static Ring rationals() { return Ring(RingKind::Rationals, 0); }
    static Ring integers() { return Ring(RingKind::Integers, 0); }
    /// Throws Error if p is not a prime below 2^31.
    static Ring prime_field(std::int64_t p);

    RingKind kind() const { return kind_; }
    std::int64_t characteristic() const { return p_; }
    bool is_field() const { return kind_ != RingKind::Integers; }

    /// Maps an arbitrary rational into the ring's canonical representative.
    /// Over Z the input must be an integer; over F_p the denominator must be
    /// invertible mod p.
    Scalar normalize(const Scalar& x) const;
    /// True if normalize(x) would succeed.
    bool admits(const Scalar& x) const;

    Scalar add(const Scalar& x, const Scalar& y) const;
    Scalar sub(const Scalar& x, const Scalar& y) const;
    Scalar mul(const Scalar& x, const Scalar& y) const;
    Scalar neg(const Scalar& x) const;
    /// Field inverse; throws on zero or over Z for non-units.
    Scalar inv(const Scalar& x) const;

    /// "Q", "F <p>" or "Z" (the MCX spelling).
    std::string name() const;

    bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

private:
    Ring(RingKind k, std::int64_t p) : kind_(k), p_(p) {}

    RingKind kind_;
    std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Renders a scalar as an integer or "n/d".
std::string to_string(const Scalar& x);

bool is_zero(const Vec& v);

}  // namespace mcss

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcss/matrix.hpp"

namespace mcss {

/// A submodule of a free ambient module R^n, held in canonical form: over a
/// field the generators are the reduced column echelon basis; over Z they are
/// the column Hermite normal form (pivot rows strictly increasing, positive
/// pivots, entries left of a pivot reduced into [0, pivot)).
class Submodule {
public:
    Submodule() = default;

    static Submodule zero(const Ring& ring, std::size_t ambient);
    static Submodule full(const Ring& ring, std::size_t ambient);

    const Ring& ring() const { return gens_.ring(); }
    std::size_t ambient() const { return gens_.rows(); }
    std::size_t rank() const { return gens_.cols(); }
    /// Columns are the canonical generators.
    const Mat& gens() const { return gens_; }
    /// Pivot row of each generator.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Coordinates of x in the canonical generators, if x lies in the submodule.
    std::optional<Vec> coords(const Vec& x) const;
    bool contains(const Vec& x) const { return coords(x).has_value(); }
    bool contains(const Submodule& other) const;

    bool operator==(const Submodule& o) const { return gens_ == o.gens_; }

private:
    friend Submodule span(const Mat& gens);
    Submodule(Mat gens, std::vector<std::size_t> pivots) : gens_(std::move(gens)), pivots_(std::move(pivots)) {}

    Mat gens_;
    std::vector<std::size_t> pivots_;
};

/// Canonical presentation of the column span (field) / column lattice (Z).
Submodule span(const Mat& gens);
/// Alias of span, named after the map whose image is taken.
Submodule image(const Mat& m);
/// {x : m x = 0}; over Z the full integer kernel lattice.
Submodule kernel(const Mat& m);
/// Smallest submodule containing both.
Submodule sum(const Submodule& a, const Submodule& b);
/// Image of a submodule of R^n under the linear map m: R^n -> R^k.
Submodule map_submodule(const Mat& m, const Submodule& s);

/// Some x with m x = b if one exists over the ring (integer solution over Z).
/// The result is deterministic: free variables are set to zero in the field
/// case, HNF back-substitution is used over Z.
std::optional<Vec> solve(const Mat& m, const Vec& b);

std::size_t rank(const Mat& m);
Scalar determinant(const Mat& m);
/// Inverse over the ring (over Z only for unimodular matrices).
std::optional<Mat> inverse(const Mat& m);

struct SmithForm {
    Mat U;  ///< unimodular, rows x rows
    Mat D;  ///< diagonal, d_i | d_{i+1}, d_i >= 0
    Mat V;  ///< unimodular, cols x cols
};

/// Smith normal form of an integer matrix: U m V = D.
SmithForm snf(const Mat& m);

/// Presentation of a subquotient Z/B of a free module, with chosen generators.
///
/// Each generator has an order: 0 for a free summand (and for every generator
/// over a field), otherwise the invariant factor d > 1 of a cyclic summand
/// Z/d. Torsion generators come first, ordered along the divisibility chain.
class Quotient {
public:
    Quotient() = default;

    const Ring& ring() const { return numerator_.ring(); }
    const Submodule& numerator() const { return numerator_; }
    const Submodule& denominator() const { return denominator_; }
    std::size_t size() const { return orders_.size(); }
    bool trivial() const { return orders_.empty(); }
    const std::vector<mpz_class>& orders() const { return orders_; }
    std::size_t free_rank() const;
    /// Product of the finite orders.
    mpz_class torsion_order() const;

    /// Ambient-module representatives of the generators (ambient x size).
    const Mat& lifts() const { return lifts_; }
    Vec lift(std::size_t j) const { return lifts_.col(j); }

    /// Coordinates of the class of x. Throws Error if x is not in the numerator.
    Vec reduce(const Vec& x) const;
    /// Reduces coordinates modulo the generator orders.
    Vec normalize(Vec y) const;

    /// "Z/2 ⊕ Z/4 ⊕ Z^1" over Z, "0" when trivial; over a field the dimension.
    std::string describe() const;

private:
    friend Quotient subquotient(const Submodule& z, const Submodule& b);

    Submodule numerator_;
    Submodule denominator_;
    std::vector<mpz_class> orders_;
    Mat lifts_;
    Mat coord_map_;  // size x rank(numerator)
};

/// Z/B for B contained in Z. Throws Error if some generator of B is not in Z.
Quotient subquotient(const Submodule& z, const Submodule& b);

/// Describes a list of orders the way Quotient::describe does.
std::string describe_orders(const Ring& ring, const std::vector<mpz_class>& orders);

}  // namespace mcss

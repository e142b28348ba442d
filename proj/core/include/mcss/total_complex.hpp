#pragma once

#include <map>
#include <vector>

#include "mcss/multicomplex.hpp"

namespace mcss {

/// One basis vector of Tot_n: local generator `local` of C_{bd}.
struct BasisEntry {
    Bidegree bd;
    int local = 0;
};

/// Element of Tot_n in coordinates of the ordered basis.
struct FilteredVector {
    int n = 0;
    Vec coords;
};

/// Tot C with the column filtration. Since the support is finite, product and
/// sum totalizations agree. Each basis of Tot_n is ordered by descending first
/// index a, then local index, so F_p is always a suffix of the basis.
class TotalComplex {
public:
    TotalComplex() = default;
    explicit TotalComplex(const Multicomplex& c);

    const Ring& ring() const { return ring_; }
    int min_degree() const { return min_n_; }
    int max_degree() const { return max_n_; }

    std::size_t dim(int n) const;
    /// Empty for degrees outside the support.
    const std::vector<BasisEntry>& basis(int n) const;
    /// d_n: Tot_n -> Tot_{n-1}, dim(n-1) x dim(n).
    Mat differential(int n) const;
    /// Filtration index of each basis vector of Tot_n.
    std::vector<int> filtration(int n) const;

    /// Indices of the basis vectors of Tot_n with a <= p (a suffix).
    std::vector<std::size_t> filtration_basis(int n, int p) const;
    /// Position of the first basis vector with a <= p; dim(n) if none.
    std::size_t filtration_start(int n, int p) const;

    /// (x)_a: keeps only the coordinates in column a.
    FilteredVector project(const FilteredVector& x, int a) const;
    /// Coordinates of (x)_a in the local basis of C_{a, n-a}.
    Vec component(const FilteredVector& x, int a) const;
    /// Places a local vector of C_{bd} into Tot_{a+b}.
    FilteredVector embed(Bidegree bd, const Vec& local) const;
    /// Offset of C_{a, n-a} inside the basis of Tot_n; dim(n) if absent.
    std::size_t offset(int n, int a) const;

    FilteredVector apply_differential(const FilteredVector& x) const;
    /// d_{n-1} d_n = 0 for every n.
    bool squares_to_zero() const;

private:
    struct Degree {
        std::vector<BasisEntry> basis;
        std::map<int, std::size_t> offsets;  // a -> first index
        Mat d;                               // to degree n-1
    };
    const Degree* find(int n) const;

    Ring ring_ = Ring::rationals();
    std::map<int, Degree> degrees_;
    int min_n_ = 0;
    int max_n_ = -1;
};

/// Assembles Tot C and checks d^2 = 0; throws Error for an invalid multicomplex.
TotalComplex totalize(const Multicomplex& c);

}  // namespace mcss

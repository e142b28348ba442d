#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mcss/linalg.hpp"
#include "mcss/multicomplex.hpp"

namespace mcss {

/// Witnesses z_{p-1}, ..., z_{p-r+1} for x in C_{p,q}: z[j-1] lies in
/// C_{p-j,q+j}, and together with x they satisfy
///   d_0 x = 0,   d_n x = sum_{i=0}^{n-1} d_i z_{p-n+i}   (1 <= n <= r-1).
struct WitnessTuple {
    int r = 0;
    Bidegree base;
    std::vector<Vec> z;

    const Vec& at(int j) const { return z[static_cast<std::size_t>(j - 1)]; }
};

/// Co-witnesses c_p, ..., c_{p+r-1}, c[k] in C_{p+k,q-k+1}, describing
///   x = sum_k d_k c_{p+k}   subject to   0 = sum_{k=l}^{r-1} d_{k-l} c_{p+k}  (1 <= l <= r-1).
struct CoWitnessTuple {
    int r = 0;
    Bidegree base;
    std::vector<Vec> c;
};

/// E_r^{p,q} = Z_r / B_r inside C_{p,q}.
struct PageEntry {
    int r = 0;
    Bidegree cell;
    Submodule zr;
    Submodule br;
    Quotient quot;
};

/// Matrix of Delta_r: E_r^{p,q} -> E_r^{p-r,q+r-1} in the chosen generators.
struct PageDifferential {
    int r = 0;
    Bidegree source;
    Bidegree target;
    Mat matrix;
};

/// Elements of C_{p,q} that admit witnesses up to page r (r >= 1).
Submodule compute_zr(const Multicomplex& c, int r, Bidegree cell);
/// Elements of C_{p,q} of the form sum_k d_k c_{p+k} with constrained co-witnesses (r >= 1).
Submodule compute_br(const Multicomplex& c, int r, Bidegree cell);

/// Deterministic witnesses for x in Z_r. A nonzero `shuffle` permutes the
/// unknowns before the canonical solve, yielding a (generally) different
/// particular solution. Throws Error if x is not in Z_r.
WitnessTuple witness_for(const Multicomplex& c, int r, Bidegree cell, const Vec& x, std::uint64_t shuffle = 0);

/// True if (x, w) satisfies the cycle conditions above.
bool satisfies_cycle_conditions(const Multicomplex& c, const Vec& x, const WitnessTuple& w);
/// True if the co-witness constraints hold.
bool satisfies_boundary_constraints(const Multicomplex& c, const CoWitnessTuple& cw);
/// x = sum_k d_k c_{p+k}.
Vec boundary_value(const Multicomplex& c, const CoWitnessTuple& cw);
/// Kernel of the co-witness constraint system, as co-witness tuples.
std::vector<CoWitnessTuple> boundary_preimages(const Multicomplex& c, int r, Bidegree cell);

/// Witnesses of a boundary from its co-witnesses:
///   z_{p-j} = - sum_{i=0}^{r-1} d_{j+i} c_{p+i}.
/// Throws Error if cw violates its constraints, or if the result fails the
/// cycle conditions.
WitnessTuple boundary_witness(const Multicomplex& c, const CoWitnessTuple& cw);

/// E_0 entry: Z_0 = C_{p,q}, B_0 = 0.
PageEntry page0_entry(const Multicomplex& c, Bidegree cell);
/// E_r^{p,q}; r = 0 delegates to page0_entry. Throws Error if B_r is not in Z_r.
PageEntry page_entry(const Multicomplex& c, int r, Bidegree cell);

/// Delta_r([x]) = [d_r x - sum_{i=1}^{r-1} d_i z_{p-r+i}] on the generators of
/// `source`, reduced in `target`. For r = 0 this is d_0. Throws Error if the
/// value leaves Z_r of the target (a well-definedness breach).
PageDifferential delta_r(const Multicomplex& c, const PageEntry& source, const PageEntry& target,
                         std::uint64_t shuffle = 0);
PageDifferential delta_r(const Multicomplex& c, int r, Bidegree cell);

/// E_0 entry together with Delta_0 = d_0.
std::pair<PageEntry, PageDifferential> page0(const Multicomplex& c, Bidegree cell);

/// All entries over the support together with every differential between
/// nonzero entries.
struct Page {
    int r = 0;
    Ring ring = Ring::rationals();
    std::map<Bidegree, PageEntry> entries;
    std::vector<PageDifferential> differentials;

    /// Zero entry if the cell is outside the support.
    std::size_t size(Bidegree cell) const;
    const PageEntry* find(Bidegree cell) const;
    const PageDifferential* differential_from(Bidegree cell) const;
    const PageDifferential* differential_into(Bidegree cell) const;
    /// Sum of entry sizes (dimension over a field).
    std::size_t total_size() const;
};

Page full_page(const Multicomplex& c, int r);
/// (max a - min a) + 2: Z_r and B_r no longer change from this page on.
int stabilization_bound(const Multicomplex& c);
/// E_infinity = full_page at the stabilization bound; verifies that the next
/// page agrees and throws Error otherwise.
Page einf(const Multicomplex& c);

/// Homology of a page at a cell: ker(out) / (im(in) + own relations), where
/// `in` maps into the cell and `out` leaves it for `out_target`. Either map
/// may be null (zero). Returns the invariant orders (as Quotient::orders).
std::vector<mpz_class> page_homology(const PageEntry& cell, const PageDifferential* in, const PageDifferential* out,
                                     const PageEntry* out_target);

/// True if Delta maps each generator of order o to an element killed by o.
bool respects_torsion(const PageDifferential& d, const PageEntry& source, const PageEntry& target);

}  // namespace mcss

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcss/linalg.hpp"
#include "mcss/pages.hpp"
#include "mcss/total_complex.hpp"

namespace mcss {

/// E_r^p in total degree n of the filtered complex Tot C, computed from
///   ZZ_r^p = F_p D ∩ d^{-1}(F_{p-r} D),
///   BB_0^p = ZZ_0^{p-1},  BB_r^p = ZZ_{r-1}^{p-1} + d ZZ_{r-1}^{p+r-1}  (r >= 1).
struct DeligneEntry {
    int r = 0;
    int p = 0;
    int n = 0;
    Submodule zz;
    Submodule bb;
    Quotient quot;
};

/// ZZ_r^p inside Tot_n.
Submodule deligne_cycles(const TotalComplex& t, int r, int p, int n);
DeligneEntry deligne_entry(const TotalComplex& t, int r, int p, int n);
/// Matrix of [x] -> [dx] from `source` to `target` = entry (r, p-r, n-1).
Mat deligne_delta(const TotalComplex& t, const DeligneEntry& source, const DeligneEntry& target);

/// [x]_r -> [(x)_p] into the column subquotient at (p, n-p). Throws Error
/// unless x lies in ZZ_r.
Vec psi(const TotalComplex& t, const DeligneEntry& d, const PageEntry& e, const FilteredVector& x);
Vec psi(const Multicomplex& c, int r, int p, const FilteredVector& x);

/// x - z_{p-1} - ... - z_{p-r+1} in Tot_{p+q}, with the canonical witnesses of
/// x. Throws Error if x is not in Z_r or if the lift fails d(lift) in F_{p-r}.
FilteredVector lift_to_total(const Multicomplex& c, const TotalComplex& t, int r, Bidegree cell, const Vec& x);

struct CompareFailure {
    int r = 0;
    Bidegree cell;
    std::string what;
};

struct CompareReport {
    int max_r = 0;
    std::size_t cells_checked = 0;
    std::vector<CompareFailure> failures;

    bool ok() const { return failures.empty(); }
};

struct CompareOptions {
    /// Pages 0..max_r; negative means the stabilization bound.
    int max_r = -1;
    /// Test hook applied to every direct differential before the comparison.
    std::function<void(PageDifferential&)> tamper;
    /// Optional full_page(c, r) for r = 0, 1, ...; used instead of recomputing.
    const std::vector<Page>* pages = nullptr;
};

/// Cross-checks the direct pages against the filtered-complex pages: equal
/// invariants per cell, psi bijective, psi(lift(x)) = [x], and
/// psi o delta_r = Delta_r o psi on every generator.
CompareReport compare(const Multicomplex& c, const CompareOptions& options = {});

/// Homology of Tot in one degree: orders as in Quotient::orders.
struct HomologyGroup {
    int n = 0;
    Ring ring = Ring::rationals();
    std::vector<mpz_class> orders;

    std::size_t free_rank() const;
    mpz_class torsion_order() const;
    std::string describe() const { return describe_orders(ring, orders); }
};

HomologyGroup homology(const TotalComplex& t, int n);

/// Checks E_infinity against H_n(Tot) for every degree: over a field the
/// dimensions add up; over Z the free ranks add up and, when H_n is finite,
/// the torsion orders multiply to |H_n|. Returns human-readable mismatches.
std::vector<std::string> einf_assembly_mismatches(const Multicomplex& c, const Page& einf_page,
                                                  const TotalComplex& t);

}  // namespace mcss

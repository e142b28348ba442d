#pragma once

#include <string>
#include <vector>

#include "mcss/builders.hpp"
#include "mcss/oracle.hpp"
#include "mcss/pages.hpp"

// Property checks shared by the property tests and the acceptance runner.
// Each returns human-readable problems; empty means the property holds.
namespace mcss::checks {

/// full_page(c, r) for r = 0..upto.
std::vector<Page> pages_upto(const Multicomplex& c, int upto);

/// Random instance of the sweeps: support within 6x6, ranks <= 4, maxd <= 4.
Multicomplex sweep_instance(const Ring& ring, std::uint64_t seed);

/// Statistics gathered while checking structural properties.
struct Stats {
    std::size_t entries = 0;
    std::size_t boundary_witnesses = 0;
    std::size_t differentials = 0;
    std::size_t distinct_witnesses = 0;  ///< shuffled solve differed from the canonical one
};

/// B_r in Z_r, the explicit boundary witness satisfies the cycle conditions,
/// nesting of Z_r and B_r, Delta o Delta = 0, H(E_r) = E_{r+1}, and witness
/// independence of Delta_r. `pages` must hold pages 0..r_max+1.
std::vector<std::string> structural(const Multicomplex& c, const std::vector<Page>& pages, std::uint64_t seed,
                                    Stats* stats = nullptr);

/// The oracle's own nesting: ZZ_{r+1} in ZZ_r in F_p, BB_{r+1} in ZZ_r and ZZ_{r+1},
/// BB_r meet ZZ_{r+1} in BB_{r+1}, and delta o delta = 0.
std::vector<std::string> deligne_nesting(const Multicomplex& c, int max_r);

/// For a bicomplex: E_1 = d_0-homology and Delta_1 = induced d_1.
std::vector<std::string> bicomplex_specialization(const Multicomplex& c, const std::vector<Page>& pages);

/// Oracle comparison reusing `pages`; failures rendered as text.
std::vector<std::string> oracle(const Multicomplex& c, const std::vector<Page>& pages);

}  // namespace mcss::checks

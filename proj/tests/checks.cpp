#include "checks.hpp"

namespace mcss::checks {

namespace {

std::string at(int r, Bidegree cell) { return "r=" + std::to_string(r) + " " + cell.str() + ": "; }

bool in_filtration(const TotalComplex& t, int n, int p, const Submodule& s)
{
    const std::size_t start = t.filtration_start(n, p);
    for (std::size_t j = 0; j < s.rank(); ++j)
        for (std::size_t i = 0; i < start; ++i)
            if (s.gens()(i, j) != 0)
                return false;
    return true;
}

std::vector<mpz_class> d0_homology(const Multicomplex& c, Bidegree cell)
{
    const auto m = static_cast<std::size_t>(c.rank(cell));
    Submodule ker = c.rank({cell.a, cell.b - 1}) ? kernel(c.map(0, cell)) : Submodule::full(c.ring(), m);
    Submodule im = c.rank({cell.a, cell.b + 1}) ? image(c.map(0, {cell.a, cell.b + 1}))
                                                : Submodule::zero(c.ring(), m);
    return subquotient(ker, im).orders();
}

// A ∩ B from the kernel of [A | -B].
Submodule intersect(const Submodule& a, const Submodule& b)
{
    const Ring& ring = a.ring();
    const std::size_t n = a.ambient(), ka = a.rank(), kb = b.rank();
    if (ka == 0 || kb == 0)
        return Submodule::zero(ring, n);
    Mat m(ring, n, ka + kb);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ka; ++j)
            m.set(i, j, a.gens()(i, j));
        for (std::size_t j = 0; j < kb; ++j)
            m.set(i, ka + j, -b.gens()(i, j));
    }
    const Submodule k = kernel(m);
    Mat top(ring, ka, k.rank());
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < k.rank(); ++j)
            top.set(i, j, k.gens()(i, j));
    return span(a.gens() * top);
}

}  // namespace

std::vector<Page> pages_upto(const Multicomplex& c, int upto)
{
    std::vector<Page> out;
    for (int r = 0; r <= upto; ++r)
        out.push_back(full_page(c, r));
    return out;
}

Multicomplex sweep_instance(const Ring& ring, std::uint64_t seed)
{
    return random_mcx(RandomSpec{seed, 6, 6, 4, 4, ring, true});
}

std::vector<std::string> structural(const Multicomplex& c, const std::vector<Page>& pages, std::uint64_t seed,
                                    Stats* stats)
{
    std::vector<std::string> bad;
    Stats local;
    Stats& st = stats ? *stats : local;
    const int rmax = static_cast<int>(pages.size()) - 2;

    for (int r = 0; r <= rmax; ++r) {
        const Page& page = pages[static_cast<std::size_t>(r)];
        const Page& next = pages[static_cast<std::size_t>(r + 1)];
        for (const auto& [cell, e] : page.entries) {
            ++st.entries;
            if (!e.zr.contains(e.br))
                bad.push_back(at(r, cell) + "B_r not in Z_r");
            if (r >= 1) {
                for (const auto& cw : boundary_preimages(c, r, cell)) {
                    ++st.boundary_witnesses;
                    try {
                        WitnessTuple w = boundary_witness(c, cw);
                        if (!satisfies_cycle_conditions(c, boundary_value(c, cw), w))
                            bad.push_back(at(r, cell) + "explicit boundary witness fails the cycle conditions");
                    } catch (const Error& ex) {
                        bad.push_back(at(r, cell) + ex.what());
                    }
                }
            }
            const PageEntry& en = next.entries.at(cell);
            if (!e.zr.contains(en.zr))
                bad.push_back(at(r, cell) + "Z_{r+1} not in Z_r");
            if (!en.br.contains(e.br))
                bad.push_back(at(r, cell) + "B_r not in B_{r+1}");

            const PageDifferential* out = page.differential_from(cell);
            const std::vector<mpz_class> h =
                page_homology(e, page.differential_into(cell), out, out ? page.find(out->target) : nullptr);
            if (h != en.quot.orders())
                bad.push_back(at(r, cell) + "H(E_r) = " + describe_orders(c.ring(), h) + " but E_{r+1} = " +
                              en.quot.describe());
        }

        for (const auto& d : page.differentials) {
            ++st.differentials;
            const PageEntry& src = page.entries.at(d.source);
            const PageEntry& tgt = page.entries.at(d.target);
            if (!respects_torsion(d, src, tgt))
                bad.push_back(at(r, d.source) + "Delta does not respect torsion orders");
            if (const PageDifferential* d2 = page.differential_from(d.target)) {
                const PageEntry& far = page.entries.at(d2->target);
                const Mat comp = d2->matrix * d.matrix;
                for (std::size_t j = 0; j < comp.cols(); ++j)
                    if (!is_zero(far.quot.normalize(comp.col(j))))
                        bad.push_back(at(r, d.source) + "Delta o Delta != 0");
            }
            if (r >= 2) {
                const std::uint64_t shuffle = seed * 1315423911ULL + static_cast<std::uint64_t>(r) + 1;
                PageDifferential alt = delta_r(c, src, tgt, shuffle);
                for (std::size_t j = 0; j < d.matrix.cols(); ++j) {
                    if (tgt.quot.normalize(alt.matrix.col(j)) != tgt.quot.normalize(d.matrix.col(j)))
                        bad.push_back(at(r, d.source) + "Delta depends on the witness");
                    const Vec x = src.quot.lift(j);
                    WitnessTuple w0 = witness_for(c, r, d.source, x), w1 = witness_for(c, r, d.source, x, shuffle);
                    if (w0.z != w1.z)
                        ++st.distinct_witnesses;
                }
            }
        }
    }
    return bad;
}

std::vector<std::string> deligne_nesting(const Multicomplex& c, int max_r)
{
    std::vector<std::string> bad;
    const TotalComplex t = totalize(c);
    for (const auto& [cell, k] : c.ranks()) {
        const int p = cell.a, n = cell.total();
        DeligneEntry prev = deligne_entry(t, 0, p, n);
        for (int r = 0; r <= max_r; ++r) {
            DeligneEntry cur = prev;
            DeligneEntry nxt = deligne_entry(t, r + 1, p, n);
            if (!in_filtration(t, n, p, cur.zz))
                bad.push_back(at(r, cell) + "ZZ_r not in F_p");
            if (!cur.zz.contains(nxt.zz))
                bad.push_back(at(r, cell) + "ZZ_{r+1} not in ZZ_r");
            // BB_r itself need not lie in BB_{r+1}: ZZ_{r-1}^{p-1} shrinks with r.
            if (!nxt.bb.contains(intersect(cur.bb, nxt.zz)))
                bad.push_back(at(r, cell) + "BB_r meet ZZ_{r+1} not in BB_{r+1}");
            if (!cur.zz.contains(nxt.bb))
                bad.push_back(at(r, cell) + "BB_{r+1} not in ZZ_r");
            if (!nxt.zz.contains(nxt.bb))
                bad.push_back(at(r, cell) + "BB_{r+1} not in ZZ_{r+1}");
            if (r >= 1) {
                DeligneEntry tg = deligne_entry(t, r, p - r, n - 1);
                DeligneEntry tg2 = deligne_entry(t, r, p - 2 * r, n - 2);
                const Mat d1 = deligne_delta(t, cur, tg), d2 = deligne_delta(t, tg, tg2);
                const Mat comp = d2 * d1;
                for (std::size_t j = 0; j < comp.cols(); ++j)
                    if (!is_zero(tg2.quot.normalize(comp.col(j))))
                        bad.push_back(at(r, cell) + "delta o delta != 0");
            }
            prev = std::move(nxt);
        }
    }
    return bad;
}

std::vector<std::string> bicomplex_specialization(const Multicomplex& c, const std::vector<Page>& pages)
{
    std::vector<std::string> bad;
    if (c.maxd() > 1)
        bad.push_back("not a bicomplex");
    const Page& e1 = pages.at(1);
    for (const auto& [cell, e] : e1.entries) {
        if (e.quot.orders() != d0_homology(c, cell))
            bad.push_back(at(1, cell) + "E_1 differs from d_0-homology");
        const PageDifferential* d = e1.differential_from(cell);
        if (!d)
            continue;
        const PageEntry& tgt = e1.entries.at(d->target);
        for (std::size_t j = 0; j < e.quot.size(); ++j) {
            Vec induced = tgt.quot.reduce(c.map(1, cell).apply(e.quot.lift(j)));
            if (tgt.quot.normalize(induced) != tgt.quot.normalize(d->matrix.col(j)))
                bad.push_back(at(1, cell) + "Delta_1 differs from the map induced by d_1");
        }
    }
    return bad;
}

std::vector<std::string> oracle(const Multicomplex& c, const std::vector<Page>& pages)
{
    CompareOptions opt;
    opt.pages = &pages;
    opt.max_r = std::min(stabilization_bound(c), static_cast<int>(pages.size()) - 1);
    std::vector<std::string> bad;
    for (const auto& f : compare(c, opt).failures)
        bad.push_back(at(f.r, f.cell) + f.what);
    return bad;
}

}  // namespace mcss::checks

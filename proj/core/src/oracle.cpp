#include "mcss/oracle.hpp"

#include <map>
#include <tuple>

namespace mcss {

namespace {

Mat pad_top(const Mat& m, std::size_t zeros)
{
    Mat out = Mat::zero(m.ring(), m.rows() + zeros, m.cols());
    out.paste(m, zeros, 0);
    return out;
}

Mat columns_matrix(const Ring& ring, std::size_t rows, const std::vector<Vec>& cols)
{
    return Mat::from_columns(ring, rows, cols);
}

}  // namespace

Submodule deligne_cycles(const TotalComplex& t, int r, int p, int n)
{
    const Ring& ring = t.ring();
    const std::size_t dim = t.dim(n);
    const std::size_t start = t.filtration_start(n, p);
    const std::size_t fp = dim - start;
    if (fp == 0)
        return Submodule::zero(ring, dim);
    // Rows of d with filtration index above p - r must vanish.
    const std::size_t top = t.filtration_start(n - 1, p - r);
    Submodule k = top ? kernel(t.differential(n).block(0, start, top, fp)) : Submodule::full(ring, fp);
    return span(pad_top(k.gens(), start));
}

namespace {

// ZZ_r^p(n) is needed again for BB_{r+1}; compare keeps them across pages.
using CycleCache = std::map<std::tuple<int, int, int>, Submodule>;

const Submodule& cached_cycles(const TotalComplex& t, CycleCache& cache, int r, int p, int n)
{
    auto key = std::make_tuple(r, p, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, deligne_cycles(t, r, p, n)).first;
    return it->second;
}

DeligneEntry cached_entry(const TotalComplex& t, CycleCache& cache, int r, int p, int n)
{
    if (r < 0)
        throw Error("deligne_entry: r must be non-negative");
    const Ring& ring = t.ring();
    DeligneEntry e{r, p, n, cached_cycles(t, cache, r, p, n), {}, {}};
    if (r == 0) {
        const std::size_t dim = t.dim(n);
        std::vector<Vec> cols;
        for (std::size_t k = t.filtration_start(n, p - 1); k < dim; ++k)
            cols.push_back(unit_vec(dim, k));
        e.bb = span(columns_matrix(ring, dim, cols));
    } else {
        const Submodule& lower = cached_cycles(t, cache, r - 1, p - 1, n);
        const Submodule& upper = cached_cycles(t, cache, r - 1, p + r - 1, n + 1);
        e.bb = sum(lower, map_submodule(t.differential(n + 1), upper));
    }
    e.quot = subquotient(e.zz, e.bb);
    return e;
}

}  // namespace

DeligneEntry deligne_entry(const TotalComplex& t, int r, int p, int n)
{
    CycleCache cache;
    return cached_entry(t, cache, r, p, n);
}

Mat deligne_delta(const TotalComplex& t, const DeligneEntry& source, const DeligneEntry& target)
{
    if (target.r != source.r || target.p != source.p - source.r || target.n != source.n - 1)
        throw Error("deligne_delta: mismatched target entry");
    const Mat d = t.differential(source.n);
    Mat m = Mat::zero(t.ring(), target.quot.size(), source.quot.size());
    for (std::size_t g = 0; g < source.quot.size(); ++g) {
        Vec col = target.quot.reduce(d.apply(source.quot.lift(g)));
        for (std::size_t i = 0; i < col.size(); ++i)
            m.set(i, g, col[i]);
    }
    return m;
}

Vec psi(const TotalComplex& t, const DeligneEntry& d, const PageEntry& e, const FilteredVector& x)
{
    if (x.n != d.n || !d.zz.contains(x.coords))
        throw Error("psi: vector is not in ZZ_" + std::to_string(d.r) + " at p=" + std::to_string(d.p) +
                    ", n=" + std::to_string(d.n));
    return e.quot.reduce(t.component(x, d.p));
}

Vec psi(const Multicomplex& c, int r, int p, const FilteredVector& x)
{
    TotalComplex t(c);
    return psi(t, deligne_entry(t, r, p, x.n), page_entry(c, r, {p, x.n - p}), x);
}

FilteredVector lift_to_total(const Multicomplex& c, const TotalComplex& t, int r, Bidegree cell, const Vec& x)
{
    FilteredVector lift = t.embed(cell, x);
    if (r >= 1) {
        WitnessTuple w = witness_for(c, r, cell, x);
        for (int j = 1; j <= r - 1; ++j) {
            FilteredVector z = t.embed({cell.a - j, cell.b + j}, w.at(j));
            lift.coords = sub(c.ring(), lift.coords, z.coords);
        }
    }
    const FilteredVector dl = t.apply_differential(lift);
    const std::size_t top = t.filtration_start(dl.n, cell.a - r);
    for (std::size_t k = 0; k < top; ++k)
        if (dl.coords[k] != 0)
            throw Error("lift_to_total: d(lift) leaves F_" + std::to_string(cell.a - r) + " at " + cell.str());
    return lift;
}

CompareReport compare(const Multicomplex& c, const CompareOptions& options)
{
    const TotalComplex t = totalize(c);
    const Ring& ring = c.ring();
    CompareReport report;
    report.max_r = options.max_r < 0 ? stabilization_bound(c) : options.max_r;

    auto fail = [&](int r, Bidegree cell, std::string what) {
        report.failures.push_back(CompareFailure{r, cell, std::move(what)});
    };

    CycleCache cache;
    for (int r = 0; r <= report.max_r; ++r) {
        Page page = options.pages && options.pages->size() > static_cast<std::size_t>(r)
                        ? (*options.pages)[static_cast<std::size_t>(r)]
                        : full_page(c, r);
        if (options.tamper)
            for (auto& d : page.differentials)
                options.tamper(d);

        std::map<Bidegree, DeligneEntry> deligne;
        std::map<Bidegree, Mat> psi_mats;  // direct coords of psi(deligne generators)
        for (const auto& [cell, e] : page.entries) {
            ++report.cells_checked;
            DeligneEntry d = cached_entry(t, cache, r, cell.a, cell.total());
            if (d.quot.orders() != e.quot.orders()) {
                fail(r, cell, "invariants differ: filtered " + d.quot.describe() + " vs direct " + e.quot.describe());
                deligne.emplace(cell, std::move(d));
                continue;
            }
            Mat psi_m = Mat::zero(ring, e.quot.size(), d.quot.size());
            for (std::size_t g = 0; g < d.quot.size(); ++g) {
                Vec v = psi(t, d, e, FilteredVector{cell.total(), d.quot.lift(g)});
                for (std::size_t i = 0; i < v.size(); ++i)
                    psi_m.set(i, g, v[i]);
            }
            // Surjectivity onto Z_r/B_r; with equal invariants this is bijectivity.
            std::vector<Vec> gens;
            for (std::size_t g = 0; g < psi_m.cols(); ++g)
                gens.push_back(psi_m.col(g));
            for (std::size_t i = 0; i < e.quot.size(); ++i)
                if (e.quot.orders()[i] != 0) {
                    Vec rel(e.quot.size());
                    rel[i] = Scalar(e.quot.orders()[i]);
                    gens.push_back(std::move(rel));
                }
            if (span(Mat::from_columns(ring, e.quot.size(), gens)) != Submodule::full(ring, e.quot.size()))
                fail(r, cell, "psi is not surjective");

            for (std::size_t j = 0; j < e.quot.size(); ++j) {
                try {
                    FilteredVector l = lift_to_total(c, t, r, cell, e.quot.lift(j));
                    if (psi(t, d, e, l) != e.quot.normalize(unit_vec(e.quot.size(), j)))
                        fail(r, cell, "psi(lift(x_" + std::to_string(j) + ")) differs from [x_" + std::to_string(j) + "]");
                } catch (const Error& ex) {
                    fail(r, cell, std::string("lift failed: ") + ex.what());
                }
            }
            psi_mats.emplace(cell, std::move(psi_m));
            deligne.emplace(cell, std::move(d));
        }

        // Commuting square psi o delta_r = Delta_r o psi.
        for (const auto& [cell, d] : deligne) {
            const Bidegree tcell{cell.a - r, cell.b + r - 1};
            auto dt = deligne.find(tcell);
            if (dt == deligne.end() || d.quot.trivial() || dt->second.quot.trivial())
                continue;
            auto ps = psi_mats.find(cell), pt = psi_mats.find(tcell);
            if (ps == psi_mats.end() || pt == psi_mats.end())
                continue;  // invariants already reported
            const PageEntry& et = *page.find(tcell);
            const PageEntry& es = *page.find(cell);
            Mat delta_direct = Mat::zero(ring, et.quot.size(), es.quot.size());
            if (const PageDifferential* pd = page.differential_from(cell))
                delta_direct = pd->matrix;
            const Mat delta_filtered = deligne_delta(t, d, dt->second);
            for (std::size_t g = 0; g < d.quot.size(); ++g) {
                Vec lhs = et.quot.normalize(pt->second.apply(delta_filtered.col(g)));
                Vec rhs = et.quot.normalize(delta_direct.apply(ps->second.col(g)));
                if (lhs != rhs)
                    fail(r, cell,
                         "square fails on generator " + std::to_string(g) + ": " + vec_str(lhs) + " vs " + vec_str(rhs));
            }
        }
    }
    return report;
}

std::size_t HomologyGroup::free_rank() const
{
    std::size_t k = 0;
    for (const auto& o : orders)
        k += o == 0;
    return k;
}

mpz_class HomologyGroup::torsion_order() const
{
    mpz_class v = 1;
    for (const auto& o : orders)
        if (o != 0)
            v *= o;
    return v;
}

HomologyGroup homology(const TotalComplex& t, int n)
{
    const Ring& ring = t.ring();
    Submodule cycles = kernel(t.differential(n));
    Submodule boundaries = image(t.differential(n + 1));
    return HomologyGroup{n, ring, subquotient(cycles, boundaries).orders()};
}

std::vector<std::string> einf_assembly_mismatches(const Multicomplex& c, const Page& einf_page, const TotalComplex& t)
{
    std::vector<std::string> out;
    if (c.empty())
        return out;
    for (int n = t.min_degree() - 1; n <= t.max_degree() + 1; ++n) {
        const HomologyGroup h = homology(t, n);
        std::size_t free = 0, dim = 0;
        mpz_class tors = 1;
        for (const auto& [cell, e] : einf_page.entries) {
            if (cell.total() != n)
                continue;
            dim += e.quot.size();
            free += e.quot.free_rank();
            tors *= e.quot.torsion_order();
        }
        const std::string where = "H_" + std::to_string(n) + " = " + h.describe();
        if (c.ring().is_field()) {
            if (dim != h.orders.size())
                out.push_back(where + " but E_inf has total dimension " + std::to_string(dim));
            continue;
        }
        if (free != h.free_rank())
            out.push_back(where + " but E_inf has free rank " + std::to_string(free));
        else if (h.free_rank() == 0 && tors != h.torsion_order())
            out.push_back(where + " but E_inf torsion orders multiply to " + tors.get_str());
    }
    return out;
}

}  // namespace mcss

#include "mcss/pages.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace mcss {

namespace {

std::size_t rank_at(const Multicomplex& c, Bidegree bd) { return static_cast<std::size_t>(c.rank(bd)); }

// Block layout of a linear system whose unknowns and equations live in
// several bidegrees.
struct Layout {
    std::vector<Bidegree> cells;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;

    void add(Bidegree bd, std::size_t rank)
    {
        cells.push_back(bd);
        offsets.push_back(total);
        total += rank;
    }
    Vec slice(const Vec& v, std::size_t k, std::size_t rank) const
    {
        return Vec(v.begin() + static_cast<std::ptrdiff_t>(offsets[k]),
                   v.begin() + static_cast<std::ptrdiff_t>(offsets[k] + rank));
    }
};

// Adds `sign * d_i` (source block `col`, target block `row`) into `m`.
void add_block(Mat& m, const Multicomplex& c, int i, const Layout& rows, std::size_t row, const Layout& cols,
               std::size_t col, bool negate)
{
    const Mat* d = c.find_map(i, cols.cells[col]);
    if (!d)
        return;
    if (structure_target(i, cols.cells[col]) != rows.cells[row])
        throw Error("internal: block bidegree mismatch");
    Mat blk = negate ? -*d : *d;
    Mat cur = m.block(rows.offsets[row], cols.offsets[col], blk.rows(), blk.cols());
    m.paste(cur + blk, rows.offsets[row], cols.offsets[col]);
}

// Cycle system for (x, z_1, ..., z_{r-1}). Unknown block 0 is x, block j is
// z_j in C_{p-j,q+j}. Equation block 0 is d_0 x, block n is
//   d_n x - sum_{i=0}^{n-1} d_i z_{n-i}   in C_{p-n,q+n-1}.
struct CycleSystem {
    Layout vars, eqs;
    Mat m;
};

CycleSystem cycle_system(const Multicomplex& c, int r, Bidegree cell)
{
    const int p = cell.a, q = cell.b;
    CycleSystem s;
    s.vars.add(cell, rank_at(c, cell));
    for (int j = 1; j <= r - 1; ++j)
        s.vars.add({p - j, q + j}, rank_at(c, {p - j, q + j}));
    for (int n = 0; n <= r - 1; ++n)
        s.eqs.add({p - n, q + n - 1}, rank_at(c, {p - n, q + n - 1}));
    s.m = Mat::zero(c.ring(), s.eqs.total, s.vars.total);
    if (s.eqs.total == 0)
        return s;
    add_block(s.m, c, 0, s.eqs, 0, s.vars, 0, false);
    for (int n = 1; n <= r - 1; ++n) {
        const auto row = static_cast<std::size_t>(n);
        add_block(s.m, c, n, s.eqs, row, s.vars, 0, false);
        for (int i = 0; i <= n - 1; ++i)
            add_block(s.m, c, i, s.eqs, row, s.vars, static_cast<std::size_t>(n - i), true);
    }
    return s;
}

// Co-witness system: unknown block k is c_{p+k} in C_{p+k,q-k+1}; constraint
// block l-1 is sum_{k=l}^{r-1} d_{k-l} c_{p+k} in C_{p+l,q-l}; the value map
// sends the unknowns to sum_k d_k c_{p+k} in C_{p,q}.
struct BoundarySystem {
    Layout vars, eqs, value_layout;
    Mat constraints;
    Mat value;
};

BoundarySystem boundary_system(const Multicomplex& c, int r, Bidegree cell)
{
    const int p = cell.a, q = cell.b;
    BoundarySystem s;
    for (int k = 0; k <= r - 1; ++k)
        s.vars.add({p + k, q - k + 1}, rank_at(c, {p + k, q - k + 1}));
    for (int l = 1; l <= r - 1; ++l)
        s.eqs.add({p + l, q - l}, rank_at(c, {p + l, q - l}));
    s.value_layout.add(cell, rank_at(c, cell));
    s.constraints = Mat::zero(c.ring(), s.eqs.total, s.vars.total);
    for (int l = 1; l <= r - 1; ++l)
        for (int k = l; k <= r - 1; ++k)
            add_block(s.constraints, c, k - l, s.eqs, static_cast<std::size_t>(l - 1), s.vars,
                      static_cast<std::size_t>(k), false);
    s.value = Mat::zero(c.ring(), s.value_layout.total, s.vars.total);
    for (int k = 0; k <= r - 1; ++k)
        add_block(s.value, c, k, s.value_layout, 0, s.vars, static_cast<std::size_t>(k), false);
    return s;
}

Vec apply_map(const Multicomplex& c, int i, Bidegree src, const Vec& v)
{
    if (v.empty())
        return Vec(rank_at(c, structure_target(i, src)));
    const Mat* d = c.find_map(i, src);
    if (!d)
        return Vec(rank_at(c, structure_target(i, src)));
    return d->apply(v);
}

Vec accumulate(const Ring& ring, Vec acc, const Vec& v, bool negate)
{
    if (acc.size() != v.size())
        throw Error("internal: vector length mismatch");
    return negate ? sub(ring, acc, v) : add(ring, acc, v);
}

}  // namespace

Submodule compute_zr(const Multicomplex& c, int r, Bidegree cell)
{
    if (r < 1)
        throw Error("compute_zr: r must be at least 1");
    const std::size_t m0 = rank_at(c, cell);
    if (m0 == 0)
        return Submodule::zero(c.ring(), 0);
    CycleSystem s = cycle_system(c, r, cell);
    if (s.eqs.total == 0)
        return Submodule::full(c.ring(), m0);
    Submodule k = kernel(s.m);
    std::vector<std::size_t> xs(m0);
    std::iota(xs.begin(), xs.end(), 0);
    return span(k.gens().select_rows(xs));
}

Submodule compute_br(const Multicomplex& c, int r, Bidegree cell)
{
    if (r < 1)
        throw Error("compute_br: r must be at least 1");
    const std::size_t m0 = rank_at(c, cell);
    if (m0 == 0)
        return Submodule::zero(c.ring(), 0);
    BoundarySystem s = boundary_system(c, r, cell);
    if (s.vars.total == 0)
        return Submodule::zero(c.ring(), m0);
    Submodule free = s.eqs.total ? kernel(s.constraints) : Submodule::full(c.ring(), s.vars.total);
    return span(s.value * free.gens());
}

std::vector<CoWitnessTuple> boundary_preimages(const Multicomplex& c, int r, Bidegree cell)
{
    BoundarySystem s = boundary_system(c, r, cell);
    Submodule free = s.eqs.total ? kernel(s.constraints) : Submodule::full(c.ring(), s.vars.total);
    std::vector<CoWitnessTuple> out;
    for (std::size_t g = 0; g < free.rank(); ++g) {
        Vec v = free.gens().col(g);
        CoWitnessTuple cw{r, cell, {}};
        for (std::size_t k = 0; k < s.vars.cells.size(); ++k)
            cw.c.push_back(s.vars.slice(v, k, rank_at(c, s.vars.cells[k])));
        out.push_back(std::move(cw));
    }
    return out;
}

WitnessTuple witness_for(const Multicomplex& c, int r, Bidegree cell, const Vec& x, std::uint64_t shuffle)
{
    if (r < 1)
        throw Error("witness_for: r must be at least 1");
    if (x.size() != rank_at(c, cell))
        throw Error("witness_for: element has the wrong length");
    const Ring& ring = c.ring();
    if (!is_zero(apply_map(c, 0, cell, x)))
        throw Error("witness_for: " + vec_str(x) + " is not a d_0-cycle at " + cell.str());

    CycleSystem s = cycle_system(c, r, cell);
    const std::size_t m0 = rank_at(c, cell);
    const std::size_t nz = s.vars.total - m0;
    // Rows for n >= 1 only; the unknowns are the witnesses.
    const std::size_t r0 = s.eqs.offsets.size() > 1 ? s.eqs.offsets[1] : s.eqs.total;
    const std::size_t nrows = s.eqs.total - r0;
    Mat w = s.m.block(r0, m0, nrows, nz);
    Mat dx = s.m.block(r0, 0, nrows, m0);
    // Rows encode d_n x - sum_i d_i z_{n-i}, so the witnesses solve W z = -(d_n x).
    Vec rhs = scale(ring, -1, dx.apply(x));

    std::vector<std::size_t> perm(nz);
    std::iota(perm.begin(), perm.end(), 0);
    if (shuffle) {
        std::mt19937_64 eng(shuffle);
        for (std::size_t i = nz; i > 1; --i)
            std::swap(perm[i - 1], perm[eng() % i]);
    }
    auto sol = solve(w.select_columns(perm), rhs);
    if (!sol)
        throw Error("witness_for: " + vec_str(x) + " is not in Z_" + std::to_string(r) + " at " + cell.str());
    Vec z(nz);
    for (std::size_t k = 0; k < nz; ++k)
        z[perm[k]] = (*sol)[k];

    WitnessTuple out{r, cell, {}};
    for (std::size_t j = 1; j < s.vars.cells.size(); ++j)
        out.z.push_back(Vec(z.begin() + static_cast<std::ptrdiff_t>(s.vars.offsets[j] - m0),
                            z.begin() + static_cast<std::ptrdiff_t>(s.vars.offsets[j] - m0 +
                                                                    rank_at(c, s.vars.cells[j]))));
    return out;
}

bool satisfies_cycle_conditions(const Multicomplex& c, const Vec& x, const WitnessTuple& w)
{
    const Ring& ring = c.ring();
    const int p = w.base.a, q = w.base.b;
    if (!is_zero(apply_map(c, 0, w.base, x)))
        return false;
    for (int n = 1; n <= w.r - 1; ++n) {
        Vec lhs = apply_map(c, n, w.base, x);
        for (int i = 0; i <= n - 1; ++i) {
            const int j = n - i;
            lhs = accumulate(ring, lhs, apply_map(c, i, {p - j, q + j}, w.at(j)), true);
        }
        if (!is_zero(lhs))
            return false;
    }
    return true;
}

bool satisfies_boundary_constraints(const Multicomplex& c, const CoWitnessTuple& cw)
{
    const Ring& ring = c.ring();
    const int p = cw.base.a, q = cw.base.b;
    for (int l = 1; l <= cw.r - 1; ++l) {
        Vec acc(rank_at(c, {p + l, q - l}));
        for (int k = l; k <= cw.r - 1; ++k)
            acc = accumulate(ring, acc, apply_map(c, k - l, {p + k, q - k + 1}, cw.c[static_cast<std::size_t>(k)]),
                             false);
        if (!is_zero(acc))
            return false;
    }
    return true;
}

Vec boundary_value(const Multicomplex& c, const CoWitnessTuple& cw)
{
    const int p = cw.base.a, q = cw.base.b;
    Vec x(rank_at(c, cw.base));
    for (int k = 0; k <= cw.r - 1; ++k)
        x = accumulate(c.ring(), x, apply_map(c, k, {p + k, q - k + 1}, cw.c[static_cast<std::size_t>(k)]), false);
    return x;
}

WitnessTuple boundary_witness(const Multicomplex& c, const CoWitnessTuple& cw)
{
    if (!satisfies_boundary_constraints(c, cw))
        throw Error("boundary_witness: co-witnesses violate their constraints");
    const int p = cw.base.a, q = cw.base.b;
    WitnessTuple w{cw.r, cw.base, {}};
    for (int j = 1; j <= cw.r - 1; ++j) {
        Vec z(rank_at(c, {p - j, q + j}));
        for (int i = 0; i <= cw.r - 1; ++i)
            z = accumulate(c.ring(), z, apply_map(c, j + i, {p + i, q - i + 1}, cw.c[static_cast<std::size_t>(i)]),
                           true);
        w.z.push_back(std::move(z));
    }
    if (!satisfies_cycle_conditions(c, boundary_value(c, cw), w))
        throw Error("boundary_witness: explicit witnesses fail the cycle conditions at " + cw.base.str());
    return w;
}

PageEntry page0_entry(const Multicomplex& c, Bidegree cell)
{
    const std::size_t m = rank_at(c, cell);
    PageEntry e{0, cell, Submodule::full(c.ring(), m), Submodule::zero(c.ring(), m), {}};
    e.quot = subquotient(e.zr, e.br);
    return e;
}

PageEntry page_entry(const Multicomplex& c, int r, Bidegree cell)
{
    if (r < 0)
        throw Error("page_entry: r must be non-negative");
    if (r == 0)
        return page0_entry(c, cell);
    PageEntry e{r, cell, compute_zr(c, r, cell), compute_br(c, r, cell), {}};
    if (!e.zr.contains(e.br))
        throw Error("B_" + std::to_string(r) + " is not contained in Z_" + std::to_string(r) + " at " + cell.str());
    e.quot = subquotient(e.zr, e.br);
    return e;
}

PageDifferential delta_r(const Multicomplex& c, const PageEntry& source, const PageEntry& target,
                         std::uint64_t shuffle)
{
    const int r = source.r;
    const int p = source.cell.a, q = source.cell.b;
    const Bidegree tcell{p - r, q + r - 1};
    if (target.r != r || target.cell != tcell)
        throw Error("delta_r: target entry must be E_" + std::to_string(r) + " at " + tcell.str());
    const Ring& ring = c.ring();
    PageDifferential out{r, source.cell, tcell, Mat::zero(ring, target.quot.size(), source.quot.size())};
    for (std::size_t g = 0; g < source.quot.size(); ++g) {
        const Vec x = source.quot.lift(g);
        Vec v = apply_map(c, r, source.cell, x);
        if (r >= 1) {
            WitnessTuple w = witness_for(c, r, source.cell, x, shuffle);
            for (int i = 1; i <= r - 1; ++i) {
                const int j = r - i;
                v = accumulate(ring, v, apply_map(c, i, {p - j, q + j}, w.at(j)), true);
            }
        }
        if (!target.zr.contains(v))
            throw Error("well-definedness breach: Delta_" + std::to_string(r) + " of generator " +
                        std::to_string(g) + " at " + source.cell.str() + " leaves Z_" + std::to_string(r) + " at " +
                        tcell.str());
        const Vec col = target.quot.reduce(v);
        for (std::size_t i = 0; i < col.size(); ++i)
            out.matrix.set(i, g, col[i]);
    }
    return out;
}

PageDifferential delta_r(const Multicomplex& c, int r, Bidegree cell)
{
    return delta_r(c, page_entry(c, r, cell), page_entry(c, r, {cell.a - r, cell.b + r - 1}));
}

std::pair<PageEntry, PageDifferential> page0(const Multicomplex& c, Bidegree cell)
{
    PageEntry e = page0_entry(c, cell);
    PageDifferential d = delta_r(c, e, page0_entry(c, {cell.a, cell.b - 1}));
    return {std::move(e), std::move(d)};
}

std::size_t Page::size(Bidegree cell) const
{
    const PageEntry* e = find(cell);
    return e ? e->quot.size() : 0;
}

const PageEntry* Page::find(Bidegree cell) const
{
    auto it = entries.find(cell);
    return it == entries.end() ? nullptr : &it->second;
}

const PageDifferential* Page::differential_from(Bidegree cell) const
{
    for (const auto& d : differentials)
        if (d.source == cell)
            return &d;
    return nullptr;
}

const PageDifferential* Page::differential_into(Bidegree cell) const
{
    for (const auto& d : differentials)
        if (d.target == cell)
            return &d;
    return nullptr;
}

std::size_t Page::total_size() const
{
    std::size_t s = 0;
    for (const auto& [bd, e] : entries)
        s += e.quot.size();
    return s;
}

Page full_page(const Multicomplex& c, int r)
{
    Page page{r, c.ring(), {}, {}};
    for (const auto& [bd, rank] : c.ranks())
        page.entries.emplace(bd, page_entry(c, r, bd));
    for (const auto& [bd, e] : page.entries) {
        if (e.quot.trivial())
            continue;
        const PageEntry* t = page.find({bd.a - r, bd.b + r - 1});
        if (!t || t->quot.trivial())
            continue;
        page.differentials.push_back(delta_r(c, e, *t));
    }
    return page;
}

int stabilization_bound(const Multicomplex& c)
{
    if (c.empty())
        return 2;
    return c.max_a() - c.min_a() + 2;
}

Page einf(const Multicomplex& c)
{
    const int rmax = stabilization_bound(c);
    Page p = full_page(c, rmax);
    Page next = full_page(c, rmax + 1);
    for (const auto& [bd, e] : p.entries)
        if (e.quot.orders() != next.entries.at(bd).quot.orders())
            throw Error("einf: page " + std::to_string(rmax) + " has not stabilized at " + bd.str());
    return p;
}

std::vector<mpz_class> page_homology(const PageEntry& cell, const PageDifferential* in, const PageDifferential* out,
                                     const PageEntry* out_target)
{
    const Ring& ring = cell.quot.ring();
    const std::size_t k = cell.quot.size();

    auto relation_columns = [&](const std::vector<mpz_class>& orders) {
        std::vector<Vec> cols;
        for (std::size_t i = 0; i < orders.size(); ++i)
            if (orders[i] != 0) {
                Vec v(orders.size());
                v[i] = Scalar(orders[i]);
                cols.push_back(std::move(v));
            }
        return cols;
    };

    Submodule ker = Submodule::full(ring, k);
    if (out && out_target && out_target->quot.size() > 0 && k > 0) {
        const auto& tord = out_target->quot.orders();
        Mat rel = Mat::from_columns(ring, tord.size(), relation_columns(tord));
        Submodule big = kernel(out->matrix.hstack(-rel));
        std::vector<std::size_t> xs(k);
        std::iota(xs.begin(), xs.end(), 0);
        ker = span(big.gens().select_rows(xs));
    }
    std::vector<Vec> im = relation_columns(cell.quot.orders());
    if (in)
        for (std::size_t j = 0; j < in->matrix.cols(); ++j)
            im.push_back(in->matrix.col(j));
    Submodule den = span(Mat::from_columns(ring, k, im));
    return subquotient(ker, den).orders();
}

bool respects_torsion(const PageDifferential& d, const PageEntry& source, const PageEntry& target)
{
    const auto& so = source.quot.orders();
    const auto& to = target.quot.orders();
    for (std::size_t j = 0; j < so.size(); ++j) {
        if (so[j] == 0)
            continue;
        for (std::size_t i = 0; i < to.size(); ++i) {
            Scalar v = d.matrix(i, j) * Scalar(so[j]);
            if (to[i] == 0 ? v != 0 : !mpz_divisible_p(v.get_num().get_mpz_t(), to[i].get_mpz_t()))
                return false;
        }
    }
    return true;
}

}  // namespace mcss

#include "mcss/builders.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "mcss/linalg.hpp"
#include "mcss/total_complex.hpp"

namespace mcss {

namespace {

void set_scalar_map(Multicomplex& c, int i, Bidegree src, const Scalar& v)
{
    Mat m(c.ring(), 1, 1);
    m.set(0, 0, v);
    c.set_map(i, src, m);
}

void ensure_valid(const Multicomplex& c, const char* who)
{
    auto v = validate(c);
    if (!v.empty())
        throw Error(std::string(who) + ": builder produced an invalid multicomplex (relation n=" +
                    std::to_string(v.front().n) + " at " + v.front().source.str() + ")");
}

}  // namespace

Multicomplex staircase(int len, const Ring& ring)
{
    if (len < 2)
        throw Error("staircase length must be at least 2");
    Multicomplex c(ring);
    // Top row: (k, len-k) for k = 0..len, bottom row: (k, len-k-1) for k = 1..len-1.
    for (int k = 0; k <= len; ++k)
        c.add_module({k, len - k - (k == 0 ? 1 : 0)}, 1);
    for (int k = 1; k < len; ++k)
        c.add_module({k, len - k - 1}, 1);
    // B_k = (k, len-k) for k >= 1 (B_len = (len, 0)); A = (0, len-1).
    for (int k = 1; k <= len; ++k) {
        const Bidegree bk{k, len - k};
        set_scalar_map(c, 1, bk, 1);
        if (k < len)
            set_scalar_map(c, 0, bk, 1);
    }
    ensure_valid(c, "staircase");
    return c;
}

Multicomplex hurtubise(int n, const Ring& ring, int len)
{
    switch (n) {
    case 1:
        return staircase(2, ring);
    case 2:
        return staircase(len, ring);
    case 3: {
        Multicomplex c = staircase(2, ring);
        set_scalar_map(c, 2, {2, 0}, 1);
        ensure_valid(c, "hurtubise(3)");
        return c;
    }
    case 4: {
        Multicomplex c(ring);
        c.add_module({2, 0}, 2);  // x, y
        c.add_module({1, 1}, 1);  // z
        c.add_module({1, 0}, 1);  // d_0 z = d_1 x
        c.add_module({0, 1}, 2);  // d_1 z, d_2 y
        c.set_map(0, {1, 1}, Mat(ring, {{1}}));
        c.set_map(1, {2, 0}, Mat(ring, {{1, 0}}));
        c.set_map(1, {1, 1}, Mat(ring, {{1}, {0}}));
        c.set_map(2, {2, 0}, Mat(ring, {{0, 0}, {0, 1}}));
        ensure_valid(c, "hurtubise(4)");
        return c;
    }
    default:
        throw Error("Hurtubise example number must be 1..4, got " + std::to_string(n));
    }
}

mpz_class wall_T(long s, long t, long b)
{
    mpz_class sum = 0, tb, term = 1;
    mpz_ui_pow_ui(tb.get_mpz_t(), static_cast<unsigned long>(t), static_cast<unsigned long>(b));
    for (long j = 0; j < s; ++j) {
        sum += term;
        term *= tb;
    }
    return sum;
}

int wall_bmax(const WallParams& p) { return p.amax - (p.amax % 2); }

Multicomplex wall(const WallParams& p)
{
    if (p.rK < 1 || p.s < 1 || p.t < 1)
        throw Error("wall: r, s, t must be positive");
    if (p.amax < 0)
        throw Error("wall: amax must be non-negative");
    {
        mpz_class ts;
        mpz_ui_pow_ui(ts.get_mpz_t(), static_cast<unsigned long>(p.t), static_cast<unsigned long>(p.s));
        if ((ts - 1) % p.rK != 0)
            throw Error("wall: t^s must be congruent to 1 mod r");
    }
    const int bmax = wall_bmax(p);
    const Ring Z = Ring::integers();
    Multicomplex c(Z);
    for (int a = 0; a <= p.amax; ++a)
        for (int B = 0; B <= bmax; ++B)
            c.add_module({a, B}, 1);

    auto pow_t = [&](long e) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(p.t), static_cast<unsigned long>(e));
        return v;
    };

    for (int a = 0; a <= p.amax; ++a) {
        for (int B = 0; B <= bmax; ++B) {
            const Bidegree src{a, B};
            if (B % 2 == 1) {
                const long b = (B + 1) / 2;
                if (a >= 1) {
                    mpz_class coef = a % 2 == 0 ? mpz_class(-wall_T(p.s, p.t, b)) : mpz_class(-(pow_t(b) - 1));
                    set_scalar_map(c, 1, src, Scalar(coef));
                }
                if (a >= 2) {
                    mpz_class num = pow_t(b * p.s) - 1;
                    // exact: t^{bs} = 1 mod r
                    mpz_class q;
                    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), mpz_class(p.rK).get_mpz_t());
                    set_scalar_map(c, 2, src, Scalar(mpz_class(-q)));
                }
            } else {
                const long b = B / 2;
                if (B >= 1)
                    set_scalar_map(c, 0, src, Scalar(mpz_class(p.rK)));
                if (a >= 1) {
                    mpz_class coef = a % 2 == 0 ? wall_T(p.s, p.t, b) : mpz_class(pow_t(b) - 1);
                    set_scalar_map(c, 1, src, Scalar(coef));
                }
            }
        }
    }
    ensure_valid(c, "wall");
    return c;
}

// ---------------------------------------------------------------------------

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    /// Uniform-ish integer in [lo, hi].
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool chance(int percent) { return static_cast<int>(next() % 100) < percent; }

private:
    std::mt19937_64 eng_;
};

Scalar random_unit(Rng& rng, const Ring& ring)
{
    switch (ring.kind()) {
    case RingKind::Integers:
        return rng.chance(50) ? 1 : -1;
    case RingKind::PrimeField:
        return Scalar(1 + static_cast<long>(rng.next() % static_cast<std::uint64_t>(ring.characteristic() - 1)));
    case RingKind::Rationals: {
        static const Scalar units[] = {1, -1, 2, -2, Scalar(1) / 2, Scalar(-3) / 2};
        return units[rng.next() % 6];
    }
    }
    return 1;
}

Scalar random_coefficient(Rng& rng, const Ring& ring)
{
    if (ring.kind() == RingKind::Integers) {
        static const int vals[] = {1, -1, 1, -1, 2, -2, 3};
        return vals[rng.next() % 7];
    }
    return random_unit(rng, ring);
}

Scalar random_entry(Rng& rng, const Ring& ring)
{
    static const int vals[] = {0, 0, 1, -1, 2};
    return ring.normalize(Scalar(vals[rng.next() % 5]));
}

struct Gen {
    Bidegree bd;
    int local;
};

struct Arrow {
    int i;
    Gen from, to;
    Scalar coef;
};

// Unimodular (Z) or invertible (field) m x m matrix built from elementary operations.
Mat random_invertible(Rng& rng, const Ring& ring, std::size_t m)
{
    Mat g = Mat::identity(ring, m);
    if (m == 0)
        return g;
    for (std::size_t i = 0; i < m; ++i)
        g.set(i, i, random_unit(rng, ring));
    if (m == 1)
        return g;
    for (std::size_t step = 0; step < 2 * m; ++step) {
        std::size_t i = rng.next() % m, j = rng.next() % m;
        if (i == j)
            continue;
        Scalar lam = rng.range(-2, 2);
        for (std::size_t k = 0; k < m; ++k)
            g.set(i, k, ring.add(g(i, k), ring.mul(lam, g(j, k))));
    }
    return g;
}

Multicomplex assemble(const Ring& ring, const std::map<Bidegree, int>& ranks, const std::vector<Arrow>& arrows)
{
    Multicomplex c(ring);
    for (const auto& [bd, r] : ranks)
        c.add_module(bd, r);
    std::map<MapKey, Mat> acc;
    for (const auto& ar : arrows) {
        MapKey k{ar.i, ar.from.bd};
        auto it = acc.find(k);
        if (it == acc.end())
            it = acc.emplace(k, Mat::zero(ring, static_cast<std::size_t>(c.rank(ar.to.bd)),
                                          static_cast<std::size_t>(c.rank(ar.from.bd))))
                     .first;
        Mat& m = it->second;
        const auto r = static_cast<std::size_t>(ar.to.local), col = static_cast<std::size_t>(ar.from.local);
        m.set(r, col, ring.add(m(r, col), ar.coef));
    }
    for (const auto& [k, m] : acc)
        c.set_map(k.i, k.source, m);
    return c;
}

// Reads the d_i components off a total differential given per degree.
Multicomplex from_total(const Multicomplex& shape, const TotalComplex& t, const std::map<int, Mat>& d)
{
    Multicomplex c(shape.ring());
    for (const auto& [bd, r] : shape.ranks())
        c.add_module(bd, r);
    for (const auto& [bd, r] : shape.ranks()) {
        const int n = bd.total();
        const Mat& dn = d.at(n);
        const std::size_t col = t.offset(n, bd.a);
        for (const auto& [tbd, tr] : shape.ranks()) {
            if (tbd.total() != n - 1)
                continue;
            const int i = bd.a - tbd.a;
            Mat blk = dn.block(t.offset(n - 1, tbd.a), col, static_cast<std::size_t>(tr), static_cast<std::size_t>(r));
            if (blk.is_zero())
                continue;
            if (i < 0)
                throw Error("random_mcx: conjugated differential raises the filtration");
            c.set_map(i, bd, blk);
        }
    }
    return c;
}

}  // namespace

Multicomplex random_mcx(const RandomSpec& spec)
{
    if (spec.width < 1 || spec.height < 1 || spec.maxrank < 1 || spec.maxd < 0)
        throw Error("random_mcx: width, height, maxrank must be >= 1 and maxd >= 0");
    const Ring& ring = spec.ring;
    Rng rng(spec.seed);

    std::map<Bidegree, int> ranks;
    std::vector<Arrow> arrows;
    auto inside = [&](Bidegree bd) { return bd.a >= 0 && bd.a < spec.width && bd.b >= 0 && bd.b < spec.height; };
    auto try_place = [&](const std::vector<Bidegree>& cells, std::vector<Gen>& gens) {
        std::map<Bidegree, int> need;
        for (auto bd : cells) {
            if (!inside(bd))
                return false;
            ++need[bd];
        }
        for (const auto& [bd, k] : need)
            if ((ranks.count(bd) ? ranks[bd] : 0) + k > spec.maxrank)
                return false;
        for (auto bd : cells)
            gens.push_back(Gen{bd, ranks[bd]++});
        return true;
    };

    const int attempts = spec.width * spec.height * spec.maxrank / 2 + 1;
    for (int n = 0; n < attempts; ++n) {
        const int kind = rng.range(0, 9);
        const int a0 = rng.range(0, spec.width - 1), b0 = rng.range(0, spec.height - 1);
        std::vector<Gen> g;
        if (kind == 0) {
            try_place({{a0, b0}}, g);
        } else if (kind <= 5 || spec.maxd == 0) {
            // x -> d_k x
            const int k = rng.range(0, spec.maxd);
            const Bidegree x{a0, b0}, y = structure_target(k, x);
            if (try_place({x, y}, g))
                arrows.push_back(Arrow{k, g[0], g[1], random_coefficient(rng, ring)});
        } else {
            const int len = rng.range(2, std::max(2, std::min(spec.width - 1, spec.height)));
            std::vector<Bidegree> cells{{a0, b0 + len - 1}};
            for (int k = 1; k <= len; ++k) {
                cells.push_back({a0 + k, b0 + len - k});
                if (k < len)
                    cells.push_back({a0 + k, b0 + len - k - 1});
            }
            if (try_place(cells, g)) {
                // g: A, B1, C1, B2, C2, ..., B_len
                for (int k = 1; k <= len; ++k) {
                    const Gen& bk = g[static_cast<std::size_t>(2 * k - 1)];
                    const Gen& prev = g[static_cast<std::size_t>(2 * k - 2)];
                    arrows.push_back(Arrow{1, bk, prev, random_coefficient(rng, ring)});
                    if (k < len)
                        arrows.push_back(Arrow{0, bk, g[static_cast<std::size_t>(2 * k)], random_coefficient(rng, ring)});
                }
            }
        }
    }

    Multicomplex base = assemble(ring, ranks, arrows);
    if (!spec.conjugate || base.empty()) {
        ensure_valid(base, "random_mcx");
        return base;
    }

    const TotalComplex t(base);
    // Off-diagonal reach of the change of basis; shrunk until d_i = 0 for i > maxd.
    const int reaches[] = {spec.width, 2, 1, 0};
    for (int reach : reaches) {
        std::map<int, Mat> phi, phi_inv;
        for (int n = t.min_degree() - 1; n <= t.max_degree(); ++n) {
            const auto& basis = t.basis(n);
            Mat m = Mat::zero(ring, basis.size(), basis.size());
            for (const auto& [bd, r] : base.ranks()) {
                if (bd.total() != n)
                    continue;
                const std::size_t off = t.offset(n, bd.a);
                m.paste(random_invertible(rng, ring, static_cast<std::size_t>(r)), off, off);
                for (const auto& [tbd, tr] : base.ranks()) {
                    if (tbd.total() != n || tbd.a >= bd.a || bd.a - tbd.a > reach)
                        continue;
                    const std::size_t toff = t.offset(n, tbd.a);
                    for (int i = 0; i < tr; ++i)
                        for (int j = 0; j < r; ++j)
                            m.set(toff + static_cast<std::size_t>(i), off + static_cast<std::size_t>(j),
                                  random_entry(rng, ring));
                }
            }
            auto inv = inverse(m);
            if (!inv)
                throw Error("random_mcx: change of basis is not invertible");
            phi.emplace(n, std::move(m));
            phi_inv.emplace(n, std::move(*inv));
        }
        std::map<int, Mat> d;
        for (int n = t.min_degree(); n <= t.max_degree(); ++n)
            d.emplace(n, phi_inv.at(n - 1) * t.differential(n) * phi.at(n));
        Multicomplex c = from_total(base, t, d);
        if (c.maxd() <= spec.maxd) {
            ensure_valid(c, "random_mcx");
            return c;
        }
    }
    // reach 0 conjugates within bidegrees and cannot raise maxd
    throw Error("random_mcx: unreachable");
}

}  // namespace mcss

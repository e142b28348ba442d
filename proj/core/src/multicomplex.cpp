#include "mcss/multicomplex.hpp"

#include <algorithm>

namespace mcss {

void Multicomplex::add_module(Bidegree bd, int rank)
{
    if (rank < 1)
        throw Error("module " + bd.str() + " must have rank >= 1");
    if (!ranks_.emplace(bd, rank).second)
        throw Error("duplicate module " + bd.str());
}

void Multicomplex::set_map(int i, Bidegree source, const Mat& m)
{
    if (i < 0)
        throw Error("structure map index must be non-negative");
    if (m.ring() != ring_)
        throw Error("map d_" + std::to_string(i) + " on " + source.str() + " has the wrong ring");
    const Bidegree target = structure_target(i, source);
    const int rs = rank(source), rt = rank(target);
    const MapKey key{i, source};
    if (m.is_zero()) {
        // Zero maps carry no information; only the shape must be plausible.
        if (rs && rt && (m.rows() != static_cast<std::size_t>(rt) || m.cols() != static_cast<std::size_t>(rs)))
            throw Error("map d_" + std::to_string(i) + " on " + source.str() + " has wrong dimensions");
        maps_.erase(key);
        return;
    }
    if (!rs)
        throw Error("map d_" + std::to_string(i) + " from undeclared module " + source.str());
    if (!rt)
        throw Error("nonzero map d_" + std::to_string(i) + " on " + source.str() + " into rank-0 module " +
                    target.str());
    if (m.rows() != static_cast<std::size_t>(rt) || m.cols() != static_cast<std::size_t>(rs))
        throw Error("map d_" + std::to_string(i) + " on " + source.str() + " is " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()) + ", expected " + std::to_string(rt) + "x" +
                    std::to_string(rs));
    maps_.insert_or_assign(key, m);
}

int Multicomplex::rank(Bidegree bd) const
{
    auto it = ranks_.find(bd);
    return it == ranks_.end() ? 0 : it->second;
}

const Mat* Multicomplex::find_map(int i, Bidegree source) const
{
    auto it = maps_.find(MapKey{i, source});
    return it == maps_.end() ? nullptr : &it->second;
}

Mat Multicomplex::map(int i, Bidegree source) const
{
    if (const Mat* m = find_map(i, source))
        return *m;
    return Mat::zero(ring_, static_cast<std::size_t>(rank(structure_target(i, source))),
                     static_cast<std::size_t>(rank(source)));
}

int Multicomplex::maxd() const
{
    int d = 0;
    for (const auto& [k, m] : maps_)
        d = std::max(d, k.i);
    return d;
}

int Multicomplex::min_a() const
{
    int v = 0;
    bool first = true;
    for (const auto& [bd, r] : ranks_) {
        v = first ? bd.a : std::min(v, bd.a);
        first = false;
    }
    return v;
}

int Multicomplex::max_a() const
{
    return ranks_.empty() ? 0 : ranks_.rbegin()->first.a;
}

int Multicomplex::min_b() const
{
    int v = 0;
    bool first = true;
    for (const auto& [bd, r] : ranks_) {
        v = first ? bd.b : std::min(v, bd.b);
        first = false;
    }
    return v;
}

int Multicomplex::max_b() const
{
    int v = 0;
    bool first = true;
    for (const auto& [bd, r] : ranks_) {
        v = first ? bd.b : std::max(v, bd.b);
        first = false;
    }
    return v;
}

int Multicomplex::total_rank() const
{
    int s = 0;
    for (const auto& [bd, r] : ranks_)
        s += r;
    return s;
}

std::vector<Violation> validate(const Multicomplex& c)
{
    std::vector<Violation> out;
    const int D = c.maxd();
    for (int n = 0; n <= 2 * D; ++n) {
        for (const auto& [src, rs] : c.ranks()) {
            // d_i d_j has bidegree (-n, n-2).
            const Bidegree tgt{src.a - n, src.b + n - 2};
            const int rt = c.rank(tgt);
            if (!rt)
                continue;
            Mat acc = Mat::zero(c.ring(), static_cast<std::size_t>(rt), static_cast<std::size_t>(rs));
            bool touched = false;
            for (int j = 0; j <= n; ++j) {
                const int i = n - j;
                const Mat* dj = c.find_map(j, src);
                if (!dj)
                    continue;
                const Mat* di = c.find_map(i, structure_target(j, src));
                if (!di)
                    continue;
                acc = acc + (*di) * (*dj);
                touched = true;
            }
            if (touched && !acc.is_zero())
                out.push_back(Violation{n, src, acc});
        }
    }
    return out;
}

void MulticomplexMorphism::set_component(int i, Bidegree src, const Mat& m)
{
    if (m.ring() != source.ring())
        throw Error("morphism component has the wrong ring");
    const Bidegree tgt{src.a - i, src.b + i};
    const auto rs = static_cast<std::size_t>(source.rank(src));
    const auto rt = static_cast<std::size_t>(target.rank(tgt));
    if (m.is_zero()) {
        comps.erase(MapKey{i, src});
        return;
    }
    if (m.rows() != rt || m.cols() != rs)
        throw Error("morphism component f_" + std::to_string(i) + " on " + src.str() + " has wrong dimensions");
    comps.insert_or_assign(MapKey{i, src}, m);
}

Mat MulticomplexMorphism::component(int i, Bidegree src) const
{
    auto it = comps.find(MapKey{i, src});
    if (it != comps.end())
        return it->second;
    return Mat::zero(source.ring(), static_cast<std::size_t>(target.rank({src.a - i, src.b + i})),
                     static_cast<std::size_t>(source.rank(src)));
}

int MulticomplexMorphism::maxf() const
{
    int m = 0;
    for (const auto& [k, v] : comps)
        m = std::max(m, k.i);
    return m;
}

std::vector<Violation> validate_morphism(const MulticomplexMorphism& f)
{
    if (f.source.ring() != f.target.ring())
        throw Error("morphism between multicomplexes over different rings");
    std::vector<Violation> out;
    const int N = f.maxf() + std::max(f.source.maxd(), f.target.maxd());
    const Ring& ring = f.source.ring();
    for (int n = 0; n <= N; ++n) {
        for (const auto& [src, rs] : f.source.ranks()) {
            const Bidegree tgt{src.a - n, src.b + n - 1};
            const int rt = f.target.rank(tgt);
            if (!rt)
                continue;
            Mat lhs = Mat::zero(ring, static_cast<std::size_t>(rt), static_cast<std::size_t>(rs));
            Mat rhs = lhs;
            for (int j = 0; j <= n; ++j) {
                const int i = n - j;
                // f_i d_j
                const Mat* dj = f.source.find_map(j, src);
                if (dj) {
                    Mat fi = f.component(i, structure_target(j, src));
                    if (!fi.empty())
                        lhs = lhs + fi * (*dj);
                }
                // d'_i f_j
                Mat fj = f.component(j, src);
                if (!fj.is_zero()) {
                    const Mat* di = f.target.find_map(i, Bidegree{src.a - j, src.b + j});
                    if (di)
                        rhs = rhs + (*di) * fj;
                }
            }
            Mat diff = lhs - rhs;
            if (!diff.is_zero())
                out.push_back(Violation{n, src, diff});
        }
    }
    return out;
}

Multicomplex change_ring(const Multicomplex& c, const Ring& ring)
{
    Multicomplex out(ring);
    for (const auto& [bd, r] : c.ranks())
        out.add_module(bd, r);
    for (const auto& [k, m] : c.maps()) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!ring.admits(m(i, j)))
                    throw Error("entry " + to_string(m(i, j)) + " of d_" + std::to_string(k.i) + " on " +
                                k.source.str() + " is not admissible over " + ring.name());
        out.set_map(k.i, k.source, m.over(ring));
    }
    return out;
}

}  // namespace mcss

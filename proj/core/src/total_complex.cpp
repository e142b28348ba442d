#include "mcss/total_complex.hpp"

#include <algorithm>

namespace mcss {

TotalComplex::TotalComplex(const Multicomplex& c) : ring_(c.ring())
{
    bool first = true;
    for (const auto& [bd, r] : c.ranks()) {
        const int n = bd.total();
        min_n_ = first ? n : std::min(min_n_, n);
        max_n_ = first ? n : std::max(max_n_, n);
        first = false;
    }
    // Descending a within each total degree.
    for (auto it = c.ranks().rbegin(); it != c.ranks().rend(); ++it) {
        const auto& [bd, r] = *it;
        Degree& deg = degrees_[bd.total()];
        deg.offsets[bd.a] = deg.basis.size();
        for (int k = 0; k < r; ++k)
            deg.basis.push_back(BasisEntry{bd, k});
    }
    for (auto& [n, deg] : degrees_) {
        const std::size_t rows = dim(n - 1);
        deg.d = Mat::zero(ring_, rows, deg.basis.size());
        for (const auto& [a, off] : deg.offsets) {
            const Bidegree src{a, n - a};
            for (int i = 0; i <= c.maxd(); ++i) {
                const Mat* m = c.find_map(i, src);
                if (!m)
                    continue;
                deg.d.paste(*m, offset(n - 1, a - i), off);
            }
        }
    }
}

const TotalComplex::Degree* TotalComplex::find(int n) const
{
    auto it = degrees_.find(n);
    return it == degrees_.end() ? nullptr : &it->second;
}

std::size_t TotalComplex::dim(int n) const
{
    const Degree* d = find(n);
    return d ? d->basis.size() : 0;
}

const std::vector<BasisEntry>& TotalComplex::basis(int n) const
{
    static const std::vector<BasisEntry> none;
    const Degree* d = find(n);
    return d ? d->basis : none;
}

Mat TotalComplex::differential(int n) const
{
    const Degree* d = find(n);
    if (d)
        return d->d;
    return Mat::zero(ring_, dim(n - 1), 0);
}

std::vector<int> TotalComplex::filtration(int n) const
{
    std::vector<int> f;
    for (const auto& e : basis(n))
        f.push_back(e.bd.a);
    return f;
}

std::size_t TotalComplex::filtration_start(int n, int p) const
{
    const auto& b = basis(n);
    std::size_t k = 0;
    while (k < b.size() && b[k].bd.a > p)
        ++k;
    return k;
}

std::vector<std::size_t> TotalComplex::filtration_basis(int n, int p) const
{
    std::vector<std::size_t> idx;
    for (std::size_t k = filtration_start(n, p); k < dim(n); ++k)
        idx.push_back(k);
    return idx;
}

std::size_t TotalComplex::offset(int n, int a) const
{
    const Degree* d = find(n);
    if (!d)
        return 0;
    auto it = d->offsets.find(a);
    return it == d->offsets.end() ? d->basis.size() : it->second;
}

FilteredVector TotalComplex::project(const FilteredVector& x, int a) const
{
    FilteredVector y{x.n, Vec(x.coords.size())};
    const auto& b = basis(x.n);
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k].bd.a == a)
            y.coords[k] = x.coords[k];
    return y;
}

Vec TotalComplex::component(const FilteredVector& x, int a) const
{
    Vec v;
    const auto& b = basis(x.n);
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k].bd.a == a)
            v.push_back(x.coords[k]);
    return v;
}

FilteredVector TotalComplex::embed(Bidegree bd, const Vec& local) const
{
    const int n = bd.total();
    FilteredVector x{n, Vec(dim(n))};
    if (local.empty())
        return x;
    const std::size_t off = offset(n, bd.a);
    if (off + local.size() > dim(n))
        throw Error("embed: local vector does not fit column " + std::to_string(bd.a));
    for (std::size_t k = 0; k < local.size(); ++k)
        x.coords[off + k] = local[k];
    return x;
}

FilteredVector TotalComplex::apply_differential(const FilteredVector& x) const
{
    return FilteredVector{x.n - 1, differential(x.n).apply(x.coords)};
}

bool TotalComplex::squares_to_zero() const
{
    for (const auto& [n, deg] : degrees_)
        if (!(differential(n - 1) * deg.d).is_zero())
            return false;
    return true;
}

TotalComplex totalize(const Multicomplex& c)
{
    TotalComplex t(c);
    if (!t.squares_to_zero())
        throw Error("total differential does not square to zero");
    return t;
}

}  // namespace mcss

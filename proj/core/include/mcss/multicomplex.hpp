#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "mcss/matrix.hpp"

namespace mcss {

/// Bidegree (a, b); a is the filtration index.
struct Bidegree {
    int a = 0;
    int b = 0;

    auto operator<=>(const Bidegree&) const = default;
    int total() const { return a + b; }
    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

/// Target bidegree of d_i on C_{src}: |d_i| = (-i, i-1).
inline Bidegree structure_target(int i, Bidegree src) { return {src.a - i, src.b + i - 1}; }

/// Key of a structure-map component: d_i restricted to C_{source}.
struct MapKey {
    int i = 0;
    Bidegree source;

    auto operator<=>(const MapKey&) const = default;
};

/// A finitely supported multicomplex of free modules.
///
/// Ranks are positive for every stored bidegree; bidegrees not stored have
/// rank 0. Structure-map components map C_{a,b} to C_{a-i,b+i-1}, with rows
/// indexed by the target basis. Absent and all-zero components are not stored.
class Multicomplex {
public:
    explicit Multicomplex(Ring ring = Ring::rationals()) : ring_(ring) {}

    const Ring& ring() const { return ring_; }

    /// Throws Error on a duplicate bidegree or a rank below 1.
    void add_module(Bidegree bd, int rank);
    /// Sets d_i on C_{source}; dimensions must match the declared ranks.
    /// A zero matrix erases the component. Nonzero maps into rank-0 modules are
    /// rejected.
    void set_map(int i, Bidegree source, const Mat& m);

    int rank(Bidegree bd) const;
    bool has_module(Bidegree bd) const { return ranks_.count(bd) != 0; }
    /// d_i on C_{source}, zero if absent.
    Mat map(int i, Bidegree source) const;
    const Mat* find_map(int i, Bidegree source) const;

    const std::map<Bidegree, int>& ranks() const { return ranks_; }
    const std::map<MapKey, Mat>& maps() const { return maps_; }

    /// Largest i with a nonzero d_i component (0 for an empty map set).
    int maxd() const;
    bool empty() const { return ranks_.empty(); }
    int min_a() const;
    int max_a() const;
    int min_b() const;
    int max_b() const;
    int total_rank() const;

    bool operator==(const Multicomplex& o) const
    {
        return ring_ == o.ring_ && ranks_ == o.ranks_ && maps_ == o.maps_;
    }

private:
    Ring ring_;
    std::map<Bidegree, int> ranks_;
    std::map<MapKey, Mat> maps_;
};

/// A failed relation: sum_{i+j=n} d_i d_j is nonzero on C_{source}.
struct Violation {
    int n = 0;
    Bidegree source;
    Mat composite;
};

/// Checks sum_{i+j=n} d_i d_j = 0 for 0 <= n <= 2 maxd on every bidegree.
std::vector<Violation> validate(const Multicomplex& c);

/// Morphism f = (f_i) with f_i: C_{a,b} -> C'_{a-i,b+i}.
struct MulticomplexMorphism {
    Multicomplex source;
    Multicomplex target;
    std::map<MapKey, Mat> comps;

    /// Sets f_i on C_{source}, validating dimensions against both ends.
    void set_component(int i, Bidegree src, const Mat& m);
    Mat component(int i, Bidegree src) const;
    int maxf() const;
};

/// Checks sum_{i+j=n} f_i d_j = sum_{i+j=n} d'_i f_j on every source bidegree.
/// Violations report the difference of both sides. Throws on ring mismatch.
std::vector<Violation> validate_morphism(const MulticomplexMorphism& f);

/// The same multicomplex with entries reinterpreted in another ring. Throws
/// if an entry is not admissible there (a fraction over Z, a denominator
/// divisible by p).
Multicomplex change_ring(const Multicomplex& c, const Ring& ring);

}  // namespace mcss

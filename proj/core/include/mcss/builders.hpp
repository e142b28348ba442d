#pragma once

#include <cstdint>

#include "mcss/multicomplex.hpp"

namespace mcss {

/// "Staircase" bicomplex with `len` identity d_1 arrows alternating with
/// len-1 identity d_0 arrows (2 len generators). The top-left generator sits
/// at (0, len-1), the bottom-right one at (len, 0).
Multicomplex staircase(int len, const Ring& ring = Ring::rationals());

/// Hurtubise's examples 1-4. Example 2 is staircase(len); the others ignore
/// `len`. Example 3 adds d_2 = id from the bottom-right to the top-left
/// generator of staircase(2). Example 4 has C_{2,0} = <x, y>, C_{1,1} = <z>,
/// C_{1,0} = <d_0 z>, C_{0,1} = <d_1 z, d_2 y>.
Multicomplex hurtubise(int n, const Ring& ring = Ring::rationals(), int len = 3);

/// Parameters of the split metacyclic group <x, y | x^r, y^s, y^-1 x y = x^t>.
struct WallParams {
    long rK = 3;
    long s = 2;
    long t = 2;
    int amax = 8;  ///< first index window 0..amax
};

/// Second-index bound of the Wall window: amax rounded down to an even number,
/// so that truncation keeps every relation intact.
int wall_bmax(const WallParams& p);

/// Wall's multicomplex computing H_*(G; Z), truncated to 0 <= a <= amax,
/// 0 <= b <= wall_bmax. Throws Error unless t^s = 1 mod r.
Multicomplex wall(const WallParams& p);

/// T_b = sum_{j=0}^{s-1} t^{jb}.
mpz_class wall_T(long s, long t, long b);

struct RandomSpec {
    std::uint64_t seed = 0;
    int width = 4;    ///< first index range 0..width-1
    int height = 4;   ///< second index range 0..height-1
    int maxrank = 2;  ///< rank bound per bidegree
    int maxd = 2;     ///< structure maps d_i vanish for i > maxd
    Ring ring = Ring::rationals();
    bool conjugate = true;  ///< apply a random filtration-preserving change of basis
};

/// Random valid multicomplex: a direct sum of randomly placed staircases,
/// elementary pairs and isolated generators, conjugated by a random
/// filtration-preserving automorphism of the total complex. The PRNG is
/// std::mt19937_64 seeded with spec.seed; results are platform independent.
Multicomplex random_mcx(const RandomSpec& spec);

}  // namespace mcss

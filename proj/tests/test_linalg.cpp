#include <gtest/gtest.h>

#include <random>

#include "mcss/linalg.hpp"

using namespace mcss;

namespace {

const Ring Q = Ring::rationals();
const Ring Z = Ring::integers();

Vec vec(std::initializer_list<Scalar> xs) { return Vec(xs); }

}  // namespace

TEST(Scalar, SmallArithmeticStaysExact)
{
    Scalar a = Scalar(1) / 3, b = Scalar(1) / 6;
    EXPECT_EQ(a + b, Scalar(1) / 2);
    EXPECT_EQ((a - b).str(), "1/6");
    EXPECT_EQ(a * 3, 1);
    EXPECT_LT(b, a);
    EXPECT_EQ(-a, Scalar(-1) / 3);
    EXPECT_THROW(a / 0, Error);
}

TEST(Scalar, PromotesOnOverflowAndDemotesBack)
{
    Scalar big = Scalar(std::int64_t{1} << 61);
    Scalar sq = big * big;
    EXPECT_FALSE(sq.is_small());
    EXPECT_EQ(sq.get_num(), mpz_class(1) << 122);
    Scalar back = sq / big;
    EXPECT_TRUE(back.is_small());
    EXPECT_EQ(back, big);
    EXPECT_EQ(sq - sq, 0);
}

TEST(Scalar, MatchesGmpOnRandomOperations)
{
    std::mt19937_64 rng(7);
    auto pick = [&] {
        std::int64_t n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
        std::int64_t d = static_cast<std::int64_t>(rng() % 1000) + 1;
        return std::pair{Scalar(mpq_class(n, d)), mpq_class(n, d)};
    };
    Scalar acc = 1;
    mpq_class ref = 1;
    for (int i = 0; i < 2000; ++i) {
        auto [s, q] = pick();
        q.canonicalize();
        switch (rng() % 4) {
        case 0: acc += s; ref += q; break;
        case 1: acc -= s; ref -= q; break;
        case 2: acc *= s; ref *= q; break;
        default:
            if (q != 0) {
                acc /= s;
                ref /= q;
            }
        }
        if (i % 50 == 0) {  // keep magnitudes from exploding
            acc = 1;
            ref = 1;
        }
        ASSERT_EQ(acc.to_mpq(), ref);
    }
}

TEST(Ring, PrimeFieldNormalizes)
{
    Ring f5 = Ring::prime_field(5);
    EXPECT_EQ(f5.normalize(-1), 4);
    EXPECT_EQ(f5.normalize(Scalar(1) / 2), 3);
    EXPECT_THROW(f5.normalize(Scalar(1) / 5), Error);
    EXPECT_EQ(f5.mul(3, 4), 2);
    EXPECT_EQ(f5.inv(2), 3);
    EXPECT_THROW(Ring::prime_field(4), Error);
    EXPECT_THROW(Z.normalize(Scalar(1) / 2), Error);
}

TEST(Kernel, ZeroMapHasFullKernel)
{
    Submodule k = kernel(Mat(Q, {{0}}));
    EXPECT_EQ(k.ambient(), 1u);
    ASSERT_EQ(k.rank(), 1u);
    EXPECT_EQ(k.gens().col(0), vec({1}));
}

TEST(Kernel, InjectiveMapHasZeroKernel)
{
    Submodule k = kernel(Mat::identity(Ring::prime_field(5), 3));
    EXPECT_EQ(k.ambient(), 3u);
    EXPECT_EQ(k.rank(), 0u);
}

TEST(Kernel, IntegerLattice)
{
    Submodule k = kernel(Mat(Z, {{2, 4}}));
    ASSERT_EQ(k.rank(), 1u);
    Vec g = k.gens().col(0);
    EXPECT_TRUE(g == vec({2, -1}) || g == vec({-2, 1}));
    // Every small solution of 2a + 4b = 0 is an integer multiple of the generator.
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            EXPECT_EQ(k.contains(vec({a, b})), 2 * a + 4 * b == 0) << a << "," << b;
}

TEST(Solve, Examples)
{
    EXPECT_FALSE(solve(Mat(Z, {{2}}), vec({3})));
    auto x = solve(Mat(Q, {{2}}), vec({3}));
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], Scalar(3) / 2);

    Ring f2 = Ring::prime_field(2);
    auto y = solve(Mat(f2, {{1, 1}, {0, 0}}), vec({1, 0}));
    ASSERT_TRUE(y);
    EXPECT_EQ(*y, vec({1, 0}));
    EXPECT_FALSE(solve(Mat(f2, {{1, 1}, {0, 0}}), vec({0, 1})));
}

TEST(Solve, IntegerSystemsWithTransform)
{
    Mat m(Z, {{2, 3}, {4, 5}, {6, 7}});
    auto x = solve(m, vec({5, 9, 13}));
    ASSERT_TRUE(x);
    EXPECT_EQ(m.apply(*x), vec({5, 9, 13}));
    EXPECT_FALSE(solve(m, vec({1, 0, 0})));
}

TEST(Image, Examples)
{
    EXPECT_EQ(image(Mat::zero(Q, 3, 2)).rank(), 0u);
    EXPECT_EQ(image(Mat::identity(Q, 3)), Submodule::full(Q, 3));

    Submodule im = image(Mat(Z, {{2, 4}, {6, 8}}));
    EXPECT_TRUE(im.contains(vec({2, 6})));
    EXPECT_FALSE(im.contains(vec({1, 3})));
    // Brute-force membership against small integer combinations.
    for (int u = -4; u <= 4; ++u)
        for (int v = -4; v <= 4; ++v)
            EXPECT_TRUE(im.contains(vec({2 * u + 4 * v, 6 * u + 8 * v})));
    EXPECT_FALSE(im.contains(vec({2, 0})));
}

TEST(Subquotient, Examples)
{
    EXPECT_EQ(subquotient(Submodule::full(Q, 2), Submodule::zero(Q, 2)).size(), 2u);

    Quotient z2 = subquotient(span(Mat(Z, {{1}, {0}})), span(Mat(Z, {{2}, {0}})));
    ASSERT_EQ(z2.size(), 1u);
    EXPECT_EQ(z2.orders()[0], 2);
    EXPECT_EQ(z2.describe(), "Z/2");

    Quotient q = subquotient(Submodule::full(Q, 2), span(Mat(Q, {{1}, {1}})));
    ASSERT_EQ(q.size(), 1u);
    Vec r1 = q.reduce(vec({1, 0})), r2 = q.reduce(vec({0, 1}));
    EXPECT_FALSE(is_zero(r1));
    EXPECT_EQ(r1, scale(Q, -1, r2));

    EXPECT_THROW(subquotient(span(Mat(Z, {{2}, {0}})), span(Mat(Z, {{1}, {0}}))), Error);
}

TEST(Subquotient, MixedTorsionAndFree)
{
    // Z^3 / <(2,0,0), (0,4,0)> = Z/2 + Z/4 + Z.
    Mat b(Z, {{2, 0}, {0, 4}, {0, 0}});
    Quotient q = subquotient(Submodule::full(Z, 3), span(b));
    EXPECT_EQ(q.describe(), "Z/2 ⊕ Z/4 ⊕ Z^1");
    EXPECT_EQ(q.free_rank(), 1u);
    EXPECT_EQ(q.torsion_order(), 8);
    EXPECT_TRUE(is_zero(q.reduce(vec({2, 4, 0}))));
    EXPECT_FALSE(is_zero(q.reduce(vec({0, 2, 0}))));
    for (std::size_t j = 0; j < q.size(); ++j)
        EXPECT_EQ(q.reduce(q.lift(j)), q.normalize(unit_vec(q.size(), j)));
}

TEST(Snf, Examples)
{
    SmithForm id = snf(Mat::identity(Z, 3));
    EXPECT_EQ(id.D, Mat::identity(Z, 3));

    Mat m(Z, {{2, 4}, {6, 8}});
    SmithForm s = snf(m);
    EXPECT_EQ(s.D, Mat(Z, {{2, 0}, {0, 4}}));
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(determinant(s.U).get_num()), 1);
    EXPECT_EQ(abs(determinant(s.V).get_num()), 1);

    EXPECT_TRUE(snf(Mat::zero(Z, 2, 3)).D.is_zero());
}

TEST(Snf, RandomMatricesSatisfyDivisibilityChain)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        Mat m(Z, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.set(i, j, static_cast<long>(rng() % 13) - 6);
        SmithForm s = snf(m);
        ASSERT_EQ(s.U * m * s.V, s.D);
        ASSERT_EQ(abs(determinant(s.U).get_num()), 1);
        ASSERT_EQ(abs(determinant(s.V).get_num()), 1);
        const std::size_t k = std::min(r, c);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            mpz_class a = s.D(i, i).get_num(), b = s.D(i + 1, i + 1).get_num();
            ASSERT_GE(a, 0);
            if (a == 0)
                ASSERT_EQ(b, 0);
            else
                ASSERT_TRUE(mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()));
        }
        EXPECT_EQ(rank(m), rank(s.D));
    }
}

TEST(Submodule, CanonicalFormIsBasisIndependent)
{
    Mat a(Q, {{1, 2}, {2, 4}, {0, 1}});
    Mat b(Q, {{3, 1}, {6, 2}, {1, 0}});
    EXPECT_EQ(span(a), span(b));
    Mat za(Z, {{2, 0}, {0, 3}});
    Mat zb(Z, {{4, 0}, {0, 3}});
    EXPECT_NE(span(za), span(zb));
    EXPECT_EQ(span(za), span(Mat(Z, {{2, 2}, {0, 3}})));
    EXPECT_TRUE(span(za).contains(span(Mat(Z, {{4}, {9}}))));
    EXPECT_FALSE(span(za).contains(span(Mat(Z, {{1}, {0}}))));
}

TEST(Submodule, SumAndMap)
{
    Submodule a = span(Mat(Z, {{2}, {0}}));
    Submodule b = span(Mat(Z, {{3}, {0}}));
    EXPECT_EQ(sum(a, b), span(Mat(Z, {{1}, {0}})));
    Submodule m = map_submodule(Mat(Z, {{1, 1}}), Submodule::full(Z, 2));
    EXPECT_EQ(m, Submodule::full(Z, 1));
}

TEST(Inverse, IntegerRequiresUnimodular)
{
    EXPECT_FALSE(inverse(Mat(Z, {{2}})));
    auto inv = inverse(Mat(Z, {{2, 1}, {1, 1}}));
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv, Mat(Z, {{1, -1}, {-1, 2}}));
    auto qinv = inverse(Mat(Q, {{2}}));
    ASSERT_TRUE(qinv);
    EXPECT_EQ((*qinv)(0, 0), Scalar(1) / 2);
}

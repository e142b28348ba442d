#include <gtest/gtest.h>

#include "mcss/builders.hpp"
#include "mcss/mcx_format.hpp"

using namespace mcss;

namespace {

const Ring Q = Ring::rationals();

int parse_error_line(const std::string& text)
{
    try {
        parse_mcx(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(Multicomplex, RejectsBadDeclarations)
{
    Multicomplex c(Q);
    c.add_module({0, 0}, 1);
    EXPECT_THROW(c.add_module({0, 0}, 2), Error);
    EXPECT_THROW(c.add_module({1, 0}, 0), Error);
    c.add_module({1, 0}, 2);
    EXPECT_THROW(c.set_map(1, {1, 0}, Mat(Q, {{1}})), Error);           // wrong shape
    EXPECT_THROW(c.set_map(0, {1, 0}, Mat(Q, {{1, 0}})), Error);        // target (1,-1) absent
    EXPECT_NO_THROW(c.set_map(0, {1, 0}, Mat(Q, 0, 2)));                // zero map is fine
    c.set_map(1, {1, 0}, Mat(Q, {{1, 2}}));
    EXPECT_EQ(c.maxd(), 1);
    c.set_map(1, {1, 0}, Mat::zero(Q, 1, 2));
    EXPECT_EQ(c.maps().size(), 0u);
}

TEST(Validate, BuildersAreValid)
{
    EXPECT_TRUE(validate(staircase(2)).empty());
    EXPECT_TRUE(validate(staircase(5)).empty());
    for (int n = 1; n <= 4; ++n)
        EXPECT_TRUE(validate(hurtubise(n)).empty()) << n;
    EXPECT_TRUE(validate(wall({3, 2, 2, 8})).empty());
}

TEST(Validate, FlippedSignIsReported)
{
    // Staircase generators in the bottom row are sinks, so no composite is
    // ever nonzero there; an anticommuting square is the smallest case.
    Multicomplex c(Q);
    for (Bidegree bd : {Bidegree{1, 1}, Bidegree{1, 0}, Bidegree{0, 1}, Bidegree{0, 0}})
        c.add_module(bd, 1);
    c.set_map(0, {1, 1}, Mat(Q, {{1}}));
    c.set_map(1, {1, 1}, Mat(Q, {{1}}));
    c.set_map(1, {1, 0}, Mat(Q, {{1}}));
    c.set_map(0, {0, 1}, Mat(Q, {{-1}}));
    EXPECT_TRUE(validate(c).empty());

    c.set_map(0, {0, 1}, Mat(Q, {{1}}));
    auto v = validate(c);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].n, 1);
    EXPECT_EQ(v[0].source, (Bidegree{1, 1}));
    EXPECT_EQ(v[0].composite, Mat(Q, {{2}}));
}

TEST(Validate, DetectsSecondOrderRelation)
{
    // d_0 d_2 + d_1 d_1 + d_2 d_0 = 0 fails when d_2 is perturbed on Wall.
    Multicomplex c = wall({3, 2, 2, 4});
    c.set_map(2, {2, 1}, Mat(Ring::integers(), {{5}}));
    auto v = validate(c);
    ASSERT_FALSE(v.empty());
    bool n2 = false;
    for (const auto& x : v)
        n2 = n2 || x.n == 2;
    EXPECT_TRUE(n2);
}

TEST(Morphism, IdentityAndZeroAreValid)
{
    Multicomplex c = staircase(2);
    MulticomplexMorphism id{c, c, {}};
    for (const auto& [bd, k] : c.ranks())
        id.set_component(0, bd, Mat::identity(Q, static_cast<std::size_t>(k)));
    EXPECT_TRUE(validate_morphism(id).empty());
    MulticomplexMorphism zero{c, c, {}};
    EXPECT_TRUE(validate_morphism(zero).empty());
}

TEST(Morphism, SignMismatchIsReported)
{
    Multicomplex a = staircase(2);
    Multicomplex b = staircase(2);
    b.set_map(1, {1, 1}, Mat(Q, {{-1}}));
    ASSERT_TRUE(validate(b).empty());
    MulticomplexMorphism f{a, b, {}};
    for (const auto& [bd, k] : a.ranks())
        f.set_component(0, bd, Mat::identity(Q, static_cast<std::size_t>(k)));
    auto v = validate_morphism(f);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].n, 1);
    EXPECT_THROW(validate_morphism(MulticomplexMorphism{a, change_ring(b, Ring::integers()), {}}), Error);
}

TEST(Format, MinimalFileIsEmpty)
{
    Multicomplex c = parse_mcx("mcx 1\nring Q\n");
    EXPECT_TRUE(c.empty());
    EXPECT_EQ(c.ring(), Q);
}

TEST(Format, RoundTrip)
{
    for (const Ring& r : {Q, Ring::integers(), Ring::prime_field(7)}) {
        Multicomplex c = hurtubise(4, r);
        EXPECT_EQ(parse_mcx(emit_mcx(c)), c);
    }
    Multicomplex w = wall({5, 4, 2, 6});
    EXPECT_EQ(parse_mcx(emit_mcx(w)), w);
    EXPECT_EQ(emit_mcx(parse_mcx(emit_mcx(w))), emit_mcx(w));
}

TEST(Format, CommentsAndRationals)
{
    Multicomplex c = parse_mcx("# header\nmcx 1\nring Q  # rationals\nmodule 0 0 1\nmodule 1 0 1\nmap 1 1 0 : -3/6\n");
    EXPECT_EQ(c.map(1, {1, 0})(0, 0), Scalar(-1) / 2);
    EXPECT_EQ(parse_mcx("mcx 1\nring F 5\nmodule 0 0 1\nmodule 1 0 1\nmap 1 1 0 : 7\n").map(1, {1, 0})(0, 0), 2);
}

TEST(Format, Errors)
{
    EXPECT_EQ(parse_error_line("mcx 1\nring Q\nmodule 0 0 1\nmodule 1 0 1\nmap 1 1 0 : 1/0\n"), 5);
    EXPECT_EQ(parse_error_line("mcx 2\n"), 1);
    EXPECT_EQ(parse_error_line("mcx 1\nring R\n"), 2);
    EXPECT_EQ(parse_error_line("mcx 1\nring Z\nmodule 0 0 1\nmodule 1 0 1\nmap 1 1 0 : 1/2\n"), 5);
    EXPECT_EQ(parse_error_line("mcx 1\nring Q\nmodule 0 0 1\nmodule 0 0 1\n"), 4);
    EXPECT_EQ(parse_error_line("mcx 1\nring Q\nmodule 0 0 2\nmodule 1 0 1\nmap 1 1 0 : 1\n"), 5);
    EXPECT_EQ(parse_error_line("mcx 1\nring Q\nmodule 1 0 1\nmap 1 1 0 : 1\n"), 4);
    EXPECT_EQ(parse_error_line("mcx 1\nring Q\nfrobnicate\n"), 3);
    EXPECT_EQ(parse_error_line("mcx 1\nring F 6\n"), 2);
}

TEST(Format, ZeroMapIntoMissingModuleIsIgnored)
{
    Multicomplex c = parse_mcx("mcx 1\nring Q\nmodule 1 0 1\nmap 1 1 0 : 0\n");
    EXPECT_TRUE(c.maps().empty());
}

TEST(ChangeRing, RefusesInadmissibleEntries)
{
    Multicomplex c = parse_mcx("mcx 1\nring Q\nmodule 0 0 1\nmodule 1 0 1\nmap 1 1 0 : 1/3\n");
    EXPECT_THROW(change_ring(c, Ring::integers()), Error);
    EXPECT_THROW(change_ring(c, Ring::prime_field(3)), Error);
    EXPECT_EQ(change_ring(c, Ring::prime_field(5)).map(1, {1, 0})(0, 0), 2);
}

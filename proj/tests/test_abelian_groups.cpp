#include "gradecat/abelian_group.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace gradecat;

namespace {

void expect_smith(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) { EXPECT_EQ(s.D(i, j), 0); }
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_GE(d[i], 0);
        if (i + 1 < d.size()) {
            if (d[i] == 0) EXPECT_EQ(d[i + 1], 0);
            else EXPECT_EQ(d[i + 1] % d[i], 0);
        }
    }
}

// all endomorphisms of a finite group as generator image tuples, filtered by bijectivity
std::size_t brute_force_aut_count(const AbelianGroup& t) {
    auto elems = t.elements();
    const std::size_t n = t.num_coords();
    std::size_t count = 0;
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        std::vector<GroupElement> im;
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j) {
            im.push_back(elems[pick[j]]);
            if (!t.scale(t.modulus(j), im.back()).is_zero()) ok = false;
        }
        if (ok && GroupHomomorphism(t, t, im).is_bijective()) ++count;
        std::size_t j = 0;
        while (j < n && ++pick[j] == elems.size()) pick[j++] = 0;
        if (j == n) break;
    }
    return count;
}

std::size_t brute_force_characters(const AbelianGroup& t, std::int64_t m) {
    // maps generators -> Z_m respecting orders
    std::size_t count = 1;
    for (auto ti : t.torsion()) {
        std::size_t c = 0;
        for (std::int64_t v = 0; v < m; ++v)
            if ((ti * v) % m == 0) ++c;
        count *= c;
    }
    return count;
}

}  // namespace

TEST(Combine, ElementaryTwoGroup) {
    AbelianGroup g(0, {2, 2});
    EXPECT_EQ(combine(g.element({1, 0}), g.element({1, 1})), g.element({0, 1}));
}

TEST(Combine, MixedFreeTorsion) {
    AbelianGroup g(1, {2});
    EXPECT_EQ(combine(g.element({3, 1}), g.element({-1, 1})), g.element({2, 0}));
}

TEST(Combine, CyclicFour) {
    AbelianGroup g(0, {4});
    EXPECT_EQ(combine(g.element({3}), g.element({3})), g.element({2}));
}

TEST(Combine, RejectsMismatchedParents) {
    AbelianGroup a(0, {2}), b(0, {4});
    EXPECT_THROW(combine(a.element({1}), b.element({1})), std::invalid_argument);
}

TEST(Smith, Identity) {
    auto s = smith_normal_form(IntMatrix::identity(2));
    EXPECT_EQ(s.D, IntMatrix::identity(2));
    expect_smith(IntMatrix::identity(2));
}

TEST(Smith, DiagTwoThree) {
    auto m = to_int_matrix({{2, 0}, {0, 3}}, 2);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.D, to_int_matrix({{1, 0}, {0, 6}}, 2));
    expect_smith(m);
}

TEST(Smith, TwoFourSixEight) {
    auto m = to_int_matrix({{2, 4}, {6, 8}}, 2);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.D, to_int_matrix({{2, 0}, {0, 4}}, 2));
    EXPECT_EQ(abs(determinant(m)), 8);
    expect_smith(m);
}

TEST(Smith, RandomMatricesProperty) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(-6, 6), dim(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = val(rng);
        expect_smith(m);
    }
}

TEST(AbelianGroupType, NormalFormAndPretty) {
    auto g = AbelianGroup::from_orders(3, {2});
    EXPECT_EQ(g.pretty(), "ℤ^3 × ℤ_2");
    EXPECT_EQ(AbelianGroup::from_orders(0, {6, 2}), AbelianGroup(0, {2, 6}));
    EXPECT_EQ(AbelianGroup::from_orders(0, {2, 3}), AbelianGroup(0, {6}));
    EXPECT_EQ(AbelianGroup().pretty(), "1");
    EXPECT_EQ(AbelianGroup(0, {2, 2, 2, 4}).pretty(), "ℤ_2^3 × ℤ_4");
    EXPECT_THROW(AbelianGroup(0, {4, 2}), std::invalid_argument);
    EXPECT_EQ(AbelianGroup::parse("Z3xZ3"), AbelianGroup(0, {3, 3}));
    EXPECT_EQ(AbelianGroup::parse("Z2^3"), AbelianGroup(0, {2, 2, 2}));
    EXPECT_EQ(AbelianGroup::parse("ZxZ2xZ4"), AbelianGroup(1, {2, 4}));
    EXPECT_EQ(AbelianGroup(1, {2, 4}).ascii(), "ZxZ2xZ4");
}

TEST(AbelianGroupType, EnumerationRoundTrip) {
    AbelianGroup g(0, {2, 4, 12});
    auto elems = g.elements();
    ASSERT_EQ(elems.size(), 96u);
    for (std::size_t i = 0; i < elems.size(); ++i) EXPECT_EQ(g.index_of(elems[i]), i);
}

TEST(Universal, EmptyRelationsGiveFreeGroup) {
    auto u = universal_abelian_group(3, {});
    EXPECT_EQ(u.group, AbelianGroup::free(3));
}

TEST(Universal, QuotientByDiagonalRelations) {
    // Z^2 / <(2,0),(0,4)> and a redundant combination
    auto u = universal_abelian_group(2, {{2, 0}, {0, 4}, {2, 4}});
    EXPECT_EQ(u.group, AbelianGroup(0, {2, 4}));
    EXPECT_EQ(u.group.order_of(u.label_images[0]), 2);
    EXPECT_EQ(u.group.order_of(u.label_images[1]), 4);
}

TEST(Universal, InvariantUnderPermutationAndRowOperations) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<std::int64_t>> rel(3, std::vector<std::int64_t>(4));
        for (auto& r : rel)
            for (auto& x : r) x = val(rng);
        auto base = universal_abelian_group(4, rel).group;
        // permute generators
        auto perm = rel;
        for (auto& r : perm) std::swap(r[0], r[3]);
        EXPECT_EQ(universal_abelian_group(4, perm).group, base);
        // row operation
        auto ops = rel;
        for (std::size_t j = 0; j < 4; ++j) ops[1][j] += 3 * ops[0][j];
        std::swap(ops[1], ops[2]);
        EXPECT_EQ(universal_abelian_group(4, ops).group, base);
    }
}

TEST(Universal, LabelImagesRespectRelations) {
    std::vector<std::vector<std::int64_t>> rel{{1, -1, 0}, {0, 2, 2}, {3, 0, 0}};
    auto u = universal_abelian_group(3, rel);
    for (auto& r : rel) {
        auto sum = u.group.zero();
        for (std::size_t j = 0; j < 3; ++j) sum = u.group.add(sum, u.group.scale(r[j], u.label_images[j]));
        EXPECT_TRUE(sum.is_zero());
    }
}

TEST(Automorphisms, CyclicTwo) { EXPECT_EQ(automorphism_group(AbelianGroup(0, {2})).size(), 1u); }

TEST(Automorphisms, KleinFourMatchesBruteForce) {
    AbelianGroup g(0, {2, 2});
    EXPECT_EQ(brute_force_aut_count(g), 6u);
    EXPECT_EQ(automorphism_group(g).size(), 6u);
}

TEST(Automorphisms, Z3SquaredIsGL23) {
    AbelianGroup g(0, {3, 3});
    EXPECT_EQ(brute_force_aut_count(g), 48u);
    EXPECT_EQ(automorphism_group(g).size(), 48u);
}

TEST(Automorphisms, MatchesBruteForceOnMixedGroups) {
    for (auto g : {AbelianGroup(0, {2, 4}), AbelianGroup(0, {4, 4}), AbelianGroup(0, {2, 2, 2}), AbelianGroup(0, {6})})
        EXPECT_EQ(automorphism_group(g).size(), brute_force_aut_count(g)) << g.pretty();
}

TEST(Automorphisms, FormAGroup) {
    AbelianGroup g(0, {2, 4});
    auto auts = automorphism_group(g);
    auto in_list = [&](const GroupHomomorphism& f) { return std::find(auts.begin(), auts.end(), f) != auts.end(); };
    EXPECT_TRUE(in_list(GroupHomomorphism::identity(g)));
    for (auto& f : auts) {
        bool has_inverse = false;
        for (auto& h : auts) {
            EXPECT_TRUE(in_list(f.compose(h)));
            if (f.compose(h) == GroupHomomorphism::identity(g)) has_inverse = true;
        }
        EXPECT_TRUE(has_inverse);
    }
}

TEST(Automorphisms, BoundEnforced) {
    EXPECT_THROW(automorphism_group(AbelianGroup(0, {2, 2, 2, 2, 2, 2, 2, 2, 2})), std::domain_error);
    EXPECT_THROW(automorphism_group(AbelianGroup::free(1)), std::domain_error);
}

TEST(SquareSubgroup, ElementaryTwoGroup) {
    auto s = square_subgroup(AbelianGroup(0, {2, 2, 2}));
    EXPECT_TRUE(s.subgroup.is_trivial());
    EXPECT_EQ(s.quotient, AbelianGroup(0, {2, 2, 2}));
}

TEST(SquareSubgroup, TwoTimesFour) {
    AbelianGroup t(0, {2, 4});
    auto s = square_subgroup(t);
    std::set<std::vector<std::int64_t>> squares;
    for (auto& x : t.elements()) squares.insert(t.scale(2, x).coords());
    EXPECT_EQ(squares.size(), 2u);
    EXPECT_EQ(s.subgroup, AbelianGroup(0, {2}));
    EXPECT_EQ(s.elements.size(), squares.size());
    EXPECT_EQ(s.quotient, AbelianGroup(0, {2, 2}));
    std::vector<GroupElement> gens;
    for (auto& x : s.elements) gens.push_back(x);
    EXPECT_EQ(quotient_group(t, gens).group, s.quotient);
}

TEST(SquareSubgroup, FourSquared) {
    AbelianGroup t(0, {4, 4});
    std::set<std::vector<std::int64_t>> squares;
    for (auto& x : t.elements()) squares.insert(t.scale(2, x).coords());
    EXPECT_EQ(squares.size(), 4u);
    EXPECT_EQ(square_subgroup(t).quotient, AbelianGroup(0, {2, 2}));
}

TEST(CharacterGroup, Examples) {
    EXPECT_EQ(character_group(AbelianGroup(0, {2, 2}), 2), AbelianGroup(0, {2, 2}));
    EXPECT_EQ(brute_force_characters(AbelianGroup(0, {2, 2}), 2), 4u);
    EXPECT_TRUE(character_group(AbelianGroup(0, {3}), 2).is_trivial());
    EXPECT_EQ(character_group(AbelianGroup(0, {2, 4}), 2), AbelianGroup(0, {2, 2}));
    EXPECT_EQ(brute_force_characters(AbelianGroup(0, {2, 4}), 2), 4u);
}

TEST(CharacterGroup, CountMatchesEvenFactors) {
    // all finite groups of order <= 64 with factors from {2,3,4,6,8}
    std::vector<std::vector<std::int64_t>> shapes{{},     {2},       {3},       {4},     {2, 2},    {2, 4},
                                                  {6},    {2, 6},    {3, 6},    {4, 4},  {2, 2, 2}, {2, 2, 4},
                                                  {2, 8}, {8},       {2, 2, 2, 2}, {2, 4, 4}, {2, 2, 2, 2, 2}, {2, 2, 2, 2, 4}};
    for (auto& sh : shapes) {
        AbelianGroup t(0, sh);
        std::size_t even = std::count_if(sh.begin(), sh.end(), [](auto m) { return m % 2 == 0; });
        EXPECT_EQ(character_group(t, 2).order(), 1ull << even);
        EXPECT_EQ(character_group(t, 2).order(), brute_force_characters(t, 2));
    }
}

TEST(Census, ReconstructsGroups) {
    for (auto g : {AbelianGroup(0, {2, 4}), AbelianGroup(0, {3, 3}), AbelianGroup(0, {2, 2, 2}), AbelianGroup(0, {12}),
                   AbelianGroup()}) {
        std::map<std::int64_t, std::uint64_t> census;
        for (auto& x : g.elements()) ++census[g.order_of(x)];
        EXPECT_EQ(abelian_from_census(census), g);
    }
}

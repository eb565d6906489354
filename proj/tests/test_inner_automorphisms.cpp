#include "gradecat/inner_automorphisms.hpp"
#include "gradecat/fixtures.hpp"

#include <gtest/gtest.h>

using namespace gradecat;

namespace {

template <class C>
StructureConstantAlgebra standard_sca(const std::string& ref, std::size_t k) {
    auto d = std::get<DivisionAlgebra<C>>(canonical(ref));
    return GradedMatrixAlgebra<C>(d, make_standard_params(k, d.support())).to_structure_algebra();
}

StructureConstantAlgebra sca_of(const std::string& ref, std::size_t k) {
    return std::visit(
        [&](const auto& d) {
            return GradedMatrixAlgebra(d, make_standard_params(k, d.support())).to_structure_algebra();
        },
        canonical(ref));
}

// M_2(Q) graded by Z with deg E_ij = j - i
StructureConstantAlgebra integer_m2() {
    auto d = std::get<DivisionAlgebra<Rational>>(canonical("1-a:1"));
    AbelianGroup g = AbelianGroup::free(1), t;
    GradingParams p(g, t, GroupHomomorphism(t, g, {}), {g.element({0}), g.element({1})});
    return GradedMatrixAlgebra<Rational>(d, p).to_structure_algebra();
}

StructureConstantAlgebra hamilton() {
    return quaternion_sca(std::get<DivisionAlgebra<Rational>>(canonical("1-b:Z2^2")));
}

RationalVector add(RationalVector a, const RationalVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

TEST(IntInStabilizer, HomogeneousUnitsStabilize) {
    auto h = hamilton();
    for (std::size_t i = 0; i < h.dim(); ++i) EXPECT_TRUE(int_in_stabilizer(h, h.basis(i)));
    auto r = standard_sca<Rational>("1-c:Z2^3", 1);
    for (std::size_t i = 0; i < r.dim(); ++i) EXPECT_TRUE(int_in_stabilizer(r, r.basis(i)));
}

TEST(IntInStabilizer, UnipotentInIntegerGradingDoesNot) {
    auto a = integer_m2();
    // basis order E11, E12, E21, E22
    auto x = add(a.unity(), a.basis(1));
    EXPECT_FALSE(int_in_stabilizer(a, x));
    auto diag = add(a.basis(0), a.basis(3));
    diag[3] = 5;
    EXPECT_TRUE(int_in_stabilizer(a, diag));
}

TEST(IntInStabilizer, NonInvertibleThrows) {
    auto a = integer_m2();
    EXPECT_THROW(int_in_stabilizer(a, a.basis(1)), std::invalid_argument);
    EXPECT_THROW(int_in_stabilizer(a, a.zero()), std::invalid_argument);
}

TEST(HomogeneousWitness, HomogeneousIsItsOwnWitness) {
    auto h = hamilton();
    auto x = h.basis(2);
    x[2] = 3;
    auto w = homogeneous_witness(h, x);
    ASSERT_TRUE(w);
    ASSERT_EQ(w.components.size(), 1u);
    EXPECT_EQ(w.components[0].value, x);
}

TEST(HomogeneousWitness, CentralSumInConjugatingType) {
    // T = Z_4 = <c>, X_c acts by conjugation, X_c^2 central with X_c^4 = -1
    auto d = std::get<DivisionAlgebra<Cyclotomic>>(canonical("2-e:Z4"));
    GradedMatrixAlgebra<Cyclotomic> r(d, make_standard_params(1, d.support()));
    auto a = r.to_structure_algebra();
    auto c = d.index(d.support().generator(0));
    auto two_c = d.add(c, c);
    auto central = r.add(r.one(), r.unit(0, 0, two_c));
    auto u = r.unit(0, 0, d.add(c, two_c), Cyclotomic::zeta(4, 1) + Cyclotomic(2));
    auto x = a.multiply(r.to_vector(central), r.to_vector(u));
    ASSERT_TRUE(int_in_stabilizer(a, x));
    auto w = homogeneous_witness(a, x);
    ASSERT_TRUE(w);
    EXPECT_EQ(w.components.size(), 2u);
    for (auto& comp : w.components) EXPECT_TRUE(a.is_invertible(comp.value));
}

TEST(HomogeneousWitness, PreconditionChecked) {
    auto a = integer_m2();
    EXPECT_THROW(homogeneous_witness(a, add(a.unity(), a.basis(1))), std::invalid_argument);
}

TEST(InnerQuotient, ExpectedGroups) {
    const std::vector<std::pair<std::string, AbelianGroup>> cases{
        {"1-b:Z2^2", AbelianGroup(0, {2, 2})},      {"1-d:Z2xZ4", AbelianGroup(0, {2, 2})},
        {"2-e:Z4", AbelianGroup(0, {2})},           {"2-d:Z2^2xZ4", AbelianGroup(0, {2, 2, 2})},
        {"3-d:Z2xZ4", AbelianGroup(0, {2, 2})},     {"2-f:Z3^2", AbelianGroup(0, {3, 3})},
        {"1-a:1", AbelianGroup()},                  {"1-c:Z2^3", AbelianGroup(0, {2, 2})}};
    for (auto& [ref, expected] : cases) {
        auto q = inner_stabilizer_quotient(sca_of(ref, 1));
        EXPECT_EQ(q.group, expected) << ref << " got " << q.group.pretty();
        EXPECT_EQ(q.unit_degrees.size(), q.central_degrees.size() * q.group.order()) << ref;
        EXPECT_LE(q.generators.size(), q.group.num_coords() + 1) << ref;
    }
}

TEST(InnerQuotient, DivisionQuotientMatchesStabilizerForInnerTypes) {
    // (1-d): T / T^[2]
    auto q = inner_stabilizer_quotient(sca_of("1-d:Z2^3xZ4", 1));
    EXPECT_EQ(q.group, square_subgroup(AbelianGroup(0, {2, 2, 2, 4})).quotient);
}

TEST(InnerQuotient, MatrixLevelUnitsAreDiagonal) {
    auto q = inner_stabilizer_quotient(sca_of("1-a:1", 2));
    EXPECT_EQ(q.group, AbelianGroup());
    auto q2 = inner_stabilizer_quotient(sca_of("1-a:Z2^2", 2));
    EXPECT_EQ(q2.group, AbelianGroup(0, {2, 2}));
}

TEST(InnerQuotient, RejectsNonGradedSimple) {
    auto h = hamilton();
    EXPECT_THROW(inner_stabilizer_quotient(direct_sum(h, h)), std::invalid_argument);
}

TEST(HxH, AllThreeSubClaims) {
    auto r = hxh_counterexample(hamilton());
    EXPECT_FALSE(r.graded_simple);
    EXPECT_TRUE(r.int_ii_stabilizes);
    EXPECT_TRUE(r.invertible_homogeneous_all_central);
    EXPECT_FALSE(r.witness_found);
    EXPECT_TRUE(r.passes());
}

TEST(HxH, ComponentsOfIiAreZeroDivisors) {
    auto h = hamilton();
    auto a = direct_sum(h, h);
    std::size_t i = 1;
    auto x = a.basis(i);
    x[h.dim() + i] = 1;
    auto parts = a.homogeneous_parts(x);
    ASSERT_EQ(parts.size(), 2u);
    for (auto& [g, v] : parts) EXPECT_FALSE(a.is_invertible(v));
    EXPECT_TRUE(a.is_invertible(x));
}

TEST(Bridge, CatalogDivisionAlgebrasExport) {
    for (auto& ref : fixture_catalog_refs()) {
        auto any = canonical(ref);
        if (support_of(any).order() > 4) continue;
        std::visit(
            [&](const auto& d) {
                GradedMatrixAlgebra r(d, make_standard_params(1, d.support()));
                auto a = r.to_structure_algebra();
                EXPECT_NO_THROW(a.validate()) << ref;
            },
            any);
    }
}

TEST(GradedSimple, MatrixFixturesYesDirectSumsNo) {
    for (auto ref : {"1-a:1", "1-b:Z2^2", "1-c:Z2", "2-e:Z4", "2-f:Z3^2", "3-a:1"})
        EXPECT_TRUE(sca_of(ref, 1).is_graded_simple()) << ref;
    for (auto ref : {"1-a:1", "1-c:Z2", "3-a:1"}) EXPECT_TRUE(sca_of(ref, 2).is_graded_simple()) << ref << " k=2";
    auto pauli = sca_of("1-a:Z2^2", 1);
    EXPECT_FALSE(direct_sum(pauli, pauli).is_graded_simple());
    auto c = sca_of("1-c:Z2", 1);
    EXPECT_FALSE(direct_sum(c, c).is_graded_simple());
    auto h = hamilton();
    EXPECT_FALSE(direct_sum(h, h).is_graded_simple());
}

TEST(TheoremSampling, HypothesisClassOnFixtures) {
    const std::vector<std::pair<std::string, std::size_t>> fixtures{
        {"1-c:Z2", 2}, {"1-c:Z2^3", 1}, {"2-e:Z4", 1}, {"2-e:Z4", 2}, {"1-b:Z2^2", 1}, {"1-d:Z2xZ4", 1}, {"2-f:Z3^2", 1}};
    std::size_t total = 0, multi = 0;
    std::uint64_t seed = 17;
    for (auto& [ref, k] : fixtures) {
        auto a = sca_of(ref, k);
        ASSERT_TRUE(a.is_graded_simple()) << ref;
        auto st = sample_inner_theorem(a, 16, seed++);
        EXPECT_EQ(st.failures, 0u) << ref << ": " << (st.messages.empty() ? "" : st.messages.front());
        total += st.samples;
        multi += st.multi_component;
    }
    EXPECT_GE(total, 100u);
    EXPECT_GT(multi, 0u);
}

#pragma once

#include "gradecat/automorphisms.hpp"
#include "gradecat/catalog.hpp"
#include "gradecat/classify.hpp"
#include "gradecat/fixtures.hpp"
#include "gradecat/graded_matrix.hpp"
#include "gradecat/inner_automorphisms.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace gradecat {

struct Check {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }
};

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"inner-aut", "idempotents", "squares", "universal", "weyl", "stab"};
    return s;
}

namespace detail {

struct MatrixCase {
    std::string ref;
    std::size_t k;
};

inline const std::vector<MatrixCase>& matrix_cases() {
    static const std::vector<MatrixCase> c{
        {"1-a:1", 1},       {"1-a:1", 2},    {"1-a:1", 4},     {"1-a:Z2^2", 2},    {"1-b:Z2^2", 3},  {"1-c:Z2", 3},
        {"1-c:Z2", 4},      {"1-c:Z2^3", 2}, {"1-d:Z2xZ4", 2}, {"1-d:Z2^3xZ4", 1}, {"2-f:Z3^2", 2},  {"2-f:Z4^2", 1},
        {"2-a:Z2", 2},      {"2-e:Z4", 3},   {"2-d:Z2^2xZ4", 1}, {"3-a:Z2^2", 2},  {"3-c:Z2", 2},    {"3-d:Z2xZ4", 1}};
    return c;
}

template <class F>
void with_matrix_algebra(const MatrixCase& c, F f) {
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            GradedMatrixAlgebra<typename D::Scalar> r(d, make_standard_params(c.k, d.support()));
            f(r);
        },
        canonical(c.ref));
}

inline std::string case_name(const MatrixCase& c) { return c.ref + " k=" + std::to_string(c.k); }

inline std::set<std::vector<std::vector<std::int64_t>>> image_set(const WeylDivision& w) {
    std::set<std::vector<std::vector<std::int64_t>>> out;
    for (auto& f : w.elements) {
        std::vector<std::vector<std::int64_t>> im;
        for (auto& x : f.images()) im.push_back(x.coords());
        out.insert(im);
    }
    return out;
}

inline VerifyReport suite_inner_aut(std::uint64_t seed) {
    VerifyReport rep;
    const std::vector<MatrixCase> fixtures{{"1-c:Z2", 2},   {"1-c:Z2^3", 1},  {"2-e:Z4", 1},  {"2-e:Z4", 2},
                                           {"1-b:Z2^2", 1}, {"1-d:Z2xZ4", 1}, {"2-f:Z3^2", 1}};
    std::size_t total = 0, multi = 0;
    for (std::size_t n = 0; n < fixtures.size(); ++n) {
        auto a = std::visit(
            [&](const auto& d) {
                return GradedMatrixAlgebra(d, make_standard_params(fixtures[n].k, d.support())).to_structure_algebra();
            },
            canonical(fixtures[n].ref));
        Check c{"inner-aut", "theorem " + case_name(fixtures[n]), false, ""};
        if (!a.is_graded_simple()) {
            c.detail = "fixture is not graded-simple";
        } else {
            auto st = sample_inner_theorem(a, 16, seed + n);
            total += st.samples;
            multi += st.multi_component;
            c.pass = st.failures == 0;
            c.detail = std::to_string(st.samples) + " samples, " + std::to_string(st.multi_component) +
                       " with several components" + (st.messages.empty() ? "" : "; " + st.messages.front());
        }
        rep.checks.push_back(c);
    }
    rep.checks.push_back({"inner-aut", "sample volume", total >= 100 && multi > 0,
                          std::to_string(total) + " samples, " + std::to_string(multi) + " multi-component"});
    auto h = quaternion_sca(std::get<DivisionAlgebra<Rational>>(canonical("1-b:Z2^2")));
    auto x = hxh_counterexample(h);
    rep.checks.push_back({"inner-aut", "HxH not graded-simple", !x.graded_simple, ""});
    rep.checks.push_back({"inner-aut", "HxH Int(i,i) stabilizes", x.int_ii_stabilizes, ""});
    rep.checks.push_back({"inner-aut", "HxH invertible homogeneous elements central",
                          x.invertible_homogeneous_all_central, ""});
    rep.checks.push_back({"inner-aut", "HxH has no homogeneous witness", !x.witness_found, ""});
    return rep;
}

inline VerifyReport suite_idempotents() {
    VerifyReport rep;
    const std::vector<MatrixCase> cases{{"1-a:1", 1}, {"1-a:1", 2},  {"1-a:1", 3},    {"1-a:1", 4},
                                        {"1-a:1", 5}, {"1-c:Z2", 3}, {"1-b:Z2^2", 2}, {"1-d:Z2xZ4", 3}};
    for (auto& c : cases)
        with_matrix_algebra(c, [&](const auto& r) {
            auto idem = r.homogeneous_idempotents();
            const std::size_t k = r.k();
            bool ok = idem.exhaustive && idem.all.size() == (std::size_t{1} << k) && idem.primitive.size() == k;
            rep.checks.push_back({"idempotents", case_name(c), ok,
                                  std::to_string(idem.all.size()) + " idempotents, " +
                                      std::to_string(idem.primitive.size()) + " primitive"});
        });
    return rep;
}

inline VerifyReport suite_squares(std::uint64_t seed) {
    VerifyReport rep;
    for (auto& c : matrix_cases())
        with_matrix_algebra(c, [&](const auto& r) {
            std::size_t bad = 0, classes = 0;
            for (auto& e : r.squares_profile(4, seed)) {
                ++classes;
                if (!e.matches()) ++bad;
            }
            rep.checks.push_back({"squares", case_name(c), bad == 0,
                                  std::to_string(classes) + " support classes, " + std::to_string(bad) + " exceptions"});
        });
    return rep;
}

inline VerifyReport suite_universal() {
    VerifyReport rep;
    for (auto& c : matrix_cases())
        with_matrix_algebra(c, [&](const auto& r) {
            const auto& t = r.division().support();
            const std::size_t k = r.k();
            AbelianGroup expected(static_cast<int>(k - 1), t.torsion());
            auto u = r.universal_group().group;
            auto comps = r.components().size();
            auto want = (k * k - k + 1) * t.order();
            rep.checks.push_back({"universal", case_name(c) + " group", u == expected,
                                  u.pretty() + " vs " + expected.pretty()});
            rep.checks.push_back({"universal", case_name(c) + " components", comps == want,
                                  std::to_string(comps) + " vs " + std::to_string(want)});
        });
    return rep;
}

inline VerifyReport suite_weyl() {
    VerifyReport rep;
    for (auto& ref : fixture_catalog_refs()) {
        auto any = canonical(ref);
        auto a = weyl_division(any);
        if (a.order() <= 120) {
            auto s = std::visit([](const auto& d) { return weyl_division_by_search(d); }, any);
            rep.checks.push_back({"weyl", ref + " phase system = search", image_set(a) == image_set(s),
                                  std::to_string(a.order()) + " vs " + std::to_string(s.order())});
        }
        auto b = std::visit([](const auto& d) { return weyl_division_by_invariants(d); }, any);
        auto sa = image_set(a), sb = image_set(b);
        bool contained = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
        rep.checks.push_back({"weyl", ref + " invariant filter contains", contained,
                              std::to_string(a.order()) + " in " + std::to_string(b.order())});
    }
    for (auto& alg : covered_algebras())
        for (auto& row : classify(alg)) {
            std::uint64_t fact = 1;
            for (std::size_t i = 2; i <= row.k; ++i) fact *= i;
            std::uint64_t tk = 1;
            for (std::size_t i = 1; i < row.k; ++i) tk *= row.support.order();
            auto want = tk * fact * row.weyl_division_order;
            rep.checks.push_back({"weyl", algebra_code(alg) + " " + row.ref() + " k=" + std::to_string(row.k) + " order",
                                  row.weyl_order == want && row.weyl.finite_order() == want,
                                  std::to_string(row.weyl_order) + " vs " + std::to_string(want)});
        }
    return rep;
}

// Stab(Γ₀) against the homogeneous units of D: equal when D_e is central, and
// for type 1-c (center C = R + Ri off the identity) Stab is T while units give T
// modulo the two central degrees.
inline VerifyReport suite_stab() {
    VerifyReport rep;
    for (auto ref : {"1-a:Z2^2", "1-a:Z2^4", "1-b:Z2^2", "1-b:Z2^4", "1-d:Z2xZ4", "1-d:Z2^3xZ4", "2-f:Z3^2",
                     "1-c:Z2", "1-c:Z2^3"}) {
        auto any = canonical(ref);
        auto stab = stab_division(any);
        auto q = inner_stabilizer_quotient(detail::division_sca(any));
        const auto& t = support_of(any);
        bool ok;
        std::string detail = stab.pretty() + " vs units " + q.group.pretty();
        if (require_tag(any).type == "1-c") {
            ok = stab.kind() == GroupDescriptor::Kind::Abelian && stab.abelian_group() == t &&
                 q.group.order() * 2 == t.order() && q.central_degrees.size() == 2;
        } else {
            ok = stab == q.descriptor();
        }
        rep.checks.push_back({"stab", ref, ok, detail});
    }
    return rep;
}

}  // namespace detail

// Throws std::invalid_argument on an unknown suite name.
inline VerifyReport verify(const std::string& suite, std::uint64_t seed = 1) {
    if (suite == "all") {
        VerifyReport all;
        for (auto& s : verify_suites()) {
            auto r = verify(s, seed);
            all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
        }
        return all;
    }
    if (suite == "inner-aut") return detail::suite_inner_aut(seed);
    if (suite == "idempotents") return detail::suite_idempotents();
    if (suite == "squares") return detail::suite_squares(seed);
    if (suite == "universal") return detail::suite_universal();
    if (suite == "weyl") return detail::suite_weyl();
    if (suite == "stab") return detail::suite_stab();
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace gradecat

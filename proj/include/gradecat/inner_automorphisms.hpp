#pragma once

#include "gradecat/graded_matrix.hpp"
#include "gradecat/group_descriptor.hpp"
#include "gradecat/structure_algebra.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecat {

namespace detail {

inline RationalVector require_inverse(const StructureConstantAlgebra& a, const RationalVector& x) {
    auto inv = a.inverse(x);
    if (!inv) throw std::invalid_argument("element is not invertible");
    return *inv;
}

inline bool is_zero_vector(const RationalVector& v) {
    for (auto& c : v)
        if (c != 0) return false;
    return true;
}

// x b_i x^{-1} for every basis element
inline std::vector<RationalVector> conjugates(const StructureConstantAlgebra& a, const RationalVector& x,
                                              const RationalVector& x_inv) {
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.multiply(a.multiply(x, a.basis(i)), x_inv));
    return out;
}

}  // namespace detail

// Does Int X map every homogeneous basis element into its own component?
inline bool int_in_stabilizer(const StructureConstantAlgebra& a, const RationalVector& x) {
    auto inv = detail::require_inverse(a, x);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto y = a.multiply(a.multiply(x, a.basis(i)), inv);
        auto g = a.homogeneous_degree(y);
        if (!g || !(*g == a.degree(i))) return false;
    }
    return true;
}

struct HomogeneousComponent {
    GroupElement degree;
    RationalVector value;
    RationalVector inverse;
};

struct WitnessResult {
    bool found = false;
    std::vector<HomogeneousComponent> components;  // all nonzero components when found
    std::string reason;                            // why not, otherwise
    explicit operator bool() const noexcept { return found; }
};

// Every nonzero homogeneous component of X, each checked to be invertible and to
// induce Int X on the whole basis. When some component fails, A must not be
// graded-simple; a failure on a graded-simple A raises logic_error.
inline WitnessResult homogeneous_witness(const StructureConstantAlgebra& a, const RationalVector& x) {
    if (!int_in_stabilizer(a, x)) throw std::invalid_argument("Int X does not stabilize the grading");
    const auto target = detail::conjugates(a, x, detail::require_inverse(a, x));
    WitnessResult r;
    for (auto& [g, part] : a.homogeneous_parts(x)) {
        auto inv = a.inverse(part);
        if (!inv) {
            r.reason = "component of degree " + g.str() + " is not invertible";
            break;
        }
        if (detail::conjugates(a, part, *inv) != target) {
            r.reason = "component of degree " + g.str() + " induces a different inner automorphism";
            break;
        }
        r.components.push_back({g, part, *inv});
    }
    if (r.reason.empty()) {
        r.found = true;
        return r;
    }
    r.components.clear();
    if (a.is_graded_simple()) throw std::logic_error("graded-simple algebra without homogeneous witness: " + r.reason);
    return r;
}

// Homogeneous parts of a basis of Z(A); the center of a graded algebra is graded.
inline std::vector<RationalVector> homogeneous_center_basis(const StructureConstantAlgebra& a) {
    std::vector<RationalVector> out;
    EchelonBasis span(a.dim());
    for (auto& z : a.center())
        for (auto& [g, part] : a.homogeneous_parts(z))
            if (span.insert(part)) out.push_back(part);
    return out;
}

namespace detail {

// Invertible elements found in one component: each basis element, the sum of the
// component's basis elements, and seeded random combinations.
inline std::optional<RationalVector> find_unit_in(const StructureConstantAlgebra& a,
                                                  const std::vector<RationalVector>& span, std::mt19937_64& rng,
                                                  std::size_t samples) {
    for (auto& v : span)
        if (a.is_invertible(v)) return v;
    if (span.size() < 2) return std::nullopt;
    std::uniform_int_distribution<int> coef(-3, 3);
    auto sum = a.zero();
    for (auto& v : span)
        for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    if (a.is_invertible(sum)) return sum;
    for (std::size_t s = 0; s < samples; ++s) {
        auto x = a.zero();
        for (auto& v : span) {
            Rational c(coef(rng));
            for (std::size_t i = 0; i < v.size(); ++i) x[i] += c * v[i];
        }
        if (!is_zero_vector(x) && a.is_invertible(x)) return x;
    }
    return std::nullopt;
}

inline std::set<std::vector<std::int64_t>> closure(const AbelianGroup& g, const std::vector<GroupElement>& gens,
                                                   std::size_t bound = 4096) {
    std::set<std::vector<std::int64_t>> seen{g.zero().coords()};
    std::vector<GroupElement> frontier{g.zero()};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (auto& x : frontier)
            for (auto& s : gens) {
                auto y = g.add(x, s);
                if (seen.insert(y.coords()).second) next.push_back(y);
                if (seen.size() > bound) throw std::domain_error("unit degrees generate too large a group");
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace detail

struct UnitDegrees {
    std::vector<GroupElement> unit;     // components containing a unit
    std::vector<GroupElement> central;  // components containing a central unit
    std::vector<RationalVector> unit_samples;
};

inline UnitDegrees unit_degrees(const StructureConstantAlgebra& a, std::size_t samples = 6, std::uint64_t seed = 3) {
    std::mt19937_64 rng(seed);
    UnitDegrees u;
    for (auto& [g, idx] : a.components()) {
        std::vector<RationalVector> span;
        for (auto i : idx) span.push_back(a.basis(i));
        if (auto x = detail::find_unit_in(a, span, rng, samples)) {
            u.unit.push_back(g);
            u.unit_samples.push_back(*x);
        }
    }
    std::map<std::vector<std::int64_t>, std::vector<RationalVector>> central_parts;
    for (auto& z : homogeneous_center_basis(a)) central_parts[a.homogeneous_degree(z)->coords()].push_back(z);
    for (auto& [c, span] : central_parts)
        if (detail::find_unit_in(a, span, rng, samples)) u.central.push_back(a.group().element(c));
    return u;
}

struct InnerQuotient {
    AbelianGroup group;                       // degrees of homogeneous units / degrees of central ones
    std::vector<GroupElement> generators;     // coset representatives generating the quotient
    std::vector<GroupElement> unit_degrees;   // the subgroup of G met by homogeneous units
    std::vector<GroupElement> central_degrees;
    GroupDescriptor descriptor() const { return GroupDescriptor::abelian(group); }
};

// Degree part of R_hom^x / (Z(R) cap R_hom^x): the group of unit degrees modulo
// the degrees of central homogeneous units.
inline InnerQuotient inner_stabilizer_quotient(const StructureConstantAlgebra& a) {
    if (!a.is_graded_simple()) throw std::invalid_argument("inner_stabilizer_quotient needs a graded-simple algebra");
    const auto& g = a.group();
    auto ud = unit_degrees(a);
    auto units = detail::closure(g, ud.unit);
    auto central = detail::closure(g, ud.central);
    InnerQuotient q;
    for (auto& c : units) q.unit_degrees.push_back(g.element(c));
    for (auto& c : central) q.central_degrees.push_back(g.element(c));
    // the elements of the quotient, as sorted central cosets
    auto coset = [&](const GroupElement& x) {
        std::set<std::vector<std::int64_t>> s;
        for (auto& z : q.central_degrees) s.insert(g.add(x, z).coords());
        return *s.begin();
    };
    std::set<std::vector<std::int64_t>> cosets;
    for (auto& x : q.unit_degrees) cosets.insert(coset(x));
    std::map<std::int64_t, std::uint64_t> census;
    for (auto& c : cosets) {
        auto x = g.element(c);
        std::int64_t n = 1;
        auto y = x;
        while (!central.count(y.coords())) {
            y = g.add(y, x);
            ++n;
        }
        ++census[n];
    }
    q.group = abelian_from_census(census);
    // greedy generating set of coset representatives
    std::vector<GroupElement> gens;
    std::set<std::vector<std::int64_t>> reached;
    for (auto& c : cosets) {
        if (reached.size() == cosets.size()) break;
        if (reached.count(c)) continue;
        gens.push_back(g.element(c));
        auto with_center = gens;
        with_center.insert(with_center.end(), ud.central.begin(), ud.central.end());
        reached.clear();
        for (auto& y : detail::closure(g, with_center)) reached.insert(coset(g.element(y)));
    }
    q.generators = gens;
    return q;
}

// ---------------------------------------------------------------------------
// The product of two quaternion algebras

struct HxHReport {
    bool graded_simple = true;
    bool int_ii_stabilizes = false;
    bool invertible_homogeneous_all_central = false;
    bool witness_found = true;
    std::vector<std::string> notes;
    // Expected outcome of every sub-claim.
    bool passes() const { return !graded_simple && int_ii_stabilizes && invertible_homogeneous_all_central && !witness_found; }
};

// H with its Z_2^2 grading, from a catalog crossed product.
template <class C>
StructureConstantAlgebra quaternion_sca(const DivisionAlgebra<C>& h) {
    GradingParams p = make_standard_params(1, h.support());
    return GradedMatrixAlgebra<C>(h, p).to_structure_algebra();
}

inline HxHReport hxh_counterexample(const StructureConstantAlgebra& h) {
    auto a = direct_sum(h, h);
    a.validate();
    HxHReport r;
    r.graded_simple = a.is_graded_simple();
    const std::size_t n = h.dim();
    // i = the basis element of the first non-identity degree of H
    std::size_t i_idx = 1;
    while (i_idx < n && h.degree(i_idx).is_zero()) ++i_idx;
    auto x = a.basis(i_idx);
    x[n + i_idx] = 1;
    r.int_ii_stabilizes = int_in_stabilizer(a, x);
    auto w = homogeneous_witness(a, x);
    r.witness_found = w.found;
    if (!w.found) r.notes.push_back("(i,i): " + w.reason);

    // per component: off-identity components lie in one factor and kill the
    // other one's unity; identity-component elements are central
    bool all_central = true;
    auto unit_a = a.zero(), unit_b = a.zero();
    for (std::size_t k = 0; k < n; ++k) {
        unit_a[k] = h.unity()[k];
        unit_b[n + k] = h.unity()[k];
    }
    for (auto& [g, idx] : a.components()) {
        if (g.is_zero()) {
            for (auto k : idx)
                for (std::size_t j = 0; j < a.dim(); ++j)
                    all_central = all_central && a.multiply(a.basis(k), a.basis(j)) == a.multiply(a.basis(j), a.basis(k));
            continue;
        }
        std::vector<RationalVector> span;
        for (auto k : idx) span.push_back(a.basis(k));
        // any element of this component is a zero divisor: it is annihilated by one factor's unity
        for (auto& v : span) {
            bool zero_divisor = detail::is_zero_vector(a.multiply(v, unit_a)) || detail::is_zero_vector(a.multiply(v, unit_b));
            all_central = all_central && zero_divisor && !a.is_invertible(v);
        }
        bool single_factor = true;
        for (auto k : idx) single_factor = single_factor && ((k < n) == (idx.front() < n));
        all_central = all_central && single_factor;
    }
    r.invertible_homogeneous_all_central = all_central;
    return r;
}

// ---------------------------------------------------------------------------
// Sampling the theorem's hypothesis class: X = (central unit) * (homogeneous unit)

struct TheoremSampleStats {
    std::size_t samples = 0;
    std::size_t multi_component = 0;  // X with at least two homogeneous components
    std::size_t failures = 0;
    std::vector<std::string> messages;
};

inline TheoremSampleStats sample_inner_theorem(const StructureConstantAlgebra& a, std::size_t count,
                                               std::uint64_t seed) {
    TheoremSampleStats st;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto ud = unit_degrees(a, 6, seed);
    if (ud.unit_samples.empty()) throw std::invalid_argument("no homogeneous units found");
    auto zc = homogeneous_center_basis(a);
    std::uniform_int_distribution<std::size_t> pick_unit(0, ud.unit_samples.size() - 1);
    for (std::size_t s = 0; s < count; ++s) {
        // central unit: random rational combination of homogeneous central elements
        RationalVector z;
        for (int tries = 0; tries < 20; ++tries) {
            z = a.zero();
            for (auto& v : zc) {
                Rational c(coef(rng));
                for (std::size_t i = 0; i < v.size(); ++i) z[i] += c * v[i];
            }
            if (!detail::is_zero_vector(z) && a.is_invertible(z)) break;
            z.clear();
        }
        if (z.empty()) z = a.unity();
        auto u = ud.unit_samples[pick_unit(rng)];
        int scale = 0;
        while (scale == 0) scale = coef(rng);
        for (auto& c : u) c *= scale;
        auto x = a.multiply(z, u);
        ++st.samples;
        try {
            if (!int_in_stabilizer(a, x)) {
                ++st.failures;
                st.messages.push_back("sample " + std::to_string(s) + ": Int X leaves the stabilizer");
                continue;
            }
            auto w = homogeneous_witness(a, x);
            if (!w) {
                ++st.failures;
                st.messages.push_back("sample " + std::to_string(s) + ": " + w.reason);
                continue;
            }
            if (w.components.size() >= 2) ++st.multi_component;
        } catch (const std::exception& e) {
            ++st.failures;
            st.messages.push_back("sample " + std::to_string(s) + ": " + e.what());
        }
    }
    return st;
}

}  // namespace gradecat

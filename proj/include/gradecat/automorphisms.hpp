#pragma once

#include "gradecat/graded_matrix.hpp"
#include "gradecat/group_descriptor.hpp"
#include "gradecat/smith.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace gradecat {

// ---------------------------------------------------------------------------
// Finite groups as permutation groups

using Permutation = std::vector<std::size_t>;

inline Permutation compose_perm(const Permutation& a, const Permutation& b) {  // a after b
    Permutation c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
}

class PermutationGroup {
public:
    PermutationGroup() = default;
    // Deduplicates; does not close under composition (see is_closed()).
    explicit PermutationGroup(std::vector<Permutation> elems) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        elems_ = std::move(elems);
        if (!elems_.empty()) degree_ = elems_[0].size();
    }

    std::size_t order() const noexcept { return elems_.size(); }
    std::size_t degree() const noexcept { return degree_; }
    const std::vector<Permutation>& elements() const noexcept { return elems_; }
    std::optional<std::size_t> index_of(const Permutation& p) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
        if (it == elems_.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - elems_.begin());
    }
    Permutation identity() const {
        Permutation p(degree_);
        std::iota(p.begin(), p.end(), 0);
        return p;
    }

    bool is_closed() const {
        if (!index_of(identity())) return false;
        for (auto& a : elems_)
            for (auto& b : elems_)
                if (!index_of(compose_perm(a, b))) return false;
        return true;
    }
    bool is_abelian() const {
        for (auto& a : elems_)
            for (auto& b : elems_)
                if (compose_perm(a, b) != compose_perm(b, a)) return false;
        return true;
    }
    std::size_t center_size() const {
        std::size_t n = 0;
        for (auto& a : elems_) {
            bool central = true;
            for (auto& b : elems_)
                if (compose_perm(a, b) != compose_perm(b, a)) {
                    central = false;
                    break;
                }
            n += central;
        }
        return n;
    }
    std::int64_t element_order(const Permutation& p) const {
        auto id = identity();
        auto q = p;
        std::int64_t n = 1;
        while (q != id) {
            q = compose_perm(p, q);
            ++n;
        }
        return n;
    }
    std::map<std::int64_t, std::uint64_t> census() const {
        std::map<std::int64_t, std::uint64_t> c;
        for (auto& p : elems_) ++c[element_order(p)];
        return c;
    }

private:
    std::vector<Permutation> elems_;
    std::size_t degree_ = 0;
};

struct GroupName {
    std::string tag;  // "trivial", "ℤ_2^2", "Sym(3)", "GL(2,3)", "other(n)", ...
    std::uint64_t order = 1;
    GroupDescriptor descriptor = GroupDescriptor::trivial();
};

// Element-order censuses of the named nonabelian groups.
inline const std::map<std::int64_t, std::uint64_t>& sym4_census() {
    static const std::map<std::int64_t, std::uint64_t> c{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
    return c;
}
inline const std::map<std::int64_t, std::uint64_t>& gl23_census() {
    static const std::map<std::int64_t, std::uint64_t> c{{1, 1}, {2, 13}, {3, 8}, {4, 6}, {6, 8}, {8, 12}};
    return c;
}

// Order, abelianness and element-order census; ambiguous cases fall back to other(n).
inline GroupName identify_group(const PermutationGroup& g) {
    const std::uint64_t n = g.order();
    if (n == 1) return {"trivial", 1, GroupDescriptor::trivial()};
    auto other = [&] { return GroupName{"other(" + std::to_string(n) + ")", n,
                                        GroupDescriptor::named("other(" + std::to_string(n) + ")", n)}; };
    if (n > 48) return other();
    auto census = g.census();
    if (g.is_abelian()) {
        auto a = abelian_from_census(census);
        return {a.pretty(), n, GroupDescriptor::abelian(a)};
    }
    if (n == 6) return {"Sym(3)", n, GroupDescriptor::symmetric(3)};
    if (n == 24 && census == sym4_census()) return {"Sym(4)", n, GroupDescriptor::symmetric(4)};
    if (n == 48 && census == gl23_census() && g.center_size() == 2)
        return {"GL(2,3)", n, GroupDescriptor::named("GL(2,3)", 48)};
    return other();
}

// Automorphisms of T as permutations of T.elements().
inline PermutationGroup as_permutation_group(const AbelianGroup& t, const std::vector<GroupHomomorphism>& fs) {
    std::vector<Permutation> perms;
    auto elems = t.elements();
    for (auto& f : fs) {
        Permutation p;
        for (auto& x : elems) p.push_back(t.index_of(f(x)));
        perms.push_back(std::move(p));
    }
    return PermutationGroup(std::move(perms));
}

// ---------------------------------------------------------------------------
// Weyl groups of division gradings

namespace detail {

inline std::int64_t eps(bool conj) { return conj ? -1 : 1; }

// Does A theta = b (mod Z) have a real solution? Returns one if so.
inline std::optional<std::vector<Rational>> solve_mod_one(const std::vector<std::vector<std::int64_t>>& a,
                                                          const std::vector<Rational>& b, std::size_t vars) {
    if (a.empty() || vars == 0) {
        for (auto& x : b)
            if (!is_integer(x)) return std::nullopt;
        return std::vector<Rational>(vars, Rational(0));
    }
    auto snf = smith_normal_form(to_int_matrix(a, vars));
    const std::size_t rows = a.size();
    std::vector<Rational> ub(rows, Rational(0));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < rows; ++c) ub[r] += Rational(snf.U(r, c)) * b[c];
    std::vector<Rational> phi(vars, Rational(0));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer d = r < vars ? snf.D(r, r) : Integer(0);
        if (d == 0) {
            if (!is_integer(ub[r])) return std::nullopt;
        } else {
            phi[r] = ub[r] / Rational(d);
        }
    }
    std::vector<Rational> theta(vars, Rational(0));
    for (std::size_t i = 0; i < vars; ++i)
        for (std::size_t j = 0; j < vars; ++j) theta[i] += Rational(snf.V(i, j)) * phi[j];
    return theta;
}

inline Rational arg_of(const Cyclotomic& x) {
    auto a = x.root_of_unity_arg();
    if (!a) throw std::domain_error("value " + x.str() + " is not a root of unity");
    return *a;
}

// Generator data of a crossed product on the standard generators e_i of T:
// s_i = coefficient of X_{e_i}^{m_i}; c(i,j) = sigma(e_i,e_j) / sigma(e_j,e_i).
template <class C>
struct GeneratorData {
    std::vector<std::int64_t> m;
    std::vector<std::size_t> e;  // indices of e_i
    std::vector<C> s;
    std::vector<std::vector<C>> c;
};

template <class C>
GeneratorData<C> generator_data(const DivisionAlgebra<C>& d, const std::vector<std::size_t>& images) {
    const auto& t = d.support();
    GeneratorData<C> g;
    for (std::size_t i = 0; i < images.size(); ++i) {
        g.m.push_back(t.modulus(i));
        g.e.push_back(images[i]);
        auto [coef, deg] = d.basis_power(images[i], g.m.back());
        if (deg != d.zero_index()) throw std::logic_error("generator power left the identity component");
        g.s.push_back(coef);
    }
    g.c.assign(images.size(), std::vector<C>(images.size(), C(1)));
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < images.size(); ++j)
            g.c[i][j] = d.sigma(images[i], images[j]) * Coeff<C>::inverse(d.sigma(images[j], images[i]));
    return g;
}

template <class C>
std::vector<std::size_t> standard_generator_indices(const DivisionAlgebra<C>& d) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.support().num_coords(); ++i) out.push_back(d.index(d.support().generator(i)));
    return out;
}

// Phase system for Z_i = lambda_i X_{a_i}, lambda_i = r_i exp(2 pi i theta_i).
inline std::pair<std::vector<std::vector<std::int64_t>>, std::vector<Rational>> phase_system(
    const DivisionAlgebra<Cyclotomic>& d, const GeneratorData<Cyclotomic>& src, const GeneratorData<Cyclotomic>& img,
    bool psi_conj) {
    const std::size_t p = img.e.size();
    auto psi = [&](const Cyclotomic& x) { return psi_conj ? x.conj() : x; };
    std::vector<std::vector<std::int64_t>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < p; ++i) {
        const bool conj = d.acts_by_conj(src.e[i]);
        std::vector<std::int64_t> row(p, 0);
        row[i] = !conj ? src.m[i] : (src.m[i] % 2 == 0 ? 0 : 1);
        a.push_back(row);
        b.push_back(arg_of(psi(src.s[i])) - arg_of(img.s[i]));
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            std::vector<std::int64_t> row(p, 0);
            row[i] = 1 - eps(d.acts_by_conj(src.e[j]));
            row[j] = eps(d.acts_by_conj(src.e[i])) - 1;
            a.push_back(row);
            b.push_back(arg_of(psi(src.c[i][j])) - arg_of(img.c[i][j]));
        }
    return {a, b};
}

template <class C>
bool require_real_cocycle(const DivisionAlgebra<C>& d) {
    if constexpr (Coeff<C>::kind == CoefficientKind::Quaternion) {
        if (!d.sigma_is_real())
            throw std::domain_error("automorphism analysis of quaternion crossed products needs a real cocycle");
    }
    return true;
}

}  // namespace detail

// Coefficient automorphism c -> inner * conj^b(c) * inner^{-1}.
template <class C>
struct CoefficientAutomorphism {
    bool conj = false;
    C inner = C(1);
    C operator()(const C& c) const {
        C x = conj ? Coeff<C>::conj(c) : c;
        return inner * x * Coeff<C>::inverse(inner);
    }
    // this after other
    CoefficientAutomorphism after(const CoefficientAutomorphism& o) const {
        return {conj != o.conj, inner * (conj ? Coeff<C>::conj(o.inner) : o.inner)};
    }
};

// Can f in Aut(T) be induced by a graded automorphism of D? Images of the standard
// generators are given (a prefix is allowed: then only the equations among them
// are checked). For complex coefficients, returns which coefficient maps work.
template <class C>
std::vector<bool> realizable_prefix(const DivisionAlgebra<C>& d, const std::vector<std::size_t>& images) {
    const auto src = detail::generator_data(d, [&] {
        auto g = detail::standard_generator_indices(d);
        g.resize(images.size());
        return g;
    }());
    const auto img = detail::generator_data(d, images);
    const std::size_t p = images.size();
    if constexpr (Coeff<C>::kind == CoefficientKind::Complex) {
        for (std::size_t i = 0; i < p; ++i)
            if (d.acts_by_conj(src.e[i]) != d.acts_by_conj(img.e[i])) return {false, false};
        std::vector<bool> ok;
        for (bool psi_conj : {false, true}) {
            auto [a, b] = detail::phase_system(d, src, img, psi_conj);
            ok.push_back(detail::solve_mod_one(a, b, p).has_value());
        }
        return ok;
    } else {
        detail::require_real_cocycle(d);
        for (std::size_t i = 0; i < p; ++i) {
            if (src.m[i] % 2 == 0 && !(img.s[i] == src.s[i])) return {false};
            for (std::size_t j = 0; j < p; ++j)
                if (!(img.c[i][j] == src.c[i][j])) return {false};
        }
        return {true};
    }
}

struct WeylDivision {
    std::vector<GroupHomomorphism> elements;
    PermutationGroup group;  // action on T.elements()
    GroupName name;
    const GroupDescriptor& descriptor() const { return name.descriptor; }
    std::size_t order() const { return elements.size(); }
};

namespace detail {
inline std::vector<std::size_t> image_indices(const AbelianGroup& t, const std::vector<GroupElement>& imgs) {
    std::vector<std::size_t> out;
    for (auto& x : imgs) out.push_back(t.index_of(x));
    return out;
}
inline WeylDivision finish_weyl(const AbelianGroup& t, std::vector<GroupHomomorphism> fs) {
    WeylDivision w;
    w.elements = std::move(fs);
    w.group = as_permutation_group(t, w.elements);
    w.name = identify_group(w.group);
    return w;
}
}  // namespace detail

// Automorphisms f of T such that some graded automorphism of D maps D_t onto D_{f(t)}.
// Decided from the generator presentation by solving the relation equations.
template <class C>
WeylDivision weyl_division(const DivisionAlgebra<C>& d, EnumerationLimits limits = {}) {
    const auto& t = d.support();
    auto keep = [&](const std::vector<GroupElement>& imgs) {
        auto ok = realizable_prefix(d, detail::image_indices(t, imgs));
        return std::find(ok.begin(), ok.end(), true) != ok.end();
    };
    return detail::finish_weyl(t, enumerate_automorphisms(t, keep, limits));
}

// Same group from invariants of D: f preserves the action (hence K), the
// commutation bicharacter on K up to complex conjugation, and the sign of
// X_t^{ord t} wherever it is a real invariant (dimension-one and quaternion
// components, and conjugating elements of complex ones).
template <class C>
WeylDivision weyl_division_by_invariants(const DivisionAlgebra<C>& d, EnumerationLimits limits = {}) {
    detail::require_real_cocycle(d);
    const auto& t = d.support();
    const std::size_t n = d.size();
    const bool complex = Coeff<C>::kind == CoefficientKind::Complex;
    std::vector<std::optional<Rational>> power_sign(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto ord = t.order_of(d.element(x));
        if (ord % 2 != 0 || (complex && !d.acts_by_conj(x))) continue;
        auto [c, deg] = d.basis_power(x, ord);
        (void)deg;
        power_sign[x] = Rational(unit_sign(c));
    }
    std::vector<Cyclotomic> beta(n * n, Cyclotomic(1));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            beta[x * n + y] = Coeff<C>::to_cyclotomic(d.sigma(x, y) * Coeff<C>::inverse(d.sigma(y, x)));

    auto keep = [&](const std::vector<GroupElement>& imgs) {
        const std::size_t p = imgs.size();
        // the subgroup spanned by e_1..e_p and its image
        std::vector<std::pair<std::size_t, std::size_t>> span;  // (x, f(x))
        std::vector<std::int64_t> c(t.num_coords(), 0);
        while (true) {
            auto x = t.element(c);
            GroupElement y = t.zero();
            for (std::size_t i = 0; i < p; ++i) y = t.add(y, t.scale(c[i], imgs[i]));
            span.push_back({t.index_of(x), t.index_of(y)});
            std::size_t i = 0;
            while (i < p && ++c[i] == t.modulus(i)) c[i++] = 0;
            if (i == p) break;
        }
        for (auto [x, y] : span) {
            if (d.acts_by_conj(x) != d.acts_by_conj(y)) return false;
            if (power_sign[x] != power_sign[y]) return false;
        }
        bool same = true, conj = true;
        for (auto [x, fx] : span) {
            if (d.acts_by_conj(x)) continue;
            for (auto [y, fy] : span) {
                if (d.acts_by_conj(y)) continue;
                const auto& b = beta[fx * n + fy];
                const auto& a = beta[x * n + y];
                same = same && b == a;
                conj = conj && b == a.conj();
            }
        }
        return same || conj;
    };
    return detail::finish_weyl(t, enumerate_automorphisms(t, keep, limits));
}

// Same group by direct search: tries Z_i = lambda_i X_{f(e_i)} with lambda_i in
// {+-1} (real, quaternion) or mu_L, L = 2 lcm(N, exp T) (complex), and checks the
// defining relations by multiplying in D.
template <class C>
WeylDivision weyl_division_by_search(const DivisionAlgebra<C>& d, EnumerationLimits limits = {}) {
    detail::require_real_cocycle(d);
    const auto& t = d.support();
    const auto gens = detail::standard_generator_indices(d);
    const std::size_t n = gens.size();
    std::vector<C> scalars;
    if constexpr (Coeff<C>::kind == CoefficientKind::Complex) {
        const int l = 2 * std::lcm(d.conductor(), static_cast<int>(t.exponent()));
        for (int r = 0; r < l; ++r) scalars.push_back(Cyclotomic::zeta(l, r).promote(std::lcm(l, d.conductor())));
    } else {
        scalars = {C(1), C(-1)};
    }
    using Mono = std::pair<C, std::size_t>;  // c X_t
    auto times = [&](const Mono& x, const Mono& y) { return d.mul_basis(x.second, x.first, y.second, y.first); };
    auto power = [&](const Mono& x, std::int64_t m) {
        Mono y{C(1), d.zero_index()};
        for (std::int64_t r = 0; r < m; ++r) y = times(y, x);
        return y;
    };
    // relation constants read off from products in D
    std::vector<C> rel_power;  // X_{e_i}^{m_i} = s_i
    for (std::size_t i = 0; i < n; ++i) {
        auto x = d.basis(gens[i]), y = d.one();
        for (std::int64_t r = 0; r < t.modulus(i); ++r) y = d.mul(y, x);
        rel_power.push_back(y.coeffs[d.zero_index()]);
    }
    std::vector<std::vector<C>> rel_comm(n, std::vector<C>(n, C(1)));  // X_i X_j = c_ij X_j X_i
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto lhs = d.mul(d.basis(gens[i]), d.basis(gens[j]));
            auto rhs = d.mul(d.basis(gens[j]), d.basis(gens[i]));
            const auto deg = d.add(gens[i], gens[j]);
            rel_comm[i][j] = lhs.coeffs[deg] * Coeff<C>::inverse(rhs.coeffs[deg]);
        }
    std::vector<int> psi_options{0};
    if (Coeff<C>::kind == CoefficientKind::Complex) psi_options.push_back(1);

    // valid (coefficient map, Z_1..Z_p) for each accepted prefix of images
    using Partial = std::pair<int, std::vector<Mono>>;
    std::map<std::vector<std::size_t>, std::vector<Partial>> solutions;
    solutions[{}] = {};
    for (int b : psi_options) solutions[{}].push_back({b, {}});

    auto keep = [&](const std::vector<GroupElement>& imgs) {
        const std::size_t p = imgs.size(), i = p - 1;
        std::vector<std::size_t> key;
        for (auto& x : imgs) key.push_back(t.index_of(x));
        const auto img = key.back();
        key.pop_back();
        std::vector<Partial> next;
        for (const auto& [b, zs] : solutions.at(key)) {
            CoefficientAutomorphism<C> e{b == 1, C(1)};
            // X_{e_i} c = alpha(c) X_{e_i} forces the images to act the same way
            if (d.acts_by_conj(gens[i]) != d.acts_by_conj(img)) continue;
            for (auto& lam : scalars) {
                Mono z{lam, img};
                if (!(power(z, t.modulus(i)).first == e(rel_power[i]))) continue;
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j)
                    ok = times(z, zs[j]).first == e(rel_comm[i][j]) * times(zs[j], z).first;
                if (!ok) continue;
                auto ext = zs;
                ext.push_back(z);
                next.push_back({b, std::move(ext)});
            }
        }
        // later relations see Z_j only through lambda_j^2 (for |lambda_j| = 1)
        std::set<std::vector<std::string>> seen;
        std::vector<Partial> kept;
        for (auto& part : next) {
            std::vector<std::string> sig{std::to_string(part.first)};
            for (auto& z : part.second) sig.push_back(Coeff<C>::str(z.first * z.first));
            if (seen.insert(sig).second) kept.push_back(std::move(part));
        }
        next = std::move(kept);
        key.push_back(img);
        const bool found = !next.empty();
        if (found) solutions[key] = std::move(next);
        return found;
    };
    return detail::finish_weyl(t, enumerate_automorphisms(t, keep, limits));
}

inline WeylDivision weyl_division(const AnyDivisionAlgebra& d, EnumerationLimits limits = {}) {
    return std::visit([&](const auto& a) { return weyl_division(a, limits); }, d);
}

// ---------------------------------------------------------------------------
// Stabilizers and descriptors

// First element of T outside K (coordinate-lexicographic), used to split the
// stabilizer of the (2-a)/(2-b) types.
inline std::optional<GroupElement> splitting_element(const AnyDivisionAlgebra& any) {
    return std::visit(
        [](const auto& d) -> std::optional<GroupElement> {
            for (std::size_t x = 0; x < d.size(); ++x)
                if (d.acts_by_conj(x)) return d.element(x);
            return std::nullopt;
        },
        any);
}

inline GroupDescriptor stab_division(const AnyDivisionAlgebra& any) {
    const auto& tag = require_tag(any);
    const auto& ty = tag.type;
    const auto t = GroupDescriptor::abelian(tag.support);
    const auto t_mod_sq = GroupDescriptor::abelian(square_subgroup(tag.support).quotient);
    const auto circle = GroupDescriptor::torus("ℂ^×/ℝ^×");
    const auto aut_h = GroupDescriptor::torus("Aut(ℍ)");
    if (ty == "1-a" || ty == "1-b" || ty == "1-c") return t;
    if (ty == "1-d") return t_mod_sq;
    if (ty == "2-a" || ty == "2-b" || ty == "2-c") {
        std::string action = "T \\ K acts by inversion";
        if (ty != "2-c")
            if (auto g = splitting_element(any)) action += "; split by X_g, g = " + g->str();
        return GroupDescriptor::semidirect(circle, t, action);
    }
    if (ty == "2-d" || ty == "2-e") return GroupDescriptor::semidirect(circle, t_mod_sq, "T \\ K acts by inversion");
    if (ty == "3-a" || ty == "3-b" || ty == "3-c") return GroupDescriptor::direct({aut_h, t});
    if (ty == "3-d") return GroupDescriptor::direct({aut_h, t_mod_sq});
    if (ty == "2-f") {
        const auto& d = std::get<DivisionAlgebra<Cyclotomic>>(any);
        if (d.commutation_bicharacter().is_real())
            return GroupDescriptor::direct({t, GroupDescriptor::abelian(AbelianGroup::cyclic(2))});
        return t;
    }
    throw std::invalid_argument("unknown catalog type '" + ty + "'");
}

inline const char* identity_component_units(CoefficientKind k) {
    switch (k) {
        case CoefficientKind::Real: return "ℝ^×";
        case CoefficientKind::Complex: return "ℂ^×";
        case CoefficientKind::Quaternion: return "ℍ^×";
    }
    return "?";
}

template <class C>
void require_fine_condition(const GradedMatrixAlgebra<C>& r, const char* what) {
    auto fc = r.fine_condition();
    if (!fc) throw std::invalid_argument(std::string(what) + " needs the fine condition: " + fc.witness->str());
}

template <class C>
GroupDescriptor diag_descriptor(const GradedMatrixAlgebra<C>& r) {
    require_fine_condition(r, "diag_descriptor");
    return GroupDescriptor::direct({GroupDescriptor::torus("ℝ^×", static_cast<int>(r.k()) - 1),
                                    GroupDescriptor::abelian(character_group(r.division().support(), 2))});
}

template <class C>
GroupDescriptor stab_descriptor(const GradedMatrixAlgebra<C>& r) {
    require_fine_condition(r, "stab_descriptor");
    if (r.division().dim_e() == 1) return diag_descriptor(r);
    return GroupDescriptor::semidirect(
        GroupDescriptor::torus(identity_component_units(r.division().kind()), static_cast<int>(r.k()) - 1),
        stab_division(AnyDivisionAlgebra(r.division())), "componentwise");
}

inline AbelianGroup power_group(const AbelianGroup& t, std::size_t n) {
    std::vector<std::int64_t> orders;
    for (std::size_t i = 0; i < n; ++i) orders.insert(orders.end(), t.torsion().begin(), t.torsion().end());
    return AbelianGroup::from_orders(0, orders);
}

template <class C>
GroupDescriptor weyl_descriptor(const GradedMatrixAlgebra<C>& r, const WeylDivision& w0) {
    require_fine_condition(r, "weyl_descriptor");
    return GroupDescriptor::semidirect(
        GroupDescriptor::abelian(power_group(r.division().support(), r.k() - 1)),
        GroupDescriptor::direct({GroupDescriptor::symmetric(static_cast<int>(r.k())), w0.descriptor()}),
        "Sym(k) permutes coordinates, W(D) acts diagonally");
}

// W(Γ) realized on the homogeneous components: (t, π, f) sends the component of
// E_ij (x) X_u to that of E_{π(i)π(j)} (x) X_{f(u) + t_{π(i)} - t_{π(j)}}.
template <class C>
PermutationGroup weyl_group_explicit(const GradedMatrixAlgebra<C>& r, const WeylDivision& w0) {
    require_fine_condition(r, "weyl_group_explicit");
    const auto& d = r.division();
    const auto& t = d.support();
    const std::size_t k = r.k(), nt = d.size();
    auto comps = r.components();
    std::map<std::vector<std::int64_t>, std::size_t> where;
    for (std::size_t c = 0; c < comps.size(); ++c) where[comps[c].degree.coords()] = c;
    std::vector<Permutation> perms;
    std::vector<std::size_t> shift(k, d.zero_index());  // t_0 = 0
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i < k) {
            for (std::size_t s = 0; s < nt; ++s) {
                shift[i] = s;
                rec(i + 1);
            }
            return;
        }
        std::vector<std::size_t> pi(k);
        std::iota(pi.begin(), pi.end(), 0);
        do {
            for (auto& f : w0.elements) {
                Permutation p(comps.size());
                for (std::size_t c = 0; c < comps.size(); ++c) {
                    auto s = comps[c].slots.front();
                    auto u = t.add(f(d.element(s.t)), t.sub(d.element(shift[pi[s.i]]), d.element(shift[pi[s.j]])));
                    p[c] = where.at(r.degree_of(pi[s.i], pi[s.j], d.index(u)).coords());
                }
                perms.push_back(std::move(p));
            }
        } while (std::next_permutation(pi.begin(), pi.end()));
    };
    rec(1);
    return PermutationGroup(std::move(perms));
}

// ---------------------------------------------------------------------------
// Graded automorphisms of D and the triple correspondence on M_k(D)

// psi(c X_t) = e(c) lambda_t X_{f(t)}
template <class C>
struct GradedAutomorphism {
    std::vector<std::size_t> f;  // permutation of T indices
    CoefficientAutomorphism<C> e;
    std::vector<C> lambda;

    static GradedAutomorphism identity(const DivisionAlgebra<C>& d) {
        GradedAutomorphism a;
        a.f.resize(d.size());
        std::iota(a.f.begin(), a.f.end(), 0);
        a.lambda.assign(d.size(), C(1));
        return a;
    }
    // chi indexed like T.elements(), values +-1
    static GradedAutomorphism character(const DivisionAlgebra<C>& d, const std::vector<int>& chi) {
        auto a = identity(d);
        for (std::size_t x = 0; x < d.size(); ++x) a.lambda[x] = C(chi.at(x));
        return a;
    }
    // Int(c X_s)
    static GradedAutomorphism inner(const DivisionAlgebra<C>& d, std::size_t s, const C& c) {
        auto u = d.basis(s, c);
        auto uinv = d.homogeneous_inverse(s, c);
        auto a = identity(d);
        a.e.conj = d.acts_by_conj(s);
        a.e.inner = c;
        for (std::size_t x = 0; x < d.size(); ++x) a.lambda[x] = d.mul(d.mul(u, d.basis(x)), uinv).coeffs[x];
        return a;
    }
    // Determined by the images Z_i = lambda_i X_{f(e_i)} of the standard generators.
    static GradedAutomorphism from_generators(const DivisionAlgebra<C>& d, const GroupHomomorphism& fh,
                                              CoefficientAutomorphism<C> e, const std::vector<C>& lam) {
        const auto& t = d.support();
        auto gens = detail::standard_generator_indices(d);
        GradedAutomorphism a;
        a.e = e;
        a.f.resize(d.size());
        a.lambda.assign(d.size(), C(1));
        for (std::size_t x = 0; x < d.size(); ++x) {
            a.f[x] = d.index(fh(d.element(x)));
            auto monomial = d.one(), image = d.one();
            for (std::size_t i = 0; i < gens.size(); ++i)
                for (std::int64_t r = 0; r < d.element(x)[i]; ++r) {
                    monomial = d.mul(monomial, d.basis(gens[i]));
                    image = d.mul(image, d.basis(d.index(fh(t.generator(i))), lam[i]));
                }
            // monomial = kappa X_x, psi(monomial) = e(kappa) lambda_x X_{f x}
            const C& kappa = monomial.coeffs[x];
            a.lambda[x] = Coeff<C>::inverse(e(kappa)) * image.coeffs[a.f[x]];
        }
        return a;
    }

    DivisionElement<C> apply(const DivisionAlgebra<C>& d, const DivisionElement<C>& x) const {
        auto y = d.zero_element();
        for (std::size_t s = 0; s < d.size(); ++s)
            if (!Coeff<C>::is_zero(x.coeffs[s])) y.coeffs[f[s]] += e(x.coeffs[s]) * lambda[s];
        return y;
    }
    std::pair<C, std::size_t> apply_basis(std::size_t s, const C& c) const { return {e(c) * lambda[s], f[s]}; }

    // this after other
    GradedAutomorphism after(const GradedAutomorphism& o) const {
        GradedAutomorphism a;
        a.e = e.after(o.e);
        a.f.resize(f.size());
        a.lambda.resize(f.size());
        for (std::size_t s = 0; s < f.size(); ++s) {
            a.f[s] = f[o.f[s]];
            a.lambda[s] = e(o.lambda[s]) * lambda[o.f[s]];
        }
        return a;
    }

    // multiplicative on all pairs of Q-basis elements, bijective on degrees
    bool is_automorphism(const DivisionAlgebra<C>& d) const {
        std::vector<bool> hit(d.size(), false);
        for (auto x : f) {
            if (x >= d.size() || hit[x]) return false;
            hit[x] = true;
        }
        for (auto& l : lambda)
            if (Coeff<C>::is_zero(l)) return false;
        auto basis = coefficient_basis(d);
        for (std::size_t u = 0; u < d.size(); ++u)
            for (auto& a : basis)
                for (std::size_t v = 0; v < d.size(); ++v)
                    for (auto& b : basis) {
                        auto x = d.basis(u, a), y = d.basis(v, b);
                        if (!(apply(d, d.mul(x, y)) == d.mul(apply(d, x), apply(d, y)))) return false;
                    }
        return true;
    }
    bool same_map(const DivisionAlgebra<C>& d, const GradedAutomorphism& o) const {
        for (std::size_t u = 0; u < d.size(); ++u)
            for (auto& a : coefficient_basis(d))
                if (!(apply(d, d.basis(u, a)) == o.apply(d, d.basis(u, a)))) return false;
        return true;
    }
    GroupHomomorphism degree_map(const DivisionAlgebra<C>& d) const {
        const auto& t = d.support();
        std::vector<GroupElement> im;
        for (std::size_t i = 0; i < t.num_coords(); ++i) im.push_back(d.element(f[d.index(t.generator(i))]));
        return GroupHomomorphism(t, t, im);
    }

    static std::vector<C> coefficient_basis(const DivisionAlgebra<C>& d) {
        std::vector<C> out;
        const std::size_t n = Coeff<C>::real_dim(d.conductor());
        for (std::size_t r = 0; r < n; ++r) {
            std::vector<Rational> v(n, Rational(0));
            v[r] = 1;
            out.push_back(Coeff<C>::from_real_coords(v, d.conductor()));
        }
        return out;
    }
};

// An explicit graded automorphism inducing f, when one exists with coefficients
// in the field of D (real types always; complex types when the phases fit).
template <class C>
std::optional<GradedAutomorphism<C>> explicit_automorphism(const DivisionAlgebra<C>& d, const GroupHomomorphism& fh) {
    const auto& t = d.support();
    auto gens = detail::standard_generator_indices(d);
    std::vector<std::size_t> images;
    for (std::size_t i = 0; i < gens.size(); ++i) images.push_back(d.index(fh(t.generator(i))));
    auto ok = realizable_prefix(d, images);
    auto src = detail::generator_data(d, gens);
    auto img = detail::generator_data(d, images);
    std::vector<std::pair<CoefficientAutomorphism<C>, std::vector<C>>> candidates;
    if constexpr (Coeff<C>::kind == CoefficientKind::Complex) {
        for (int b = 0; b < 2; ++b) {
            if (!ok[b]) continue;
            auto [a, rhs] = detail::phase_system(d, src, img, b == 1);
            auto theta = detail::solve_mod_one(a, rhs, gens.size());
            std::vector<C> lam;
            bool fits = true;
            for (auto& th : *theta) {
                Rational e = th * d.conductor();
                if (!is_integer(e)) {
                    fits = false;
                    break;
                }
                lam.push_back(Cyclotomic::zeta(d.conductor(), boost::multiprecision::numerator(e).convert_to<std::int64_t>()));
            }
            if (fits) candidates.push_back({CoefficientAutomorphism<C>{b == 1, C(1)}, lam});
        }
    } else {
        if (!ok[0]) return std::nullopt;
        std::vector<C> lam;
        for (std::size_t i = 0; i < gens.size(); ++i)  // odd m: lambda^m = lambda = s / rho
            lam.push_back(src.m[i] % 2 == 0 ? C(1) : src.s[i] * Coeff<C>::inverse(img.s[i]));
        candidates.push_back({CoefficientAutomorphism<C>{}, lam});
    }
    for (auto& [e, lam] : candidates) {
        auto a = GradedAutomorphism<C>::from_generators(d, fh, e, lam);
        if (a.is_automorphism(d)) return a;
    }
    return std::nullopt;
}

// X -> D P psi0(X) P^{-1} D^{-1}, D = diag(d_1..d_k) homogeneous units, P e_j = e_{pi(j)}.
template <class C>
struct AutTriple {
    std::vector<std::pair<C, std::size_t>> d;  // d_i = c X_t as (c, t)
    std::vector<std::size_t> pi;
    GradedAutomorphism<C> psi0;
};

template <class C>
AutTriple<C> identity_triple(const GradedMatrixAlgebra<C>& r) {
    AutTriple<C> a;
    const auto& dd = r.division();
    a.d.assign(r.k(), {C(1), dd.zero_index()});
    a.pi.resize(r.k());
    std::iota(a.pi.begin(), a.pi.end(), 0);
    a.psi0 = GradedAutomorphism<C>::identity(dd);
    return a;
}

template <class C>
GradedElement<C> triple_apply(const GradedMatrixAlgebra<C>& r, const AutTriple<C>& a, const GradedElement<C>& x) {
    const auto& dd = r.division();
    const std::size_t k = r.k();
    if (a.d.size() != k || a.pi.size() != k) throw std::invalid_argument("triple has the wrong size");
    auto y = r.zero();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (x.at(i, j).is_zero()) continue;
            const auto& di = a.d[a.pi[i]];
            const auto& dj = a.d[a.pi[j]];
            auto v = dd.mul(dd.mul(dd.basis(di.second, di.first), a.psi0.apply(dd, x.at(i, j))),
                            dd.homogeneous_inverse(dj.second, dj.first));
            y.at(a.pi[i], a.pi[j]) = v;
        }
    return y;
}

// Degree of the image of E_ij (x) X_t.
template <class C>
GroupElement triple_degree(const GradedMatrixAlgebra<C>& r, const AutTriple<C>& a, std::size_t i, std::size_t j,
                           std::size_t t) {
    const auto& dd = r.division();
    const auto& ts = dd.support();
    auto u = ts.add(dd.element(a.psi0.f[t]), ts.sub(dd.element(a.d[a.pi[i]].second), dd.element(a.d[a.pi[j]].second)));
    return r.degree_of(a.pi[i], a.pi[j], dd.index(u));
}

// d_i -> d_i d and psi0 -> Int(d^{-1}) psi0; the induced map is unchanged.
template <class C>
AutTriple<C> gauge(const GradedMatrixAlgebra<C>& r, const AutTriple<C>& a, const C& c, std::size_t s) {
    const auto& dd = r.division();
    auto inv = dd.homogeneous_inverse(s, c);
    auto s_inv = dd.homogeneous_degree(inv).value();
    AutTriple<C> b = a;
    for (auto& di : b.d) di = dd.mul_basis(di.second, di.first, s, c);
    b.psi0 = GradedAutomorphism<C>::inner(dd, s_inv, inv.coeffs[s_inv]).after(a.psi0);
    return b;
}

// Gauge to d_1 = 1.
template <class C>
AutTriple<C> normalize(const GradedMatrixAlgebra<C>& r, const AutTriple<C>& a) {
    const auto& dd = r.division();
    auto inv = dd.homogeneous_inverse(a.d[0].second, a.d[0].first);
    auto s = dd.homogeneous_degree(inv).value();
    auto b = gauge(r, a, inv.coeffs[s], s);
    b.d[0] = {C(1), dd.zero_index()};  // exact already; drop any representation noise
    return b;
}

// (D psi0(pi(D')), pi pi', psi0 psi0'), then normalized.
template <class C>
AutTriple<C> triple_product(const GradedMatrixAlgebra<C>& r, const AutTriple<C>& a, const AutTriple<C>& b) {
    const auto& dd = r.division();
    const std::size_t k = r.k();
    AutTriple<C> c;
    c.pi.resize(k);
    for (std::size_t i = 0; i < k; ++i) c.pi[i] = a.pi[b.pi[i]];
    c.d.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto [pc, pt] = a.psi0.apply_basis(b.d[i].second, b.d[i].first);  // lands at position pi(i)
        const auto& di = a.d[a.pi[i]];
        c.d[a.pi[i]] = dd.mul_basis(di.second, di.first, pt, pc);
    }
    c.psi0 = a.psi0.after(b.psi0);
    return normalize(r, c);
}

}  // namespace gradecat

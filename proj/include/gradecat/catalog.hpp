#pragma once

#include "gradecat/division_algebra.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <variant>
#include <vector>

namespace gradecat {

using AnyDivisionAlgebra =
    std::variant<DivisionAlgebra<Rational>, DivisionAlgebra<Cyclotomic>, DivisionAlgebra<Quaternion>>;

inline const AbelianGroup& support_of(const AnyDivisionAlgebra& d) {
    return std::visit([](const auto& a) -> const AbelianGroup& { return a.support(); }, d);
}
inline const std::optional<CatalogTag>& tag_of(const AnyDivisionAlgebra& d) {
    return std::visit([](const auto& a) -> const std::optional<CatalogTag>& { return a.tag(); }, d);
}
inline CoefficientKind kind_of(const AnyDivisionAlgebra& d) {
    return std::visit([](const auto& a) { return a.kind(); }, d);
}
inline std::size_t dim_e_of(const AnyDivisionAlgebra& d) {
    return std::visit([](const auto& a) { return a.dim_e(); }, d);
}

// M_n(F), F in {R, C, H}, the underlying real algebra of a catalog entry.
struct MatrixAlgebraName {
    int n = 1;
    char field = 'R';
    std::string str() const {
        if (n == 1) return field == 'R' ? "ℝ" : field == 'C' ? "ℂ" : "ℍ";
        return std::string("M_") + std::to_string(n) + "(" + (field == 'R' ? "ℝ" : field == 'C' ? "ℂ" : "ℍ") + ")";
    }
    friend bool operator==(const MatrixAlgebraName&, const MatrixAlgebraName&) = default;
};

inline const std::array<const char*, 14>& catalog_types() {
    static const std::array<const char*, 14> types{"1-a", "1-b", "1-c", "1-d", "2-a", "2-b", "2-c",
                                                   "2-d", "2-e", "2-f", "3-a", "3-b", "3-c", "3-d"};
    return types;
}

namespace detail {

inline int count_factor(const AbelianGroup& t, std::int64_t m) {
    return static_cast<int>(std::count(t.torsion().begin(), t.torsion().end(), m));
}

template <class C>
Presentation<C> pauli_block() {
    Presentation<C> p;
    auto a = p.add_generator(2, C(1));
    auto b = p.add_generator(2, C(1));
    p.set_comm(b, a, C(-1));
    return p;
}

template <class C>
Presentation<C> hamilton_block() {
    Presentation<C> p;
    auto a = p.add_generator(2, C(-1));
    auto b = p.add_generator(2, C(-1));
    p.set_comm(b, a, C(-1));
    return p;
}

// x^2 = -1, central
template <class C>
Presentation<C> imaginary_block() {
    Presentation<C> p;
    p.add_generator(2, C(-1));
    return p;
}

// a^2 = 1, t^4 = -1, t a = -a t
template <class C>
Presentation<C> order_four_block() {
    Presentation<C> p;
    auto a = p.add_generator(2, C(1));
    auto t = p.add_generator(4, C(-1));
    p.set_comm(t, a, C(-1));
    return p;
}

template <class C>
Presentation<C> pauli_power(int m) {
    Presentation<C> p;
    for (int i = 0; i < m; ++i) p.append(pauli_block<C>());
    return p;
}

// generator conjugating the complex coefficients, with square `square`
inline Presentation<Cyclotomic> conjugating_block(std::int64_t order, std::int64_t square) {
    Presentation<Cyclotomic> p;
    p.add_generator(order, Cyclotomic(square), true);
    return p;
}

// x y = zeta_l y x
inline Presentation<Cyclotomic> symbol_block(std::int64_t l) {
    Presentation<Cyclotomic> p;
    auto x = p.add_generator(l, Cyclotomic(1));
    auto y = p.add_generator(l, Cyclotomic(1));
    p.set_comm(y, x, Cyclotomic::zeta(static_cast<int>(l), -1));
    return p;
}

inline int complex_conductor(const AbelianGroup& t) {
    auto e = t.exponent();
    if (e == 3 || e == 4 || e == 6) return static_cast<int>(e);
    if (e <= 2) return 4;
    throw std::invalid_argument("complex coefficients need exp(T) in {1,2,3,4,6}; got " + std::to_string(e));
}

[[noreturn]] inline void incompatible(const std::string& type, const AbelianGroup& t) {
    throw std::invalid_argument("type " + type + " is incompatible with support " + t.pretty());
}

// T = Z_2^r x Z_4^s with nothing else
inline bool two_four_shape(const AbelianGroup& t, int r, int s) {
    return t.is_finite() && count_factor(t, 2) == r && count_factor(t, 4) == s &&
           static_cast<int>(t.torsion().size()) == r + s;
}

}  // namespace detail

// Parameter (m, or n for 2-f) of a catalog type on support T; throws if incompatible.
inline int catalog_param(const std::string& type, const AbelianGroup& t) {
    using detail::two_four_shape;
    const int r2 = detail::count_factor(t, 2);
    const bool elem = two_four_shape(t, r2, 0);
    const bool one_four = two_four_shape(t, r2, 1);
    if (type == "1-a" || type == "3-a") {
        if (elem && r2 % 2 == 0) return r2 / 2;
    } else if (type == "1-b" || type == "3-b" || type == "2-c") {
        if (elem && r2 % 2 == 0 && r2 >= 2) return r2 / 2;
    } else if (type == "1-c" || type == "3-c") {
        if (elem && r2 % 2 == 1) return (r2 - 1) / 2;
    } else if (type == "1-d" || type == "3-d") {
        if (one_four && r2 % 2 == 1) return (r2 + 1) / 2;
    } else if (type == "2-a" || type == "2-b") {
        if (elem && r2 % 2 == 1) return (r2 + 1) / 2;
    } else if (type == "2-d") {
        if (one_four && r2 % 2 == 0 && r2 >= 2) return (r2 + 2) / 2;
    } else if (type == "2-e") {
        if (one_four && r2 % 2 == 0) return (r2 + 2) / 2;
    } else if (type == "2-f") {
        const auto& tor = t.torsion();
        if (!t.is_finite() || tor.size() % 2 != 0) detail::incompatible(type, t);
        std::int64_t n = 1;
        for (std::size_t i = 0; i < tor.size(); i += 2) {
            if (tor[i] != tor[i + 1]) detail::incompatible(type, t);
            n *= tor[i];
        }
        return static_cast<int>(n);
    } else {
        throw std::invalid_argument("unknown catalog type '" + type + "'");
    }
    detail::incompatible(type, t);
}

// Concrete crossed-product representative of a catalog class.
inline AnyDivisionAlgebra canonical(const std::string& type, const AbelianGroup& t) {
    using namespace detail;
    const int m = catalog_param(type, t);
    CatalogTag tag{type, t, m};
    if (type[0] == '1') {
        Presentation<Rational> p;
        if (type == "1-a") p = pauli_power<Rational>(m);
        if (type == "1-b") {
            p = hamilton_block<Rational>();
            p.append(pauli_power<Rational>(m - 1));
        }
        if (type == "1-c") {
            p = imaginary_block<Rational>();
            p.append(pauli_power<Rational>(m));
        }
        if (type == "1-d") {
            p = pauli_power<Rational>(m - 1);
            p.append(order_four_block<Rational>());
        }
        return p.build(1, tag);
    }
    if (type[0] == '3') {
        Presentation<Quaternion> p;
        if (type == "3-a") p = pauli_power<Quaternion>(m);
        if (type == "3-b") {
            p = hamilton_block<Quaternion>();
            p.append(pauli_power<Quaternion>(m - 1));
        }
        if (type == "3-c") {
            p = imaginary_block<Quaternion>();
            p.append(pauli_power<Quaternion>(m));
        }
        if (type == "3-d") {
            p = pauli_power<Quaternion>(m - 1);
            p.append(order_four_block<Quaternion>());
        }
        return p.build(1, tag);
    }
    Presentation<Cyclotomic> p;
    if (type == "2-a" || type == "2-b") {
        p = conjugating_block(2, type == "2-a" ? 1 : -1);
        p.append(pauli_power<Cyclotomic>(m - 1));
    } else if (type == "2-c") {
        p = conjugating_block(2, 1);
        p.append(imaginary_block<Cyclotomic>());
        p.append(pauli_power<Cyclotomic>(m - 1));
    } else if (type == "2-d") {
        p = conjugating_block(2, 1);
        p.append(pauli_power<Cyclotomic>(m - 2));
        p.append(order_four_block<Cyclotomic>());
    } else if (type == "2-e") {
        p = pauli_power<Cyclotomic>(m - 1);
        p.append(conjugating_block(4, -1));
    } else {  // 2-f
        const auto& tor = t.torsion();
        for (std::size_t i = 0; i < tor.size(); i += 2) p.append(symbol_block(tor[i]));
    }
    return p.build(complex_conductor(t), tag);
}

// "2-f:Z3xZ3"
inline AnyDivisionAlgebra canonical(const std::string& ref) {
    auto colon = ref.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("catalog reference must look like TYPE:GROUP");
    return canonical(ref.substr(0, colon), AbelianGroup::parse(ref.substr(colon + 1)));
}

inline MatrixAlgebraName underlying_algebra(const CatalogTag& tag) {
    const int m = tag.param;
    const int p = 1 << std::max(m, 0);
    const auto& ty = tag.type;
    if (ty == "1-a" || ty == "2-a") return {p, 'R'};
    if (ty == "1-b" || ty == "2-b") return {p / 2, 'H'};
    if (ty == "1-c" || ty == "1-d" || ty == "2-c" || ty == "2-d" || ty == "2-e") return {p, 'C'};
    if (ty == "2-f") return {m, 'C'};
    if (ty == "3-a") return {p, 'H'};
    if (ty == "3-b") return {2 * p, 'R'};
    if (ty == "3-c" || ty == "3-d") return {2 * p, 'C'};
    throw std::invalid_argument("unknown catalog type '" + ty + "'");
}

inline const CatalogTag& require_tag(const AnyDivisionAlgebra& d) {
    const auto& tag = tag_of(d);
    if (!tag) throw std::invalid_argument("operation needs a catalog algebra (type tag missing)");
    return *tag;
}

// Fine in the class of abelian group gradings.
inline bool is_fine_division(const AnyDivisionAlgebra& d) {
    const auto& tag = require_tag(d);
    if (tag.type[0] == '1') return true;
    if (tag.type == "2-f") return !tag.support.is_elementary_2group();
    return false;
}

// Same catalog class: equal type tags and isomorphic supports.
inline bool equivalent(const AnyDivisionAlgebra& a, const AnyDivisionAlgebra& b) {
    const auto& ta = require_tag(a);
    const auto& tb = require_tag(b);
    return ta.type == tb.type && ta.support == tb.support;
}

}  // namespace gradecat

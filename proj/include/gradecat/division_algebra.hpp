#pragma once

#include "gradecat/abelian_group.hpp"
#include "gradecat/coefficients.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradecat {

// Isomorphism type of a subgroup of a finite group given by element indices.
inline AbelianGroup subgroup_type(const AbelianGroup& t, const std::vector<std::size_t>& members) {
    std::map<std::int64_t, std::uint64_t> census;
    for (auto i : members) ++census[t.order_of(t.element_at(i))];
    return abelian_from_census(census);
}

struct CatalogTag {
    std::string type;      // "1-a" ... "3-d", "2-f"
    AbelianGroup support;  // T
    int param = 0;         // m for the 2-power families, n for 2-f
    std::string ref() const { return type + ":" + support.ascii(); }
    friend bool operator==(const CatalogTag&, const CatalogTag&) = default;
};

class CocycleError : public std::invalid_argument {
public:
    CocycleError(std::size_t u, std::size_t v, std::size_t w, const std::string& what)
        : std::invalid_argument(what), u_(u), v_(v), w_(w) {}
    std::size_t u() const noexcept { return u_; }
    std::size_t v() const noexcept { return v_; }
    std::size_t w() const noexcept { return w_; }

private:
    std::size_t u_, v_, w_;
};

// Alternating bicharacter on a subgroup K of T with root-of-unity values.
struct Bicharacter {
    AbelianGroup ambient;
    std::vector<std::size_t> domain;  // indices (in ambient.elements() order) of K
    std::vector<Cyclotomic> table;    // domain.size() x domain.size()

    std::size_t size() const noexcept { return domain.size(); }
    const Cyclotomic& at(std::size_t a, std::size_t b) const { return table[a * domain.size() + b]; }
    std::optional<std::size_t> position(std::size_t element_index) const {
        for (std::size_t a = 0; a < domain.size(); ++a)
            if (domain[a] == element_index) return a;
        return std::nullopt;
    }
    const Cyclotomic& value(const GroupElement& u, const GroupElement& v) const {
        auto a = position(ambient.index_of(u)), b = position(ambient.index_of(v));
        if (!a || !b) throw std::invalid_argument("bicharacter evaluated outside its domain");
        return at(*a, *b);
    }
    bool is_real() const {
        for (auto& x : table)
            if (!x.as_rational()) return false;
        return true;
    }
};

// {t in K : beta(u,t) = 1 for all u in K}, as ambient indices.
inline std::vector<std::size_t> radical(const Bicharacter& beta) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < beta.size(); ++b) {
        bool all = true;
        for (std::size_t a = 0; a < beta.size() && all; ++a) all = beta.at(a, b) == Cyclotomic(1);
        if (all) out.push_back(beta.domain[b]);
    }
    return out;
}

inline AbelianGroup radical_group(const Bicharacter& beta) { return subgroup_type(beta.ambient, radical(beta)); }

// Sign data of normalized squares. value[t] is set where the datum is defined.
struct QuadraticData {
    bool total = false;  // true: mu on the whole 2-torsion of T; false: nu on (T \ K)
    std::vector<std::optional<int>> value;
};

// Majority sign of a total form; a tie is an error.
inline int arf(const QuadraticData& q) {
    int plus = 0, minus = 0;
    for (auto& v : q.value) {
        if (!v) continue;
        (*v > 0 ? plus : minus) += 1;
    }
    if (plus == minus) throw std::domain_error("Arf invariant undefined: tie between +1 and -1 values");
    return plus > minus ? 1 : -1;
}

// All eta : T -> {+-1} with eta(u+v) = beta(u,v) eta(u) eta(v), T an elementary
// 2-group carrying a {+-1}-valued beta on all of T. Each form is a vector of signs
// indexed like T.elements().
inline std::vector<std::vector<int>> quad_forms(const Bicharacter& beta) {
    const auto& t = beta.ambient;
    if (!t.is_elementary_2group()) throw std::invalid_argument("quad_forms needs an elementary abelian 2-group");
    if (beta.size() != t.order()) throw std::invalid_argument("quad_forms needs beta on all of T");
    auto sign_of = [](const Cyclotomic& x) {
        auto r = x.as_rational();
        if (!r || (*r != 1 && *r != -1)) throw std::invalid_argument("quad_forms needs a {+-1}-valued beta");
        return *r == 1 ? 1 : -1;
    };
    const std::size_t rank = t.num_coords();
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (1ull << rank); ++mask) {
        // value on generators from the mask, extended along coordinate order
        std::vector<int> eta(t.order(), 0);
        eta[t.index_of(t.zero())] = 1;
        bool ok = true;
        for (std::size_t idx = 0; idx < t.order() && ok; ++idx) {
            auto x = t.element_at(idx);
            if (x.is_zero()) continue;
            // x = y + g with g the last nonzero generator
            std::size_t g = rank;
            for (std::size_t i = rank; i-- > 0;)
                if (x[i] != 0) {
                    g = i;
                    break;
                }
            auto gen = t.generator(g);
            auto y = t.sub(x, gen);
            int eg = (mask >> g) & 1 ? -1 : 1;
            int ey = eta[t.index_of(y)];
            eta[idx] = sign_of(beta.value(y, gen)) * ey * eg;
        }
        // verify the identity everywhere
        for (std::size_t a = 0; a < t.order() && ok; ++a)
            for (std::size_t b = 0; b < t.order() && ok; ++b) {
                auto s = t.index_of(t.add(t.element_at(a), t.element_at(b)));
                ok = eta[s] == sign_of(beta.at(a, b)) * eta[a] * eta[b];
            }
        if (ok) out.push_back(eta);
    }
    return out;
}

template <class C>
struct DivisionElement {
    std::vector<C> coeffs;  // indexed by T.elements() order
    bool is_zero() const {
        for (auto& c : coeffs)
            if (!Coeff<C>::is_zero(c)) return false;
        return true;
    }
    friend bool operator==(const DivisionElement& a, const DivisionElement& b) { return a.coeffs == b.coeffs; }
};

// Crossed product of a coefficient ring C with a finite abelian group T:
// (c X_u)(c' X_v) = c alpha_u(c') sigma(u,v) X_{u+v}, alpha_u in {id, conj}.
template <class C>
class DivisionAlgebra {
public:
    using Scalar = C;
    using Element = DivisionElement<C>;

    // sigma is |T| x |T| row-major in T.elements() order; conj_action[t] selects alpha_t.
    static DivisionAlgebra build(AbelianGroup t, std::vector<bool> conj_action, std::vector<C> sigma, int conductor = 1,
                                 std::optional<CatalogTag> tag = std::nullopt) {
        DivisionAlgebra d;
        if (!t.is_finite()) throw std::invalid_argument("support of a division grading must be finite");
        d.t_ = std::move(t);
        d.n_ = d.t_.order();
        d.conductor_ = conductor;
        d.tag_ = std::move(tag);
        if (conj_action.size() != d.n_ || sigma.size() != d.n_ * d.n_)
            throw std::invalid_argument("action or cocycle table has the wrong size");
        d.elems_ = d.t_.elements();
        d.add_.resize(d.n_ * d.n_);
        d.neg_.resize(d.n_);
        for (std::size_t a = 0; a < d.n_; ++a) {
            d.neg_[a] = d.t_.index_of(d.t_.neg(d.elems_[a]));
            for (std::size_t b = 0; b < d.n_; ++b) d.add_[a * d.n_ + b] = d.t_.index_of(d.t_.add(d.elems_[a], d.elems_[b]));
        }
        d.zero_ = d.t_.index_of(d.t_.zero());
        d.conj_ = std::move(conj_action);
        d.sigma_ = std::move(sigma);
        d.validate();
        return d;
    }

    static constexpr CoefficientKind kind() { return Coeff<C>::kind; }
    std::size_t dim_e() const {
        switch (kind()) {
            case CoefficientKind::Real: return 1;
            case CoefficientKind::Complex: return 2;
            case CoefficientKind::Quaternion: return 4;
        }
        return 0;
    }
    const AbelianGroup& support() const noexcept { return t_; }
    std::size_t size() const noexcept { return n_; }
    int conductor() const noexcept { return conductor_; }
    const std::optional<CatalogTag>& tag() const noexcept { return tag_; }
    const std::vector<GroupElement>& elements() const noexcept { return elems_; }
    const GroupElement& element(std::size_t i) const { return elems_[i]; }
    std::size_t index(const GroupElement& g) const { return t_.index_of(g); }
    std::size_t zero_index() const noexcept { return zero_; }
    std::size_t add(std::size_t a, std::size_t b) const { return add_[a * n_ + b]; }
    std::size_t neg(std::size_t a) const { return neg_[a]; }
    bool acts_by_conj(std::size_t t) const { return conj_[t]; }
    const std::vector<bool>& action() const noexcept { return conj_; }
    const C& sigma(std::size_t u, std::size_t v) const { return sigma_[u * n_ + v]; }
    const std::vector<C>& sigma_table() const noexcept { return sigma_; }
    C alpha(std::size_t t, const C& c) const { return conj_[t] ? Coeff<C>::conj(c) : c; }

    // --- elements ---
    Element zero_element() const { return Element{std::vector<C>(n_, C(0))}; }
    Element one() const { return basis(zero_, C(1)); }
    Element basis(std::size_t t, const C& c = C(1)) const {
        auto x = zero_element();
        x.coeffs[t] = c;
        return x;
    }
    Element add(const Element& x, const Element& y) const {
        auto z = x;
        for (std::size_t i = 0; i < n_; ++i) z.coeffs[i] += y.coeffs[i];
        return z;
    }
    Element sub(const Element& x, const Element& y) const {
        auto z = x;
        for (std::size_t i = 0; i < n_; ++i) z.coeffs[i] -= y.coeffs[i];
        return z;
    }
    Element scale(const C& c, const Element& x) const {
        auto z = zero_element();
        for (std::size_t i = 0; i < n_; ++i) z.coeffs[i] = c * x.coeffs[i];
        return z;
    }
    Element mul(const Element& x, const Element& y) const {
        auto z = zero_element();
        for (std::size_t u = 0; u < n_; ++u) {
            if (Coeff<C>::is_zero(x.coeffs[u])) continue;
            for (std::size_t v = 0; v < n_; ++v) {
                if (Coeff<C>::is_zero(y.coeffs[v])) continue;
                z.coeffs[add(u, v)] += x.coeffs[u] * alpha(u, y.coeffs[v]) * sigma(u, v);
            }
        }
        return z;
    }
    // (c X_u)(c' X_v) as (coefficient, degree)
    std::pair<C, std::size_t> mul_basis(std::size_t u, const C& c, std::size_t v, const C& c2) const {
        return {c * alpha(u, c2) * sigma(u, v), add(u, v)};
    }
    std::optional<std::size_t> homogeneous_degree(const Element& x) const {
        std::optional<std::size_t> deg;
        for (std::size_t i = 0; i < n_; ++i)
            if (!Coeff<C>::is_zero(x.coeffs[i])) {
                if (deg) return std::nullopt;
                deg = i;
            }
        return deg;
    }
    // alpha_{-t}(c^{-1}) sigma(t,-t)^{-1} X_{-t}
    Element homogeneous_inverse(std::size_t t, const C& c) const {
        std::size_t mt = neg(t);
        return basis(mt, alpha(mt, Coeff<C>::inverse(c)) * Coeff<C>::inverse(sigma(t, mt)));
    }
    // X_t^k as a coefficient times X_{kt}
    std::pair<C, std::size_t> basis_power(std::size_t t, std::int64_t k) const {
        C c(1);
        std::size_t deg = zero_;
        for (std::int64_t i = 0; i < k; ++i) {
            auto [c2, d2] = mul_basis(deg, c, t, C(1));
            c = c2;
            deg = d2;
        }
        return {c, deg};
    }

    // --- invariants ---
    // support of the centralizer of D_e
    std::vector<std::size_t> centralizer_support() const {
        std::vector<std::size_t> k;
        for (std::size_t t = 0; t < n_; ++t)
            if (!conj_[t] && (kind() != CoefficientKind::Quaternion || sigma_is_real())) k.push_back(t);
        return k;
    }
    AbelianGroup centralizer_group() const { return subgroup_type(t_, centralizer_support()); }

    Bicharacter commutation_bicharacter() const {
        Bicharacter b{t_, centralizer_support(), {}};
        for (auto u : b.domain)
            for (auto v : b.domain)
                b.table.push_back(Coeff<C>::to_cyclotomic(sigma(u, v) * Coeff<C>::inverse(sigma(v, u))));
        return b;
    }

    QuadraticData quadratic_form() const {
        QuadraticData q;
        q.value.assign(n_, std::nullopt);
        q.total = kind() != CoefficientKind::Complex;
        for (std::size_t t = 0; t < n_; ++t) {
            if (add(t, t) != zero_) continue;
            if (q.total) {
                q.value[t] = unit_sign(sigma(t, t));
            } else if (conj_[t]) {
                // (c X_t)^2 = |c|^2 sigma(t,t); sigma(t,t) is real here
                if (!Coeff<C>::is_real(sigma(t, t)))
                    throw std::domain_error("square of a conjugating element is not real");
                q.value[t] = Coeff<C>::real_part(sigma(t, t)) > 0 ? 1 : -1;
            }
        }
        return q;
    }

    bool sigma_is_real() const {
        for (auto& s : sigma_)
            if (!Coeff<C>::is_real(s)) return false;
        return true;
    }

    // Associativity on all basis triples, checked directly on products
    // (independent of the cocycle identity used at build time).
    bool basis_associative() const {
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                for (std::size_t w = 0; w < n_; ++w) {
                    auto lhs = mul(mul(basis(u), basis(v)), basis(w));
                    auto rhs = mul(basis(u), mul(basis(v), basis(w)));
                    if (!(lhs == rhs)) return false;
                }
        return true;
    }

    std::string describe() const {
        std::ostringstream os;
        os << (tag_ ? tag_->ref() : std::string("untagged")) << " over " << kind_name(kind()) << ", T = " << t_.pretty();
        return os.str();
    }

private:
    DivisionAlgebra() = default;

    void validate() const {
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                if (conj_[add(u, v)] != (conj_[u] != conj_[v]))
                    throw std::invalid_argument("action is not a group homomorphism at (" + elems_[u].str() + "," +
                                                elems_[v].str() + ")");
        if (conj_[zero_]) throw std::invalid_argument("identity element must act trivially");
        if (kind() != CoefficientKind::Complex)
            for (std::size_t t = 0; t < n_; ++t)
                if (conj_[t]) throw std::invalid_argument("conjugation action is only allowed on complex coefficients");
        for (std::size_t t = 0; t < n_; ++t) {
            if (!(sigma(zero_, t) == C(1)) || !(sigma(t, zero_) == C(1)))
                throw std::invalid_argument("cocycle is not normalized at " + elems_[t].str());
        }
        for (auto& s : sigma_) check_unit(s);
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                for (std::size_t w = 0; w < n_; ++w) {
                    C lhs = sigma(u, v) * sigma(add(u, v), w);
                    C rhs = alpha(u, sigma(v, w)) * sigma(u, add(v, w));
                    if (!(lhs == rhs))
                        throw CocycleError(u, v, w,
                                           "cocycle identity fails at (u,v,w) = (" + elems_[u].str() + ", " +
                                               elems_[v].str() + ", " + elems_[w].str() + ")");
                }
    }

    void check_unit(const C& s) const {
        if constexpr (Coeff<C>::kind == CoefficientKind::Real) {
            if (s != 1 && s != -1) throw std::invalid_argument("real cocycle values must be +1 or -1");
        } else if constexpr (Coeff<C>::kind == CoefficientKind::Complex) {
            if (!s.root_of_unity_arg()) throw std::invalid_argument("complex cocycle values must be roots of unity");
        } else {
            int nonzero = 0;
            bool unit = true;
            for (int i = 0; i < 4; ++i)
                if (s[i] != 0) {
                    ++nonzero;
                    unit = unit && (s[i] == 1 || s[i] == -1);
                }
            if (nonzero != 1 || !unit)
                throw std::invalid_argument("quaternion cocycle values must lie in {+-1, +-i, +-j, +-k}");
        }
    }

    AbelianGroup t_;
    std::size_t n_ = 0;
    int conductor_ = 1;
    std::optional<CatalogTag> tag_;
    std::vector<GroupElement> elems_;
    std::vector<std::size_t> add_, neg_;
    std::size_t zero_ = 0;
    std::vector<bool> conj_;
    std::vector<C> sigma_;
};

// Generators x_1..x_n of orders m_1 | ... | m_n with
//   x_i^{m_i} = power_i,  x_i x_j = comm(i,j) x_j x_i (i > j),  x_i c = alpha_i(c) x_i.
// X_t is the ordered monomial x_1^{t_1} ... x_n^{t_n}.
template <class C>
struct Presentation {
    struct Generator {
        std::int64_t order;
        C power;
        bool conj;
    };
    std::vector<Generator> gens;
    std::map<std::pair<std::size_t, std::size_t>, C> comm;  // key (i, j), i > j

    std::size_t add_generator(std::int64_t order, C power, bool conj = false) {
        gens.push_back({order, std::move(power), conj});
        return gens.size() - 1;
    }
    void set_comm(std::size_t i, std::size_t j, C value) {
        if (i <= j) throw std::invalid_argument("commutation scalars are keyed by (i, j) with i > j");
        comm[{i, j}] = std::move(value);
    }
    // Appends other's generators; the two blocks commute.
    void append(const Presentation& other) {
        std::size_t off = gens.size();
        for (auto& g : other.gens) gens.push_back(g);
        for (auto& [k, v] : other.comm) comm[{k.first + off, k.second + off}] = v;
    }

    AbelianGroup group() const {
        std::vector<std::int64_t> orders;
        for (auto& g : gens) orders.push_back(g.order);
        return AbelianGroup(0, orders);
    }

    DivisionAlgebra<C> build(int conductor = 1, std::optional<CatalogTag> tag = std::nullopt) const {
        auto t = group();
        auto elems = t.elements();
        const std::size_t n = elems.size(), r = gens.size();
        std::vector<bool> action(n, false);
        for (std::size_t a = 0; a < n; ++a) {
            int parity = 0;
            for (std::size_t i = 0; i < r; ++i)
                if (gens[i].conj) parity ^= static_cast<int>(elems[a][i] & 1);
            action[a] = parity;
        }
        std::vector<C> sigma;
        sigma.reserve(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                C s(1);
                for (auto& [key, value] : comm) {
                    auto e = elems[a][key.first] * elems[b][key.second];
                    for (std::int64_t k = 0; k < e; ++k) s = s * value;
                }
                for (std::size_t j = 0; j < r; ++j)
                    if (elems[a][j] + elems[b][j] >= gens[j].order) s = s * gens[j].power;
                sigma.push_back(s);
            }
        if (tag) tag->support = t;
        return DivisionAlgebra<C>::build(t, action, sigma, conductor, tag);
    }
};

}  // namespace gradecat

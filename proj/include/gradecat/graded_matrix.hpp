#pragma once

#include "gradecat/catalog.hpp"
#include "gradecat/structure_algebra.hpp"

#include <atomic>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecat {

// Degrees g_1..g_s of a homogeneous D-basis of V with multiplicities k_1..k_s,
// inside an ambient group G that contains T through `embed`.
class GradingParams {
public:
    GradingParams(AbelianGroup g, AbelianGroup t, GroupHomomorphism embed, std::vector<GroupElement> gamma,
                  std::vector<int> kappa = {})
        : g_(std::move(g)), t_(std::move(t)), embed_(std::move(embed)), gamma_(std::move(gamma)), kappa_(std::move(kappa)) {
        if (kappa_.empty()) kappa_.assign(gamma_.size(), 1);
        if (gamma_.empty()) throw std::invalid_argument("grading parameters need k >= 1");
        if (kappa_.size() != gamma_.size()) throw std::invalid_argument("kappa and gamma have different lengths");
        for (int m : kappa_)
            if (m < 1) throw std::invalid_argument("multiplicities must be positive");
        if (!(embed_.source() == t_) || !(embed_.target() == g_))
            throw std::invalid_argument("embedding must map T into G");
        if (!t_.is_finite()) throw std::invalid_argument("support T must be finite");
        std::map<std::vector<std::int64_t>, bool> image;
        for (auto& x : t_.elements())
            if (image[embed_(x).coords()]) throw std::invalid_argument("embedding of T into G is not injective");
            else image[embed_(x).coords()] = true;
        quotient_ = quotient_group(g_, embed_.images());
        for (auto& x : gamma_)
            if (!g_.contains(x)) throw std::invalid_argument("degree g_i outside G");
        for (std::size_t i = 0; i < gamma_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (coset(gamma_[i]) == coset(gamma_[j]))
                    throw std::invalid_argument("g_" + std::to_string(j + 1) + " and g_" + std::to_string(i + 1) +
                                                " are congruent mod T");
    }

    const AbelianGroup& G() const noexcept { return g_; }
    const AbelianGroup& T() const noexcept { return t_; }
    const GroupHomomorphism& embed() const noexcept { return embed_; }
    const std::vector<GroupElement>& gamma() const noexcept { return gamma_; }
    const std::vector<int>& kappa() const noexcept { return kappa_; }
    const AbelianGroup& quotient() const noexcept { return quotient_.group; }

    std::size_t k() const {
        std::size_t n = 0;
        for (int m : kappa_) n += static_cast<std::size_t>(m);
        return n;
    }
    // length-k degree list
    std::vector<GroupElement> expanded() const {
        std::vector<GroupElement> out;
        for (std::size_t i = 0; i < gamma_.size(); ++i)
            for (int r = 0; r < kappa_[i]; ++r) out.push_back(gamma_[i]);
        return out;
    }
    // image of g in G/T
    GroupElement coset(const GroupElement& g) const {
        const auto& q = quotient_.group;
        GroupElement y = q.zero();
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g[j] != 0) y = q.add(y, q.scale(g[j], quotient_.label_images[j]));
        return y;
    }
    bool in_T(const GroupElement& g) const { return coset(g).is_zero(); }

private:
    AbelianGroup g_, t_;
    GroupHomomorphism embed_;
    std::vector<GroupElement> gamma_;
    std::vector<int> kappa_;
    UniversalGroup quotient_;
};

// G = Z^{k-1} x T, g_1 = 0, g_i = i-th free generator.
inline GradingParams make_standard_params(std::size_t k, const AbelianGroup& t) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    AbelianGroup g(static_cast<int>(k - 1), t.torsion());
    std::vector<GroupElement> embed;
    for (std::size_t j = 0; j < t.num_coords(); ++j) embed.push_back(g.generator(k - 1 + j));
    std::vector<GroupElement> gamma{g.zero()};
    for (std::size_t i = 1; i < k; ++i) gamma.push_back(g.generator(i - 1));
    return GradingParams(g, t, GroupHomomorphism(t, g, embed), gamma);
}

struct FineViolation {
    enum class Kind { Multiplicity, Collision } kind;
    std::size_t i = 0, j = 0, h = 0, l = 0;  // 1-based; Multiplicity uses i and `multiplicity`
    int multiplicity = 1;
    std::string str() const {
        std::ostringstream os;
        if (kind == Kind::Multiplicity) os << "k_" << i << " = " << multiplicity;
        else os << "g_" << i << " - g_" << j << " = g_" << h << " - g_" << l << " mod T";
        return os.str();
    }
};

struct FineCheck {
    bool ok = true;
    std::optional<FineViolation> witness;
    explicit operator bool() const noexcept { return ok; }
};

inline FineCheck fine_condition(const GradingParams& p) {
    for (std::size_t i = 0; i < p.kappa().size(); ++i)
        if (p.kappa()[i] != 1)
            return {false, FineViolation{FineViolation::Kind::Multiplicity, i + 1, 0, 0, 0, p.kappa()[i]}};
    const auto& gam = p.gamma();
    const auto& q = p.quotient();
    std::map<std::vector<std::int64_t>, std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t i = 0; i < gam.size(); ++i)
        for (std::size_t j = 0; j < gam.size(); ++j) {
            if (i == j) continue;
            auto d = q.sub(p.coset(gam[i]), p.coset(gam[j])).coords();
            auto it = seen.find(d);
            if (it != seen.end())
                return {false, FineViolation{FineViolation::Kind::Collision, it->second.first + 1, it->second.second + 1,
                                             i + 1, j + 1, 1}};
            seen[d] = {i, j};
        }
    return {true, std::nullopt};
}

template <class C>
struct GradedElement {
    std::size_t k = 0;
    std::uint64_t parent = 0;
    std::vector<DivisionElement<C>> entries;  // row-major k x k
    DivisionElement<C>& at(std::size_t i, std::size_t j) { return entries[i * k + j]; }
    const DivisionElement<C>& at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
    bool is_zero() const {
        for (auto& e : entries)
            if (!e.is_zero()) return false;
        return true;
    }
    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return a.k == b.k && a.entries == b.entries;
    }
};

enum class SquaresKind { NonzeroSquares, ZeroSquares, Mixed };

inline const char* squares_name(SquaresKind s) {
    switch (s) {
        case SquaresKind::NonzeroSquares: return "NONZERO_SQUARES";
        case SquaresKind::ZeroSquares: return "ZERO_SQUARES";
        case SquaresKind::Mixed: return "MIXED";
    }
    return "?";
}

struct SquaresEntry {
    GroupElement degree;
    bool diagonal_class = false;  // degree lies in T
    SquaresKind observed = SquaresKind::Mixed;
    bool matches() const {
        return observed == (diagonal_class ? SquaresKind::NonzeroSquares : SquaresKind::ZeroSquares);
    }
};

// (i, j, t) with t an index into T.elements()
struct MatrixUnitSlot {
    std::size_t i, j, t;
};

struct GradedComponent {
    GroupElement degree;
    std::vector<MatrixUnitSlot> slots;
};

template <class C>
struct IdempotentReport {
    std::vector<GradedElement<C>> all;
    std::vector<GradedElement<C>> primitive;
    bool exhaustive = false;  // no idempotents in R_e beyond `all`
};

namespace detail {
inline std::uint64_t next_algebra_id() {
    static std::atomic<std::uint64_t> id{1};
    return id++;
}
}  // namespace detail

// M_k(D) with deg(E_ij (x) d) = g_i - g_j + deg d.
template <class C>
class GradedMatrixAlgebra {
public:
    using Element = GradedElement<C>;

    GradedMatrixAlgebra(DivisionAlgebra<C> d, GradingParams p)
        : d_(std::move(d)), p_(std::move(p)), gamma_(p_.expanded()), id_(detail::next_algebra_id()) {
        if (!(p_.T() == d_.support())) throw std::invalid_argument("grading parameters and D have different supports");
    }

    const DivisionAlgebra<C>& division() const noexcept { return d_; }
    const GradingParams& params() const noexcept { return p_; }
    std::size_t k() const noexcept { return gamma_.size(); }
    const GroupElement& gamma(std::size_t i) const { return gamma_.at(i); }
    const AbelianGroup& G() const noexcept { return p_.G(); }

    GroupElement degree_of(std::size_t i, std::size_t j, std::size_t t) const {
        if (i >= k() || j >= k()) throw std::out_of_range("matrix index out of range");
        if (t >= d_.size()) throw std::out_of_range("support index out of range");
        const auto& g = p_.G();
        return g.add(g.sub(gamma_[i], gamma_[j]), p_.embed()(d_.element(t)));
    }
    GroupElement degree_of(std::size_t i, std::size_t j, const GroupElement& t) const {
        if (!d_.support().contains(t)) throw std::invalid_argument("degree of d must lie in T");
        return degree_of(i, j, d_.index(t));
    }

    Element zero() const { return Element{k(), id_, std::vector<DivisionElement<C>>(k() * k(), d_.zero_element())}; }
    Element one() const {
        auto x = zero();
        for (std::size_t i = 0; i < k(); ++i) x.at(i, i) = d_.one();
        return x;
    }
    // E_ij (x) c X_t
    Element unit(std::size_t i, std::size_t j, std::size_t t, const C& c = C(1)) const {
        if (i >= k() || j >= k()) throw std::out_of_range("matrix index out of range");
        auto x = zero();
        x.at(i, j) = d_.basis(t, c);
        return x;
    }
    Element add(const Element& x, const Element& y) const {
        check(x);
        check(y);
        auto z = x;
        for (std::size_t n = 0; n < z.entries.size(); ++n) z.entries[n] = d_.add(x.entries[n], y.entries[n]);
        return z;
    }
    Element sub(const Element& x, const Element& y) const {
        check(x);
        check(y);
        auto z = x;
        for (std::size_t n = 0; n < z.entries.size(); ++n) z.entries[n] = d_.sub(x.entries[n], y.entries[n]);
        return z;
    }
    Element multiply(const Element& x, const Element& y) const {
        check(x);
        check(y);
        auto z = zero();
        for (std::size_t i = 0; i < k(); ++i)
            for (std::size_t l = 0; l < k(); ++l) {
                if (x.at(i, l).is_zero()) continue;
                for (std::size_t j = 0; j < k(); ++j) {
                    if (y.at(l, j).is_zero()) continue;
                    z.at(i, j) = d_.add(z.at(i, j), d_.mul(x.at(i, l), y.at(l, j)));
                }
            }
        return z;
    }

    std::optional<GroupElement> homogeneous_degree(const Element& x) const {
        check(x);
        std::optional<GroupElement> deg;
        for (std::size_t i = 0; i < k(); ++i)
            for (std::size_t j = 0; j < k(); ++j)
                for (std::size_t t = 0; t < d_.size(); ++t) {
                    if (Coeff<C>::is_zero(x.at(i, j).coeffs[t])) continue;
                    auto g = degree_of(i, j, t);
                    if (deg && !(*deg == g)) return std::nullopt;
                    deg = g;
                }
        return deg;
    }

    FineCheck fine_condition() const { return gradecat::fine_condition(p_); }
    bool is_fine() const { return fine_condition().ok && is_fine_division(AnyDivisionAlgebra(d_)); }

    // Homogeneous components as sets of slots, in order of first appearance.
    std::vector<GradedComponent> components() const {
        std::vector<GradedComponent> out;
        std::map<std::vector<std::int64_t>, std::size_t> where;
        for (std::size_t i = 0; i < k(); ++i)
            for (std::size_t j = 0; j < k(); ++j)
                for (std::size_t t = 0; t < d_.size(); ++t) {
                    auto g = degree_of(i, j, t);
                    auto [it, fresh] = where.try_emplace(g.coords(), out.size());
                    if (fresh) out.push_back({g, {}});
                    out[it->second].slots.push_back({i, j, t});
                }
        return out;
    }

    // Z^labels modulo deg(E_ij X_t) + deg(E_jl X_u) = deg(E_il X_{t+u}); every such
    // product is nonzero because sigma takes unit values.
    UniversalGroup universal_group() const {
        auto comps = components();
        std::map<std::vector<std::int64_t>, std::size_t> label;
        for (std::size_t c = 0; c < comps.size(); ++c) label[comps[c].degree.coords()] = c;
        auto lab = [&](std::size_t i, std::size_t j, std::size_t t) { return label.at(degree_of(i, j, t).coords()); };
        std::map<std::vector<std::int64_t>, bool> seen;
        std::vector<std::vector<std::int64_t>> rows;
        for (std::size_t i = 0; i < k(); ++i)
            for (std::size_t j = 0; j < k(); ++j)
                for (std::size_t l = 0; l < k(); ++l)
                    for (std::size_t t = 0; t < d_.size(); ++t)
                        for (std::size_t u = 0; u < d_.size(); ++u) {
                            std::vector<std::int64_t> row(comps.size(), 0);
                            row[lab(i, j, t)] += 1;
                            row[lab(j, l, u)] += 1;
                            row[lab(i, l, d_.add(t, u))] -= 1;
                            if (!seen[row]) {
                                seen[row] = true;
                                rows.push_back(std::move(row));
                            }
                        }
        return universal_abelian_group(comps.size(), rows);
    }

    // Q-basis of R: E_ij (x) b_r X_t with b_r running over a Q-basis of the coefficients.
    std::size_t coefficient_dim() const { return Coeff<C>::real_dim(d_.conductor()); }
    C coefficient_basis(std::size_t r) const {
        std::vector<Rational> v(coefficient_dim(), Rational(0));
        v.at(r) = 1;
        return Coeff<C>::from_real_coords(v, d_.conductor());
    }

    StructureConstantAlgebra to_structure_algebra() const {
        const std::size_t nd = coefficient_dim(), nt = d_.size(), kk = k();
        auto idx = [&](std::size_t i, std::size_t j, std::size_t t, std::size_t r) {
            return ((i * kk + j) * nt + t) * nd + r;
        };
        const std::size_t n = kk * kk * nt * nd;
        std::vector<std::string> labels(n);
        std::vector<GroupElement> degrees(n, G().zero());
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t j = 0; j < kk; ++j)
                for (std::size_t t = 0; t < nt; ++t)
                    for (std::size_t r = 0; r < nd; ++r) {
                        labels[idx(i, j, t, r)] = "E" + std::to_string(i + 1) + std::to_string(j + 1) + "*" +
                                                  Coeff<C>::str(coefficient_basis(r)) + "X" + d_.element(t).str();
                        degrees[idx(i, j, t, r)] = degree_of(i, j, t);
                    }
        std::vector<SparseVector> products(n * n);
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t j = 0; j < kk; ++j)
                for (std::size_t l = 0; l < kk; ++l)
                    for (std::size_t t = 0; t < nt; ++t)
                        for (std::size_t r = 0; r < nd; ++r)
                            for (std::size_t u = 0; u < nt; ++u)
                                for (std::size_t s = 0; s < nd; ++s) {
                                    auto [c, w] = d_.mul_basis(t, coefficient_basis(r), u, coefficient_basis(s));
                                    auto coords = Coeff<C>::real_coords(c, d_.conductor());
                                    SparseVector sv;
                                    for (std::size_t q = 0; q < nd; ++q)
                                        if (coords[q] != 0) sv.push_back({idx(i, l, w, q), coords[q]});
                                    products[idx(i, j, t, r) * n + idx(j, l, u, s)] = std::move(sv);
                                }
        RationalVector unity(n, Rational(0));
        for (std::size_t i = 0; i < kk; ++i) unity[idx(i, i, d_.zero_index(), 0)] = 1;
        return StructureConstantAlgebra(G(), labels, degrees, products, unity);
    }

    // Q-coordinates of an element in the basis of to_structure_algebra().
    RationalVector to_vector(const Element& x) const {
        check(x);
        RationalVector v;
        for (auto& e : x.entries)
            for (auto& c : e.coeffs) {
                auto coords = Coeff<C>::real_coords(c, d_.conductor());
                v.insert(v.end(), coords.begin(), coords.end());
            }
        return v;
    }

    // Observed square behaviour on every component: each Q-basis element and
    // `samples` seeded random elements of the component.
    std::vector<SquaresEntry> observe_squares(std::size_t samples = 4, std::uint64_t seed = 7) const {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coef(-3, 3);
        std::vector<SquaresEntry> out;
        for (auto& comp : components()) {
            SquaresEntry e{comp.degree, p_.in_T(comp.degree), SquaresKind::Mixed};
            std::vector<Element> probes;
            for (auto& s : comp.slots)
                for (std::size_t r = 0; r < coefficient_dim(); ++r)
                    probes.push_back(unit(s.i, s.j, s.t, coefficient_basis(r)));
            for (std::size_t n = 0; n < samples; ++n) {
                auto x = zero();
                for (auto& s : comp.slots) {
                    std::vector<Rational> v(coefficient_dim());
                    for (auto& a : v) a = coef(rng);
                    x.at(s.i, s.j).coeffs[s.t] = Coeff<C>::from_real_coords(v, d_.conductor());
                }
                if (!x.is_zero()) probes.push_back(x);
            }
            bool any_zero = false, any_nonzero = false;
            for (auto& x : probes) (multiply(x, x).is_zero() ? any_zero : any_nonzero) = true;
            e.observed = any_zero && any_nonzero ? SquaresKind::Mixed
                         : any_zero             ? SquaresKind::ZeroSquares
                                                : SquaresKind::NonzeroSquares;
            out.push_back(e);
        }
        return out;
    }

    std::vector<SquaresEntry> squares_profile(std::size_t samples = 4, std::uint64_t seed = 7) const {
        require_fine_condition("squares_profile");
        auto out = observe_squares(samples, seed);
        for (auto& e : out)
            if (!e.matches())
                throw std::logic_error("squares profile at degree " + e.degree.str() + " is " +
                                       squares_name(e.observed) + ", contradicting the diagonal-class rule");
        return out;
    }

    // 0/1 combinations of E_ii (x) 1. Completeness: R_e is the product of the
    // corners E_ii R_e E_ii, each a copy of D_e; for dim D_e = 1 the equation
    // eps^2 = eps is solved coordinatewise, otherwise D_e is a division ring.
    IdempotentReport<C> homogeneous_idempotents() const {
        require_fine_condition("homogeneous_idempotents");
        IdempotentReport<C> rep;
        std::vector<MatrixUnitSlot> e_slots;
        for (auto& comp : components())
            if (comp.degree.is_zero()) e_slots = comp.slots;
        bool corners = true;
        for (auto& s : e_slots) corners = corners && s.i == s.j && s.t == d_.zero_index();
        if (corners) {
            for (std::size_t i = 0; i < k() && corners; ++i)
                for (std::size_t j = 0; j < k() && corners; ++j)
                    if (i != j) corners = multiply(unit(i, i, d_.zero_index()), unit(j, j, d_.zero_index())).is_zero();
        }
        bool solved = corners;
        if (corners && coefficient_dim() == 1) {
            // eps = sum a_i E_ii, E_ii^2 = c_i E_ii  =>  a_i in {0, 1/c_i}
            for (std::size_t i = 0; i < k(); ++i) {
                auto sq = multiply(unit(i, i, d_.zero_index()), unit(i, i, d_.zero_index()));
                solved = solved && sq == unit(i, i, d_.zero_index(), sq.at(i, i).coeffs[d_.zero_index()]) &&
                         !Coeff<C>::is_zero(sq.at(i, i).coeffs[d_.zero_index()]);
            }
        }
        for (std::uint64_t mask = 0; mask < (1ull << k()); ++mask) {
            auto x = zero();
            for (std::size_t i = 0; i < k(); ++i)
                if ((mask >> i) & 1) x.at(i, i) = d_.one();
            if (!(multiply(x, x) == x)) throw std::logic_error("diagonal 0/1 combination is not idempotent");
            rep.all.push_back(x);
        }
        for (auto& e : rep.all) {
            if (e.is_zero()) continue;
            bool prim = true;
            for (auto& f : rep.all)
                if (!f.is_zero() && !(f == e) && multiply(f, e) == f && multiply(e, f) == f) prim = false;
            if (prim) rep.primitive.push_back(e);
        }
        rep.exhaustive = solved;
        return rep;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "M_" << k() << "(" << d_.describe() << ")";
        return os.str();
    }

private:
    void check(const Element& x) const {
        if (x.parent != id_ || x.k != k()) throw std::invalid_argument("element belongs to a different algebra");
    }
    void require_fine_condition(const char* what) const {
        auto fc = fine_condition();
        if (!fc) throw std::invalid_argument(std::string(what) + " needs the fine condition: " + fc.witness->str());
    }

    DivisionAlgebra<C> d_;
    GradingParams p_;
    std::vector<GroupElement> gamma_;
    std::uint64_t id_;
};

// Same k and equivalent division gradings; asserted under the fine condition only.
template <class C1, class C2>
bool equivalent_gradings(const GradedMatrixAlgebra<C1>& a, const GradedMatrixAlgebra<C2>& b) {
    if (!a.fine_condition() || !b.fine_condition())
        throw std::invalid_argument("equivalence criterion needs the fine condition on both gradings");
    return a.k() == b.k() && equivalent(AnyDivisionAlgebra(a.division()), AnyDivisionAlgebra(b.division()));
}

}  // namespace gradecat

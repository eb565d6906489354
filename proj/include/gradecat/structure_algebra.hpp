#pragma once

#include "gradecat/abelian_group.hpp"
#include "gradecat/matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradecat {

using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

// Finite-dimensional graded Q-algebra given by a homogeneous basis b_0..b_{n-1},
// degrees in an abelian group G, and structure constants b_i b_j = sum_k c_ijk b_k.
class StructureConstantAlgebra {
public:
    StructureConstantAlgebra(AbelianGroup g, std::vector<std::string> labels, std::vector<GroupElement> degrees,
                             std::vector<SparseVector> products, RationalVector unity)
        : g_(std::move(g)),
          labels_(std::move(labels)),
          degrees_(std::move(degrees)),
          products_(std::move(products)),
          unity_(std::move(unity)) {
        const std::size_t n = degrees_.size();
        if (labels_.size() != n || products_.size() != n * n || unity_.size() != n)
            throw std::invalid_argument("structure-constant data has inconsistent sizes");
        for (auto& d : degrees_)
            if (!g_.contains(d)) throw std::invalid_argument("basis degree outside the grading group");
        for (auto& p : products_)
            for (auto& [k, c] : p)
                if (k >= n) throw std::invalid_argument("structure constant refers to a missing basis element");
    }

    std::size_t dim() const noexcept { return degrees_.size(); }
    const AbelianGroup& group() const noexcept { return g_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<GroupElement>& degrees() const noexcept { return degrees_; }
    const GroupElement& degree(std::size_t i) const { return degrees_[i]; }
    const SparseVector& basis_product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
    const RationalVector& unity() const noexcept { return unity_; }

    RationalVector zero() const { return RationalVector(dim(), Rational(0)); }
    RationalVector basis(std::size_t i) const {
        auto v = zero();
        v.at(i) = 1;
        return v;
    }

    RationalVector multiply(const RationalVector& x, const RationalVector& y) const {
        auto z = zero();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j] == 0) continue;
                Rational c = x[i] * y[j];
                for (auto& [k, s] : basis_product(i, j)) z[k] += c * s;
            }
        }
        return z;
    }

    // Associativity on basis triples, homogeneity of products, two-sided unity.
    void validate() const {
        const std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto want = g_.add(degrees_[i], degrees_[j]);
                for (auto& [k, c] : basis_product(i, j))
                    if (c != 0 && !(degrees_[k] == want))
                        throw std::invalid_argument("product " + labels_[i] + "*" + labels_[j] + " is not homogeneous");
            }
        for (std::size_t i = 0; i < n; ++i) {
            if (multiply(unity_, basis(i)) != basis(i) || multiply(basis(i), unity_) != basis(i))
                throw std::invalid_argument("unity element is not a two-sided identity");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto ij = to_dense(basis_product(i, j));
                for (std::size_t k = 0; k < n; ++k) {
                    auto lhs = multiply(ij, basis(k));
                    auto rhs = multiply(basis(i), to_dense(basis_product(j, k)));
                    if (lhs != rhs)
                        throw std::invalid_argument("not associative at (" + labels_[i] + "," + labels_[j] + "," +
                                                    labels_[k] + ")");
                }
            }
    }

    // column j = x * b_j
    Matrix<Rational> left_matrix(const RationalVector& x) const {
        Matrix<Rational> m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            auto col = multiply(x, basis(j));
            for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
        }
        return m;
    }
    // column j = b_j * x
    Matrix<Rational> right_matrix(const RationalVector& x) const {
        Matrix<Rational> m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            auto col = multiply(basis(j), x);
            for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
        }
        return m;
    }

    // Two-sided inverse, by solving x y = 1 and checking y x = 1.
    std::optional<RationalVector> inverse(const RationalVector& x) const {
        auto y = solve_linear(left_matrix(x), unity_);
        if (!y) return std::nullopt;
        if (multiply(*y, x) != unity_) return std::nullopt;
        if (multiply(x, *y) != unity_) return std::nullopt;
        return y;
    }
    bool is_invertible(const RationalVector& x) const { return inverse(x).has_value(); }

    // Distinct degrees in order of first appearance, with the basis indices of each.
    std::vector<std::pair<GroupElement, std::vector<std::size_t>>> components() const {
        std::vector<std::pair<GroupElement, std::vector<std::size_t>>> out;
        for (std::size_t i = 0; i < dim(); ++i) {
            auto it = std::find_if(out.begin(), out.end(), [&](auto& p) { return p.first == degrees_[i]; });
            if (it == out.end()) out.push_back({degrees_[i], {i}});
            else it->second.push_back(i);
        }
        return out;
    }

    // Homogeneous components of x keyed by degree (nonzero ones only).
    std::vector<std::pair<GroupElement, RationalVector>> homogeneous_parts(const RationalVector& x) const {
        std::vector<std::pair<GroupElement, RationalVector>> out;
        for (auto& [g, idx] : components()) {
            auto part = zero();
            bool nonzero = false;
            for (auto i : idx)
                if (x[i] != 0) {
                    part[i] = x[i];
                    nonzero = true;
                }
            if (nonzero) out.push_back({g, part});
        }
        return out;
    }

    std::optional<GroupElement> homogeneous_degree(const RationalVector& x) const {
        auto parts = homogeneous_parts(x);
        if (parts.size() != 1) return std::nullopt;
        return parts[0].first;
    }

    // Basis of Z(A).
    std::vector<RationalVector> center() const {
        const std::size_t n = dim();
        Matrix<Rational> big(n * n, n);
        for (std::size_t i = 0; i < n; ++i) {
            auto l = left_matrix(basis(i)), r = right_matrix(basis(i));
            // (b_i x - x b_i) = (R_{b_i}... ) expressed via columns: x -> b_i x is left_matrix(b_i)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) big(i * n + a, b) = l(a, b) - r(a, b);
        }
        return nullspace(big);
    }

    // Linear span of the two-sided ideal generated by the given elements.
    EchelonBasis ideal_closure(const std::vector<RationalVector>& gens) const {
        EchelonBasis span(dim());
        std::deque<RationalVector> queue;
        for (auto& x : gens)
            if (span.insert(x)) queue.push_back(x);
        // include 1 * x * 1 generators' products by basis elements on both sides
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            if (span.rank() == dim()) break;
            for (std::size_t i = 0; i < dim(); ++i) {
                auto l = multiply(basis(i), x);
                if (span.insert(l)) queue.push_back(l);
                auto r = multiply(x, basis(i));
                if (span.insert(r)) queue.push_back(r);
            }
        }
        return span;
    }

    // Every basis element, and `samples` seeded random combinations inside each
    // multi-dimensional component, generate A as a two-sided ideal.
    bool is_graded_simple(std::size_t samples = 4, std::uint64_t seed = 1) const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (ideal_closure({basis(i)}).rank() != dim()) return false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coef(-3, 3);
        for (auto& [g, idx] : components()) {
            if (idx.size() < 2) continue;
            for (std::size_t s = 0; s < samples; ++s) {
                auto x = zero();
                bool nonzero = false;
                for (auto i : idx) {
                    x[i] = coef(rng);
                    nonzero = nonzero || x[i] != 0;
                }
                if (nonzero && ideal_closure({x}).rank() != dim()) return false;
            }
        }
        return true;
    }

    // Universal group of the grading: labels are the distinct degrees, relations
    // deg x + deg y = deg xy for nonzero products of basis elements.
    UniversalGroup universal_group() const {
        auto comps = components();
        std::map<std::vector<std::int64_t>, std::size_t> label_of;
        for (std::size_t l = 0; l < comps.size(); ++l) label_of[comps[l].first.coords()] = l;
        std::vector<std::vector<std::int64_t>> rows;
        std::map<std::vector<std::int64_t>, bool> seen;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) {
                bool nonzero = false;
                for (auto& [k, c] : basis_product(i, j)) nonzero = nonzero || c != 0;
                if (!nonzero) continue;
                std::vector<std::int64_t> row(comps.size(), 0);
                row[label_of[degrees_[i].coords()]] += 1;
                row[label_of[degrees_[j].coords()]] += 1;
                row[label_of[g_.add(degrees_[i], degrees_[j]).coords()]] -= 1;
                if (!seen[row]) {
                    seen[row] = true;
                    rows.push_back(row);
                }
            }
        return universal_abelian_group(comps.size(), rows);
    }

    RationalVector to_dense(const SparseVector& s) const {
        auto v = zero();
        for (auto& [k, c] : s) v[k] += c;
        return v;
    }

private:
    AbelianGroup g_;
    std::vector<std::string> labels_;
    std::vector<GroupElement> degrees_;
    std::vector<SparseVector> products_;
    RationalVector unity_;
};

// A x B graded by G_A x G_B; (a,0) has degree (deg a, 0) and (0,b) has degree (0, deg b).
inline StructureConstantAlgebra direct_sum(const StructureConstantAlgebra& a, const StructureConstantAlgebra& b) {
    if (!a.group().is_finite() || !b.group().is_finite())
        throw std::invalid_argument("direct_sum supports finite grading groups only");
    auto tors = a.group().torsion();
    tors.insert(tors.end(), b.group().torsion().begin(), b.group().torsion().end());
    AbelianGroup g(0, tors);  // throws unless the concatenation is already a divisibility chain
    const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
    std::vector<std::string> labels;
    std::vector<GroupElement> degrees;
    for (std::size_t i = 0; i < na; ++i) {
        labels.push_back("(" + a.labels()[i] + ",0)");
        auto c = a.degree(i).coords();
        c.resize(g.num_coords(), 0);
        degrees.push_back(g.element(c));
    }
    for (std::size_t i = 0; i < nb; ++i) {
        labels.push_back("(0," + b.labels()[i] + ")");
        std::vector<std::int64_t> c(a.group().num_coords(), 0);
        auto cb = b.degree(i).coords();
        c.insert(c.end(), cb.begin(), cb.end());
        degrees.push_back(g.element(c));
    }
    std::vector<SparseVector> products(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) products[i * n + j] = a.basis_product(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            SparseVector p;
            for (auto& [k, c] : b.basis_product(i, j)) p.push_back({k + na, c});
            products[(i + na) * n + (j + na)] = p;
        }
    RationalVector unity(a.unity());
    unity.insert(unity.end(), b.unity().begin(), b.unity().end());
    return StructureConstantAlgebra(g, labels, degrees, products, unity);
}

}  // namespace gradecat

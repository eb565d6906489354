#pragma once

#include "gradecat/matrix.hpp"
#include "gradecat/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradecat {

namespace detail {

using Poly = std::vector<Integer>;  // coefficients, lowest degree first

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division of monic integer polynomials
inline Poly poly_div(Poly num, const Poly& den) {
    trim(num);
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer c = num[k + den.size() - 1];
        q[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("cyclotomic polynomial division left a remainder");
    return q;
}

struct CyclotomicField {
    int n = 1;
    std::size_t degree = 1;
    Poly phi;                            // Phi_n, monic
    std::vector<std::vector<Rational>> power;  // x^k mod Phi_n for k in [0, max(n, 2*degree))
};

inline Poly cyclotomic_poly(int n, std::map<int, Poly>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Poly p(n + 1, Integer(0));
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div(p, cyclotomic_poly(d, memo));
    memo[n] = p;
    return p;
}

inline std::shared_ptr<const CyclotomicField> cyclotomic_field(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
    static std::map<int, Poly> memo;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    auto f = std::make_shared<CyclotomicField>();
    f->n = n;
    f->phi = cyclotomic_poly(n, memo);
    f->degree = f->phi.size() - 1;
    std::size_t count = std::max<std::size_t>(n, 2 * f->degree);
    std::vector<Rational> cur(f->degree, Rational(0));
    cur[0] = 1;
    for (std::size_t k = 0; k < count; ++k) {
        f->power.push_back(cur);
        // multiply by x, then reduce x^degree = -sum phi_j x^j
        Rational top = cur[f->degree - 1];
        for (std::size_t j = f->degree - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < f->degree; ++j) cur[j] -= top * Rational(f->phi[j]);
    }
    cache[n] = f;
    return f;
}

}  // namespace detail

// Element of Q(zeta_N) in the power basis 1, zeta_N, ..., zeta_N^{phi(N)-1},
// with zeta_N = exp(2 pi i / N).
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(Rational(0)) {}
    Cyclotomic(const Rational& r) : field_(detail::cyclotomic_field(1)), coeffs_{r} {}  // NOLINT implicit
    Cyclotomic(std::int64_t r) : Cyclotomic(Rational(r)) {}                             // NOLINT implicit

    Cyclotomic(int conductor, std::vector<Rational> coeffs) : field_(detail::cyclotomic_field(conductor)) {
        if (coeffs.size() != field_->degree)
            throw std::invalid_argument("cyclotomic coefficient vector must have length phi(N)");
        coeffs_ = std::move(coeffs);
    }

    // zeta_N^k
    static Cyclotomic zeta(int n, std::int64_t k = 1) {
        auto f = detail::cyclotomic_field(n);
        auto e = static_cast<std::size_t>(((k % n) + n) % n);
        return Cyclotomic(f, f->power[e]);
    }

    int conductor() const noexcept { return field_->n; }
    std::size_t degree() const noexcept { return field_->degree; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    std::optional<Rational> as_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return std::nullopt;
        return coeffs_[0];
    }

    // Same value in Q(zeta_M), N | M.
    Cyclotomic promote(int m) const {
        if (m == conductor()) return *this;
        if (m % conductor() != 0) throw std::invalid_argument("promote: conductor must divide the target");
        auto f = detail::cyclotomic_field(m);
        const int step = m / conductor();
        std::vector<Rational> out(f->degree, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            const auto& p = f->power[(i * step) % static_cast<std::size_t>(m)];
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeffs_[i] * p[j];
        }
        return Cyclotomic(f, std::move(out));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor(), b.conductor());
        auto x = a.promote(m), y = b.promote(m);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic x = a;
        for (auto& c : x.coeffs_) c = -c;
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor(), b.conductor());
        auto x = a.promote(m), y = b.promote(m);
        const auto& f = *x.field_;
        std::vector<Rational> out(f.degree, Rational(0));
        for (std::size_t i = 0; i < f.degree; ++i) {
            if (x.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < f.degree; ++j) {
                if (y.coeffs_[j] == 0) continue;
                Rational c = x.coeffs_[i] * y.coeffs_[j];
                const auto& p = f.power[i + j];
                for (std::size_t k = 0; k < f.degree; ++k)
                    if (p[k] != 0) out[k] += c * p[k];
            }
        }
        return Cyclotomic(x.field_, std::move(out));
    }

    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero cyclotomic");
        const auto& f = *field_;
        // columns: coordinates of this * zeta^j
        Matrix<Rational> m(f.degree, f.degree);
        for (std::size_t j = 0; j < f.degree; ++j) {
            auto col = (*this * Cyclotomic(field_, f.power[j])).coeffs_;
            for (std::size_t i = 0; i < f.degree; ++i) m(i, j) = col[i];
        }
        std::vector<Rational> rhs(f.degree, Rational(0));
        rhs[0] = 1;
        auto sol = solve_linear(m, rhs);
        if (!sol) throw std::logic_error("cyclotomic inverse: singular multiplication matrix");
        return Cyclotomic(field_, *sol);
    }

    // complex conjugation: zeta -> zeta^{N-1}
    Cyclotomic conj() const {
        const auto& f = *field_;
        std::vector<Rational> out(f.degree, Rational(0));
        for (std::size_t i = 0; i < f.degree; ++i) {
            if (coeffs_[i] == 0) continue;
            const auto& p = f.power[(f.n - static_cast<int>(i) % f.n) % f.n];
            for (std::size_t k = 0; k < f.degree; ++k) out[k] += coeffs_[i] * p[k];
        }
        return Cyclotomic(field_, std::move(out));
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.conductor(), b.conductor());
        return a.promote(m).coeffs_ == b.promote(m).coeffs_;
    }

    // If this is a root of unity exp(2 pi i q), returns q in [0,1).
    std::optional<Rational> root_of_unity_arg() const {
        const int n = conductor();
        const int m = n % 2 == 0 ? n : 2 * n;  // roots of unity in Q(zeta_n) are mu_m
        auto x = promote(m);
        for (int k = 0; k < m; ++k)
            if (x == zeta(m, k)) return Rational(Integer(k), Integer(m));
        return std::nullopt;
    }

    std::string str() const {
        if (auto r = as_rational()) return to_string(*r);
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            std::string c = to_string(coeffs_[i]);
            std::string term = i == 0 ? c : (coeffs_[i] == 1 ? "" : coeffs_[i] == -1 ? "-" : c + "*");
            if (i > 0) term += "z" + std::to_string(conductor()) + (i > 1 ? "^" + std::to_string(i) : "");
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        return out;
    }

private:
    Cyclotomic(std::shared_ptr<const detail::CyclotomicField> f, std::vector<Rational> c)
        : field_(std::move(f)), coeffs_(std::move(c)) {}

    std::shared_ptr<const detail::CyclotomicField> field_;
    std::vector<Rational> coeffs_;
};

}  // namespace gradecat

#pragma once

#include "gradecat/cyclotomic.hpp"
#include "gradecat/quaternion.hpp"
#include "gradecat/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gradecat {

enum class CoefficientKind { Real, Complex, Quaternion };

inline const char* kind_name(CoefficientKind k) {
    switch (k) {
        case CoefficientKind::Real: return "REAL";
        case CoefficientKind::Complex: return "COMPLEX";
        case CoefficientKind::Quaternion: return "QUATERNION";
    }
    return "?";
}

// Per-ring glue used by the templated algebra code. `conductor` is only
// meaningful for cyclotomic coefficients.
template <class C>
struct Coeff;

template <>
struct Coeff<Rational> {
    static constexpr CoefficientKind kind = CoefficientKind::Real;
    static Rational conj(const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational inverse(const Rational& x) {
        if (x == 0) throw std::domain_error("inversion of zero");
        return 1 / x;
    }
    static std::string str(const Rational& x) { return to_string(x); }
    static std::size_t real_dim(int) { return 1; }
    static std::vector<Rational> real_coords(const Rational& x, int) { return {x}; }
    static Rational from_real_coords(const std::vector<Rational>& v, int) { return v.at(0); }
    static bool is_real(const Rational&) { return true; }
    static Rational real_part(const Rational& x) { return x; }
    static Cyclotomic to_cyclotomic(const Rational& x) { return Cyclotomic(x); }
};

template <>
struct Coeff<Cyclotomic> {
    static constexpr CoefficientKind kind = CoefficientKind::Complex;
    static Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }
    static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
    static Cyclotomic inverse(const Cyclotomic& x) { return x.inverse(); }
    static std::string str(const Cyclotomic& x) { return x.str(); }
    // Q-basis 1, zeta_N, ..., zeta_N^{phi(N)-1}
    static std::size_t real_dim(int conductor) { return Cyclotomic::zeta(conductor).degree(); }
    static std::vector<Rational> real_coords(const Cyclotomic& x, int conductor) {
        return x.promote(conductor).coeffs();
    }
    static Cyclotomic from_real_coords(const std::vector<Rational>& v, int conductor) { return Cyclotomic(conductor, v); }
    static bool is_real(const Cyclotomic& x) { return x.as_rational().has_value(); }
    static Rational real_part(const Cyclotomic& x) {
        auto r = x.as_rational();
        if (!r) throw std::domain_error("cyclotomic value is not rational");
        return *r;
    }
    static Cyclotomic to_cyclotomic(const Cyclotomic& x) { return x; }
};

template <>
struct Coeff<Quaternion> {
    static constexpr CoefficientKind kind = CoefficientKind::Quaternion;
    // Only the identity acts on quaternion coefficients in the catalog; conj here
    // is the quaternion conjugation and is never used as a grading action.
    static Quaternion conj(const Quaternion& x) { return x.conj(); }
    static bool is_zero(const Quaternion& x) { return x.is_zero(); }
    static Quaternion inverse(const Quaternion& x) { return x.inverse(); }
    static std::string str(const Quaternion& x) { return x.str(); }
    static std::size_t real_dim(int) { return 4; }
    static std::vector<Rational> real_coords(const Quaternion& x, int) {
        return {x[0], x[1], x[2], x[3]};
    }
    static Quaternion from_real_coords(const std::vector<Rational>& v, int) { return {v.at(0), v.at(1), v.at(2), v.at(3)}; }
    static bool is_real(const Quaternion& x) { return x.is_real(); }
    static Rational real_part(const Quaternion& x) {
        if (!x.is_real()) throw std::domain_error("quaternion value is not real");
        return x[0];
    }
    static Cyclotomic to_cyclotomic(const Quaternion& x) { return Cyclotomic(real_part(x)); }
};

// Sign of a value that must be +1 or -1.
template <class C>
int unit_sign(const C& x) {
    if (!Coeff<C>::is_real(x)) throw std::domain_error("value " + Coeff<C>::str(x) + " is not real");
    Rational r = Coeff<C>::real_part(x);
    if (r == 1) return 1;
    if (r == -1) return -1;
    throw std::domain_error("value " + Coeff<C>::str(x) + " is not +1 or -1");
}

}  // namespace gradecat

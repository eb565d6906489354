#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gradecat {

// Expression templates are disabled so that `auto` and lambdas deduce plain values.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return den < 0 ? Rational(Integer(-num), Integer(-den)) : Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return make_rational(Integer(num), Integer(den)); }

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    const Integer& den = boost::multiprecision::denominator(r);
    if (den == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
        Integer num(std::string(text.substr(0, slash)));
        Integer den(std::string(text.substr(slash + 1)));
        return make_rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace gradecat

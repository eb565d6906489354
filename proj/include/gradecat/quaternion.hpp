#pragma once

#include "gradecat/rational.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace gradecat {

// a + b i + c j + d k with rational coefficients.
class Quaternion {
public:
    Quaternion() : q_{Rational(0), Rational(0), Rational(0), Rational(0)} {}
    Quaternion(const Rational& r) : q_{r, Rational(0), Rational(0), Rational(0)} {}  // NOLINT implicit
    Quaternion(std::int64_t r) : Quaternion(Rational(r)) {}                          // NOLINT implicit
    Quaternion(Rational a, Rational b, Rational c, Rational d) : q_{a, b, c, d} {}

    static Quaternion i() { return {0, 1, 0, 0}; }
    static Quaternion j() { return {0, 0, 1, 0}; }
    static Quaternion k() { return {0, 0, 0, 1}; }

    const Rational& operator[](std::size_t n) const { return q_[n]; }
    const std::array<Rational, 4>& coeffs() const noexcept { return q_; }

    bool is_zero() const { return q_[0] == 0 && q_[1] == 0 && q_[2] == 0 && q_[3] == 0; }
    bool is_real() const { return q_[1] == 0 && q_[2] == 0 && q_[3] == 0; }

    friend Quaternion operator+(const Quaternion& x, const Quaternion& y) {
        return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
    }
    friend Quaternion operator-(const Quaternion& x) { return {-x[0], -x[1], -x[2], -x[3]}; }
    friend Quaternion operator-(const Quaternion& x, const Quaternion& y) { return x + (-y); }

    friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
        return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
                x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
                x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
                x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
    }

    Quaternion conj() const { return {q_[0], -q_[1], -q_[2], -q_[3]}; }
    Rational norm() const { return q_[0] * q_[0] + q_[1] * q_[1] + q_[2] * q_[2] + q_[3] * q_[3]; }

    Quaternion inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero quaternion");
        Rational n = norm();
        auto c = conj();
        return {c[0] / n, c[1] / n, c[2] / n, c[3] / n};
    }

    friend Quaternion operator/(const Quaternion& a, const Quaternion& b) { return a * b.inverse(); }
    Quaternion& operator+=(const Quaternion& b) { return *this = *this + b; }
    Quaternion& operator-=(const Quaternion& b) { return *this = *this - b; }
    Quaternion& operator*=(const Quaternion& b) { return *this = *this * b; }

    friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.q_ == b.q_; }

    std::string str() const {
        static const char* names[] = {"", "i", "j", "k"};
        std::string out;
        for (int n = 0; n < 4; ++n) {
            if (q_[n] == 0) continue;
            std::string c = to_string(q_[n]);
            std::string term = n == 0 ? c : (q_[n] == 1 ? "" : q_[n] == -1 ? "-" : c + "*") + names[n];
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        return out.empty() ? "0" : out;
    }

private:
    std::array<Rational, 4> q_;
};

}  // namespace gradecat

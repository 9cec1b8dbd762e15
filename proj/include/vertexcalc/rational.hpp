#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vcalc {

using Rational = mpq_class;

// Generalized binomial coefficient C(top, k) for integer top and k >= 0.
Rational binomial(long top, long k);
Rational binomial(const Rational& top, long k);
Rational factorial(long n);
Rational power(const Rational& base, long exponent);

// p/q in canonical form.
inline Rational frac(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline int sign_power(long n) { return (n & 1) ? -1 : 1; }

std::string to_string(const Rational& q);
// Accepts "p", "p/q" and finite decimals such as "-0.25".
Rational parse_rational(std::string_view text);

// Gaussian-rational complex number; used for puncture positions.
struct Complex {
    Rational re;
    Rational im;

    Complex() : re(0), im(0) {}
    Complex(Rational r) : re(std::move(r)), im(0) {}
    Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r) : re(r), im(0) {}

    Rational norm2() const { return Rational(re * re + im * im); }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    Complex inverse() const;

    friend Complex operator+(const Complex& a, const Complex& b) { return {Rational(a.re + b.re), Rational(a.im + b.im)}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {Rational(a.re - b.re), Rational(a.im - b.im)}; }
    friend Complex operator-(const Complex& a) { return {Rational(-a.re), Rational(-a.im)}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
    }
    friend Complex operator/(const Complex& a, const Complex& b) { return a * b.inverse(); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
};

Complex power(const Complex& base, long exponent);
std::string to_string(const Complex& z);
// Accepts a rational or "(re,im)".
Complex parse_complex(std::string_view text);

} // namespace vcalc

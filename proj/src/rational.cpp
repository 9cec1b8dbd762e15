#include "vertexcalc/rational.hpp"

#include <stdexcept>

namespace vcalc {

Rational binomial(long top, long k)
{
    if (k < 0) return 0;
    mpz_class num = 1;
    mpz_class den = 1;
    for (long i = 0; i < k; ++i) {
        num *= top - i;
        den *= i + 1;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational binomial(const Rational& top, long k)
{
    if (k < 0) return 0;
    Rational r = 1;
    for (long i = 0; i < k; ++i) r *= Rational(top - i) / (i + 1);
    return r;
}

Rational factorial(long n)
{
    mpz_class r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return Rational(r);
}

Rational power(const Rational& base, long exponent)
{
    if (exponent < 0) {
        if (sgn(base) == 0) throw std::domain_error("zero to a negative power");
        return power(Rational(1 / base), -exponent);
    }
    mpq_class r = 1;
    for (long i = 0; i < exponent; ++i) r *= base;
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long decimals = static_cast<long>(s.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad number '" + s + "'");
        Rational r;
        if (r.set_str(digits.front() == '+' ? digits.substr(1) : digits, 10) != 0)
            throw std::invalid_argument("bad number '" + s + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
        return Rational(r / scale);
    }
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
        throw std::invalid_argument("bad number '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

Complex Complex::inverse() const
{
    Rational n = norm2();
    if (sgn(n) == 0) throw std::domain_error("inverse of zero");
    return {Rational(re / n), Rational(-im / n)};
}

Complex power(const Complex& base, long exponent)
{
    if (exponent < 0) return power(base.inverse(), -exponent);
    Complex r(1);
    for (long i = 0; i < exponent; ++i) r *= base;
    return r;
}

std::string to_string(const Complex& z)
{
    if (sgn(z.im) == 0) return to_string(z.re);
    return "(" + to_string(z.re) + "," + to_string(z.im) + ")";
}

Complex parse_complex(std::string_view text)
{
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') throw std::invalid_argument("bad complex '" + std::string(text) + "'");
        auto inner = text.substr(1, text.size() - 2);
        auto comma = inner.find(',');
        if (comma == std::string_view::npos) throw std::invalid_argument("bad complex '" + std::string(text) + "'");
        return {parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1))};
    }
    return Complex(parse_rational(text));
}

} // namespace vcalc

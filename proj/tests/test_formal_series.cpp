#include <doctest.h>

#include "vertexcalc/formal_series.hpp"

#include <random>

using namespace vcalc;

namespace {

Rational coeff(const FormalSeries& s, std::map<std::string, long> e) { return s.coefficient(e); }

// Long division of 1 by (c0 + c1 t) in powers of t: returns coefficients of t^k.
std::vector<Rational> geometric_oracle(const Rational& c0, const Rational& c1, int terms)
{
    std::vector<Rational> out;
    Rational remainder = 1;  // coefficient of t^k in the running remainder
    for (int k = 0; k < terms; ++k) {
        Rational q = remainder / c0;
        out.push_back(q);
        remainder = -q * c1;
    }
    return out;
}

FormalSeries random_polynomial(std::mt19937& rng, const std::string& var, int max_degree)
{
    std::uniform_int_distribution<int> exp(-max_degree, max_degree);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::map<long, Rational> c;
    int count = 1 + rng() % 4;
    for (int i = 0; i < count; ++i) c[exp(rng)] += Rational(num(rng), den(rng));
    for (auto& [e, q] : c) q.canonicalize();
    return laurent_polynomial(var, c);
}

} // namespace

TEST_CASE("polynomial product")
{
    auto a = laurent_polynomial("x", {{0, 1}, {1, 1}});
    auto b = laurent_polynomial("x", {{0, 1}, {1, -1}});
    auto p = series_multiply(a, b, Window{{"x", -2, 2}});
    CHECK(p.terms().size() == 2);
    CHECK(coeff(p, {{"x", 0}}) == 1);
    CHECK(coeff(p, {{"x", 2}}) == -1);
    CHECK(coeff(p, {{"x", 1}}) == 0);
}

TEST_CASE("delta times (x - 1) vanishes")
{
    auto f = laurent_polynomial("x", {{0, -1}, {1, 1}});
    Window w{{"x", -5, 5}};
    auto p = series_multiply(f, delta_series("x", -6, 6), w);
    CHECK(p.is_zero());
}

TEST_CASE("delta squared is ill defined")
{
    Window w{{"x", -2, 2}};
    CHECK_THROWS_AS(series_multiply(delta_series("x", -4, 4), delta_series("x", -4, 4), w), IllDefinedProduct);
}

TEST_CASE("delta with a too narrow window is rejected")
{
    auto f = laurent_polynomial("x", {{0, -1}, {1, 1}});
    CHECK_THROWS_AS(series_multiply(f, delta_series("x", -5, 5), Window{{"x", -5, 5}}), InsufficientWindow);
}

TEST_CASE("lookups outside the variable set are errors")
{
    auto f = laurent_polynomial("x", {{0, 1}});
    CHECK_THROWS_AS(f.coefficient({{"y", 0}}), UnknownVariable);
    CHECK_THROWS_AS(f.coefficient(ExponentVector{3}), WindowViolation);
}

TEST_CASE("binomial expansions")
{
    Window w = Window::cube({"x1", "x2"}, -4, 4);
    auto sq = binomial_expand("x1", "x2", 2, {"x1", "x2"}, w);
    CHECK(sq.terms().size() == 3);
    CHECK(coeff(sq, {{"x1", 2}, {"x2", 0}}) == 1);
    CHECK(coeff(sq, {{"x1", 1}, {"x2", 1}}) == -2);
    CHECK(coeff(sq, {{"x1", 0}, {"x2", 2}}) == 1);

    auto inv = binomial_expand("x1", "x2", -1, {"x1", "x2"}, w);
    for (long k = 0; k <= 3; ++k) CHECK(coeff(inv, {{"x1", -1 - k}, {"x2", k}}) == 1);
    CHECK(inv.terms().size() == 4);

    // (x1 - x2)^{-1} with x1 subordinate = 1/(-x2 + x1); divide in powers of t = x1/x2.
    auto rev = binomial_expand("x1", "x2", -1, {"x2", "x1"}, w);
    auto oracle = geometric_oracle(-1, 1, 9);
    w.for_each([&](const ExponentVector& e) {
        long p1 = e[0], p2 = e[1];
        Rational expected = 0;
        if (p1 >= 0 && p2 == -1 - p1) expected = oracle[p1];
        CHECK(rev.coefficient(e) == expected);
    });
}

TEST_CASE("binomial inverse pairs multiply to one")
{
    for (long n = -3; n <= 3; ++n) {
        for (bool sub2 : {true, false}) {
            ExpansionDirection dir = sub2 ? ExpansionDirection{"x1", "x2"} : ExpansionDirection{"x2", "x1"};
            Window target = Window::cube({"x1", "x2"}, -3, 3);
            Window wide = Window::cube({"x1", "x2"}, -12, 12);
            auto a = binomial_expand("x1", "x2", n, dir, wide);
            auto b = binomial_expand("x1", "x2", -n, dir, wide);
            auto p = series_multiply(a, b, target);
            CHECK(p.terms().size() == 1);
            CHECK(p.coefficient(ExponentVector{0, 0}) == 1);
        }
    }
}

TEST_CASE("delta expansion coefficients")
{
    Window w = Window::cube({"x0", "x1", "x2"}, -3, 3);
    auto d = delta_expansion(DeltaPattern::x1_minus_x2_over_x0(), "x0", w);
    CHECK(coeff(d, {{"x0", -1}, {"x1", 0}, {"x2", 0}}) == 1);
    CHECK(coeff(d, {{"x0", -2}, {"x1", 1}, {"x2", 0}}) == 1);
    CHECK(coeff(d, {{"x0", -2}, {"x1", 0}, {"x2", 1}}) == -1);
}

TEST_CASE("two-term identity from independent expansions")
{
    // Oracle: both sides are sum over n of binomial expansions, coded directly.
    Window w = Window::cube({"x0", "x1", "x2"}, -3, 3);
    auto lhs = delta_expansion(DeltaPattern::x2_plus_x0_over_x1(), "x1", w);
    auto rhs = delta_expansion(DeltaPattern::x1_minus_x0_over_x2(), "x2", w);
    w.for_each([&](const ExponentVector& e) {
        long a0 = e[0], a1 = e[1], a2 = e[2];
        // x1^{-1}(x2+x0)^n x1^{-n}: x1 exponent -n-1, x0 exponent j, x2 exponent n-j.
        long n = -a1 - 1;
        Rational l = (a0 >= 0 && a2 == n - a0) ? binomial(n, a0) : Rational(0);
        // x2^{-1}(x1-x0)^m x2^{-m}: x2 exponent -m-1, x0 exponent j, x1 exponent m-j.
        long m = -a2 - 1;
        Rational r = (a0 >= 0 && a1 == m - a0) ? Rational(binomial(m, a0) * sign_power(a0)) : Rational(0);
        CHECK(lhs.coefficient(e) == l);
        CHECK(rhs.coefficient(e) == r);
    });
    CHECK(lhs.terms() == rhs.terms());
}

TEST_CASE("delta identities")
{
    Window w3 = Window::cube({"x0", "x1", "x2"}, -4, 4);
    auto f = laurent_polynomial("x", {{2, 3}, {-1, -1}});
    CHECK(check_delta_identity(DeltaIdentity::fundamental, &f, Window{{"x", -6, 6}}).passed());
    CHECK(check_delta_identity(DeltaIdentity::two_term, nullptr, w3).passed());
    CHECK(check_delta_identity(DeltaIdentity::three_term, nullptr, w3).passed());
    auto bad = check_delta_identity(DeltaIdentity::three_term, nullptr, w3, true);
    CHECK(bad.failed());
    CHECK(!bad.differences.empty());
}

TEST_CASE("fundamental identity holds for random polynomials")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 40; ++i) {
        auto f = random_polynomial(rng, "x", 6);
        CHECK(check_delta_identity(DeltaIdentity::fundamental, &f, Window{{"x", -4, 4}}).passed());
    }
}

TEST_CASE("multiplication is commutative and associative")
{
    std::mt19937 rng(11);
    Window w{{"x", -8, 8}};
    for (int i = 0; i < 20; ++i) {
        auto a = random_polynomial(rng, "x", 3);
        auto b = random_polynomial(rng, "x", 3);
        auto c = random_polynomial(rng, "x", 2);
        CHECK(series_multiply(a, b, w).terms() == series_multiply(b, a, w).terms());
        auto ab_c = series_multiply(series_multiply(a, b, w), c, w);
        auto a_bc = series_multiply(a, series_multiply(b, c, w), w);
        CHECK(ab_c.terms() == a_bc.terms());
        // With a delta factor the enclosing window must be wide enough.
        Window wide{{"x", -20, 20}};
        auto d = delta_series("x", -20, 20);
        auto l = series_multiply(series_multiply(a, b, wide), d, Window{{"x", -4, 4}});
        auto r = series_multiply(a, series_multiply(b, d, Window{{"x", -12, 12}}), Window{{"x", -4, 4}});
        CHECK(l.terms() == r.terms());
    }
}

TEST_CASE("residue")
{
    CHECK(residue(laurent_polynomial("x", {{-1, 1}}), "x").coefficient(ExponentVector{}) == 1);
    CHECK(residue(laurent_polynomial("x", {{2, 1}, {0, 5}}, -2, 2), "x").is_zero());
    Window w = Window::cube({"x0", "x1", "x2"}, -3, 3);
    auto d = delta_expansion(DeltaPattern::x1_minus_x2_over_x0(), "x0", w);
    auto r = residue(d, "x0");
    // Res_{x0} picks n = 0: the constant 1.
    CHECK(r.terms().size() == 1);
    CHECK(r.coefficient({{"x1", 0}, {"x2", 0}}) == 1);
}

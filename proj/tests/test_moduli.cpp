#include <doctest.h>

#include "vertexcalc/moduli.hpp"
#include "vertexcalc/nu.hpp"

#include <sstream>

using namespace vcalc;

namespace {

constexpr int M = 8;

std::vector<ModuliElement> sample(std::uint64_t seed, int count, CoordinateKind kind, int max_arity = 3)
{
    std::mt19937_64 rng(seed);
    std::vector<ModuliElement> out;
    for (int k = 0; k < count; ++k) out.push_back(random_element(rng, k % (max_arity + 1), M, kind));
    return out;
}

Complex q(long p, long d = 1) { return Complex(frac(p, d)); }

} // namespace

TEST_CASE("coordinate series")
{
    auto s = coordinate_series({1, {}}, 4);
    CHECK(s == PowerSeries{0, 1, 0, 0, 0});
    s = coordinate_series({q(3), {}}, 3);
    CHECK(s == PowerSeries{0, 3, 0, 0});
    // exp(x^2 d/dx) x = x/(1 - x)
    s = coordinate_series({1, {1}}, 6);
    CHECK(s == PowerSeries{0, 1, 1, 1, 1, 1, 1});
    // exp(x^3 d/dx) x = x (1 - 2x^2)^{-1/2}
    s = coordinate_series({1, {0, 1}}, 7);
    CHECK(s == PowerSeries{0, 1, 0, 1, 0, q(3, 2), 0, q(5, 2)});
    // The scale multiplies the whole series.
    s = coordinate_series({q(2), {q(1, 3)}}, 4);
    CHECK(s == PowerSeries{0, 2, q(2, 3), q(2, 9), q(2, 27)});
}

TEST_CASE("coordinate series round trip")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        LocalCoordinate c{q(d(rng) == 0 ? 1 : 2, 3), {}};
        for (int j = 0; j < M; ++j) c.A.push_back({frac(d(rng), 2), frac(d(rng), 3)});
        CHECK(coordinate_from_series(coordinate_series(c, M + 1), M) == c);
    }
    CHECK_THROWS_AS(coordinate_from_series(PowerSeries{0, 0, 1}, 1), InvalidModuli);
}

TEST_CASE("element validation")
{
    CHECK_THROWS_AS(ModuliElement::standard({1, 1, 0}, {1, 1, 1}, M), InvalidModuli);
    CHECK_THROWS_AS(ModuliElement::standard({1, 2}, {1, 1}, M), InvalidModuli);
    CHECK_THROWS_AS(ModuliElement::standard({1, 0}, {0, 1}, M), InvalidModuli);
    CHECK_THROWS_AS(ModuliElement({}, {}, {1}, M), InvalidModuli);
    CHECK_NOTHROW(ModuliElement({}, {}, {0, 1}, M));
    CHECK(ModuliElement::identity(M).is_standard());
}

TEST_CASE("generator sewings")
{
    const Complex a = q(3, 2), b = q(-2, 5);
    CHECK(sew(ModuliElement::scaling(a, M), 1, ModuliElement::scaling(b, M)).element ==
          ModuliElement::scaling(a * b, M));
    CHECK(sew(ModuliElement::two_point(1, M), 1, ModuliElement::vacuum(M)).element == ModuliElement::identity(M));
    // P(z) sewn at 1 with Q(a) only rescales the first coordinate.
    CHECK(sew(ModuliElement::two_point(4, M), 1, ModuliElement::scaling(a, M)).element ==
          ModuliElement::standard({4, 0}, {a, 1}, M));
    // P(2) then P(1) at the first puncture: punctures 2 + 1 and 2 + 0.
    CHECK(sew(ModuliElement::two_point(2, M), 1, ModuliElement::two_point(1, M)).element ==
          ModuliElement::standard({3, 2, 0}, {1, 1, 1}, M));
    // A scaled coordinate shrinks the inserted sphere.
    CHECK(sew(ModuliElement::standard({6, 0}, {2, 1}, M), 1, ModuliElement::two_point(1, M)).element ==
          ModuliElement::standard({q(13, 2), 6, 0}, {2, 2, 1}, M));
}

TEST_CASE("sewing errors")
{
    CHECK_THROWS_AS(sew(ModuliElement::two_point(1, M), 2, ModuliElement::two_point(2, M)), SewingUndefined);
    LocalCoordinate general{1, {0, 1}};
    ModuliElement Q({1, 0}, {general, {1, {}}}, {}, M);
    CHECK_THROWS_AS(sew(Q, 1, ModuliElement::identity(M)), UnsupportedSewing);
    CHECK_NOTHROW(sew(Q, 2, ModuliElement::identity(M)));
    ModuliElement R({0}, {{1, {}}}, {0, 1}, M);
    CHECK_THROWS_AS(sew(ModuliElement::identity(M), 1, R), UnsupportedSewing);
    CHECK_THROWS_AS(sew(Q, 3, ModuliElement::identity(M)), std::out_of_range);
}

TEST_CASE("Mobius coordinate at the sewn puncture")
{
    // phi(w) = w/(1 - w) at 0; the inserted puncture q = 1/2 lands at
    // phi^{-1}(1/2) = 1/3 and 0 stays at 0.
    ModuliElement Q1({0}, {{1, {1}}}, {}, M);
    auto r = sew(Q1, 1, ModuliElement::standard({q(1, 2), 0}, {1, 1}, M)).element;
    REQUIRE(r.arity() == 2);
    CHECK(r.punctures()[0] == q(1, 3));
    CHECK(r.punctures()[1] == Complex(0));
    // psi(phi(w)) with psi(x) = x - 1/2 expanded at 1/3: (w - 1/3) / ((1 - 1/3)(1 - w)) ->
    // scale 9/4 and A_1 = 3/2, a Mobius coordinate.
    CHECK(r.coordinates()[0].scale == q(9, 4));
    CHECK(r.coordinates()[0].A[0] == q(3, 2));
    CHECK(r.coordinates()[0].is_mobius());
    CHECK(r.coordinates()[1] == Q1.coordinates()[0]);
}

TEST_CASE("permutations")
{
    const auto P1 = ModuliElement::two_point(1, M);
    CHECK(permute(P1, {0, 1}) == P1);
    // Swapping P(1) moves the puncture at 1 to the end; translating by -1
    // gives punctures (-1, 0) and the coordinate 1/(w + 1) at infinity.
    auto s = permute(P1, {1, 0});
    CHECK(s.punctures() == std::vector<Complex>{-1, 0});
    std::vector<Complex> inf(M);
    inf[0] = -1;
    CHECK(s.infinity() == inf);
    CHECK(permute(s, {1, 0}) == P1);
    CHECK(compose({1, 2, 0}, {0, 2, 1}) == Permutation{1, 0, 2});
    CHECK_THROWS_AS(permute(P1, {0, 0}), std::invalid_argument);
}

TEST_CASE("operad axioms on random samples")
{
    auto supported = sample(11, 20, CoordinateKind::mobius);
    auto id = check_identity_axiom(supported);
    CHECK(id.passed());
    CHECK(id.skipped == 0);

    auto scaling = sample(12, 6, CoordinateKind::scaling);
    AssociativityCounts counts;
    auto assoc = check_associativity_axiom(scaling, &counts);
    CHECK(assoc.passed());
    for (auto c : counts.regime) CHECK(c > 0);

    CHECK(check_associativity_axiom(sample(13, 5, CoordinateKind::mobius)).passed());
    CHECK(check_equivariance_axiom(sample(14, 6, CoordinateKind::mobius)).passed());
    CHECK(check_permutation_action(sample(15, 8, CoordinateKind::general)).passed());

    auto general = sample(16, 12, CoordinateKind::general);
    auto gid = check_identity_axiom(general);
    CHECK(gid.passed());
    CHECK(gid.skipped > 0);
}

TEST_CASE("a wrong block permutation is caught")
{
    // The second equivariance identity with the block left unpermuted fails.
    auto q1 = ModuliElement::two_point(5, M);
    auto q2 = ModuliElement::standard({1, 0}, {1, 2}, M);
    auto lhs = sew(q1, 1, permute(q2, {1, 0})).element;
    CHECK(lhs == permute(sew(q1, 1, q2).element, {1, 0, 2}));
    CHECK(lhs != sew(q1, 1, q2).element);
}

TEST_CASE("moduli file format")
{
    auto general = sample(21, 8, CoordinateKind::general);
    std::string text;
    for (const auto& e : general) text += format_moduli(e) + "---\n";
    std::istringstream in(text);
    CHECK(parse_moduli(in) == general);

    std::istringstream short_coords("arity 2\norder 3\nz: 2\ncoord 1: 3 ; 1\n");
    auto parsed = parse_moduli(short_coords);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].coordinates()[0] == LocalCoordinate{3, {1, 0, 0}});
    CHECK(parsed[0].coordinates()[1] == LocalCoordinate{1, {0, 0, 0}});

    std::istringstream bad("arity 2\norder 3\nz: 0\n");
    CHECK_THROWS_AS(parse_moduli(bad), InvalidModuli);
    std::istringstream junk("arity 1\norder 2\nfoo\n");
    try {
        parse_moduli(junk);
        FAIL("expected InvalidModuli");
    } catch (const InvalidModuli& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("nu at standard coordinates")
{
    const auto V = VOAInstance::build_heisenberg(6);
    const auto a1 = V.label({1}), a2 = V.label({2}), a11 = V.label({1, 1});

    // Grading: Q(a) acts by a^{-weight}.
    for (std::size_t i = 0; i < basis_size(4); ++i) {
        auto v = nu_evaluate(V, ModuliElement::scaling(q(3, 2), M), {V.basis(i)}, DualVector::basis(4, i), 6);
        CHECK(v.value == power(frac(2, 3), basis_weight(i)));
        CHECK(v.stable);
    }

    // Two points: Y(u, z) v from the vertex operator.
    const Rational z = frac(5, 2);
    for (const auto& u : {a1, a2, a11})
        for (const auto& w : {V.vacuum(), a1, a11}) {
            auto y = V.vertex_operator(u, w, Window{{"x", -6, 6}});
            auto got = nu_vector(V, ModuliElement::two_point(Complex(z), M), {u, w}, 6, 4);
            GradedVector expect(4);
            for (const auto& [e, c] : y.terms())
                for (const auto& [k, x] : c.terms())
                    if (basis_weight(k) <= 4) expect.add(k, x * power(z, e[0]));
            CHECK(got == expect);
        }

    // Vacuum insertion drops the puncture.
    auto three = nu_vector(V, ModuliElement::standard({3, 1, 0}, {1, 1, 1}, M), {V.vacuum(), a2, a1}, 8, 4);
    auto two = nu_vector(V, ModuliElement::two_point(1, M), {a2, a1}, 8, 4);
    CHECK(three == two);
    CHECK(nu_vector(V, ModuliElement::vacuum(M), {}, 4, 4) == V.vacuum().with_level(4));

    CHECK_THROWS_AS(nu_vector(V, ModuliElement::standard({1, 2, 0}, {1, 1, 1}, M), {a1, a1, a1}, 4, 4), DomainViolation);
    CHECK_THROWS_AS(nu_vector(V, ModuliElement::two_point(Complex(1, 1), M), {a1, a1}, 4, 4), DomainViolation);
}

TEST_CASE("sewing axiom")
{
    const auto V = VOAInstance::build_heisenberg(6);
    const auto a1 = V.label({1});
    const DualVector dual(V.label({1, 1}).with_level(2));

    auto trivial = check_sewing_axiom(V, ModuliElement::two_point(2, M), 1, ModuliElement::identity(M), {a1, a1}, dual,
                                      {2, 4, 6});
    CHECK(trivial.report.passed());
    for (const auto& d : trivial.differences) CHECK(d == 0);

    auto r = check_sewing_axiom(V, ModuliElement::two_point(2, M), 1, ModuliElement::two_point(1, M), {a1, a1, a1},
                                DualVector(a1.with_level(1)), {4, 8, 12});
    CHECK(r.report.passed());
    REQUIRE(r.differences.size() == 3);
    CHECK(r.differences[2] != 0);

    // A constant schedule cannot shrink.
    auto flat = check_sewing_axiom(V, ModuliElement::two_point(2, M), 1, ModuliElement::two_point(1, M), {a1, a1, a1},
                                   DualVector(a1.with_level(1)), {8, 8, 8});
    CHECK(flat.report.failed());
}

#include <doctest.h>

#include "vertexcalc/fusion.hpp"
#include "vertexcalc/intertwiner.hpp"

#include <sstream>

using namespace vcalc;

namespace {

std::string fixture(const std::string& name) { return std::string(VCALC_FIXTURE_DIR) + "/" + name; }

// Basis expansions multiplied out term by term.
std::vector<Rational> basis_product(const VerlindeAlgebra& A, const std::vector<Rational>& x, const std::vector<Rational>& y)
{
    std::vector<Rational> out(A.dim());
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            if (x[i] == 0 || y[j] == 0) continue;
            auto p = A.product(i, j);
            for (std::size_t k = 0; k < A.dim(); ++k) out[k] += x[i] * y[j] * p[k];
        }
    return out;
}

std::vector<Rational> phi(std::size_t n, std::size_t i)
{
    std::vector<Rational> v(n);
    v[i] = 1;
    return v;
}

} // namespace

TEST_CASE("parsing fusion files")
{
    FusionTensor t = load_fusion(fixture("ising.fus"));
    CHECK(t.size() == 3);
    const auto s = t.index_of("sigma"), e = t.index_of("eps");
    CHECK(t.upper(s, s, 0) == 1);
    CHECK(t.upper(s, s, e) == 1);
    CHECK(t.upper(e, e, e) == 0);
    std::istringstream again(format_fusion(t));
    CHECK(parse_fusion(again).entries() == t.entries());

    std::istringstream bad_dual("labels: V a b\ndual: a->b b->a a->a\n");
    CHECK_THROWS_AS(parse_fusion(bad_dual), FusionParseError);
    std::istringstream negative("labels: V\nV V V -1\n");
    CHECK_THROWS_AS(parse_fusion(negative), FusionParseError);
    std::istringstream unknown("labels: V\nV V W 1\n");
    CHECK_THROWS_AS(parse_fusion(unknown), FusionParseError);
    std::istringstream short_row("labels: V\nV V 1\n");
    CHECK_THROWS_AS(parse_fusion(short_row), FusionParseError);
}

TEST_CASE("one-label tensor")
{
    FusionTensor t = load_fusion(fixture("one_label.fus"));
    CHECK(check_s3_symmetry(t).passed());
    CHECK(check_positivity(t).passed());
    VerlindeAlgebra A = build_verlinde(t);
    CHECK(A.has_unit());
    CHECK(A.multiply(phi(1, 0), phi(1, 0)) == phi(1, 0));
    CHECK(check_associativity(A).passed());
    CHECK(check_commutativity(A).passed());
}

TEST_CASE("Ising fixture")
{
    FusionTensor t = load_fusion(fixture("ising.fus"));
    CHECK(check_s3_symmetry(t).passed());
    CHECK(check_positivity(t).passed());
    VerlindeAlgebra A = build_verlinde(t);
    CHECK(A.has_unit());
    CHECK(A.readings_agree());
    CHECK(check_unit(A).passed());
    CHECK(check_commutativity(A).passed());
    auto assoc = check_associativity(A);
    CHECK(assoc.passed());
    CHECK(assoc.checked == 81);
    // Associativity against explicit expansions of (phi_i phi_j) phi_l and phi_i (phi_j phi_l).
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t l = 0; l < 3; ++l)
                CHECK(basis_product(A, basis_product(A, phi(3, i), phi(3, j)), phi(3, l)) ==
                      basis_product(A, phi(3, i), basis_product(A, phi(3, j), phi(3, l))));
    const auto s = t.index_of("sigma");
    std::vector<Rational> ss = A.multiply(phi(3, s), phi(3, s));
    CHECK(ss == std::vector<Rational>{1, 1, 0});
}

TEST_CASE("perturbed structure constant breaks associativity")
{
    FusionTensor t = load_fusion(fixture("ising.fus"));
    t.set(t.index_of("eps"), t.index_of("eps"), 0, 2);
    VerlindeAlgebra A(t);
    CHECK(check_associativity(A).failed());
}

TEST_CASE("asymmetric tensor is rejected")
{
    FusionTensor t = load_fusion(fixture("bad.fus"));
    auto r = check_s3_symmetry(t);
    CHECK(r.failed());
    CHECK_THROWS_AS(build_verlinde(t), SymmetryViolation);
}

TEST_CASE("Z/3 fusion: the two index readings disagree")
{
    FusionTensor t = load_fusion(fixture("z3.fus"));
    CHECK(t.dual(1) == 2);
    CHECK(check_s3_symmetry(t).passed());
    VerlindeAlgebra A = build_verlinde(t);
    CHECK(A.has_unit());
    CHECK_FALSE(A.readings_agree());
    CHECK(check_associativity(A).passed());
}

TEST_CASE("canonical intertwiners")
{
    const VOAInstance V = VOAInstance::build_heisenberg(3);
    Intertwiner Y = Intertwiner::from_module_action(V, V.adjoint());
    CHECK(Y.shift() == 0);
    const Window win = intertwiner_window(Y);
    auto r = check_intertwiner(Y, V, win);
    CHECK(r.passed());
    CHECK(r.checked > 1000);

    FockModule W(3, frac(1, 2));
    Intertwiner YW = Intertwiner::from_module_action(V, W);
    CHECK(check_intertwiner(YW, V, intertwiner_window(YW)).passed());
}

TEST_CASE("shift must match the lowest weights")
{
    const VOAInstance V = VOAInstance::build_heisenberg(2);
    FockModule W(2, 1);
    CHECK_THROWS_AS(Intertwiner(V.adjoint(), W, W, frac(1, 2)), MixedShift);
    FockModule U(2, 2);
    Intertwiner I(W, W, U, -1);  // 1/2 + 1/2 - 2
    CHECK(I.shift() == -1);
}

TEST_CASE("derivative violation is detected")
{
    const VOAInstance V = VOAInstance::build_heisenberg(3);
    Intertwiner Y = Intertwiner::from_module_action(V, V.adjoint());
    Y.mutate(basis_index({1}), -2, 0, basis_index({2}), 1);
    CHECK(check_intertwiner_derivative(Y, V).failed());
    CHECK(check_intertwiner(Y, V, intertwiner_window(Y)).failed());
}

TEST_CASE("every single-entry mutation is rejected")
{
    const VOAInstance V = VOAInstance::build_heisenberg(2);
    FockModule W(2, frac(1, 3));
    for (const VModule* M : {static_cast<const VModule*>(&V.adjoint()), static_cast<const VModule*>(&W)}) {
        const Intertwiner base = Intertwiner::from_module_action(V, *M);
        const Window win = intertwiner_window(base);
        std::size_t survivors = 0, total = 0;
        for (const auto& [key, value] : base.entries()) {
            const auto& [a, k, b] = key;
            for (std::size_t t = 0; t < M->dim(); ++t) {
                Intertwiner I = base;
                I.mutate(a, k, b, t, 1);
                ++total;
                if (!check_intertwiner(I, V, win).failed()) ++survivors;
            }
        }
        CHECK(total > 0);
        CHECK(survivors == 0);
    }
}

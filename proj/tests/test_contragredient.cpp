#include <doctest.h>

#include "vertexcalc/contragredient.hpp"

#include <map>

using namespace vcalc;

namespace {

const VOAInstance& V6()
{
    static const VOAInstance v = VOAInstance::build_heisenberg(6);
    return v;
}

const VOAInstance& V4()
{
    static const VOAInstance v = VOAInstance::build_heisenberg(4);
    return v;
}

// Norm of alpha(-n_1)...alpha(-n_k)1 under alpha(n)^T = -alpha(-n): (-1)^k prod n_i prod m_j!.
Rational fock_norm(const Partition& p)
{
    Rational z = sign_power(static_cast<long>(p.size()));
    std::map<int, long> mult;
    for (int n : p) {
        z *= n;
        ++mult[n];
    }
    for (const auto& [n, m] : mult) z *= factorial(m);
    return z;
}

} // namespace

TEST_CASE("conjugate vector examples")
{
    const auto& V = V6();
    PolyVector one = conjugate_vector(V, V.vacuum());
    REQUIRE(one.size() == 1);
    CHECK(one.at(0) == V.vacuum());
    PolyVector w = conjugate_vector(V, V.omega());
    REQUIRE(w.size() == 1);
    CHECK(w.at(-4) == V.omega());
    PolyVector a = conjugate_vector(V, V.label({1}));
    REQUIRE(a.size() == 1);
    CHECK(a.at(-2) == V.label({1}, -1));
    // [L(1), alpha(-2)] = 2 alpha(-1), and L(1) alpha(-1)1 = alpha(0)1 = 0.
    PolyVector b = conjugate_vector(V, V.label({2}));
    REQUIRE(b.size() == 2);
    CHECK(b.at(-4) == V.label({2}));
    CHECK(b.at(-3) == V.label({1}, 2));
}

TEST_CASE("dual vectors pair only equal weights")
{
    const auto& V = V4();
    DualVector d(V.label({2}, 3) + V.label({1}));
    CHECK(d.pair(V.label({2})) == 3);
    CHECK(d.pair(V.label({1, 1})) == 0);
    CHECK(d.pair(V.label({1}, 5)) == 5);
}

TEST_CASE("contragredient of V satisfies the defining relation and Virasoro adjointness")
{
    const auto& V = V6();
    auto Vp = build_contragredient(V, V.adjoint());
    CHECK(Vp->name() == V.adjoint().name() + "'");
    auto def = check_defining_relation(*Vp);
    CHECK(def.passed());
    CHECK(def.checked == V.dim() * V.dim() * V.dim());
    CHECK(check_adjoint_virasoro(*Vp, 6).passed());
    CHECK(check_contragredient_virasoro(*Vp, 4).passed());
    CHECK(check_contragredient_derivative(*Vp).passed());
    CHECK(check_contragredient_vacuum(*Vp).passed());
}

TEST_CASE("alpha' modes are minus the transposed alpha modes")
{
    const auto& V = V6();
    FockModule M(5, frac(2, 3));
    auto Mp = build_contragredient(V, M);
    const auto g = V.label({1});
    for (long n = -3; n <= 3; ++n) {
        for (std::size_t a = 0; a < M.dim(); ++a) {
            GradedVector lhs = Mp->act(g, n, Mp->basis(a)).value;
            for (std::size_t b = 0; b < M.dim(); ++b) {
                if (basis_weight(b) != basis_weight(a) - n) continue;
                CHECK(lhs[b] == -heisenberg_mode(M, -n, M.basis(b))[a]);
            }
        }
    }
    // alpha'(0) acts on the lowest dual vector by -lambda.
    CHECK(Mp->act(g, 0, Mp->basis(0)).value == Rational(frac(-2, 3)) * Mp->basis(0));
}

TEST_CASE("contragredient Jacobi identity")
{
    const auto& V = V6();
    auto Vp = build_contragredient(V, V.adjoint());
    Window win = Window::cube({"x0", "x1", "x2"}, -3, 3);
    CHECK(check_contragredient_jacobi(*Vp, V.vacuum(), V.vacuum(), V.vacuum(), win).passed());
    CHECK(check_contragredient_jacobi(*Vp, V.omega(), V.omega(), V.label({1}), win).passed());
    CHECK(check_contragredient_jacobi(*Vp, V.label({1}), V.label({1}), V.label({1, 1}), win).passed());
}

TEST_CASE("corrupting an adjoint entry is detected")
{
    const auto& V = V6();
    auto Vp = build_contragredient(V, V.adjoint());
    Vp->corrupt(basis_index({1}), -1, basis_index({1}), basis_index({1, 1}), 1);
    CHECK(check_defining_relation(*Vp).failed());
    Window win = Window::cube({"x0", "x1", "x2"}, -3, 3);
    CHECK(check_contragredient_jacobi(*Vp, V.label({1}), V.label({1}), V.label({1}), win).failed());
}

TEST_CASE("double contragredient reproduces the module")
{
    CHECK(check_double_contragredient(V4(), V4().adjoint()).passed());
    FockModule M(4, 3);
    CHECK(check_double_contragredient(V4(), M).passed());
}

TEST_CASE("invariant form on V matches the Fock norms")
{
    const auto& V = V6();
    BilinearForm f = build_invariant_form(V, V.adjoint(), 1);
    CHECK(f.symmetric);
    CHECK(f.max_level() == 6);
    CHECK(f(V.vacuum(), V.vacuum()) == 1);
    CHECK(f(V.label({1}), V.label({1})) == -1);
    CHECK(f(V.omega(), V.omega()) == frac(1, 2));
    for (std::size_t i = 0; i < V.dim(); ++i)
        for (std::size_t j = 0; j < V.dim(); ++j)
            CHECK(f(V.basis(i), V.basis(j)) == (i == j ? fock_norm(basis_label(i)) : Rational(0)));
    for (const Matrix& G : f.blocks) CHECK(determinant(G) != 0);
    CHECK(check_invariant_form(V, V.adjoint(), f).passed());
    BilinearForm g = build_invariant_form(V, V.adjoint(), 3);
    CHECK(g(V.omega(), V.omega()) == frac(3, 2));
}

TEST_CASE("Fock modules with nonzero momentum are not self-dual")
{
    FockModule M(3, 1);
    CHECK_THROWS_AS(build_invariant_form(V4(), M, 1), NotSelfDual);
}

TEST_CASE("direct sum with W a copy of V")
{
    const auto& V = V4();
    FockModule W(4, 0);
    BilinearForm fv = build_invariant_form(V, V.adjoint(), 1);
    BilinearForm fw = build_invariant_form(V, W, 1);
    DirectSumVertexMap D = combine_direct_sum(V, W, fv, fw);
    CHECK(check_direct_sum_skew(D).passed());
    CHECK(check_direct_sum_vanishing(D).passed());
    auto pairing = check_direct_sum_pairing(D);
    CHECK(pairing.passed());
    CHECK(pairing.checked == W.dim() * W.dim() * V.dim());
    CHECK(check_direct_sum_structure(D).passed());
    CHECK(check_direct_sum_copy(D).passed());
}

TEST_CASE("direct sum preconditions")
{
    const auto& V = V4();
    BilinearForm fv = build_invariant_form(V, V.adjoint(), 1);
    FockModule half(2, 1);
    CHECK_THROWS_AS(combine_direct_sum(V, half, fv, fv), GradingViolation);
    BilinearForm bad = fv;
    bad.blocks[2](0, 1) += 1;
    FockModule W(4, 0);
    CHECK_THROWS_AS(combine_direct_sum(V, W, fv, bad), AsymmetricForm);
}

#include <doctest.h>

#include "vertexcalc/axioms.hpp"

using namespace vcalc;

namespace {

const VOAInstance& V6()
{
    static const VOAInstance v = VOAInstance::build_heisenberg(6);
    return v;
}

Window cube3(long r) { return Window::cube({"x0", "x1", "x2"}, -r, r); }

} // namespace

TEST_CASE("Jacobi identity on named triples")
{
    const auto& V = V6();
    auto one = V.vacuum();
    auto a = V.label({1});
    CHECK(check_jacobi(V, one, one, one, cube3(3)).passed());
    auto r = check_jacobi(V, a, a, one, cube3(3));
    CHECK(r.passed());
    CHECK(r.checked > 0);
    CHECK(check_jacobi(V, a, V.omega(), a, cube3(3)).passed());
    CHECK(check_jacobi(V, V.label({2}), V.label({1, 1}), V.label({1}), cube3(3)).passed());
}

TEST_CASE("a corrupted structure constant breaks the Jacobi identity")
{
    auto V = VOAInstance::build_heisenberg(6);
    auto a = V.label({1});
    V.corrupt_structure_constant(basis_index({1}), 1, basis_index({1}), 0, 1);
    auto r = check_jacobi(V, a, a, V.vacuum(), cube3(3));
    CHECK(r.failed());
    CHECK(!r.differences.empty());
}

TEST_CASE("out-of-budget instances are skipped")
{
    auto V = VOAInstance::build_heisenberg(2);
    auto w = V.label({1, 1});
    auto r = check_jacobi(V, w, w, w, Window::cube({"x0", "x1", "x2"}, 0, 2));
    CHECK(r.status == Status::skipped_budget);
}

TEST_CASE("creation and skew symmetry")
{
    const auto& V = V6();
    for (std::size_t i = 0; i < V.dim(); ++i) CHECK(check_creation(V, V.basis(i), 6).passed());
    auto one = V.vacuum();
    auto a = V.label({1});
    CHECK(check_skew_symmetry(V, one, one, 4).passed());
    CHECK(check_skew_symmetry(V, a, V.omega(), 6).passed());
    CHECK(check_skew_symmetry(V, V.omega(), V.omega(), 6).passed());
    for (std::size_t i = 0; i < basis_size(3); ++i)
        for (std::size_t j = 0; j < basis_size(3); ++j) CHECK(check_skew_symmetry(V, V.basis(i), V.basis(j), 6).passed());
}

TEST_CASE("skew symmetry detects a corrupted constant")
{
    auto V = VOAInstance::build_heisenberg(6);
    V.corrupt_structure_constant(basis_index({2}), -1, basis_index({1}), basis_index({2, 1}), 1);
    CHECK(check_skew_symmetry(V, V.label({2}), V.label({1}), 4).failed());
}

TEST_CASE("commutator formulas")
{
    const auto& V = V6();
    Window w{{"x", -4, 4}};
    CHECK(check_commutators(V, V.vacuum(), w).passed());
    CHECK(check_commutators(V, V.label({1}), w).passed());
    CHECK(check_commutators(V, V.omega(), w).passed());
    CHECK(check_commutators(V, V.label({2, 1}), w).passed());
}

TEST_CASE("L(0) commutes with omega modes as a grading")
{
    // [L(0), L(n)] = -n L(n), the omega case of the commutator formula.
    const auto& V = V6();
    for (std::size_t i = 0; i < basis_size(4); ++i)
        for (long n = -2; n <= 4; ++n) {
            auto v = V.basis(i);
            auto lhs = V.virasoro_mode(0, V.virasoro_mode(n, v)) - V.virasoro_mode(n, V.virasoro_mode(0, v));
            CHECK(lhs == Rational(-n) * V.virasoro_mode(n, v));
        }
}

TEST_CASE("conjugation formulas")
{
    const auto& V = V6();
    for (const auto& v : {V.vacuum(), V.label({1}), V.omega(), V.label({2, 1})}) {
        for (const auto& r : conjugation_reports(V, v, 4)) {
            INFO(r.identity, " ", r.params);
            CHECK(r.passed());
        }
    }
    CHECK(check_sl2_identity(VOAInstance::build_heisenberg(4), 3, 3).passed());
}

TEST_CASE("conjugation checks detect corruption")
{
    auto V = VOAInstance::build_heisenberg(6);
    V.corrupt_structure_constant(basis_index({1}), -2, basis_index({1}), basis_index({1, 1, 1}), 1);
    CHECK(check_translation(V, V.label({1}), 3).failed());
}

TEST_CASE("S3 transforms")
{
    const auto& V = V6();
    auto one = V.vacuum();
    auto a = V.label({1});
    auto w = cube3(3);
    auto id = s3_transform_check(V, a, V.omega(), one, {0, 1, 2}, w);
    auto direct = check_jacobi(V, a, V.omega(), one, w);
    CHECK(id.status == direct.status);
    CHECK(id.checked == direct.checked);
    CHECK(s3_transform_check(V, a, V.omega(), one, {1, 0, 2}, w).passed());
    CHECK(check_iterate_skew_step(V, a, V.omega(), one, w).passed());
    CHECK(check_transposed_step(V, a, one, a, w).passed());
    CHECK(s3_transform_check(V, a, one, a, {0, 2, 1}, w).passed());
    CHECK(check_transposed_step(V, V.label({2}), a, V.label({1, 1}), w).passed());
    for (Permutation3 p : {Permutation3{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
        CHECK(s3_transform_check(V, a, V.label({2}), V.label({1, 1}), p, w).passed());
}

TEST_CASE("the transposition step detects corruption")
{
    auto V = VOAInstance::build_heisenberg(6);
    auto a = V.label({1});
    V.corrupt_structure_constant(basis_index({1}), 0, basis_index({1}), 0, 1);
    CHECK(check_transposed_step(V, a, a, V.vacuum(), cube3(3)).failed());
}

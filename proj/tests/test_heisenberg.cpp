#include <doctest.h>

#include "vertexcalc/heisenberg.hpp"

#include <thread>

using namespace vcalc;

namespace {

// Partition counts by the Euler recurrence, independent of the basis generator.
std::vector<long> partition_counts(int n)
{
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int k = part; k <= n; ++k) p[k] += p[k - part];
    return p;
}

// L(n) = 1/2 sum_m :alpha(m) alpha(n-m): applied through alpha modes only.
GradedVector sugawara(const FockModule& m, long n, const GradedVector& w)
{
    GradedVector r(m.max_level());
    int span = m.max_level() + 2 + static_cast<int>(std::abs(n));
    for (long a = -span; a <= span; ++a) {
        long b = n - a;
        // Normal order: annihilator (larger index) to the right.
        long first = std::min(a, b), second = std::max(a, b);
        r.axpy(frac(1, 2), heisenberg_mode(m, first, heisenberg_mode(m, second, w)));
    }
    return r;
}

} // namespace

TEST_CASE("weight space dimensions are partition counts")
{
    auto p = partition_counts(12);
    for (int n = 0; n <= 12; ++n) {
        std::size_t count = (n == 0 ? basis_size(0) : basis_size(n) - basis_size(n - 1));
        CHECK(count == static_cast<std::size_t>(p[n]));
    }
    auto V = VOAInstance::build_heisenberg(4);
    CHECK(V.dim() == 1 + 1 + 2 + 3 + 5);
}

TEST_CASE("labels and indices agree")
{
    for (std::size_t i = 0; i < basis_size(8); ++i) CHECK(basis_index(basis_label(i)) == i);
    CHECK(parse_label("[1, 2]") == Partition{2, 1});
    CHECK(label_string({3, 1}) == "[3,1]");
    CHECK_THROWS(parse_label("[0]"));
}

TEST_CASE("basic modes")
{
    auto V = VOAInstance::build_heisenberg(6);
    auto a = V.label({1});
    CHECK(heisenberg_mode(V.adjoint(), 1, a) == V.vacuum());
    CHECK(V.mode(a, 0, a).is_zero());
    CHECK(V.mode(a, 1, a) == V.vacuum());
    for (std::size_t i = 0; i < V.dim(); ++i) {
        auto v = V.basis(i);
        for (long n = -4; n <= 4; ++n) CHECK(V.mode(V.vacuum(), n, v) == (n == -1 ? v : V.zero_vector()));
    }
}

TEST_CASE("omega and the Virasoro structure")
{
    auto V = VOAInstance::build_heisenberg(6);
    const auto& w = V.omega();
    CHECK(V.virasoro_mode(2, w) == frac(1, 2) * V.vacuum());
    CHECK(V.virasoro_mode(1, w).is_zero());
    for (long n = 3; n <= 6; ++n) CHECK(V.virasoro_mode(n, w).is_zero());
    CHECK(V.virasoro_mode(-1, V.vacuum()).is_zero());
    auto v = V.label({2, 1});
    CHECK(V.virasoro_mode(0, v) == Rational(3) * v);
    for (std::size_t i = 0; i < V.dim(); ++i) {
        auto b = V.basis(i);
        CHECK(V.virasoro_mode(0, b) == Rational(basis_weight(i)) * b);
    }
}

TEST_CASE("omega modes agree with the alpha-mode oracle")
{
    auto V = VOAInstance::build_heisenberg(6);
    for (std::size_t i = 0; i < basis_size(4); ++i) {
        auto b = V.basis(i);
        for (long n = -2; n <= 4; ++n) {
            if (basis_weight(i) - n > 6) continue;
            CHECK(V.virasoro_mode(n, b) == sugawara(V.adjoint(), n, b));
        }
    }
}

TEST_CASE("alpha(-1)1 generates the alpha modes")
{
    auto V = VOAInstance::build_heisenberg(6);
    auto a = V.label({1});
    for (std::size_t i = 0; i < V.dim(); ++i)
        for (long n = -3; n <= 6; ++n) {
            if (basis_weight(i) - n > 6) continue;
            CHECK(V.mode(a, n, V.basis(i)) == heisenberg_mode(V.adjoint(), n, V.basis(i)));
        }
}

TEST_CASE("Virasoro bracket with c = 1")
{
    auto V = VOAInstance::build_heisenberg(8);
    for (std::size_t i = 0; i < basis_size(4); ++i) {
        auto v = V.basis(i);
        for (long m = -4; m <= 4; ++m)
            for (long n = -4; n <= 4; ++n) {
                // Keep every intermediate within the truncation.
                int w = basis_weight(i);
                if (w - n > 8 || w - m > 8 || w - m - n > 8) continue;
                auto lhs = V.virasoro_mode(m, V.virasoro_mode(n, v)) - V.virasoro_mode(n, V.virasoro_mode(m, v));
                auto rhs = Rational(m - n) * V.virasoro_mode(m + n, v);
                if (m + n == 0) rhs.axpy(frac(m * m * m - m, 12), v);
                INFO("m=", m, " n=", n, " v=", v);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("L(2) L(-2) bracket")
{
    auto V = VOAInstance::build_heisenberg(6);
    for (std::size_t i = 0; i < basis_size(4); ++i) {
        auto v = V.basis(i);
        auto lhs = V.virasoro_mode(2, V.virasoro_mode(-2, v)) - V.virasoro_mode(-2, V.virasoro_mode(2, v));
        auto rhs = Rational(4) * V.virasoro_mode(0, v) + frac(1, 2) * v;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("grading, lower truncation and creation")
{
    auto V = VOAInstance::build_heisenberg(6);
    for (std::size_t i = 0; i < basis_size(3); ++i)
        for (std::size_t j = 0; j < basis_size(3); ++j) {
            int wu = basis_weight(i), wv = basis_weight(j);
            for (long n = -3; n <= wu + wv + 2; ++n) {
                auto r = V.apply_mode(V.basis(i), n, V.basis(j));
                if (n >= wu + wv) CHECK(r.value.is_zero());
                if (!r.value.is_zero()) {
                    CHECK(r.value.is_homogeneous());
                    CHECK(r.value.top_weight() == wu + wv - n - 1);
                }
                CHECK(r.overflow == (wu + wv - n - 1 > 6));
            }
        }
    for (std::size_t i = 0; i < basis_size(5); ++i) {
        auto v = V.basis(i);
        auto y = V.vertex_operator(v, V.vacuum(), Window{{"x", -4, 1}});
        for (long k = -4; k < 0; ++k) CHECK(y.coefficient(ExponentVector{k}, V.zero_vector()).is_zero());
        CHECK(y.coefficient(ExponentVector{0}, V.zero_vector()) == v);
        CHECK(y.coefficient(ExponentVector{1}, V.zero_vector()) == V.virasoro_mode(-1, v));
    }
}

TEST_CASE("Fock module with momentum")
{
    FockModule m(4, 1);
    auto V = VOAInstance::build_heisenberg(4);
    auto top = m.basis(0);
    CHECK(m.lowest_weight() == frac(1, 2));
    CHECK(m.act(V.label({1}), 0, top).value == top);
    // L(0) on the module adds the lowest weight.
    for (std::size_t i = 0; i < m.dim(); ++i)
        CHECK(V.virasoro_mode(m, 0, m.basis(i)) == Rational(frac(1, 2) + basis_weight(i)) * m.basis(i));
}

TEST_CASE("memoized tables are consistent under concurrent use")
{
    auto V = VOAInstance::build_heisenberg(6);
    auto reference = VOAInstance::build_heisenberg(6);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&V] {
            for (std::size_t i = 0; i < basis_size(3); ++i)
                for (std::size_t j = 0; j < basis_size(3); ++j) V.adjoint().table(i, j);
        });
    for (auto& t : threads) t.join();
    for (std::size_t i = 0; i < basis_size(3); ++i)
        for (std::size_t j = 0; j < basis_size(3); ++j)
            CHECK(V.adjoint().table(i, j)->modes == reference.adjoint().table(i, j)->modes);
}

TEST_CASE("corruption changes one constant")
{
    auto V = VOAInstance::build_heisenberg(4);
    auto a = V.label({1});
    V.corrupt_structure_constant(basis_index({1}), 1, basis_index({1}), 0, 1);
    CHECK(V.mode(a, 1, a) == Rational(2) * V.vacuum());
    CHECK(V.mode(a, -1, a) == V.label({1, 1}));
}

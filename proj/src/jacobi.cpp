#include "vertexcalc/jacobi.hpp"

#include <map>
#include <memory>

namespace vcalc {

namespace {

template <class F>
auto memoize2(F f)
{
    auto cache = std::make_shared<std::map<std::pair<long, long>, GradedVector>>();
    return [f, cache](long a, long b) -> GradedVector {
        auto it = cache->find({a, b});
        if (it != cache->end()) return it->second;
        return cache->emplace(std::make_pair(a, b), f(a, b)).first->second;
    };
}

template <class F>
auto memoize1(F f)
{
    auto cache = std::make_shared<std::map<long, GradedVector>>();
    return [f, cache](long a) -> GradedVector {
        auto it = cache->find(a);
        if (it != cache->end()) return it->second;
        return cache->emplace(a, f(a)).first->second;
    };
}

std::string describe(const GradedVector& u, const GradedVector& v, const GradedVector& w)
{
    return "u=" + to_string(u) + " v=" + to_string(v) + " w=" + to_string(w);
}

} // namespace

VerificationReport evaluate_jacobi(const JacobiSystem& s, const Window& win)
{
    const std::size_t i0 = win.index_of("x0"), i1 = win.index_of("x1"), i2 = win.index_of("x2");
    VerificationReport r(s.identity, s.params + " window=" + win.describe(), {"x0", "x1", "x2"});
    const auto d1 = DeltaPattern::x1_minus_x2_over_x0();
    const auto d2 = DeltaPattern::x2_minus_x1_over_minus_x0();
    const auto d3 = DeltaPattern::x1_minus_x0_over_x2();
    const int lu = s.level_u, lv = s.level_v, lw = s.level_w;

    auto product = memoize2(s.product);
    auto reversed = memoize2(s.reversed);
    auto iterate = memoize2(s.iterate);

    win.for_each([&](const ExponentVector& e) {
        const long a = e[i0], b = e[i1], c = e[i2];
        const long out = lu + lv + lw + a + b + c + 1;
        const bool in_budget = lv + lw + c <= s.max_product && lu + lw + b <= s.max_reversed &&
                               lu + lv + a <= s.max_iterate && out <= s.max_out;
        if (!in_budget) {
            ++r.skipped;
            return;
        }
        // Output weight below zero: both sides vanish by grading.
        if (out < 0) return;
        ++r.checked;

        const long k = -a - 1;
        GradedVector lhs(s.max_out);
        // Product term: x1 exponent b - (k - j), x2 exponent c - j.
        for (long j = 0; j <= c + lv + lw; ++j) {
            Rational coeff = d1.coefficient(k, j);
            if (sgn(coeff) == 0) continue;
            long p = b - k + j, q = c - j;
            lhs.axpy(coeff, product(-p - 1, -q - 1));
        }
        // Reversed term: x1 exponent b - j, x2 exponent c - (k - j).
        for (long j = 0; j <= b + lu + lw; ++j) {
            Rational coeff = d2.coefficient(k, j);
            if (sgn(coeff) == 0) continue;
            long p = b - j, q = c - (k - j);
            lhs.axpy(-coeff, reversed(-q - 1, -p - 1));
        }
        GradedVector rhs(s.max_out);
        // Iterate term: delta supplies x1^b x0^j x2^(-b-j-1).
        for (long j = 0; j <= a + lu + lv; ++j) {
            long n = b + j;
            Rational coeff = d3.coefficient(n, j);
            if (sgn(coeff) == 0) continue;
            long a2 = a - j, c2 = c + n + 1;
            rhs.axpy(coeff, iterate(-a2 - 1, -c2 - 1));
        }
        if (lhs != rhs) r.add_difference({a, b, c}, to_string(lhs), to_string(rhs));
    });
    return r.finalize();
}

JacobiSystem voa_jacobi_system(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                               const GradedVector& w)
{
    JacobiSystem s;
    s.identity = "jacobi";
    s.params = describe(u, v, w) + " L=" + std::to_string(V.level());
    s.level_u = top_level(u);
    s.level_v = top_level(v);
    s.level_w = top_level(w);
    s.max_product = s.max_reversed = s.max_iterate = s.max_out = V.level();
    const VOAInstance* vp = &V;
    auto vw = memoize1([vp, v, w](long n) { return vp->mode(v, n, w); });
    auto uw = memoize1([vp, u, w](long m) { return vp->mode(u, m, w); });
    auto uv = memoize1([vp, u, v](long m) { return vp->mode(u, m, v); });
    s.product = [vp, u, vw](long m, long n) { return vp->mode(u, m, vw(n)); };
    s.reversed = [vp, v, uw](long n, long m) { return vp->mode(v, n, uw(m)); };
    s.iterate = [vp, w, uv](long m, long n) { return vp->mode(uv(m), n, w); };
    return s;
}

JacobiSystem module_jacobi_system(const VOAInstance& V, const VModule& M, const GradedVector& u,
                                  const GradedVector& v, const GradedVector& w)
{
    JacobiSystem s;
    s.identity = "module-jacobi";
    s.params = describe(u, v, w) + " module=" + M.name() + " L=" + std::to_string(M.max_level());
    s.level_u = top_level(u);
    s.level_v = top_level(v);
    s.level_w = top_level(w);
    s.max_product = s.max_reversed = s.max_out = M.max_level();
    s.max_iterate = V.level();
    const VOAInstance* vp = &V;
    const VModule* mp = &M;
    auto vw = memoize1([mp, v, w](long n) { return mp->act(v, n, w).value; });
    auto uw = memoize1([mp, u, w](long m) { return mp->act(u, m, w).value; });
    auto uv = memoize1([vp, u, v](long m) { return vp->mode(u, m, v); });
    s.product = [mp, u, vw](long m, long n) { return mp->act(u, m, vw(n)).value; };
    s.reversed = [mp, v, uw](long n, long m) { return mp->act(v, n, uw(m)).value; };
    s.iterate = [mp, w, uv](long m, long n) { return mp->act(uv(m), n, w).value; };
    return s;
}

} // namespace vcalc

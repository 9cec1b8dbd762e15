#include "vertexcalc/nu.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace vcalc {

namespace {

const FockModule& vacuum_module(int level)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<FockModule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[level];
    if (!slot) slot = std::make_unique<FockModule>(level, Rational(0));
    return *slot;
}

Rational real_part(const Complex& z, const char* what)
{
    if (sgn(z.im) != 0) throw DomainViolation(std::string(what) + " must be real rational");
    return z.re;
}

// a^{-L(0)} w.
GradedVector scale_weights(const GradedVector& w, const Rational& a)
{
    GradedVector out(w.level());
    for (const auto& [i, c] : w.terms()) out.add(i, c * power(a, -basis_weight(i)));
    return out;
}

// Y(v, z) w restricted to weights <= out.
GradedVector vertex_at(const FockModule& M, const GradedVector& v, const Rational& z, const GradedVector& w, int out)
{
    GradedVector r(out);
    for (const auto& [vi, vc] : v.terms())
        for (const auto& [wi, wc] : w.terms()) {
            const auto table = M.table(vi, wi);
            const long top = basis_weight(vi) + basis_weight(wi) - 1;
            for (const auto& [n, terms] : table->modes) {
                if (top - n > out) continue;
                const Rational f = vc * wc * power(z, -n - 1);
                for (const auto& [k, c] : terms) r.add_truncated(k, f * c);
            }
        }
    return r;
}

int max_weight(const std::vector<GradedVector>& vs)
{
    int w = 0;
    for (const auto& v : vs) w = std::max(w, v.top_weight());
    return w;
}

} // namespace

GradedVector nu_vector(const VOAInstance& V, const ModuliElement& Q, const std::vector<GradedVector>& vectors, int N,
                       int target)
{
    (void)V;
    if (!Q.is_standard()) throw UnsupportedSewing("nu is evaluated only at standard coordinates");
    const int n = Q.arity();
    if (static_cast<int>(vectors.size()) != n) throw std::invalid_argument("nu: one vector per positive puncture");
    if (n == 0) return GradedVector::basis(target, 0);
    std::vector<Rational> z, a;
    for (int k = 0; k < n; ++k) {
        z.push_back(real_part(Q.punctures()[k], "puncture positions"));
        a.push_back(real_part(Q.coordinates()[k].scale, "coordinate scales"));
    }
    for (int k = 0; k + 1 < n; ++k) {
        const Rational next = k + 2 < n ? Rational(abs(z[k + 1])) : Rational(0);
        if (!(abs(z[k]) > next)) throw DomainViolation("nu requires |z_1| > ... > |z_{n-1}| > 0");
    }
    const int level = std::max({N, target, max_weight(vectors)});
    const FockModule& M = vacuum_module(level);
    GradedVector w = scale_weights(vectors[n - 1].with_level(level), a[n - 1]);
    for (int k = n - 2; k >= 0; --k) {
        const int out = k == 0 ? target : N;
        w = vertex_at(M, scale_weights(vectors[k].with_level(level), a[k]), z[k], w, out).with_level(level);
    }
    if (n == 1) {
        GradedVector r(target);
        for (const auto& [i, c] : w.terms()) r.add_truncated(i, c);
        return r;
    }
    return w.with_level(target);
}

NuValue nu_evaluate(const VOAInstance& V, const ModuliElement& Q, const std::vector<GradedVector>& vectors,
                    const DualVector& dual, int N)
{
    const int target = dual.coords().level();
    NuValue r{dual.pair(nu_vector(V, Q, vectors, N, target)), true};
    for (int d = 1; d <= 2 && N - d >= 0; ++d)
        if (dual.pair(nu_vector(V, Q, vectors, N - d, target)) != r.value) r.stable = false;
    return r;
}

GradedVector contraction(const VOAInstance& V, const ModuliElement& Q1, int i, const ModuliElement& Q2,
                         const std::vector<GradedVector>& vectors, int N, int target)
{
    const int m = Q1.arity(), n = Q2.arity();
    if (i < 1 || i > m) throw std::out_of_range("contraction: puncture index out of range");
    if (static_cast<int>(vectors.size()) != m + n - 1) throw std::invalid_argument("contraction: wrong number of vectors");
    const std::vector<GradedVector> inner(vectors.begin() + (i - 1), vectors.begin() + (i - 1 + n));
    std::vector<GradedVector> outer(vectors.begin(), vectors.begin() + (i - 1));
    outer.push_back(nu_vector(V, Q2, inner, N, N));
    outer.insert(outer.end(), vectors.begin() + (i - 1 + n), vectors.end());
    return nu_vector(V, Q1, outer, N, target);
}

SewingAxiomResult check_sewing_axiom(const VOAInstance& V, const ModuliElement& Q1, int i, const ModuliElement& Q2,
                                     const std::vector<GradedVector>& vectors, const DualVector& dual,
                                     const std::vector<int>& schedule)
{
    std::string params = "i=" + std::to_string(i) + " cutoffs=";
    for (std::size_t k = 0; k < schedule.size(); ++k) params += (k ? "," : "") + std::to_string(schedule[k]);
    SewingAxiomResult out{VerificationReport("sewing-axiom", params, {"N"}), schedule, {}};
    const ModuliElement sewn = sew(Q1, i, Q2).element;
    const int target = dual.coords().level();
    for (int N : schedule) {
        const Rational lhs = dual.pair(nu_vector(V, sewn, vectors, N, target));
        const Rational rhs = dual.pair(contraction(V, Q1, i, Q2, vectors, N, target));
        out.differences.push_back(Rational(lhs - rhs));
    }
    const bool all_zero = std::all_of(out.differences.begin(), out.differences.end(),
                                      [](const Rational& d) { return sgn(d) == 0; });
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        ++out.report.checked;
        const bool ok = all_zero || k == 0 || abs(out.differences[k]) < abs(out.differences[k - 1]);
        if (!ok)
            out.report.add_difference({schedule[k]}, "|d|=" + Rational(abs(out.differences[k])).get_str(),
                                      "|d_prev|=" + Rational(abs(out.differences[k - 1])).get_str());
    }
    out.report.finalize();
    return out;
}

} // namespace vcalc

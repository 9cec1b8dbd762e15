#include "vertexcalc/axioms.hpp"

#include <map>

namespace vcalc {

namespace {

GradedVector virasoro_power(const VOAInstance& V, long n, long times, GradedVector v)
{
    for (long i = 0; i < times; ++i) v = V.virasoro_mode(n, v);
    return v;
}

std::string vec_params(const GradedVector& v) { return "v=" + to_string(v); }

// Homogeneous components of v paired with their L(0) eigenvalues.
std::vector<std::pair<long, GradedVector>> eigen_components(const VOAInstance& V, const GradedVector& v)
{
    std::vector<std::pair<long, GradedVector>> out;
    for (int wt : v.weights()) {
        GradedVector c = v.component(wt);
        out.emplace_back(l0_eigenvalue(V, V.adjoint(), c.terms().begin()->first), c);
    }
    return out;
}

} // namespace

long l0_eigenvalue(const VOAInstance& V, const VModule& M, std::size_t index)
{
    GradedVector b = M.basis(index);
    GradedVector l0 = V.virasoro_mode(M, 0, b);
    Rational e = l0[index];
    if ((l0 - e * b).is_zero() == false) throw std::logic_error("basis vector is not an L(0) eigenvector");
    if (e.get_den() != 1) throw std::logic_error("non-integral L(0) eigenvalue");
    return e.get_num().get_si();
}

std::string to_string(const Permutation3& p)
{
    return "(" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]) + ")";
}

VerificationReport check_jacobi(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                const GradedVector& w, const Window& win)
{
    return evaluate_jacobi(voa_jacobi_system(V, u, v, w), win);
}

VerificationReport check_creation(const VOAInstance& V, const GradedVector& v, long order)
{
    VerificationReport r("creation", vec_params(v) + " order=" + std::to_string(order), {"x"});
    const int lv = top_level(v);
    for (long k = -order; k <= order; ++k) {
        if (lv + k > V.level()) {
            ++r.skipped;
            continue;
        }
        ++r.checked;
        GradedVector lhs = V.mode(v, -k - 1, V.vacuum());
        GradedVector rhs = V.zero_vector();
        if (k >= 0) rhs.axpy(1 / factorial(k), virasoro_power(V, -1, k, v));
        if (lhs != rhs) r.add_difference({k}, to_string(lhs), to_string(rhs));
    }
    return r.finalize();
}

VerificationReport check_skew_symmetry(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                       long order)
{
    VerificationReport r("skew-symmetry", "u=" + to_string(u) + " " + vec_params(v) + " order=" + std::to_string(order),
                         {"x"});
    const int lu = top_level(u), lv = top_level(v);
    for (long k = -order; k <= order; ++k) {
        if (lu + lv + k > V.level()) {
            ++r.skipped;
            continue;
        }
        if (lu + lv + k < 0) continue;
        ++r.checked;
        GradedVector lhs = V.mode(u, -k - 1, v);
        GradedVector rhs = V.zero_vector();
        // x^k from x^i/i! L(-1)^i v_m u (-x)^{-m-1} with m = i - k - 1.
        for (long i = 0; i <= k + lu + lv; ++i) {
            GradedVector y = V.mode(v, i - k - 1, u);
            rhs.axpy(Rational(sign_power(k - i)) / factorial(i), virasoro_power(V, -1, i, y));
        }
        if (lhs != rhs) r.add_difference({k}, to_string(lhs), to_string(rhs));
    }
    return r.finalize();
}

VerificationReport check_commutators(const VOAInstance& V, const GradedVector& v, const Window& win)
{
    if (win.size() != 1) throw std::invalid_argument("check_commutators: expected a one-variable window");
    VerificationReport r("commutators", vec_params(v) + " window=" + win.describe(), {"j", "x", "w"});
    const int L = V.level();
    const int lv = top_level(v);
    if (lv + 1 > L) {
        r.skipped = 1;
        return r.finalize();
    }
    std::map<long, GradedVector> lv_modes;  // L(i-1)v
    for (long i = 0; i <= 2; ++i) lv_modes[i] = V.virasoro_mode(i - 1, v);
    for (std::size_t wi = 0; wi < V.dim(); ++wi) {
        const GradedVector w = V.basis(wi);
        const int lw = basis_weight(wi);
        for (long j = -1; j <= 1; ++j) {
            GradedVector ljw = V.virasoro_mode(j, w);
            for (long k = win[0].lo; k <= win[0].hi; ++k) {
                if (lv + lw + k > L || lw - j > L || lv + lw + k - j > L) {
                    ++r.skipped;
                    continue;
                }
                if (lv + lw + k - j < 0 && lv + lw + k < 0) continue;
                ++r.checked;
                GradedVector lhs = V.virasoro_mode(j, V.mode(v, -k - 1, w)) - V.mode(v, -k - 1, ljw);
                GradedVector rhs = V.zero_vector();
                // sum_i C(j+1,i) x^{j+1-i} Y(L(i-1)v, x): the x^k coefficient uses mode k - (j+1-i).
                for (long i = 0; i <= j + 1; ++i)
                    rhs.axpy(binomial(j + 1, i), V.mode(lv_modes[i], -(k - (j + 1 - i)) - 1, w));
                if (lhs != rhs) r.add_difference({j, k, static_cast<long>(wi)}, to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_scaling_conjugation(const VOAInstance& V, const GradedVector& v, long order)
{
    VerificationReport r("conjugation-scaling", vec_params(v) + " order=" + std::to_string(order), {"x", "x0", "w"});
    const int L = V.level();
    const int lv = top_level(v);
    auto comps = eigen_components(V, v);
    std::map<std::size_t, long> eigen;
    auto ev = [&](std::size_t i) {
        auto it = eigen.find(i);
        if (it != eigen.end()) return it->second;
        return eigen[i] = l0_eigenvalue(V, V.adjoint(), i);
    };
    for (std::size_t wi = 0; wi < V.dim(); ++wi) {
        const GradedVector w = V.basis(wi);
        const int lw = basis_weight(wi);
        for (long q = -order; q <= order; ++q) {
            if (lv + lw + q > L) {
                ++r.skipped;
                continue;
            }
            ++r.checked;
            // x^{L(0)} v_{-q-1} x^{-L(0)} w, sorted by the power of x.
            std::map<long, GradedVector> lhs, rhs;
            GradedVector y = V.mode(v, -q - 1, w);
            for (const auto& [ci, c] : y.terms())
                lhs[ev(ci) - ev(wi)].axpy(c, GradedVector::basis(L, ci));
            // Y(x^{L(0)} v, x x0) w: component of eigenvalue e contributes x^{e+q}.
            for (const auto& [e, vh] : comps) rhs[e + q].axpy(1, V.mode(vh, -q - 1, w));
            for (auto* m : {&lhs, &rhs})
                for (auto it = m->begin(); it != m->end();) it = it->second.is_zero() ? m->erase(it) : std::next(it);
            if (lhs != rhs) {
                std::string ls, rs;
                for (const auto& [p, x] : lhs) ls += "x^" + std::to_string(p) + ":" + to_string(x) + " ";
                for (const auto& [p, x] : rhs) rs += "x^" + std::to_string(p) + ":" + to_string(x) + " ";
                r.add_difference({0, q, static_cast<long>(wi)}, ls, rs);
            }
        }
    }
    return r.finalize();
}

VerificationReport check_l1_conjugation(const VOAInstance& V, const GradedVector& v, long order)
{
    VerificationReport r("conjugation-l1", vec_params(v) + " order=" + std::to_string(order), {"x", "x0", "w"});
    const int L = V.level();
    const int lv = top_level(v);
    auto comps = eigen_components(V, v);
    for (std::size_t wi = 0; wi < V.dim(); ++wi) {
        const GradedVector w = V.basis(wi);
        const int lw = basis_weight(wi);
        std::vector<GradedVector> l1w{w};
        for (long j = 1; j <= order; ++j) l1w.push_back(V.virasoro_mode(1, l1w.back()));
        for (long q = -order; q <= order; ++q) {
            if (lv + lw + q > L) {
                r.skipped += static_cast<std::size_t>(order + 1);
                continue;
            }
            for (long p = 0; p <= order; ++p) {
                if (lv + lw + q - p < 0) continue;
                ++r.checked;
                GradedVector lhs = V.zero_vector();
                for (long i = 0; i <= p; ++i) {
                    long j = p - i;
                    GradedVector y = virasoro_power(V, 1, i, V.mode(v, -q - 1, l1w[j]));
                    lhs.axpy(Rational(sign_power(j)) / (factorial(i) * factorial(j)), y);
                }
                GradedVector rhs = V.zero_vector();
                for (const auto& [n, vh] : comps) {
                    for (long i = 0; i <= p; ++i) {
                        long rr = p - i;
                        long m = rr - q - 1;
                        long e = i - 2 * n + rr - q;
                        Rational coeff = binomial(e, rr) * sign_power(rr) / factorial(i);
                        if (sgn(coeff) == 0) continue;
                        rhs.axpy(coeff, V.mode(virasoro_power(V, 1, i, vh), m, w));
                    }
                }
                if (lhs != rhs) r.add_difference({p, q, static_cast<long>(wi)}, to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_translation(const VOAInstance& V, const GradedVector& v, long order)
{
    VerificationReport r("conjugation-translation", vec_params(v) + " order=" + std::to_string(order),
                         {"x0", "x", "w", "route"});
    const int L = V.level();
    const int lv = top_level(v);
    for (std::size_t wi = 0; wi < V.dim(); ++wi) {
        const GradedVector w = V.basis(wi);
        const int lw = basis_weight(wi);
        for (long p = 0; p <= order; ++p) {
            for (long q = -order; q <= order; ++q) {
                if (lv + lw + p + q > L || lv + p > L || lw + p > L) {
                    ++r.skipped;
                    continue;
                }
                if (lv + lw + p + q < 0) continue;
                ++r.checked;
                // e^{x0 L(-1)} Y(v,x) e^{-x0 L(-1)} w at x0^p x^q.
                GradedVector a = V.zero_vector();
                for (long i = 0; i <= p; ++i) {
                    long j = p - i;
                    GradedVector y = virasoro_power(V, -1, i, V.mode(v, -q - 1, virasoro_power(V, -1, j, w)));
                    a.axpy(Rational(sign_power(j)) / (factorial(i) * factorial(j)), y);
                }
                // Y(e^{x0 L(-1)} v, x) w.
                GradedVector b = (1 / factorial(p)) * V.mode(virasoro_power(V, -1, p, v), -q - 1, w);
                // Y(v, x + x0) w with x0 subordinate.
                GradedVector c = binomial(q + p, p) * V.mode(v, -q - p - 1, w);
                if (a != c) r.add_difference({p, q, static_cast<long>(wi), 0}, to_string(a), to_string(c));
                if (b != c) r.add_difference({p, q, static_cast<long>(wi), 1}, to_string(b), to_string(c));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_sl2_identity(const VOAInstance& V, int which, long order)
{
    VerificationReport r("sl2-identity-" + std::to_string(which), "f=x order=" + std::to_string(order), {"x", "w"});
    const int L = V.level();
    for (std::size_t wi = 0; wi < V.dim(); ++wi) {
        const GradedVector w = V.basis(wi);
        if (basis_weight(wi) + 1 > L) {
            ++r.skipped;
            continue;
        }
        auto l = [&](long n, const GradedVector& x) { return V.virasoro_mode(n, x); };
        for (long p = 0; p <= order; ++p) {
            ++r.checked;
            GradedVector lhs = V.zero_vector(), rhs = V.zero_vector();
            if (which == 1 || which == 2) {
                long n = which == 1 ? -1 : 1;
                int s = which == 1 ? -1 : 1;  // e^{-x} or e^{x}
                lhs.axpy(1 / factorial(p), l(n, virasoro_power(V, 0, p, w)));
                for (long i = 0; i <= p; ++i) {
                    long j = p - i;
                    Rational coeff = Rational(s < 0 ? sign_power(j) : 1) / (factorial(i) * factorial(j));
                    rhs.axpy(coeff, virasoro_power(V, 0, i, l(n, w)));
                }
                if (lhs != rhs) r.add_difference({p, static_cast<long>(wi)}, to_string(lhs), to_string(rhs));
            } else {
                // L(-1)e^{xL(1)} against its two rearrangements.
                GradedVector e1 = (1 / factorial(p)) * l(-1, virasoro_power(V, 1, p, w));
                GradedVector e2 = (1 / factorial(p)) * virasoro_power(V, 1, p, l(-1, w));
                GradedVector e3 = e2;
                if (p >= 1) {
                    e2.axpy(-2 / factorial(p - 1), l(0, virasoro_power(V, 1, p - 1, w)));
                    e3.axpy(-2 / factorial(p - 1), virasoro_power(V, 1, p - 1, l(0, w)));
                }
                if (p >= 2) {
                    e2.axpy(-1 / factorial(p - 2), l(1, virasoro_power(V, 1, p - 2, w)));
                    e3.axpy(1 / factorial(p - 2), virasoro_power(V, 1, p - 2, l(1, w)));
                }
                if (e1 != e2) r.add_difference({p, static_cast<long>(wi)}, to_string(e1), to_string(e2));
                if (e1 != e3) r.add_difference({p, static_cast<long>(wi)}, to_string(e1), to_string(e3));
            }
        }
    }
    return r.finalize();
}

std::vector<VerificationReport> conjugation_reports(const VOAInstance& V, const GradedVector& v, long order)
{
    return {check_scaling_conjugation(V, v, order), check_l1_conjugation(V, v, order), check_translation(V, v, order),
            check_sl2_identity(V, 1, order),        check_sl2_identity(V, 2, order),   check_sl2_identity(V, 3, order)};
}

VerificationReport check_conjugation(const VOAInstance& V, const GradedVector& v, long order)
{
    VerificationReport r("conjugation", vec_params(v) + " order=" + std::to_string(order));
    for (const auto& sub : conjugation_reports(V, v, order)) r.absorb(sub);
    return r.finalize();
}

VerificationReport check_iterate_skew_step(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                           const GradedVector& w, const Window& win)
{
    const auto& b0 = win[win.index_of("x0")];
    const auto& b2 = win[win.index_of("x2")];
    VerificationReport r("s3-step-iterate-skew",
                         "u=" + to_string(u) + " v=" + to_string(v) + " w=" + to_string(w) + " window=" + win.describe(),
                         {"x0", "x2", "route"});
    const int L = V.level();
    const int lu = top_level(u), lv = top_level(v), lw = top_level(w);
    for (long a = b0.lo; a <= b0.hi; ++a) {
        for (long c = b2.lo; c <= b2.hi; ++c) {
            long out = lu + lv + lw + a + c + 1;
            if (lu + lv + a > L || out > L) {
                ++r.skipped;
                continue;
            }
            if (out < 0) continue;
            ++r.checked;
            // Y(Y(u,x0)v, x2)w.
            GradedVector A = V.mode(V.mode(u, -a - 1, v), -c - 1, w);
            // Y(e^{x0 L(-1)} Y(v,-x0)u, x2)w.
            GradedVector B = V.zero_vector();
            for (long i = 0; i <= a + lu + lv; ++i) {
                GradedVector y = virasoro_power(V, -1, i, V.mode(v, i - a - 1, u));
                B.axpy(Rational(sign_power(a - i)) / factorial(i), V.mode(y, -c - 1, w));
            }
            // Y(Y(v,-x0)u, x2 + x0)w with x0 subordinate.
            GradedVector C = V.zero_vector();
            for (long j = 0; j <= a + lu + lv; ++j)
                C.axpy(binomial(c + j, j) * sign_power(a - j), V.mode(V.mode(v, j - a - 1, u), -c - 1 - j, w));
            if (A != B) r.add_difference({a, c, 0}, to_string(A), to_string(B));
            if (A != C) r.add_difference({a, c, 1}, to_string(A), to_string(C));
        }
    }
    return r.finalize();
}

VerificationReport check_transposed_step(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                         const GradedVector& w, const Window& win)
{
    JacobiSystem s;
    s.identity = "s3-step-transposed";
    s.params = "u=" + to_string(u) + " v=" + to_string(v) + " w=" + to_string(w);
    s.level_u = top_level(u);
    s.level_v = top_level(v);
    s.level_w = top_level(w);
    s.max_product = s.max_reversed = s.max_iterate = s.max_out = V.level();
    const VOAInstance* vp = &V;
    const int lv = s.level_v, lw = s.level_w;
    // Y(u, x1-x2) Y(w, -x2) v at x1^P x2^Q.
    s.product = [vp, u, v, w, lv, lw](long m, long n) {
        long P = -m - 1, Q = -n - 1;
        GradedVector out = vp->zero_vector();
        for (long i = 0; i <= Q + lw + lv; ++i)
            out.axpy(binomial(P + i, i), vp->mode(u, -P - 1 - i, vp->mode(w, i - Q - 1, v)));
        return Rational(sign_power(Q)) * out;
    };
    // Y(Y(u,x1)w, -x2) v at x1^P x2^Q.
    s.reversed = [vp, u, v, w](long n, long m) {
        long P = -m - 1, Q = -n - 1;
        return Rational(sign_power(Q)) * vp->mode(vp->mode(u, -P - 1, w), -Q - 1, v);
    };
    // Y(w,-x2) Y(u,x0) v at x0^A x2^Q.
    s.iterate = [vp, u, v, w](long m, long n) {
        long A = -m - 1, Q = -n - 1;
        return Rational(sign_power(Q)) * vp->mode(w, -Q - 1, vp->mode(u, -A - 1, v));
    };
    return evaluate_jacobi(s, win);
}

VerificationReport s3_transform_check(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                      const GradedVector& w, const Permutation3& perm, const Window& win)
{
    const GradedVector* t[3] = {&u, &v, &w};
    VerificationReport r("s3", "perm=" + to_string(perm) + " u=" + to_string(u) + " v=" + to_string(v) +
                                   " w=" + to_string(w) + " window=" + win.describe());
    r.absorb(check_jacobi(V, *t[perm[0]], *t[perm[1]], *t[perm[2]], win));
    if (perm == Permutation3{1, 0, 2}) r.absorb(check_iterate_skew_step(V, u, v, w, win));
    if (perm == Permutation3{0, 2, 1}) r.absorb(check_transposed_step(V, u, v, w, win));
    return r.finalize();
}

} // namespace vcalc

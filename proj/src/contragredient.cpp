#include "vertexcalc/contragredient.hpp"

#include <mutex>

namespace vcalc {

namespace {

// T_n b = sum over the conjugate of v of u_{-n-2-p} b, the operator adjoint to v'_n.
GradedVector conjugate_action(const VModule& M, const PolyVector& conj, long n, const GradedVector& b)
{
    GradedVector out = M.zero();
    for (const auto& [p, u] : conj) out += M.act(u, -n - 2 - p, b).value;
    return out;
}

} // namespace

PolyVector conjugate_vector(const VOAInstance& V, const GradedVector& v)
{
    PolyVector out;
    for (int n : v.weights()) {
        GradedVector cur = v.component(n);
        for (long i = 0; !cur.is_zero(); ++i) {
            out[i - 2 * n].axpy(Rational(sign_power(n)) / factorial(i), cur);
            if (n - i - 1 < 0) break;
            cur = V.virasoro_mode(1, cur);
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Rational DualVector::pair(const GradedVector& w) const
{
    Rational s = 0;
    for (const auto& [i, c] : coords_.terms()) s += c * w[i];
    return s;
}

ContragredientModule::ContragredientModule(const VOAInstance& V, const VModule& base) : V_(&V), base_(&base) {}

GradedVector ContragredientModule::adjoint_column(std::size_t v, long n, std::size_t b) const
{
    const auto key = std::make_tuple(v, n, b);
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    GradedVector col = conjugate_action(*base_, conjugate_vector(*V_, V_->basis(v)), n, base_->basis(b));
    std::unique_lock lock(mutex_);
    return memo_.emplace(key, std::move(col)).first->second;
}

ModeResult ContragredientModule::act(const GradedVector& v, long n, const GradedVector& w) const
{
    const int L = max_level();
    ModeResult r{zero(), false};
    for (const auto& [vi, vc] : v.terms()) {
        const int wv = basis_weight(vi);
        for (int k : w.weights()) {
            const long target = k + wv - n - 1;
            if (target < 0) continue;
            if (target > L) {
                r.overflow = true;
                continue;
            }
            for (std::size_t b = first_index(static_cast<int>(target)); b < basis_size(static_cast<int>(target)); ++b) {
                const GradedVector col = adjoint_column(vi, n, b);
                Rational s = 0;
                for (const auto& [a, c] : col.terms()) s += c * w[a];
                if (s != 0) r.value.add(b, vc * s);
            }
        }
    }
    return r;
}

void ContragredientModule::corrupt(std::size_t v, long n, std::size_t source, std::size_t target, const Rational& delta)
{
    GradedVector col = adjoint_column(v, n, target);
    col.add(source, delta);
    std::unique_lock lock(mutex_);
    memo_[std::make_tuple(v, n, target)] = col;
}

std::unique_ptr<ContragredientModule> build_contragredient(const VOAInstance& V, const VModule& M)
{
    return std::make_unique<ContragredientModule>(V, M);
}

VerificationReport check_defining_relation(const ContragredientModule& Mp)
{
    const VOAInstance& V = Mp.algebra();
    const VModule& M = Mp.base();
    const int L = Mp.max_level();
    VerificationReport r("contragredient-defining", "module=" + Mp.name() + " L=" + std::to_string(L),
                         {"v", "w'", "w"});
    for (std::size_t vi = 0; vi < V.dim(); ++vi) {
        const PolyVector conj = conjugate_vector(V, V.basis(vi));
        const int wv = basis_weight(vi);
        for (std::size_t a = 0; a < Mp.dim(); ++a) {
            const int k = basis_weight(a);
            const DualVector wp = DualVector::basis(L, a);
            for (std::size_t b = 0; b < M.dim(); ++b) {
                const long n = k + wv - basis_weight(b) - 1;
                ++r.checked;
                Rational lhs = Mp.act(V.basis(vi), n, wp.coords()).value[b];
                Rational rhs = wp.pair(conjugate_action(M, conj, n, M.basis(b)));
                if (lhs != rhs)
                    r.add_difference({static_cast<long>(vi), static_cast<long>(a), static_cast<long>(b)},
                                     to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_adjoint_virasoro(const ContragredientModule& Mp, long max_n)
{
    const VOAInstance& V = Mp.algebra();
    const VModule& M = Mp.base();
    const int L = Mp.max_level();
    VerificationReport r("contragredient-virasoro-adjoint",
                         "module=" + Mp.name() + " L=" + std::to_string(L) + " n<=" + std::to_string(max_n),
                         {"n", "w'", "w"});
    for (long n = -max_n; n <= max_n; ++n) {
        for (std::size_t a = 0; a < Mp.dim(); ++a) {
            const long target = basis_weight(a) - n;
            if (target < 0) continue;
            if (target > L) {
                ++r.skipped;
                continue;
            }
            const GradedVector lhs = V.virasoro_mode(Mp, n, Mp.basis(a));
            for (std::size_t b = first_index(static_cast<int>(target)); b < basis_size(static_cast<int>(target)); ++b) {
                ++r.checked;
                Rational rhs = V.virasoro_mode(M, -n, M.basis(b))[a];
                if (lhs[b] != rhs)
                    r.add_difference({n, static_cast<long>(a), static_cast<long>(b)}, to_string(lhs[b]), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_contragredient_virasoro(const ContragredientModule& Mp, long max_n)
{
    const VOAInstance& V = Mp.algebra();
    const int L = Mp.max_level();
    VerificationReport r("contragredient-virasoro-bracket",
                         "module=" + Mp.name() + " L=" + std::to_string(L) + " n<=" + std::to_string(max_n),
                         {"m", "n", "w'"});
    for (std::size_t a = 0; a < Mp.dim(); ++a) {
        const long k = basis_weight(a);
        const GradedVector w = Mp.basis(a);
        for (long m = -max_n; m <= max_n; ++m) {
            for (long n = -max_n; n <= max_n; ++n) {
                if (k - m > L || k - n > L || k - m - n > L) {
                    ++r.skipped;
                    continue;
                }
                ++r.checked;
                GradedVector lhs = V.virasoro_mode(Mp, m, V.virasoro_mode(Mp, n, w)) -
                                   V.virasoro_mode(Mp, n, V.virasoro_mode(Mp, m, w));
                GradedVector rhs = Rational(m - n) * V.virasoro_mode(Mp, m + n, w);
                if (m + n == 0) rhs.axpy(V.central_charge() * Rational(m * m * m - m) / 12, w);
                if (lhs != rhs) r.add_difference({m, n, static_cast<long>(a)}, to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_contragredient_derivative(const ContragredientModule& Mp)
{
    const VOAInstance& V = Mp.algebra();
    const int L = Mp.max_level();
    VerificationReport r("contragredient-derivative", "module=" + Mp.name() + " L=" + std::to_string(L),
                         {"v", "n", "w'"});
    for (std::size_t vi = 0; vi < V.dim(); ++vi) {
        const int wv = basis_weight(vi);
        if (wv + 1 > V.level()) continue;
        const GradedVector v = V.basis(vi);
        const GradedVector dv = V.virasoro_mode(-1, v);
        for (std::size_t a = 0; a < Mp.dim(); ++a) {
            const long k = basis_weight(a);
            for (long n = k + wv - L; n <= k + wv; ++n) {
                ++r.checked;
                GradedVector lhs = Mp.act(dv, n, Mp.basis(a)).value;
                GradedVector rhs = Rational(-n) * Mp.act(v, n - 1, Mp.basis(a)).value;
                if (lhs != rhs) r.add_difference({static_cast<long>(vi), n, static_cast<long>(a)}, to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_contragredient_vacuum(const ContragredientModule& Mp)
{
    const VOAInstance& V = Mp.algebra();
    const int L = Mp.max_level();
    VerificationReport r("contragredient-vacuum", "module=" + Mp.name() + " L=" + std::to_string(L), {"n", "w'"});
    for (std::size_t a = 0; a < Mp.dim(); ++a) {
        const long k = basis_weight(a);
        for (long n = k - L - 1; n <= k; ++n) {
            ++r.checked;
            GradedVector lhs = Mp.act(V.vacuum(), n, Mp.basis(a)).value;
            GradedVector rhs = n == -1 ? Mp.basis(a) : Mp.zero();
            if (lhs != rhs) r.add_difference({n, static_cast<long>(a)}, to_string(lhs), to_string(rhs));
        }
    }
    return r.finalize();
}

VerificationReport check_contragredient_jacobi(const ContragredientModule& Mp, const GradedVector& v1,
                                               const GradedVector& v2, const GradedVector& wp, const Window& win)
{
    VerificationReport r = evaluate_jacobi(module_jacobi_system(Mp.algebra(), Mp, v1, v2, wp), win);
    r.identity = "contragredient-jacobi";
    return r;
}

VerificationReport check_double_contragredient(const VOAInstance& V, const VModule& M)
{
    ContragredientModule Mp(V, M);
    ContragredientModule Mpp(V, Mp);
    const int L = M.max_level();
    VerificationReport r("double-contragredient", "module=" + M.name() + " L=" + std::to_string(L), {"v", "n", "w"});
    for (std::size_t vi = 0; vi < V.dim(); ++vi) {
        const int wv = basis_weight(vi);
        const GradedVector v = V.basis(vi);
        for (std::size_t a = 0; a < M.dim(); ++a) {
            const long k = basis_weight(a);
            for (long n = k + wv - 1 - L; n <= k + wv - 1; ++n) {
                ++r.checked;
                GradedVector lhs = Mpp.act(v, n, M.basis(a)).value;
                GradedVector rhs = M.act(v, n, M.basis(a)).value;
                if (lhs != rhs) r.add_difference({static_cast<long>(vi), n, static_cast<long>(a)}, to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

Rational BilinearForm::operator()(const GradedVector& a, const GradedVector& b) const
{
    Rational s = 0;
    for (const auto& [i, ci] : a.terms()) {
        const int k = basis_weight(i);
        if (k > max_level()) throw std::out_of_range("BilinearForm: vector above the form's level");
        for (const auto& [j, cj] : b.terms())
            if (basis_weight(j) == k) s += ci * cj * blocks[k](block_index(i), block_index(j));
    }
    return s;
}

BilinearForm build_invariant_form(const VOAInstance& V, const VModule& M, const Rational& normalization)
{
    const int L = M.max_level();
    const GradedVector g = V.label({1});
    const PolyVector conj = conjugate_vector(V, g);
    BilinearForm form;
    for (int k = 0; k <= L; ++k) {
        const std::size_t d = block_size(k);
        const std::size_t base = first_index(k);
        auto unknown = [&](std::size_t i, std::size_t j) { return (i - base) * d + (j - base); };
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        auto known = [&](std::size_t i, std::size_t j) { return form.blocks[basis_weight(i)](block_index(i), block_index(j)); };
        // (g_n a, b) = (a, T_n b) with one of a, b at level k and the other at level l <= k.
        for (int l = 0; l <= k; ++l) {
            const long n = l - k;  // g_n raises level l to k
            for (std::size_t a = first_index(l); a < basis_size(l); ++a) {
                for (std::size_t b = base; b < basis_size(k); ++b) {
                    std::vector<Rational> row(d * d);
                    Rational c = 0;
                    const GradedVector ga = M.act(g, n, M.basis(a)).value;
                    const GradedVector tb = conjugate_action(M, conj, n, M.basis(b));
                    for (const auto& [x, cx] : ga.terms()) row[unknown(x, b)] += cx;
                    for (const auto& [y, cy] : tb.terms()) {
                        if (l == k) row[unknown(a, y)] -= cy;
                        else c += cy * known(a, y);
                    }
                    rows.push_back(std::move(row));
                    rhs.push_back(c);
                    if (l == k) continue;
                    // Transposed constraint: (g_{-n} b, a) = (b, T_{-n} a) with b at level k.
                    std::vector<Rational> trow(d * d);
                    Rational tc = 0;
                    const GradedVector gb = M.act(g, -n, M.basis(b)).value;
                    const GradedVector ta = conjugate_action(M, conj, -n, M.basis(a));
                    for (const auto& [x, cx] : gb.terms()) tc += cx * known(x, a);
                    for (const auto& [y, cy] : ta.terms()) trow[unknown(b, y)] += cy;
                    rows.push_back(std::move(trow));
                    rhs.push_back(tc);
                }
            }
        }
        if (k == 0) {
            std::vector<Rational> row(1, Rational(1));
            rows.push_back(row);
            rhs.push_back(normalization);
        }
        Matrix A(rows.size(), d * d);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < d * d; ++j) A(i, j) = rows[i][j];
        LinearSolution sol = solve(A, rhs);
        const std::string where = M.name() + " at weight block " + std::to_string(k);
        if (sol.kind == LinearSolution::Kind::inconsistent) throw NotSelfDual("inconsistent invariance constraints for " + where);
        if (sol.kind == LinearSolution::Kind::underdetermined) throw NotSelfDual("underdetermined invariance constraints for " + where);
        Matrix G(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) G(i, j) = sol.x[i * d + j];
        if (determinant(G) == 0) throw NotSelfDual("degenerate form for " + where);
        form.blocks.push_back(std::move(G));
    }
    form.symmetric = true;
    for (const Matrix& G : form.blocks) form.symmetric = form.symmetric && G.is_symmetric();
    if (&M == &V.adjoint() && !form.symmetric) throw std::logic_error("invariant form on V is not symmetric");
    return form;
}

VerificationReport check_invariant_form(const VOAInstance& V, const VModule& M, const BilinearForm& form)
{
    const int L = M.max_level();
    VerificationReport r("invariant-form", "module=" + M.name() + " L=" + std::to_string(L), {"v", "a", "b"});
    for (std::size_t vi = 0; vi < V.dim(); ++vi) {
        const PolyVector conj = conjugate_vector(V, V.basis(vi));
        const int wv = basis_weight(vi);
        for (std::size_t a = 0; a < M.dim(); ++a) {
            for (std::size_t b = 0; b < M.dim(); ++b) {
                const long n = basis_weight(a) + wv - basis_weight(b) - 1;
                ++r.checked;
                Rational lhs = form(M.act(V.basis(vi), n, M.basis(a)).value, M.basis(b));
                Rational rhs = form(M.basis(a), conjugate_action(M, conj, n, M.basis(b)));
                if (lhs != rhs)
                    r.add_difference({static_cast<long>(vi), static_cast<long>(a), static_cast<long>(b)},
                                     to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

} // namespace vcalc

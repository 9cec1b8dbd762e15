#include "vertexcalc/intertwiner.hpp"

#include "vertexcalc/jacobi.hpp"

#include <algorithm>

namespace vcalc {

namespace {

long target_level(std::size_t a, long k, std::size_t b)
{
    return basis_weight(a) + basis_weight(b) - k - 1;
}

} // namespace

Intertwiner::Intertwiner(const VModule& w1, const VModule& w2, const VModule& w3, Rational shift)
    : w1_(&w1), w2_(&w2), w3_(&w3), h_(std::move(shift))
{
    Rational expected = w1.lowest_weight() + w2.lowest_weight() - w3.lowest_weight();
    if (h_ != expected)
        throw MixedShift("shift " + to_string(h_) + " differs from h1 + h2 - h3 = " + to_string(expected));
}

Intertwiner Intertwiner::from_module_action(const VOAInstance& V, const VModule& W)
{
    const VModule& A = V.adjoint();
    Intertwiner I(A, W, W, 0);
    const int L = W.max_level();
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < W.dim(); ++b) {
            const long top = basis_weight(a) + basis_weight(b) - 1;
            for (long k = top - L; k <= top; ++k) I.set(a, k, b, W.act(A.basis(a), k, W.basis(b)).value);
        }
    return I;
}

std::string Intertwiner::type_name() const
{
    return "(" + w3_->name() + "; " + w1_->name() + " " + w2_->name() + ")";
}

GradedVector Intertwiner::mode(const GradedVector& a, long k, const GradedVector& b) const
{
    GradedVector out = w3_->zero();
    for (const auto& [ai, ac] : a.terms())
        for (const auto& [bi, bc] : b.terms()) {
            auto it = table_.find({ai, k, bi});
            if (it != table_.end()) out.axpy(ac * bc, it->second);
        }
    return out;
}

void Intertwiner::set(std::size_t a, long k, std::size_t b, GradedVector value)
{
    table_[{a, k, b}] = std::move(value);
}

void Intertwiner::mutate(std::size_t a, long k, std::size_t b, std::size_t t, const Rational& delta)
{
    auto it = table_.try_emplace({a, k, b}, w3_->zero()).first;
    it->second.add(t, delta);
}

Window intertwiner_window(const Intertwiner& I)
{
    const long l1 = I.first().max_level(), l2 = I.second().max_level(), l3 = I.third().max_level();
    const long r = std::max({l1, l2, l3});
    Window w;
    w.add("x0", -r - 1, r);
    w.add("x1", -r - 1, r);
    w.add("x2", -l1 - l2 - 1, l3);
    return w;
}

VerificationReport check_intertwiner_grading(const Intertwiner& I)
{
    VerificationReport r("intertwiner-grading", "type=" + I.type_name(), {"w1", "k", "w2"});
    for (const auto& [key, value] : I.entries()) {
        const auto& [a, k, b] = key;
        const long t = target_level(a, k, b);
        ++r.checked;
        // Lower truncation: modes past the top vanish; otherwise the value sits at level t.
        GradedVector expect = t < 0 ? I.third().zero() : value.component(static_cast<int>(t));
        if (value != expect)
            r.add_difference({static_cast<long>(a), k, static_cast<long>(b)}, to_string(value), to_string(expect));
    }
    return r.finalize();
}

VerificationReport check_intertwiner_jacobi(const Intertwiner& I, const GradedVector& v,
                                            const GradedVector& a, const GradedVector& b, const Window& win)
{
    JacobiSystem s;
    s.identity = "intertwiner-jacobi";
    s.params = "type=" + I.type_name() + " h=" + to_string(I.shift()) + " v=" + to_string(v) + " w1=" + to_string(a) +
               " w2=" + to_string(b);
    s.level_u = top_level(v);
    s.level_v = top_level(a);
    s.level_w = top_level(b);
    s.max_product = s.max_out = I.third().max_level();
    s.max_reversed = I.second().max_level();
    s.max_iterate = I.first().max_level();
    const Intertwiner* ip = &I;
    s.product = [ip, v, a, b](long m, long n) { return ip->third().act(v, m, ip->mode(a, n, b)).value; };
    s.reversed = [ip, v, a, b](long n, long m) { return ip->mode(a, n, ip->second().act(v, m, b).value); };
    s.iterate = [ip, v, a, b](long m, long n) { return ip->mode(ip->first().act(v, m, a).value, n, b); };
    return evaluate_jacobi(s, win);
}

VerificationReport check_intertwiner_derivative(const Intertwiner& I, const VOAInstance& V)
{
    const VModule& W1 = I.first();
    const VModule& W2 = I.second();
    const int L3 = I.third().max_level();
    VerificationReport r("intertwiner-derivative", "type=" + I.type_name(), {"w1", "k", "w2"});
    for (std::size_t a = 0; a < W1.dim(); ++a) {
        if (basis_weight(a) + 1 > W1.max_level()) continue;
        const GradedVector da = V.virasoro_mode(W1, -1, W1.basis(a));
        for (std::size_t b = 0; b < W2.dim(); ++b) {
            const long top = basis_weight(a) + basis_weight(b);
            for (long k = top - L3; k <= top; ++k) {
                ++r.checked;
                GradedVector lhs = I.mode(da, k, W2.basis(b));
                GradedVector rhs = -(I.shift() + k) * I.mode(W1.basis(a), k - 1, W2.basis(b));
                if (lhs != rhs) r.add_difference({static_cast<long>(a), k, static_cast<long>(b)}, to_string(lhs), to_string(rhs));
            }
        }
    }
    return r.finalize();
}

VerificationReport check_intertwiner(const Intertwiner& I, const VOAInstance& V, const Window& win,
                                     std::vector<GradedVector> probes)
{
    if (probes.empty())
        for (std::size_t i = 0; i < basis_size(std::min(2, V.level())); ++i) probes.push_back(V.basis(i));
    VerificationReport r("intertwiner", "type=" + I.type_name() + " window=" + win.describe(), {"x0", "x1", "x2"});
    r.absorb(check_intertwiner_grading(I));
    for (const auto& v : probes)
        for (std::size_t a = 0; a < I.first().dim(); ++a)
            for (std::size_t b = 0; b < I.second().dim(); ++b)
                r.absorb(check_intertwiner_jacobi(I, v, I.first().basis(a), I.second().basis(b), win));
    r.absorb(check_intertwiner_derivative(I, V));
    return r.finalize();
}

} // namespace vcalc

#include "vertexcalc/formal_series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace vcalc {

Window::Window(std::initializer_list<VariableBounds> bounds)
{
    for (const auto& b : bounds) add(b.name, b.lo, b.hi);
}

Window::Window(std::vector<VariableBounds> bounds)
{
    for (const auto& b : bounds) add(b.name, b.lo, b.hi);
}

Window Window::cube(const std::vector<std::string>& names, long lo, long hi)
{
    Window w;
    for (const auto& n : names) w.add(n, lo, hi);
    return w;
}

void Window::add(const std::string& name, long lo, long hi)
{
    if (lo > hi) throw std::invalid_argument("window for '" + name + "' has lower bound above upper bound");
    if (has(name)) throw std::invalid_argument("duplicate window variable '" + name + "'");
    bounds_.push_back({name, lo, hi});
}

std::size_t Window::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < bounds_.size(); ++i)
        if (bounds_[i].name == name) return i;
    throw UnknownVariable("unknown variable '" + name + "'");
}

bool Window::has(const std::string& name) const
{
    return std::any_of(bounds_.begin(), bounds_.end(), [&](const auto& b) { return b.name == name; });
}

bool Window::contains(const ExponentVector& e) const
{
    if (e.size() != bounds_.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < bounds_[i].lo || e[i] > bounds_[i].hi) return false;
    return true;
}

std::vector<std::string> Window::names() const
{
    std::vector<std::string> n;
    for (const auto& b : bounds_) n.push_back(b.name);
    return n;
}

void Window::for_each(const std::function<void(const ExponentVector&)>& f) const
{
    ExponentVector e(bounds_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = bounds_[i].lo;
    while (true) {
        f(e);
        std::size_t k = e.size();
        while (k > 0) {
            --k;
            if (e[k] < bounds_[k].hi) {
                ++e[k];
                break;
            }
            e[k] = bounds_[k].lo;
            if (k == 0) return;
        }
        if (e.empty()) return;
    }
}

std::string Window::describe() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (i) os << ',';
        os << bounds_[i].name << "[" << bounds_[i].lo << ":" << bounds_[i].hi << "]";
    }
    return os.str();
}

VariableState default_state(Support s)
{
    switch (s) {
    case Support::finite: return {s, true, true};
    case Support::lower_truncated: return {s, true, false};
    case Support::upper_truncated: return {s, false, true};
    case Support::doubly_infinite: return {s, false, false};
    }
    return {s, false, false};
}

FormalSeries laurent_polynomial(const std::string& var, const std::map<long, Rational>& coeffs)
{
    long lo = 0, hi = 0;
    if (!coeffs.empty()) {
        lo = coeffs.begin()->first;
        hi = coeffs.rbegin()->first;
    }
    return laurent_polynomial(var, coeffs, lo, hi);
}

FormalSeries laurent_polynomial(const std::string& var, const std::map<long, Rational>& coeffs, long lo, long hi)
{
    FormalSeries s(Window{{var, lo, hi}}, {default_state(Support::finite)});
    for (const auto& [e, c] : coeffs) {
        if (e < lo || e > hi) {
            if (sgn(c) == 0) continue;
            throw WindowViolation("polynomial term outside the requested window");
        }
        s.add({e}, c);
    }
    return s;
}

namespace {

struct Extent {
    long lo;
    long hi;
    bool complete_below;
    bool complete_above;
    Support support;
    bool any;
    long min_stored;
    long max_stored;
};

// Per-variable view of a factor in the coordinates of the target window.
std::vector<Extent> extents(const FormalSeries& s, const Window& target)
{
    std::vector<Extent> out(target.size());
    for (std::size_t k = 0; k < target.size(); ++k) {
        Extent& x = out[k];
        if (!s.window().has(target[k].name)) {
            x = {0, 0, true, true, Support::finite, !s.terms().empty(), 0, 0};
            continue;
        }
        std::size_t i = s.window().index_of(target[k].name);
        const auto& st = s.state()[i];
        x.lo = s.window()[i].lo;
        x.hi = s.window()[i].hi;
        x.complete_below = st.complete_below;
        x.complete_above = st.complete_above;
        x.support = st.support;
        x.any = false;
        x.min_stored = std::numeric_limits<long>::max();
        x.max_stored = std::numeric_limits<long>::min();
        for (const auto& [e, c] : s.terms()) {
            x.any = true;
            x.min_stored = std::min(x.min_stored, e[i]);
            x.max_stored = std::max(x.max_stored, e[i]);
        }
    }
    return out;
}

bool well_defined(Support a, Support b)
{
    if (a == Support::finite || b == Support::finite) return true;
    if (a == Support::doubly_infinite || b == Support::doubly_infinite) return false;
    return a == b;
}

Support product_support(Support a, Support b)
{
    if (a == Support::finite) return b;
    return a;
}

// Unseen terms of `a` must not reach the target range through `b`.
void check_coverage(const Extent& a, const Extent& b, long wlo, long whi, const std::string& var)
{
    if (!b.any) return;
    if (!a.complete_above) {
        if (!b.complete_below || b.min_stored < whi - a.hi)
            throw InsufficientWindow("window for '" + var + "' too small above to determine the product");
    }
    if (!a.complete_below) {
        if (!b.complete_above || b.max_stored > wlo - a.lo)
            throw InsufficientWindow("window for '" + var + "' too small below to determine the product");
    }
}

ExponentVector embed(const ExponentVector& e, const Window& from, const std::vector<std::size_t>& map, std::size_t n)
{
    ExponentVector out(n, 0);
    for (std::size_t i = 0; i < from.size(); ++i) out[map[i]] = e[i];
    return out;
}

std::vector<std::size_t> index_map(const Window& from, const Window& to)
{
    std::vector<std::size_t> m(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) m[i] = to.index_of(from[i].name);
    return m;
}

} // namespace

FormalSeries series_multiply(const FormalSeries& a, const FormalSeries& b, const Window& w)
{
    auto ma = index_map(a.window(), w);
    auto mb = index_map(b.window(), w);
    auto ea = extents(a, w);
    auto eb = extents(b, w);

    std::vector<VariableState> state(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!well_defined(ea[k].support, eb[k].support))
            throw IllDefinedProduct("product has infinitely many contributions in variable '" + w[k].name + "'");
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        check_coverage(ea[k], eb[k], w[k].lo, w[k].hi, w[k].name);
        check_coverage(eb[k], ea[k], w[k].lo, w[k].hi, w[k].name);
        bool both = ea[k].any && eb[k].any;
        state[k].support = product_support(ea[k].support, eb[k].support);
        state[k].complete_below =
            ea[k].complete_below && eb[k].complete_below && (!both || ea[k].min_stored + eb[k].min_stored >= w[k].lo);
        state[k].complete_above =
            ea[k].complete_above && eb[k].complete_above && (!both || ea[k].max_stored + eb[k].max_stored <= w[k].hi);
    }

    FormalSeries out(w, state);
    for (const auto& [ae, ac] : a.terms()) {
        ExponentVector x = embed(ae, a.window(), ma, w.size());
        for (const auto& [be, bc] : b.terms()) {
            ExponentVector e = x;
            ExponentVector y = embed(be, b.window(), mb, w.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += y[k];
            if (w.contains(e)) out.add(e, ac * bc);
        }
    }
    return out;
}

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b, const Rational& scale_b)
{
    if (a.window().names() != b.window().names()) throw UnknownVariable("series_add: variable sets differ");
    std::vector<VariableState> state(a.window().size());
    std::vector<VariableBounds> bounds;
    for (std::size_t k = 0; k < state.size(); ++k) {
        const auto& sa = a.state()[k];
        const auto& sb = b.state()[k];
        state[k].support = sa.support == sb.support ? sa.support
                           : sa.support == Support::finite ? sb.support
                           : sb.support == Support::finite ? sa.support
                                                           : Support::doubly_infinite;
        state[k].complete_below = sa.complete_below && sb.complete_below;
        state[k].complete_above = sa.complete_above && sb.complete_above;
        bounds.push_back({a.window()[k].name, std::max(a.window()[k].lo, b.window()[k].lo),
                          std::min(a.window()[k].hi, b.window()[k].hi)});
        if (a.window()[k].lo != b.window()[k].lo || a.window()[k].hi != b.window()[k].hi)
            state[k].complete_below = state[k].complete_above = false;
    }
    FormalSeries out(Window(bounds), state);
    for (const auto& [e, c] : a.terms())
        if (out.window().contains(e)) out.add(e, c);
    for (const auto& [e, c] : b.terms())
        if (out.window().contains(e)) out.add(e, scale_b * c);
    return out;
}

FormalSeries residue(const FormalSeries& s, const std::string& var)
{
    std::size_t k = s.window().index_of(var);
    std::vector<VariableBounds> bounds;
    std::vector<VariableState> state;
    for (std::size_t i = 0; i < s.window().size(); ++i) {
        if (i == k) continue;
        bounds.push_back(s.window()[i]);
        state.push_back(s.state()[i]);
    }
    FormalSeries out(Window(bounds), state);
    if (s.window()[k].lo > -1 || s.window()[k].hi < -1) return out;
    for (const auto& [e, c] : s.terms()) {
        if (e[k] != -1) continue;
        ExponentVector r;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != k) r.push_back(e[i]);
        out.add(r, c);
    }
    return out;
}

Rational evaluate(const FormalSeries& s, const Rational& value)
{
    if (s.window().size() != 1) throw std::invalid_argument("evaluate: expected a one-variable series");
    const auto& st = s.state()[0];
    if (!st.complete_below || !st.complete_above) throw std::invalid_argument("evaluate: series is not a polynomial");
    Rational r = 0;
    for (const auto& [e, c] : s.terms()) r += c * power(value, e[0]);
    return r;
}

FormalSeries binomial_expand(const std::string& xi, const std::string& xj, long n, const ExpansionDirection& dir,
                             const Window& w)
{
    if (dir.dominant == dir.subordinate) throw std::invalid_argument("expansion direction needs two variables");
    if (dir.subordinate != xi && dir.subordinate != xj)
        throw std::invalid_argument("subordinate variable must be one of the two binomial variables");
    // (x_i - x_j)^n = (s_d d + s_s s)^n with d dominant, s subordinate.
    const std::string& d = dir.subordinate == xj ? xi : xj;
    const std::string& s = dir.subordinate;
    int sd = d == xi ? 1 : -1;
    int ss = s == xi ? 1 : -1;
    std::size_t kd = w.index_of(d);
    std::size_t ks = w.index_of(s);

    std::vector<VariableState> state(w.size(), default_state(Support::finite));
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k != kd && k != ks) state[k] = {Support::finite, w[k].lo <= 0, w[k].hi >= 0};
    }
    if (n >= 0) {
        // Terms d^(n-k) s^k for 0 <= k <= n.
        state[kd] = {Support::finite, w[kd].lo <= 0, w[kd].hi >= n};
        state[ks] = {Support::finite, w[ks].lo <= 0, w[ks].hi >= n};
    } else {
        state[kd] = {Support::upper_truncated, false, w[kd].hi >= n};
        state[ks] = {Support::lower_truncated, w[ks].lo <= 0, false};
    }

    FormalSeries out(w, state);
    ExponentVector e(w.size(), 0);
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != kd && k != ks && (w[k].lo > 0 || w[k].hi < 0)) return out;
    long kmax = n >= 0 ? n : std::numeric_limits<long>::max();
    for (long k = std::max(0L, w[ks].lo); k <= std::min(kmax, w[ks].hi); ++k) {
        long de = n - k;
        if (de < w[kd].lo || de > w[kd].hi) continue;
        e[kd] = de;
        e[ks] = k;
        out.add(e, binomial(n, k) * sign_power(sd == 1 ? 0 : de) * sign_power(ss == 1 ? 0 : k));
    }
    return out;
}

DeltaPattern DeltaPattern::x2_plus_x0_over_x1() { return {"x2", 1, "x0", 1, "x1", 1}; }
DeltaPattern DeltaPattern::x1_minus_x0_over_x2() { return {"x1", 1, "x0", -1, "x2", 1}; }
DeltaPattern DeltaPattern::x1_minus_x2_over_x0() { return {"x1", 1, "x2", -1, "x0", 1}; }
DeltaPattern DeltaPattern::x2_minus_x1_over_minus_x0() { return {"x2", 1, "x1", -1, "x0", -1}; }

std::string DeltaPattern::describe() const
{
    auto term = [](int s, const std::string& v, bool lead) {
        std::string t = s < 0 ? "-" : (lead ? "" : "+");
        return t + v;
    };
    return "delta((" + term(sa, a, true) + term(sb, b, false) + ")/" + term(sc, c, true) + ")";
}

Rational DeltaPattern::coefficient(long n, long j) const
{
    if (j < 0) return 0;
    int sign = 1;
    if (sa < 0) sign *= sign_power(n - j);
    if (sb < 0) sign *= sign_power(j);
    if (sc < 0) sign *= sign_power(n);
    return binomial(n, j) * sign;
}

FormalSeries delta_expansion(const DeltaPattern& p, const std::string& prefactor, const Window& w)
{
    std::size_t ia = w.index_of(p.a);
    std::size_t ib = w.index_of(p.b);
    std::size_t ic = w.index_of(p.c);
    std::size_t ip = w.index_of(prefactor);
    auto shift = [&](std::size_t k) { return k == ip ? -1L : 0L; };

    std::vector<VariableState> state(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k == ia || k == ic)
            state[k] = default_state(Support::doubly_infinite);
        else if (k == ib)
            state[k] = {Support::lower_truncated, w[k].lo <= shift(k), false};
        else
            state[k] = {Support::finite, w[k].lo <= shift(k), w[k].hi >= shift(k)};
    }
    FormalSeries out(w, state);
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != ia && k != ib && k != ic && (w[k].lo > shift(k) || w[k].hi < shift(k))) return out;

    ExponentVector e(w.size(), 0);
    for (std::size_t k = 0; k < w.size(); ++k) e[k] = shift(k);
    // Exponent of c is -n + shift(c).
    for (long n = shift(ic) - w[ic].hi; n <= shift(ic) - w[ic].lo; ++n) {
        for (long j = std::max(0L, w[ib].lo - shift(ib)); j <= w[ib].hi - shift(ib); ++j) {
            long ae = n - j + shift(ia);
            if (ae < w[ia].lo || ae > w[ia].hi) continue;
            e[ia] = ae;
            e[ib] = j + shift(ib);
            e[ic] = -n + shift(ic);
            out.add(e, p.coefficient(n, j));
        }
    }
    return out;
}

FormalSeries delta_series(const std::string& var, long lo, long hi)
{
    FormalSeries d(Window{{var, lo, hi}}, {default_state(Support::doubly_infinite)});
    for (long n = lo; n <= hi; ++n) d.add({n}, 1);
    return d;
}

VerificationReport compare_series(const FormalSeries& a, const FormalSeries& b, std::string identity,
                                  std::string params)
{
    VerificationReport r(std::move(identity), std::move(params), a.window().names());
    if (a.window().names() != b.window().names()) throw UnknownVariable("compare_series: variable sets differ");
    a.window().for_each([&](const ExponentVector& e) {
        if (!b.window().contains(e)) return;
        ++r.checked;
        auto it = a.terms().find(e);
        auto jt = b.terms().find(e);
        Rational x = it == a.terms().end() ? Rational(0) : it->second;
        Rational y = jt == b.terms().end() ? Rational(0) : jt->second;
        if (x != y) r.add_difference(e, to_string(x), to_string(y));
    });
    return r.finalize();
}

VerificationReport check_delta_identity(DeltaIdentity id, const FormalSeries* f, const Window& w,
                                        bool flip_middle_sign)
{
    switch (id) {
    case DeltaIdentity::fundamental: {
        if (f == nullptr || f->window().size() != 1) throw std::invalid_argument("fundamental identity needs f(x)");
        const std::string var = f->window()[0].name;
        const auto& bw = w[w.index_of(var)];
        Window target{{var, bw.lo, bw.hi}};
        long fmin = 0, fmax = 0;
        if (!f->terms().empty()) {
            fmin = f->terms().begin()->first[0];
            fmax = f->terms().rbegin()->first[0];
        }
        FormalSeries delta_wide = delta_series(var, bw.lo - fmax, bw.hi - fmin);
        FormalSeries lhs = series_multiply(*f, delta_wide, target);
        FormalSeries rhs(target, {default_state(Support::doubly_infinite)});
        Rational f1 = evaluate(*f, 1);
        FormalSeries delta = delta_series(var, bw.lo, bw.hi);
        for (const auto& [e, c] : delta.terms()) rhs.add(e, f1 * c);
        return compare_series(lhs, rhs, "delta-fundamental", "f=" + to_string(*f) + " window=" + target.describe());
    }
    case DeltaIdentity::two_term: {
        FormalSeries lhs = delta_expansion(DeltaPattern::x2_plus_x0_over_x1(), "x1", w);
        FormalSeries rhs = delta_expansion(DeltaPattern::x1_minus_x0_over_x2(), "x2", w);
        return compare_series(lhs, rhs, "delta-two-term", "window=" + w.describe());
    }
    case DeltaIdentity::three_term: {
        FormalSeries t1 = delta_expansion(DeltaPattern::x1_minus_x2_over_x0(), "x0", w);
        FormalSeries t2 = delta_expansion(DeltaPattern::x2_minus_x1_over_minus_x0(), "x0", w);
        FormalSeries t3 = delta_expansion(DeltaPattern::x1_minus_x0_over_x2(), "x2", w);
        FormalSeries lhs = series_add(t1, t2, flip_middle_sign ? 1 : -1);
        return compare_series(lhs, t3, flip_middle_sign ? "delta-three-term-flipped" : "delta-three-term",
                              "window=" + w.describe());
    }
    }
    throw std::invalid_argument("unknown delta identity");
}

std::string to_string(const FormalSeries& s)
{
    if (s.terms().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0) os << '*' << s.window()[k].name << '^' << e[k];
    }
    return os.str();
}

} // namespace vcalc

#include "vertexcalc/moduli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace vcalc {

namespace {

Complex scaled(const Complex& z, const Rational& q) { return z * Complex(q); }

PowerSeries truncate(PowerSeries s, int order)
{
    s.resize(static_cast<std::size_t>(order) + 1);
    return s;
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, int order)
{
    PowerSeries out(static_cast<std::size_t>(order) + 1);
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(order); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// s(e(y)) for e without constant term.
PowerSeries compose(const PowerSeries& s, const PowerSeries& e, int order)
{
    PowerSeries out(static_cast<std::size_t>(order) + 1);
    PowerSeries pw(static_cast<std::size_t>(order) + 1);
    pw[0] = 1;
    for (int n = 1; n <= order && static_cast<std::size_t>(n) < s.size(); ++n) {
        pw = multiply(pw, e, order);
        if (s[n].is_zero()) continue;
        for (int k = 0; k <= order; ++k) out[k] += s[n] * pw[k];
    }
    return out;
}

// sum_j A_j x^{j+1} p'(x).
PowerSeries derivation(const std::vector<Complex>& A, const PowerSeries& p, int order)
{
    PowerSeries out(static_cast<std::size_t>(order) + 1);
    for (int n = 2; n <= order; ++n)
        for (int j = 1; j < n && static_cast<std::size_t>(j) <= A.size(); ++j) {
            const std::size_t src = static_cast<std::size_t>(n - j);
            if (src < p.size() && !A[j - 1].is_zero() && !p[src].is_zero())
                out[n] += A[j - 1] * p[src] * Complex(Rational(n - j));
        }
    return out;
}

PowerSeries exp_derivation(const std::vector<Complex>& A, int order)
{
    PowerSeries sum(static_cast<std::size_t>(order) + 1);
    if (order < 1) return sum;
    sum[1] = 1;
    PowerSeries term = sum;
    for (int k = 1; k <= order; ++k) {
        term = derivation(A, term, order);
        bool zero = true;
        for (auto& c : term) {
            c = scaled(c, frac(1, k));
            zero = zero && c.is_zero();
        }
        if (zero) break;
        for (int n = 0; n <= order; ++n) sum[n] += term[n];
    }
    return sum;
}

// Mobius map w -> (a w + b)/(c w + d).
struct Mobius {
    Complex a, b, c, d;

    Complex operator()(const Complex& w) const { return (a * w + b) / (c * w + d); }
    Mobius inverse() const { return {d, -b, -c, a}; }
    // M(w0 + y) - M(w0) as a series in y.
    PowerSeries expansion(const Complex& w0, int order) const
    {
        const Complex den = c * w0 + d;
        const Complex det = a * d - b * c;
        PowerSeries out(static_cast<std::size_t>(order) + 1);
        Complex lead = det / (den * den);
        const Complex ratio = -c / den;
        for (int n = 1; n <= order; ++n) {
            out[n] = lead;
            lead *= ratio;
        }
        return out;
    }
};

// The coordinate a y/(1 - t y), y = w - z, of a Mobius local coordinate at z.
Mobius coordinate_map(const Complex& z, const LocalCoordinate& c)
{
    const Complex t = c.A.empty() ? Complex(0) : c.A[0];
    return {c.scale, -(c.scale * z), -t, Complex(1) + t * z};
}

std::vector<Complex> padded(std::vector<Complex> A, int order)
{
    A.resize(static_cast<std::size_t>(order));
    return A;
}

bool all_zero(const std::vector<Complex>& v, std::size_t from = 0)
{
    for (std::size_t i = from; i < v.size(); ++i)
        if (!v[i].is_zero()) return false;
    return true;
}

struct Raw {
    std::vector<Complex> punctures;
    std::vector<LocalCoordinate> coords;
    std::vector<Complex> infinity;
    int order;
};

// w -> w - c.  Positive coordinates are translation invariant; the coordinate
// g(1/w) at infinity becomes g(u/(1 + c u)).
void translate(Raw& r, const Complex& c)
{
    for (auto& z : r.punctures) z -= c;
    const int n = r.order + 1;
    PowerSeries g = exp_derivation(r.infinity, n);
    PowerSeries h(static_cast<std::size_t>(n) + 1);
    Complex p = 1;
    for (int k = 1; k <= n; ++k) {
        h[k] = p;
        p *= -c;
    }
    r.infinity = coordinate_from_series(compose(g, h, n), r.order).A;
}

// Canonical form: last puncture at 0, or A_1 = 0 at infinity in arity 0.
ModuliElement normalize(Raw r, std::string* note)
{
    Complex shift;
    if (!r.punctures.empty()) shift = r.punctures.back();
    else if (r.order >= 1) shift = r.infinity[0];
    if (!shift.is_zero()) {
        translate(r, shift);
        if (note) *note += "; translate by " + to_string(shift);
    }
    if (r.punctures.empty() && r.order >= 1) r.infinity[0] = 0;
    return ModuliElement(std::move(r.punctures), std::move(r.coords), std::move(r.infinity), r.order);
}

std::string join(const std::vector<Complex>& v)
{
    std::string s = "[";
    std::size_t n = v.size();
    while (n > 0 && v[n - 1].is_zero()) --n;
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + "]";
}

} // namespace

bool LocalCoordinate::is_mobius() const { return all_zero(A, 1); }

PowerSeries coordinate_series(const LocalCoordinate& c, int order)
{
    PowerSeries s = exp_derivation(c.A, order);
    for (auto& x : s) x *= c.scale;
    return s;
}

LocalCoordinate coordinate_from_series(const PowerSeries& s, int M)
{
    PowerSeries f = truncate(s, M + 1);
    if (f[1].is_zero()) throw InvalidModuli("coordinate series has zero linear term");
    LocalCoordinate c;
    c.scale = f[1];
    const Complex inv = f[1].inverse();
    for (auto& x : f) x *= inv;
    c.A.assign(static_cast<std::size_t>(M), Complex(0));
    for (int j = 1; j <= M; ++j) {
        PowerSeries g = exp_derivation(c.A, j + 1);
        c.A[j - 1] = f[j + 1] - g[j + 1];
    }
    return c;
}

ModuliElement::ModuliElement(std::vector<Complex> punctures, std::vector<LocalCoordinate> coords,
                             std::vector<Complex> infinity, int order)
    : punctures_(std::move(punctures)), coords_(std::move(coords)), infinity_(padded(std::move(infinity), order)),
      order_(order)
{
    if (order_ < 1) throw InvalidModuli("truncation order must be at least 1");
    if (coords_.size() != punctures_.size()) throw InvalidModuli("one coordinate per positive puncture required");
    for (auto& c : coords_) {
        c.A = padded(std::move(c.A), order_);
        if (c.scale.is_zero()) throw InvalidModuli("coordinate scale must be nonzero");
    }
    if (punctures_.empty()) {
        if (!infinity_[0].is_zero()) throw InvalidModuli("K(0) elements need B_1 = 0");
        return;
    }
    if (!punctures_.back().is_zero()) throw InvalidModuli("last positive puncture must be 0");
    std::set<std::pair<Rational, Rational>> seen;
    for (const auto& z : punctures_)
        if (!seen.insert({z.re, z.im}).second) throw InvalidModuli("punctures must be distinct");
}

ModuliElement ModuliElement::identity(int order) { return scaling(1, order); }

ModuliElement ModuliElement::scaling(const Complex& a, int order) { return standard({0}, {a}, order); }

ModuliElement ModuliElement::two_point(const Complex& z, int order) { return standard({z, 0}, {1, 1}, order); }

ModuliElement ModuliElement::vacuum(int order) { return ModuliElement({}, {}, {}, order); }

ModuliElement ModuliElement::standard(std::vector<Complex> punctures, std::vector<Complex> scales, int order)
{
    if (scales.size() != punctures.size()) throw InvalidModuli("one scale per puncture required");
    std::vector<LocalCoordinate> coords;
    for (auto& a : scales) coords.push_back({a, {}});
    return ModuliElement(std::move(punctures), std::move(coords), {}, order);
}

bool ModuliElement::is_standard() const
{
    if (!all_zero(infinity_)) return false;
    return std::all_of(coords_.begin(), coords_.end(), [](const LocalCoordinate& c) { return all_zero(c.A); });
}

std::string to_string(const ModuliElement& q)
{
    std::string s = "K(" + std::to_string(q.arity()) + ") z=" + join(q.punctures()) + " a=[";
    for (int i = 0; i < q.arity(); ++i) s += (i ? "," : "") + to_string(q.coordinates()[i].scale);
    s += "] A=[";
    for (int i = 0; i < q.arity(); ++i) s += (i ? "," : "") + join(q.coordinates()[i].A);
    return s + "] inf=" + join(q.infinity());
}

SewingResult sew(const ModuliElement& q1, int i, const ModuliElement& q2)
{
    const int m = q1.arity(), n = q2.arity();
    if (i < 1 || i > m) throw std::out_of_range("sew: puncture index out of range");
    if (q1.order() != q2.order()) throw InvalidModuli("sew: truncation orders differ");
    const int M = q1.order();
    const LocalCoordinate& phi = q1.coordinates()[i - 1];
    if (!phi.is_mobius()) throw UnsupportedSewing("coordinate at puncture " + std::to_string(i) + " is not Mobius");
    if (!all_zero(q2.infinity(), 1)) throw UnsupportedSewing("coordinate at infinity of the second element is not Mobius");

    const Complex zi = q1.punctures()[i - 1];
    const Mobius f = coordinate_map(zi, phi);
    const Complex b1 = q2.infinity()[0];
    // Disc condition: max |q_k - B_1| < r < min(|a/t|, |phi(z_j)|).
    Rational inner = -1;
    for (const auto& q : q2.punctures()) inner = std::max(inner, (q - b1).norm2());
    std::vector<Rational> bounds;
    const Complex t = phi.A[0];
    if (!t.is_zero()) bounds.push_back((phi.scale / t).norm2());
    for (int j = 0; j < m; ++j) {
        if (j == i - 1) continue;
        const Complex den = f.c * q1.punctures()[j] + f.d;
        if (den.is_zero()) continue;
        bounds.push_back(f(q1.punctures()[j]).norm2());
    }
    for (const auto& r : bounds)
        if (!(inner < r)) throw SewingUndefined("no sewing radius: discs around the sewn punctures overlap other punctures");

    // T(q) = phi^{-1}(q - B_1).
    const Mobius shift{1, -b1, 0, 1};
    const Mobius finv = f.inverse();
    const Mobius T{finv.a * shift.a + finv.b * shift.c, finv.a * shift.b + finv.b * shift.d,
                   finv.c * shift.a + finv.d * shift.c, finv.c * shift.b + finv.d * shift.d};
    const Mobius Tinv = T.inverse();

    Raw r{{}, {}, q1.infinity(), M};
    for (int j = 0; j < i - 1; ++j) {
        r.punctures.push_back(q1.punctures()[j]);
        r.coords.push_back(q1.coordinates()[j]);
    }
    for (int k = 0; k < n; ++k) {
        const Complex w = T(q2.punctures()[k]);
        const PowerSeries psi = coordinate_series(q2.coordinates()[k], M + 1);
        r.punctures.push_back(w);
        r.coords.push_back(coordinate_from_series(compose(psi, Tinv.expansion(w, M + 1), M + 1), M));
    }
    for (int j = i; j < m; ++j) {
        r.punctures.push_back(q1.punctures()[j]);
        r.coords.push_back(q1.coordinates()[j]);
    }
    std::string note = "T(q) = (" + to_string(T.a) + "*q + " + to_string(T.b) + ")/(" + to_string(T.c) + "*q + " +
                       to_string(T.d) + ")";
    ModuliElement e = normalize(std::move(r), &note);
    e.set_line(q1.line() * q2.line());
    return {std::move(e), note};
}

ModuliElement permute(const ModuliElement& q, const Permutation& perm)
{
    const std::size_t n = static_cast<std::size_t>(q.arity());
    if (perm.size() != n) throw std::invalid_argument("permute: permutation size differs from arity");
    std::vector<bool> hit(n, false);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || hit[p]) throw std::invalid_argument("permute: not a permutation");
        hit[p] = true;
    }
    Raw r{std::vector<Complex>(n), std::vector<LocalCoordinate>(n), q.infinity(), q.order()};
    for (std::size_t p = 0; p < n; ++p) {
        r.punctures[perm[p]] = q.punctures()[p];
        r.coords[perm[p]] = q.coordinates()[p];
    }
    ModuliElement e = normalize(std::move(r), nullptr);
    e.set_line(q.line());
    return e;
}

Permutation compose(const Permutation& sigma, const Permutation& tau)
{
    Permutation out(tau.size());
    for (std::size_t p = 0; p < tau.size(); ++p) out[p] = sigma.at(tau[p]);
    return out;
}

namespace {

std::vector<Permutation> all_permutations(int n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

template <class F>
bool attempt(VerificationReport& r, F f)
{
    try {
        f();
        return true;
    } catch (const UnsupportedSewing&) {
    } catch (const SewingUndefined&) {
    }
    ++r.skipped;
    return false;
}

void compare(VerificationReport& r, std::vector<long> where, const ModuliElement& lhs, const ModuliElement& rhs)
{
    ++r.checked;
    if (lhs != rhs) r.add_difference(std::move(where), to_string(lhs), to_string(rhs));
}

} // namespace

VerificationReport check_identity_axiom(const std::vector<ModuliElement>& sample)
{
    VerificationReport r("operad-identity", "sample=" + std::to_string(sample.size()), {"element", "i"});
    for (std::size_t s = 0; s < sample.size(); ++s) {
        const ModuliElement& q = sample[s];
        const ModuliElement I = ModuliElement::identity(q.order());
        for (int i = 1; i <= q.arity(); ++i)
            attempt(r, [&] { compare(r, {static_cast<long>(s), i}, sew(q, i, I).element, q); });
        attempt(r, [&] { compare(r, {static_cast<long>(s), 0}, sew(I, 1, q).element, q); });
    }
    return r.finalize();
}

VerificationReport check_associativity_axiom(const std::vector<ModuliElement>& sample, AssociativityCounts* counts)
{
    VerificationReport r("operad-associativity", "sample=" + std::to_string(sample.size()),
                         {"q1", "q2", "q3", "i1", "i2"});
    AssociativityCounts local;
    const long S = static_cast<long>(sample.size());
    for (long a = 0; a < S; ++a)
        for (long b = 0; b < S; ++b)
            for (long c = 0; c < S; ++c) {
                const ModuliElement &q1 = sample[a], &q2 = sample[b], &q3 = sample[c];
                const int j = q1.arity(), k = q2.arity(), l = q3.arity();
                for (int i1 = 1; i1 <= j; ++i1)
                    for (int i2 = 1; i2 <= j + k - 1; ++i2)
                        attempt(r, [&] {
                            ModuliElement lhs = sew(sew(q1, i1, q2).element, i2, q3).element;
                            ModuliElement rhs;
                            int regime;
                            if (i2 < i1) {
                                rhs = sew(sew(q1, i2, q3).element, l + i1 - 1, q2).element;
                                regime = 0;
                            } else if (i2 < i1 + k) {
                                rhs = sew(q1, i1, sew(q2, i2 - i1 + 1, q3).element).element;
                                regime = 1;
                            } else {
                                rhs = sew(sew(q1, i2 - k + 1, q3).element, i1, q2).element;
                                regime = 2;
                            }
                            ++local.regime[regime];
                            compare(r, {a, b, c, i1, i2}, lhs, rhs);
                        });
            }
    r.params += " regimes=" + std::to_string(local.regime[0]) + "/" + std::to_string(local.regime[1]) + "/" +
                std::to_string(local.regime[2]);
    if (counts) *counts = local;
    return r.finalize();
}

VerificationReport check_equivariance_axiom(const std::vector<ModuliElement>& sample)
{
    VerificationReport r("operad-equivariance", "sample=" + std::to_string(sample.size()), {"q1", "q2", "i", "perm"});
    const long S = static_cast<long>(sample.size());
    for (long a = 0; a < S; ++a)
        for (long b = 0; b < S; ++b) {
            const ModuliElement &q1 = sample[a], &q2 = sample[b];
            const int j = q1.arity(), k = q2.arity();
            for (int i = 1; i <= j; ++i) {
                const int i0 = i - 1;
                // sigma(Q1) sewn at i equals the block permutation of Q1 sewn at sigma^{-1}(i).
                long pi = 0;
                for (const Permutation& sigma : all_permutations(j)) {
                    const int src = static_cast<int>(std::find(sigma.begin(), sigma.end(), i0) - sigma.begin());
                    Permutation block(static_cast<std::size_t>(j + k - 1));
                    for (int p = 0; p < j; ++p) {
                        if (p == src) continue;
                        const int from = p < src ? p : p + k - 1;
                        block[from] = sigma[p] < i0 ? sigma[p] : sigma[p] + k - 1;
                    }
                    for (int t = 0; t < k; ++t) block[src + t] = i0 + t;
                    attempt(r, [&] {
                        compare(r, {a, b, i, pi}, sew(permute(q1, sigma), i, q2).element,
                                permute(sew(q1, src + 1, q2).element, block));
                    });
                    ++pi;
                }
                // Q1 sewn with tau(Q2) equals tau acting on the inserted block.
                for (const Permutation& tau : all_permutations(k)) {
                    Permutation block(static_cast<std::size_t>(j + k - 1));
                    std::iota(block.begin(), block.end(), 0);
                    for (int t = 0; t < k; ++t) block[i0 + t] = i0 + tau[t];
                    attempt(r, [&] {
                        compare(r, {a, b, i, pi}, sew(q1, i, permute(q2, tau)).element,
                                permute(sew(q1, i, q2).element, block));
                    });
                    ++pi;
                }
            }
        }
    return r.finalize();
}

VerificationReport check_permutation_action(const std::vector<ModuliElement>& sample)
{
    VerificationReport r("permutation-action", "sample=" + std::to_string(sample.size()), {"element", "sigma", "tau"});
    for (std::size_t s = 0; s < sample.size(); ++s) {
        const ModuliElement& q = sample[s];
        const auto perms = all_permutations(q.arity());
        Permutation id(q.arity());
        std::iota(id.begin(), id.end(), 0);
        compare(r, {static_cast<long>(s), -1, -1}, permute(q, id), q);
        for (std::size_t x = 0; x < perms.size(); ++x)
            for (std::size_t y = 0; y < perms.size(); ++y)
                compare(r, {static_cast<long>(s), static_cast<long>(x), static_cast<long>(y)},
                        permute(permute(q, perms[y]), perms[x]), permute(q, compose(perms[x], perms[y])));
    }
    return r.finalize();
}

VerificationReport check_operad_axioms(const std::vector<ModuliElement>& sample)
{
    VerificationReport r("operad-axioms", "sample=" + std::to_string(sample.size()), {});
    r.absorb(check_identity_axiom(sample));
    r.absorb(check_associativity_axiom(sample));
    r.absorb(check_equivariance_axiom(sample));
    r.absorb(check_permutation_action(sample));
    return r.finalize();
}

ModuliElement random_element(std::mt19937_64& rng, int arity, int order, CoordinateKind kind)
{
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    auto small = [&] { return Complex(frac(pick(-3, 3), pick(1, 3))); };
    auto nonzero = [&] {
        long p = pick(1, 4) * (pick(0, 1) ? 1 : -1);
        return Complex(frac(p, pick(1, 3)));
    };
    std::vector<Complex> z;
    std::set<Rational> used{Rational(0)};
    while (static_cast<int>(z.size()) + 1 < arity) {
        Rational x = frac(pick(-8, 8), pick(1, 2));
        if (used.insert(x).second) z.emplace_back(x);
    }
    if (arity >= 1) z.emplace_back(0);
    std::vector<LocalCoordinate> coords;
    for (int i = 0; i < arity; ++i) {
        LocalCoordinate c{nonzero(), std::vector<Complex>(order)};
        if (kind == CoordinateKind::mobius) c.A[0] = small();
        if (kind == CoordinateKind::general)
            for (auto& x : c.A) x = small();
        coords.push_back(std::move(c));
    }
    std::vector<Complex> inf(order);
    if (kind != CoordinateKind::scaling) {
        if (arity >= 1) inf[0] = small();
        else if (kind == CoordinateKind::general)
            for (int k = 1; k < order; ++k) inf[k] = small();
    }
    return ModuliElement(std::move(z), std::move(coords), std::move(inf), order);
}

namespace {

std::vector<Complex> parse_values(const std::string& text)
{
    std::istringstream in(text);
    std::vector<Complex> out;
    for (std::string w; in >> w;) out.push_back(parse_complex(w));
    return out;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string values_text(const std::vector<Complex>& v)
{
    std::string s;
    for (const auto& x : v) s += " " + to_string(x);
    return s;
}

} // namespace

std::vector<ModuliElement> parse_moduli(std::istream& in)
{
    std::vector<ModuliElement> out;
    struct Block {
        int arity = -1, order = -1;
        std::vector<Complex> z;
        std::vector<Complex> inf;
        std::map<int, LocalCoordinate> coords;
        bool any = false;
    } b;
    int lineno = 0;
    auto fail = [&](const std::string& what) { throw InvalidModuli("line " + std::to_string(lineno) + ": " + what); };
    auto flush = [&] {
        if (!b.any) return;
        if (b.arity < 0 || b.order < 1) fail("block needs 'arity' and 'order'");
        if (static_cast<int>(b.z.size()) != std::max(0, b.arity - 1)) fail("expected " + std::to_string(std::max(0, b.arity - 1)) + " puncture positions");
        std::vector<Complex> punctures = b.z;
        if (b.arity >= 1) punctures.emplace_back(0);
        std::vector<LocalCoordinate> coords;
        for (int i = 1; i <= b.arity; ++i) {
            auto it = b.coords.find(i);
            coords.push_back(it == b.coords.end() ? LocalCoordinate{} : it->second);
        }
        for (auto& [i, c] : b.coords)
            if (i < 1 || i > b.arity) fail("coordinate index " + std::to_string(i) + " out of range");
        if (b.inf.size() > static_cast<std::size_t>(b.order)) fail("too many coefficients at infinity");
        out.emplace_back(std::move(punctures), std::move(coords), b.inf, b.order);
        b = Block{};
    };
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "---") {
            flush();
            continue;
        }
        b.any = true;
        try {
            if (line.rfind("arity", 0) == 0) b.arity = std::stoi(line.substr(5));
            else if (line.rfind("order", 0) == 0) b.order = std::stoi(line.substr(5));
            else if (line.rfind("z:", 0) == 0) b.z = parse_values(line.substr(2));
            else if (line.rfind("coord", 0) == 0) {
                auto colon = line.find(':');
                if (colon == std::string::npos) fail("missing ':' in coord line");
                const int idx = std::stoi(line.substr(5, colon - 5));
                const std::string rest = line.substr(colon + 1);
                if (idx == 0) b.inf = parse_values(rest);
                else {
                    auto semi = rest.find(';');
                    LocalCoordinate c;
                    c.scale = parse_complex(trim(rest.substr(0, semi)));
                    if (semi != std::string::npos) c.A = parse_values(rest.substr(semi + 1));
                    b.coords[idx] = c;
                }
            } else fail("unrecognized line '" + line + "'");
        } catch (const InvalidModuli&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("malformed value: ") + e.what());
        }
    }
    flush();
    return out;
}

std::vector<ModuliElement> load_moduli(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidModuli("cannot open " + path);
    return parse_moduli(in);
}

std::string format_moduli(const ModuliElement& q)
{
    std::ostringstream os;
    os << "arity " << q.arity() << "\norder " << q.order() << "\nz:";
    for (int i = 0; i + 1 < q.arity(); ++i) os << ' ' << to_string(q.punctures()[i]);
    os << "\ncoord 0:" << values_text(q.infinity()) << '\n';
    for (int i = 0; i < q.arity(); ++i)
        os << "coord " << i + 1 << ": " << to_string(q.coordinates()[i].scale) << " ;"
           << values_text(q.coordinates()[i].A) << '\n';
    return os.str();
}

} // namespace vcalc

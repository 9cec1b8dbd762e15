#include "vertexcalc/suites.hpp"

#include "vertexcalc/axioms.hpp"
#include "vertexcalc/contragredient.hpp"
#include "vertexcalc/fusion.hpp"
#include "vertexcalc/intertwiner.hpp"
#include "vertexcalc/matrix.hpp"
#include "vertexcalc/moduli.hpp"
#include "vertexcalc/nu.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace vcalc {

namespace {

std::shared_ptr<const VOAInstance> heisenberg(int level)
{
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const VOAInstance>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[level];
    if (!slot) slot = std::make_shared<const VOAInstance>(VOAInstance::build_heisenberg(level));
    return slot;
}

VerificationReport aggregate(std::string identity, std::string params, const std::vector<VerificationReport>& parts)
{
    VerificationReport r(std::move(identity), std::move(params));
    for (const auto& p : parts) r.absorb(p);
    return r.finalize();
}

// Pass means the planted corruption was caught.
VerificationReport detection(std::string identity, std::string params, bool detected)
{
    VerificationReport r(std::move(identity), std::move(params));
    r.checked = 1;
    if (!detected) r.add_difference({}, "corruption", "not detected");
    return r.finalize();
}

VerificationReport error_record(std::string identity, std::string params, const std::string& message)
{
    VerificationReport r(std::move(identity), std::move(params));
    r.checked = 1;
    r.add_difference({}, message, "");
    return r.finalize();
}

TaskOutput single(VerificationReport r) { return {{std::move(r)}, {}}; }

std::string range(long lo, long hi) { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

Window cube3(int r) { return Window::cube({"x0", "x1", "x2"}, -r, r); }

struct Triple {
    std::size_t u, v, w;
};

std::vector<Triple> triples_up_to(int total)
{
    std::vector<Triple> out;
    const std::size_t n = basis_size(std::max(total, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (basis_weight(a) + basis_weight(b) + basis_weight(c) <= total) out.push_back({a, b, c});
    return out;
}

int total_weight(const Triple& t) { return basis_weight(t.u) + basis_weight(t.v) + basis_weight(t.w); }

std::string base_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

std::string sanitize(const std::string& s)
{
    if (s.empty()) return "-";
    std::string out;
    bool gap = false;
    for (char ch : s) {
        if (ch == ' ' || ch == '\t' || ch == '\n') {
            gap = true;
            continue;
        }
        if (gap && !out.empty()) out += ';';
        gap = false;
        out += ch;
    }
    return out;
}

std::string approx(const Rational& q)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", q.get_d());
    return buf;
}

} // namespace

std::vector<long> partition_counts(int n)
{
    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int k = part; k <= n; ++k) p[k] += p[k - part];
    return p;
}

void SuiteConfig::validate() const
{
    if (level < 0 || level > kMaxLevel - 4) throw ConfigError("--level must lie in [0, " + std::to_string(kMaxLevel - 4) + "]");
    if (window && (*window < 0 || *window > 12)) throw ConfigError("--window must lie in [0, 12]");
    if (order && (*order < 1 || *order > 16)) throw ConfigError("--order must lie in [1, 16]");
    if (cutoffs.empty()) throw ConfigError("--cutoffs must not be empty");
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (cutoffs[k] < 0 || cutoffs[k] > kMaxLevel) throw ConfigError("--cutoffs entries must lie in [0, 24]");
        if (k > 0 && cutoffs[k] <= cutoffs[k - 1]) throw ConfigError("--cutoffs must be strictly increasing");
    }
    if (jobs < 1) throw ConfigError("--jobs must be positive");
}

RunReport run_tasks(const TaskList& tasks, int jobs)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<TaskOutput> outputs(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            try {
                outputs[k] = tasks[k].run();
            } catch (const std::exception& e) {
                outputs[k] = single(error_record("exception", "-", e.what()));
            }
        }
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    RunReport r;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        for (auto& rep : outputs[k].reports) {
            if (rep.passed()) ++r.passed;
            else if (rep.failed()) ++r.failed;
            else ++r.skipped;
            r.records.push_back({tasks[k].suite, std::move(rep)});
        }
        if (!outputs[k].detail.empty()) r.details.push_back(std::move(outputs[k].detail));
    }
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string format_report(const RunReport& r, OutputFormat format)
{
    std::ostringstream os;
    if (format == OutputFormat::structured) {
        for (const auto& rec : r.records)
            os << rec.suite << ' ' << rec.report.identity << ' ' << sanitize(rec.report.params) << ' '
               << to_string(rec.report.status) << ' ' << rec.report.differences.size() << '\n';
        os << "summary - - " << (r.failed ? "fail" : "pass") << ' ' << r.failed << '\n';
        return os.str();
    }
    for (const auto& rec : r.records) {
        const auto& rep = rec.report;
        const char* tag = rep.passed() ? "PASS" : rep.failed() ? "FAIL" : "SKIP";
        os << tag << "  " << rec.suite << '/' << rep.identity << "  " << rep.params << "  checked=" << rep.checked;
        if (rep.skipped) os << " skipped=" << rep.skipped;
        os << '\n';
        const std::size_t shown = std::min<std::size_t>(rep.differences.size(), 3);
        for (std::size_t k = 0; k < shown; ++k) {
            const auto& d = rep.differences[k];
            os << "      at (";
            for (std::size_t j = 0; j < d.exponents.size(); ++j) os << (j ? "," : "") << d.exponents[j];
            os << "): " << d.lhs;
            if (!d.rhs.empty()) os << "  vs  " << d.rhs;
            os << '\n';
        }
        if (rep.differences.size() > shown) os << "      ... " << rep.differences.size() - shown << " more\n";
    }
    for (const auto& d : r.details) os << '\n' << d;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r.elapsed_seconds);
    os << '\n' << r.passed << " passed, " << r.failed << " failed, " << r.skipped << " skipped in " << buf << " s\n";
    return os.str();
}

void add_delta_suite(TaskList& t, const SuiteConfig& c)
{
    const int W = c.window.value_or(4);
    const std::string win = "window=" + range(-W, W);
    t.push_back({"delta", [W, win] {
                     std::mt19937_64 rng(20240501);
                     std::uniform_int_distribution<int> exp(-6, 6), num(-9, 9), den(1, 4), count(1, 4);
                     std::vector<VerificationReport> parts;
                     for (int k = 0; k < 25; ++k) {
                         std::map<long, Rational> coeffs;
                         for (int j = count(rng); j > 0; --j) coeffs[exp(rng)] += frac(num(rng), den(rng));
                         const FormalSeries f = laurent_polynomial("x", coeffs);
                         parts.push_back(check_delta_identity(DeltaIdentity::fundamental, &f, Window{{"x", -W, W}}));
                     }
                     return single(aggregate("delta-fundamental", win + " polynomials=25 degree<=6", parts));
                 }});
    t.push_back({"delta", [W, win] {
                     auto r = check_delta_identity(DeltaIdentity::two_term, nullptr, cube3(W));
                     r.identity = "delta-two-term";
                     r.params = win + "^3";
                     return single(r);
                 }});
    t.push_back({"delta", [W, win] {
                     auto r = check_delta_identity(DeltaIdentity::three_term, nullptr, cube3(W));
                     r.identity = "delta-three-term";
                     r.params = win + "^3";
                     auto flipped = check_delta_identity(DeltaIdentity::three_term, nullptr, cube3(W), true);
                     return TaskOutput{{r, detection("delta-three-term-sign-flip", win + "^3", flipped.failed())}, {}};
                 }});
}

void add_voa_suite(TaskList& t, const SuiteConfig& c, const std::vector<VoaPart>& parts)
{
    const int L = c.level;
    auto V = heisenberg(L);
    const std::string lv = "L=" + std::to_string(L);
    for (VoaPart part : parts) switch (part) {
        case VoaPart::dimensions:
            t.push_back({"voa", [L, lv] {
                             VerificationReport r("weight-dimensions", lv);
                             const auto p = partition_counts(L);
                             std::string dims;
                             for (int w = 0; w <= L; ++w) {
                                 const long d = static_cast<long>(basis_size(w) - first_index(w));
                                 dims += (w ? "," : "") + std::to_string(d);
                                 ++r.checked;
                                 if (d != p[w]) r.add_difference({w}, std::to_string(d), std::to_string(p[w]));
                             }
                             r.params += " dims=" + dims;
                             return single(r.finalize());
                         }});
            break;
        case VoaPart::creation: {
            const long order = c.order.value_or(L);
            t.push_back({"voa", [V, order, lv] {
                             std::vector<VerificationReport> parts;
                             for (std::size_t i = 0; i < V->dim(); ++i)
                                 parts.push_back(check_creation(*V, V->basis(i), order));
                             return single(aggregate("creation", lv + " order=" + std::to_string(order), parts));
                         }});
            break;
        }
        case VoaPart::skew: {
            const long order = c.order.value_or(L);
            t.push_back({"voa", [V, order, L, lv] {
                             std::vector<VerificationReport> parts;
                             for (std::size_t i = 0; i < V->dim(); ++i)
                                 for (std::size_t j = 0; j < V->dim(); ++j)
                                     if (basis_weight(i) + basis_weight(j) <= L)
                                         parts.push_back(check_skew_symmetry(*V, V->basis(i), V->basis(j), order));
                             return single(aggregate("skew-symmetry", lv + " order=" + std::to_string(order) +
                                                                          " pairs=" + std::to_string(parts.size()),
                                                     parts));
                         }});
            break;
        }
        case VoaPart::commutators: {
            const int W = c.window.value_or(4);
            t.push_back({"voa", [V, W, lv] {
                             std::vector<VerificationReport> parts;
                             for (std::size_t i = 0; i < V->dim(); ++i)
                                 parts.push_back(check_commutators(*V, V->basis(i), Window{{"x", -W, W}}));
                             return single(aggregate("commutators", lv + " window=" + range(-W, W), parts));
                         }});
            break;
        }
        case VoaPart::virasoro: {
            // Intermediate vectors L(n)v reach weight 8, so the bracket is computed in a larger truncation.
            const int big = std::max(L, 8);
            auto Vb = heisenberg(big);
            t.push_back({"voa", [Vb, big] {
                             VerificationReport r("virasoro-bracket",
                                                  "c=1 |m|,|n|<=4 weight<=4 truncation=" + std::to_string(big),
                                                  {"m", "n", "basis"});
                             ++r.checked;
                             if (Vb->central_charge() != 1) r.add_difference({}, Vb->central_charge().get_str(), "1");
                             for (std::size_t i = 0; i < basis_size(4); ++i) {
                                 const auto v = Vb->basis(i);
                                 for (long m = -4; m <= 4; ++m)
                                     for (long n = -4; n <= 4; ++n) {
                                         auto lhs = Vb->virasoro_mode(m, Vb->virasoro_mode(n, v)) -
                                                    Vb->virasoro_mode(n, Vb->virasoro_mode(m, v));
                                         auto rhs = Rational(m - n) * Vb->virasoro_mode(m + n, v);
                                         if (m + n == 0) rhs.axpy(frac(m * m * m - m, 12), v);
                                         ++r.checked;
                                         if (lhs != rhs)
                                             r.add_difference({m, n, static_cast<long>(i)}, to_string(lhs), to_string(rhs));
                                     }
                             }
                             return single(r.finalize());
                         }});
            break;
        }
        case VoaPart::conjugation: {
            const long order = c.order.value_or(4);
            const int top = std::min(L, 3);
            t.push_back({"voa", [V, order, top, lv] {
                             std::map<std::string, std::vector<VerificationReport>> by_id;
                             std::vector<std::string> ids;
                             for (std::size_t i = 0; i < basis_size(top); ++i)
                                 for (auto& r : conjugation_reports(*V, V->basis(i), order)) {
                                     if (!by_id.count(r.identity)) ids.push_back(r.identity);
                                     by_id[r.identity].push_back(std::move(r));
                                 }
                             TaskOutput out;
                             for (const auto& id : ids)
                                 out.reports.push_back(aggregate(id, lv + " order=" + std::to_string(order) +
                                                                         " weight<=" + std::to_string(top),
                                                                 by_id[id]));
                             return out;
                         }});
            break;
        }
        }
}

void add_jacobi_suite(TaskList& t, const SuiteConfig& c)
{
    const int L = c.level;
    const int W = c.window.value_or(3);
    auto V = heisenberg(L);
    const std::string params = "L=" + std::to_string(L) + " window=" + range(-W, W) + "^3";
    // The core sweep covers total weight <= 5; the extension adds weight 6.
    const int core = std::min(L, 5), extended = std::min(L, 6);
    for (auto [lo, hi, id] : {std::tuple{0, core, "jacobi"}, std::tuple{core + 1, extended, "jacobi-extended"}}) {
        if (lo > hi) continue;
        t.push_back({"jacobi", [V, W, lo, hi, id, params] {
                         std::vector<VerificationReport> parts;
                         std::size_t instances = 0;
                         for (const Triple& tr : triples_up_to(hi)) {
                             if (total_weight(tr) < lo) continue;
                             parts.push_back(check_jacobi(*V, V->basis(tr.u), V->basis(tr.v), V->basis(tr.w), cube3(W)));
                             if (parts.back().status != Status::skipped_budget) ++instances;
                         }
                         auto r = aggregate(id, params + " total-weight=" + range(lo, hi) + " triples=" +
                                                    std::to_string(parts.size()) + " in-budget=" + std::to_string(instances),
                                            parts);
                         return single(r);
                     }});
    }

    // Ten single-constant corruptions, each in a private copy of the algebra.
    std::mt19937_64 rng(977);
    const std::size_t lo_idx = first_index(1), hi_idx = basis_size(std::min(L, 2)) - 1;
    for (int k = 0; k < 10 && L >= 2; ++k) {
        const std::size_t u = std::uniform_int_distribution<std::size_t>(lo_idx, hi_idx)(rng);
        const std::size_t v = std::uniform_int_distribution<std::size_t>(lo_idx, hi_idx)(rng);
        const long top = basis_weight(u) + basis_weight(v) - 1;
        const long n = std::uniform_int_distribution<long>(std::max<long>(-3, top - (L - 2)), top)(rng);
        const int wt = static_cast<int>(top - n);
        const std::size_t target =
            std::uniform_int_distribution<std::size_t>(first_index(wt), basis_size(wt) - 1)(rng);
        const std::string where = "u=" + label_string(basis_label(u)) + " n=" + std::to_string(n) +
                                  " v=" + label_string(basis_label(v)) + " target=" + label_string(basis_label(target));
        t.push_back({"jacobi", [L, W, u, n, v, target, where] {
                         auto Vc = VOAInstance::build_heisenberg(L);
                         Vc.corrupt_structure_constant(u, n, v, target, 1);
                         bool detected = false;
                         for (const Triple& tr : triples_up_to(std::min(L, 6))) {
                             if (check_jacobi(Vc, Vc.basis(tr.u), Vc.basis(tr.v), Vc.basis(tr.w), cube3(W)).failed()) {
                                 detected = true;
                                 break;
                             }
                         }
                         return single(detection("jacobi-mutation", where, detected));
                     }});
    }
}

void add_s3_suite(TaskList& t, const SuiteConfig& c)
{
    const int L = c.level;
    const int W = c.window.value_or(3);
    auto V = heisenberg(L);
    auto pool = triples_up_to(std::min(L, 4));
    std::shuffle(pool.begin(), pool.end(), std::mt19937_64(31337));
    if (pool.size() > 50) pool.resize(50);
    std::sort(pool.begin(), pool.end(), [](const Triple& a, const Triple& b) {
        return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
    });
    const std::string params = "L=" + std::to_string(L) + " window=" + range(-W, W) + "^3 triples=" +
                               std::to_string(pool.size());
    using Step = VerificationReport (*)(const VOAInstance&, const GradedVector&, const GradedVector&,
                                        const GradedVector&, const Window&);
    for (auto [id, step] : {std::pair<const char*, Step>{"s3-iterate-skew-step", check_iterate_skew_step},
                            std::pair<const char*, Step>{"s3-transposition-step", check_transposed_step}})
        t.push_back({"s3", [V, W, pool, params, id, step] {
                         std::vector<VerificationReport> parts;
                         for (const Triple& tr : pool)
                             parts.push_back(step(*V, V->basis(tr.u), V->basis(tr.v), V->basis(tr.w), cube3(W)));
                         return single(aggregate(id, params, parts));
                     }});
    t.push_back({"s3", [V, W, pool, params] {
                     std::vector<VerificationReport> parts;
                     for (const Triple& tr : pool)
                         for (Permutation3 p : {Permutation3{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
                             parts.push_back(s3_transform_check(*V, V->basis(tr.u), V->basis(tr.v), V->basis(tr.w), p, cube3(W)));
                     return single(aggregate("s3-permuted-jacobi", params + " permutations=6", parts));
                 }});
}

namespace {

VerificationReport form_properties(const VOAInstance& V, const BilinearForm& f)
{
    VerificationReport r("invariant-form-properties", "L=" + std::to_string(V.level()), {"i", "j"});
    auto expect = [&](bool ok, std::vector<long> at, const std::string& what) {
        ++r.checked;
        if (!ok) r.add_difference(std::move(at), what, "");
    };
    expect(f(V.vacuum(), V.vacuum()) == 1, {}, "(1,1) != 1");
    expect(f(V.omega(), V.omega()) == frac(1, 2), {}, "(omega,omega) != 1/2");
    expect(f.symmetric, {}, "form not symmetric");
    for (std::size_t i = 0; i < V.dim(); ++i)
        for (std::size_t j = 0; j < V.dim(); ++j) {
            const Rational x = f(V.basis(i), V.basis(j));
            const long a = static_cast<long>(i), b = static_cast<long>(j);
            if (basis_weight(i) != basis_weight(j)) expect(sgn(x) == 0, {a, b}, "pairing across weights");
            else expect(x == f(V.basis(j), V.basis(i)), {a, b}, "asymmetric entry");
        }
    for (std::size_t k = 0; k < f.blocks.size(); ++k)
        expect(determinant(f.blocks[k]) != 0, {static_cast<long>(k)}, "degenerate block");
    return r.finalize();
}

} // namespace

void add_contragredient_suite(TaskList& t, const SuiteConfig& c)
{
    const int L = c.level;
    auto V = heisenberg(L);
    std::shared_ptr<const ContragredientModule> Vp = build_contragredient(*V, V->adjoint());
    const std::string lv = "L=" + std::to_string(L);
    auto tag = [lv](VerificationReport r) {
        if (r.params.empty()) r.params = lv;
        return single(std::move(r));
    };
    t.push_back({"contragredient", [Vp, tag] { return tag(check_defining_relation(*Vp)); }});
    t.push_back({"contragredient", [Vp, tag] { return tag(check_adjoint_virasoro(*Vp, 6)); }});
    t.push_back({"contragredient", [Vp, tag] { return tag(check_contragredient_virasoro(*Vp, 4)); }});
    t.push_back({"contragredient", [Vp, tag] {
                     TaskOutput out = tag(check_contragredient_derivative(*Vp));
                     out.reports.push_back(tag(check_contragredient_vacuum(*Vp)).reports[0]);
                     return out;
                 }});
    t.push_back({"contragredient", [V, Vp, lv] {
                     const std::vector<GradedVector> probes{V->vacuum(), V->label({1}), V->omega(), V->label({1, 1})};
                     std::vector<VerificationReport> parts;
                     for (const auto& v1 : probes)
                         for (const auto& v2 : probes)
                             for (std::size_t d = 0; d < basis_size(std::min(V->level(), 2)); ++d)
                                 parts.push_back(check_contragredient_jacobi(*Vp, v1, v2, Vp->basis(d), cube3(3)));
                     return single(aggregate("contragredient-jacobi", lv + " window=[-3,3]^3 instances=" +
                                                                          std::to_string(parts.size()),
                                             parts));
                 }});
    t.push_back({"contragredient", [V, tag] { return tag(check_double_contragredient(*V, V->adjoint())); }});
    t.push_back({"contragredient", [V, L, tag] {
                     FockModule M(L, 3);
                     auto r = check_double_contragredient(*V, M);
                     return tag(r);
                 }});
    t.push_back({"contragredient", [V, lv] {
                     TaskOutput out;
                     try {
                         const BilinearForm f = build_invariant_form(*V, V->adjoint(), 1);
                         auto inv = check_invariant_form(*V, V->adjoint(), f);
                         out.reports.push_back(inv);
                         out.reports.push_back(form_properties(*V, f));
                     } catch (const NotSelfDual& e) {
                         out.reports.push_back(error_record("invariant-form", lv, std::string("NotSelfDual: ") + e.what()));
                     }
                     return out;
                 }});
}

void add_contragredient_build(TaskList& t, const SuiteConfig& c)
{
    const int L = c.level;
    auto V = heisenberg(L);
    t.push_back({"contragredient", [V, L] {
                     auto Vp = build_contragredient(*V, V->adjoint());
                     std::ostringstream os;
                     os << "contragredient " << Vp->name() << " at L=" << L << '\n';
                     for (int w = 0; w <= L; ++w) os << "  weight " << w << ": dim " << block_size(w) << '\n';
                     const BilinearForm f = build_invariant_form(*V, V->adjoint(), 1);
                     for (std::size_t k = 0; k < f.blocks.size(); ++k)
                         os << "  form block " << k << ": det " << determinant(f.blocks[k]).get_str() << '\n';
                     os << "  (omega,omega) = " << f(V->omega(), V->omega()).get_str() << '\n';
                     auto r = form_properties(*V, f);
                     return TaskOutput{{r}, os.str()};
                 }});
}

void add_direct_sum_suite(TaskList& t, const SuiteConfig& c)
{
    const int L = std::min(c.level, 4);
    auto V = heisenberg(L);
    t.push_back({"direct-sum", [V, L] {
                     TaskOutput out;
                     FockModule W(L, 0);
                     const BilinearForm fv = build_invariant_form(*V, V->adjoint(), 1);
                     const BilinearForm fw = build_invariant_form(*V, W, 1);
                     const DirectSumVertexMap D = combine_direct_sum(*V, W, fv, fw);
                     for (auto check : {check_direct_sum_skew, check_direct_sum_vanishing, check_direct_sum_pairing,
                                        check_direct_sum_structure, check_direct_sum_copy}) {
                         out.reports.push_back(check(D));
                     }
                     return out;
                 }});
}

void add_fusion_file(TaskList& t, const SuiteConfig&, const std::string& path)
{
    std::shared_ptr<const FusionTensor> tensor;
    try {
        tensor = std::make_shared<const FusionTensor>(load_fusion(path));
    } catch (const std::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
    const std::string params = "file=" + base_name(path);
    t.push_back({"fusion", [tensor, params] {
                     TaskOutput out;
                     auto tagged = [&](VerificationReport r) {
                         r.params = params + (r.params.empty() ? "" : " " + r.params);
                         out.reports.push_back(std::move(r));
                     };
                     tagged(check_s3_symmetry(*tensor));
                     tagged(check_positivity(*tensor));
                     try {
                         const VerlindeAlgebra A = build_verlinde(*tensor);
                         tagged(check_commutativity(A));
                         tagged(check_unit(A));
                         tagged(check_associativity(A));
                     } catch (const SymmetryViolation& e) {
                         out.reports.push_back(error_record("SymmetryViolation", params, e.what()));
                     }
                     return out;
                 }});
}

void add_intertwiner_suite(TaskList& t, const SuiteConfig&)
{
    for (Rational momentum : {Rational(0), Rational(frac(1, 2))})
        t.push_back({"fusion", [momentum] {
                         const VOAInstance V = VOAInstance::build_heisenberg(3);
                         FockModule W(3, momentum);
                         const VModule& M = sgn(momentum) == 0 ? static_cast<const VModule&>(V.adjoint()) : W;
                         const Intertwiner I = Intertwiner::from_module_action(V, M);
                         auto r = check_intertwiner(I, V, intertwiner_window(I));
                         r.identity = "canonical-intertwiner";
                         r.params = "L=3 type=" + I.type_name();
                         return single(r);
                     }});
    for (Rational momentum : {Rational(0), Rational(frac(1, 3))})
        t.push_back({"fusion", [momentum] {
                         const VOAInstance V = VOAInstance::build_heisenberg(2);
                         FockModule W(2, momentum);
                         const VModule& M = sgn(momentum) == 0 ? static_cast<const VModule&>(V.adjoint()) : W;
                         const Intertwiner base = Intertwiner::from_module_action(V, M);
                         const Window win = intertwiner_window(base);
                         VerificationReport r("intertwiner-mutations", "L=2 type=" + base.type_name(),
                                              {"w1", "k", "w2", "target"});
                         for (const auto& [key, value] : base.entries()) {
                             const auto& [a, k, b] = key;
                             for (std::size_t tg = 0; tg < M.dim(); ++tg) {
                                 Intertwiner I = base;
                                 I.mutate(a, k, b, tg, 1);
                                 ++r.checked;
                                 if (!check_intertwiner(I, V, win).failed())
                                     r.add_difference({static_cast<long>(a), k, static_cast<long>(b), static_cast<long>(tg)},
                                                      "mutation survived", "");
                             }
                         }
                         return single(r.finalize());
                     }});
}

namespace {

std::vector<ModuliElement> moduli_sample(std::uint64_t seed, int count, int order, CoordinateKind kind)
{
    std::mt19937_64 rng(seed);
    std::vector<ModuliElement> out;
    for (int k = 0; k < count; ++k) out.push_back(random_element(rng, k % 4, order, kind));
    return out;
}

std::vector<ModuliElement> load_moduli_fixture(const std::string& path)
{
    try {
        return load_moduli(path);
    } catch (const std::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
}

std::string join_cutoffs(const std::vector<int>& cs)
{
    std::string s;
    for (std::size_t k = 0; k < cs.size(); ++k) s += (k ? "," : "") + std::to_string(cs[k]);
    return s;
}

} // namespace

void add_moduli_suite(TaskList& t, const SuiteConfig& c)
{
    const int M = c.order.value_or(8);
    const std::string mo = "M=" + std::to_string(M);
    t.push_back({"moduli", [M, mo] {
                     auto r = check_identity_axiom(moduli_sample(101, 20, M, CoordinateKind::mobius));
                     r.params = mo + " " + r.params + " kind=mobius";
                     return single(r);
                 }});
    t.push_back({"moduli", [M, mo] {
                     VerificationReport r("scaling-composition", mo, {"a", "b"});
                     const std::vector<Complex> scales{2, Complex(frac(-1, 3)), Complex(frac(5, 2)), Complex(1, 1), -4};
                     for (std::size_t i = 0; i < scales.size(); ++i)
                         for (std::size_t j = 0; j < scales.size(); ++j) {
                             auto lhs = sew(ModuliElement::scaling(scales[i], M), 1, ModuliElement::scaling(scales[j], M)).element;
                             auto rhs = ModuliElement::scaling(scales[i] * scales[j], M);
                             ++r.checked;
                             if (lhs != rhs) r.add_difference({static_cast<long>(i), static_cast<long>(j)}, to_string(lhs), to_string(rhs));
                         }
                     ++r.checked;
                     auto pj = sew(ModuliElement::two_point(1, M), 1, ModuliElement::vacuum(M)).element;
                     if (pj != ModuliElement::identity(M)) r.add_difference({}, to_string(pj), "I");
                     return single(r.finalize());
                 }});
    t.push_back({"moduli", [M, mo] {
                     AssociativityCounts counts;
                     auto r = check_associativity_axiom(moduli_sample(202, 6, M, CoordinateKind::scaling), &counts);
                     r.params = mo + " " + r.params + " kind=scaling";
                     for (int k = 0; k < 3; ++k)
                         if (counts.regime[k] == 0) r.add_difference({k + 1}, "regime not exercised", "");
                     return single(r.finalize());
                 }});
    t.push_back({"moduli", [M, mo] {
                     auto r = check_equivariance_axiom(moduli_sample(303, 6, M, CoordinateKind::mobius));
                     r.params = mo + " " + r.params + " kind=mobius";
                     return single(r);
                 }});
    t.push_back({"moduli", [M, mo] {
                     auto r = check_permutation_action(moduli_sample(404, 8, M, CoordinateKind::general));
                     r.params = mo + " " + r.params + " kind=general";
                     return single(r);
                 }});

    const int L = c.level;
    const std::vector<int> cutoffs = c.cutoffs;
    auto V = heisenberg(L);
    t.push_back({"moduli", [V, M, L, cutoffs] {
                     const auto a1 = V->label({1}), a2 = V->label({2});
                     const DualVector dual(V->label({1}).with_level(1));
                     auto res = check_sewing_axiom(*V, ModuliElement::standard({3, 1, 0}, {1, 1, 1}, M), 2,
                                                   ModuliElement::identity(M), {a1, a2, a1}, dual, cutoffs);
                     VerificationReport r("sewing-axiom-identity", "L=" + std::to_string(L) + " z=(3,1) Q2=I cutoffs=" +
                                                                       join_cutoffs(cutoffs), {"N"});
                     for (std::size_t k = 0; k < cutoffs.size(); ++k) {
                         ++r.checked;
                         if (sgn(res.differences[k]) != 0) r.add_difference({cutoffs[k]}, res.differences[k].get_str(), "0");
                     }
                     return single(r.finalize());
                 }});
    t.push_back({"moduli", [V, M, L, cutoffs] {
                     const auto a1 = V->label({1});
                     auto res = check_sewing_axiom(*V, ModuliElement::two_point(2, M), 1, ModuliElement::two_point(1, M),
                                                   {a1, a1, a1}, DualVector(a1.with_level(1)), cutoffs);
                     std::string diffs;
                     for (std::size_t k = 0; k < res.differences.size(); ++k)
                         diffs += (k ? "," : "") + approx(Rational(abs(res.differences[k])));
                     res.report.identity = "sewing-axiom";
                     res.report.params = "L=" + std::to_string(L) + " z=(2,1) " + res.report.params + " |diff|=" + diffs;
                     return single(res.report);
                 }});
}

void add_moduli_sew(TaskList& t, const SuiteConfig&, const std::string& path, int puncture)
{
    auto elems = load_moduli_fixture(path);
    if (elems.size() < 2) throw FixtureError(path + ": sewing needs two elements");
    const std::string params = "file=" + base_name(path) + " i=" + std::to_string(puncture);
    t.push_back({"moduli", [elems, puncture, params] {
                     VerificationReport r("sew", params);
                     r.checked = 1;
                     try {
                         auto res = sew(elems[0], puncture, elems[1]);
                         return TaskOutput{{r.finalize()}, res.transition + "\n" + format_moduli(res.element)};
                     } catch (const UnsupportedSewing& e) {
                         return single(error_record("sew", params, std::string("UnsupportedSewing: ") + e.what()));
                     } catch (const SewingUndefined& e) {
                         return single(error_record("sew", params, std::string("SewingUndefined: ") + e.what()));
                     }
                 }});
}

void add_moduli_axioms(TaskList& t, const SuiteConfig&, const std::string& path)
{
    auto elems = load_moduli_fixture(path);
    const std::string params = "file=" + base_name(path);
    using Check = VerificationReport (*)(const std::vector<ModuliElement>&);
    for (Check check : {static_cast<Check>(check_identity_axiom),
                        static_cast<Check>([](const std::vector<ModuliElement>& s) { return check_associativity_axiom(s); }),
                        static_cast<Check>(check_equivariance_axiom), static_cast<Check>(check_permutation_action)})
        t.push_back({"moduli", [elems, params, check] {
                         auto r = check(elems);
                         r.params = params + " " + r.params;
                         return single(r);
                     }});
}

void add_moduli_nu(TaskList& t, const SuiteConfig& c, const std::string& path)
{
    auto elems = load_moduli_fixture(path);
    auto V = heisenberg(c.level);
    const std::vector<int> cutoffs = c.cutoffs;
    const std::string file = "file=" + base_name(path);
    for (std::size_t k = 0; k < elems.size(); ++k)
        t.push_back({"moduli", [V, cutoffs, file, k, q = elems[k]] {
                         const std::string params = file + " element=" + std::to_string(k) + " cutoffs=" + join_cutoffs(cutoffs);
                         VerificationReport r("nu", params, {"N"});
                         if (!q.is_standard()) return single(r.finalize());
                         const int target = 2;
                         std::vector<GradedVector> vs(static_cast<std::size_t>(q.arity()), V->label({1}));
                         try {
                             std::vector<GradedVector> values;
                             for (int N : cutoffs) values.push_back(nu_vector(*V, q, vs, N, target));
                             ++r.checked;
                             const bool stable = values.size() >= 2 && values[values.size() - 1] == values[values.size() - 2];
                             r.params += stable ? " stable=yes" : " stable=no";
                             std::string detail = "nu element " + std::to_string(k) + " (alpha(-1)1 at every puncture, weight<=2, N=" +
                                                  std::to_string(cutoffs.back()) + "): " + to_string(values.back()) + "\n";
                             return TaskOutput{{r.finalize()}, detail};
                         } catch (const DomainViolation& e) {
                             return single(error_record("nu", params, std::string("DomainViolation: ") + e.what()));
                         }
                     }});
}

TaskList all_suites(const SuiteConfig& c)
{
    TaskList t;
    add_delta_suite(t, c);
    add_voa_suite(t, c, {VoaPart::dimensions, VoaPart::creation, VoaPart::skew, VoaPart::commutators,
                         VoaPart::virasoro, VoaPart::conjugation});
    add_jacobi_suite(t, c);
    add_s3_suite(t, c);
    add_contragredient_suite(t, c);
    add_direct_sum_suite(t, c);
    std::vector<std::string> files = c.fusion_files;
    if (files.empty()) files = {c.fixture_dir + "/one_label.fus", c.fixture_dir + "/ising.fus"};
    for (const auto& f : files) add_fusion_file(t, c, f);
    add_intertwiner_suite(t, c);
    add_moduli_suite(t, c);
    return t;
}

} // namespace vcalc

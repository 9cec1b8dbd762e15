// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include "vertexcalc/heisenberg.hpp"
#include "vertexcalc/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace vcalc;

namespace {

constexpr double kDeltaSeconds = 10.0;
constexpr std::size_t kMinJacobiInstances = 200;
constexpr std::size_t kJacobiMutations = 10;
constexpr std::size_t kS3Triples = 50;

std::vector<const VerificationReport*> find(const RunReport& r, const std::string& suite, const std::string& identity = "")
{
    std::vector<const VerificationReport*> out;
    for (const auto& rec : r.records)
        if (rec.suite == suite && (identity.empty() || rec.report.identity == identity)) out.push_back(&rec.report);
    return out;
}

bool all_pass(const std::vector<const VerificationReport*>& rs)
{
    if (rs.empty()) return false;
    for (const auto* r : rs)
        if (!r->passed()) return false;
    return true;
}

// Integer value of `key=` inside a params string, or -1.
long param(const VerificationReport& r, const std::string& key)
{
    const auto at = r.params.find(key + "=");
    if (at == std::string::npos) return -1;
    return std::stol(r.params.substr(at + key.size() + 1));
}

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail)
{
    if (!ok) ++failures;
    std::cout << "criterion " << n << " " << name << ": " << (ok ? "PASS" : "FAIL") << "  (" << detail << ")\n";
}

} // namespace

int main()
{
    SuiteConfig c;
    c.fixture_dir = VCALC_FIXTURE_DIR;

    const auto t0 = std::chrono::steady_clock::now();
    TaskList delta;
    add_delta_suite(delta, c);
    const RunReport d = run_tasks(delta, 1);
    const double delta_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const TaskList tasks = all_suites(c);
    const RunReport serial = run_tasks(tasks, 1);
    const RunReport parallel = run_tasks(tasks, 8);

    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f s", delta_s);
        const bool ok = all_pass(find(d, "delta")) && find(d, "delta").size() == 4 && delta_s < kDeltaSeconds;
        report(1, "delta", ok, std::string("fundamental on 25 polynomials, two- and three-term on [-4,4]^3, ") + buf);
    }
    {
        const auto p = partition_counts(6);
        const bool dims = p == std::vector<long>{1, 1, 2, 3, 5, 7, 11};
        bool ok = dims;
        for (const char* id : {"weight-dimensions", "creation", "skew-symmetry", "commutators", "virasoro-bracket"})
            ok = ok && all_pass(find(serial, "voa", id));
        report(2, "voa-axioms", ok, "creation, skew symmetry, commutators, c=1 Virasoro bracket, dims p(0..6)");
    }
    {
        const auto core = find(serial, "jacobi", "jacobi");
        const auto ext = find(serial, "jacobi", "jacobi-extended");
        const auto mut = find(serial, "jacobi", "jacobi-mutation");
        std::size_t instances = 0;
        bool core_complete = false;
        if (core.size() == 1) {
            instances += static_cast<std::size_t>(std::max(0L, param(*core[0], "in-budget")));
            core_complete = param(*core[0], "in-budget") == param(*core[0], "triples");
        }
        if (ext.size() == 1) instances += static_cast<std::size_t>(std::max(0L, param(*ext[0], "in-budget")));
        const bool ok = all_pass(core) && all_pass(ext) && core_complete && instances >= kMinJacobiInstances &&
                        mut.size() == kJacobiMutations && all_pass(mut);
        std::size_t caught = 0;
        for (const auto* m : mut) caught += m->passed();
        report(3, "jacobi", ok,
               std::to_string(instances) + " in-budget triples, " + std::to_string(caught) + "/" +
                   std::to_string(mut.size()) + " corruptions caught");
    }
    {
        const auto s3 = find(serial, "s3");
        bool ok = s3.size() == 3 && all_pass(s3);
        for (const auto* r : s3) ok = ok && param(*r, "triples") == static_cast<long>(kS3Triples);
        report(4, "s3", ok, "iterate-skew step, transposition step, permuted Jacobi on 50 triples");
    }
    {
        const auto cs = find(serial, "contragredient");
        report(5, "contragredient", all_pass(cs) && cs.size() == 10,
               "defining relation, L' adjointness |n|<=6, double contragredient, invariant form");
    }
    {
        const auto ds = find(serial, "direct-sum");
        report(6, "direct-sum", all_pass(ds) && ds.size() == 5, "skew, vanishing, pairing vs independent side, W = copy of V at L=4");
    }
    {
        const auto fs = find(serial, "fusion");
        const auto mut = find(serial, "fusion", "intertwiner-mutations");
        report(7, "fusion", all_pass(fs) && mut.size() == 2,
               "one-label and Ising tensors, canonical intertwiners, every single-entry mutation rejected");
    }
    {
        const auto ms = find(serial, "moduli");
        const auto sa = find(serial, "moduli", "sewing-axiom");
        std::string diffs = sa.size() == 1 ? sa[0]->params.substr(sa[0]->params.find("|diff|")) : "missing";
        report(8, "moduli", all_pass(ms) && ms.size() == 7, "associativity and identity axioms, Q(a)Q(b)=Q(ab), sewing axiom " + diffs);
    }
    {
        const std::string a = format_report(serial, OutputFormat::structured);
        const std::string b = format_report(parallel, OutputFormat::structured);
        report(9, "determinism", a == b && !a.empty(),
               std::to_string(serial.records.size()) + " records, jobs 1 vs 8 byte-identical: " + (a == b ? "yes" : "no"));
    }
    return failures == 0 ? 0 : 1;
}

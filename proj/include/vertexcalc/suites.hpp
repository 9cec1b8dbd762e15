#pragma once

#include "vertexcalc/report.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed fusion or moduli file; the message carries file and line.
struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { text, structured };

struct SuiteConfig {
    int level = 6;
    std::optional<int> window;  // delta: 4, Jacobi-type suites: 3
    std::optional<int> order;   // conjugation and creation: 4, moduli truncation: 8
    std::vector<int> cutoffs{4, 8, 12};
    int jobs = 1;
    OutputFormat format = OutputFormat::text;
    std::string fixture_dir;
    std::vector<std::string> fusion_files;  // defaults to the one-label and Ising fixtures

    // Throws ConfigError.
    void validate() const;
};

struct SuiteRecord {
    std::string suite;
    VerificationReport report;
};

struct TaskOutput {
    std::vector<VerificationReport> reports;
    std::string detail;  // extra text shown in text format only
};

struct Task {
    std::string suite;
    std::function<TaskOutput()> run;
};
using TaskList = std::vector<Task>;

struct RunReport {
    std::vector<SuiteRecord> records;
    std::vector<std::string> details;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    double elapsed_seconds = 0;

    int exit_code() const { return failed == 0 ? 0 : 1; }
};

// Runs tasks on `jobs` threads; records keep task order.
RunReport run_tasks(const TaskList& tasks, int jobs);
std::string format_report(const RunReport& r, OutputFormat format);

enum class VoaPart { dimensions, creation, skew, commutators, virasoro, conjugation };

void add_delta_suite(TaskList& t, const SuiteConfig& c);
void add_voa_suite(TaskList& t, const SuiteConfig& c, const std::vector<VoaPart>& parts);
void add_jacobi_suite(TaskList& t, const SuiteConfig& c);
void add_s3_suite(TaskList& t, const SuiteConfig& c);
void add_contragredient_suite(TaskList& t, const SuiteConfig& c);
void add_contragredient_build(TaskList& t, const SuiteConfig& c);
void add_direct_sum_suite(TaskList& t, const SuiteConfig& c);
// Fixture files are parsed here, so malformed files throw FixtureError before anything runs.
void add_fusion_file(TaskList& t, const SuiteConfig& c, const std::string& path);
void add_intertwiner_suite(TaskList& t, const SuiteConfig& c);
void add_moduli_suite(TaskList& t, const SuiteConfig& c);
void add_moduli_sew(TaskList& t, const SuiteConfig& c, const std::string& path, int puncture);
void add_moduli_axioms(TaskList& t, const SuiteConfig& c, const std::string& path);
void add_moduli_nu(TaskList& t, const SuiteConfig& c, const std::string& path);

// Every suite in a fixed order.
TaskList all_suites(const SuiteConfig& c);

// Partition counts p(0..n) from the generating function.
std::vector<long> partition_counts(int n);

} // namespace vcalc

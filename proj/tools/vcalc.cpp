#include "vertexcalc/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace vcalc;

namespace {

struct Options {
    SuiteConfig config;
    std::string format = "text";
    std::string check_suite;
    std::string contragredient_action;
    std::string moduli_action;
    std::string file;
    int puncture = 1;
};

void add_common(CLI::App* app, Options& o)
{
    app->add_option("--level", o.config.level, "truncation level L of the Heisenberg algebra");
    app->add_option("--window", o.config.window, "exponent window radius");
    app->add_option("--order", o.config.order, "expansion order (conjugation, moduli truncation)");
    app->add_option("--cutoffs", o.config.cutoffs, "intermediate-weight cutoff schedule, e.g. 4,8,12")->delimiter(',');
    app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "structured"}));
    app->add_option("--jobs", o.config.jobs, "worker threads");
    app->add_option("--fixtures", o.config.fixture_dir, "fixture directory");
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    o.config.fixture_dir = VCALC_FIXTURE_DIR;

    CLI::App app{"Exact verification suites for a truncated Heisenberg vertex operator algebra"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "run one identity suite");
    check->add_option("suite", o.check_suite)
        ->required()
        ->check(CLI::IsMember({"delta", "jacobi", "skew", "commutators", "conjugation", "s3"}));
    auto* contra = app.add_subcommand("contragredient", "build or verify the contragredient of V");
    contra->add_option("action", o.contragredient_action)->required()->check(CLI::IsMember({"build", "verify"}));
    auto* fusion = app.add_subcommand("fusion", "verify a fusion-rule file");
    fusion->add_option("action", o.moduli_action)->required()->check(CLI::IsMember({"verify"}));
    fusion->add_option("file", o.file)->required();
    auto* moduli = app.add_subcommand("moduli", "sew, check operad axioms or evaluate nu on a moduli file");
    moduli->add_option("action", o.moduli_action)->required()->check(CLI::IsMember({"sew", "axioms", "nu"}));
    moduli->add_option("file", o.file)->required();
    moduli->add_option("--puncture", o.puncture, "puncture of the first element to sew at");
    auto* all = app.add_subcommand("all", "run every suite");
    for (auto* sub : {check, contra, fusion, moduli, all}) add_common(sub, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    o.config.format = o.format == "structured" ? OutputFormat::structured : OutputFormat::text;

    TaskList tasks;
    try {
        o.config.validate();
        const SuiteConfig& c = o.config;
        if (*check) {
            const std::string& s = o.check_suite;
            if (s == "delta") add_delta_suite(tasks, c);
            else if (s == "jacobi") add_jacobi_suite(tasks, c);
            else if (s == "s3") add_s3_suite(tasks, c);
            else if (s == "skew") add_voa_suite(tasks, c, {VoaPart::creation, VoaPart::skew});
            else if (s == "commutators")
                add_voa_suite(tasks, c, {VoaPart::dimensions, VoaPart::commutators, VoaPart::virasoro});
            else add_voa_suite(tasks, c, {VoaPart::conjugation});
        } else if (*contra) {
            if (o.contragredient_action == "build") add_contragredient_build(tasks, c);
            else {
                add_contragredient_suite(tasks, c);
                add_direct_sum_suite(tasks, c);
            }
        } else if (*fusion) {
            add_fusion_file(tasks, c, o.file);
        } else if (*moduli) {
            if (o.moduli_action == "sew") add_moduli_sew(tasks, c, o.file, o.puncture);
            else if (o.moduli_action == "axioms") add_moduli_axioms(tasks, c, o.file);
            else add_moduli_nu(tasks, c, o.file);
        } else {
            tasks = all_suites(c);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const FixtureError& e) {
        std::cerr << "fixture error: " << e.what() << '\n';
        return 2;
    }

    const RunReport report = run_tasks(tasks, o.config.jobs);
    std::cout << format_report(report, o.config.format);
    return report.exit_code();
}

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vcalc {

enum class Status { pass, fail, skipped_budget };

std::string to_string(Status s);

struct Difference {
    std::vector<long> exponents;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::string identity;
    std::string params;
    std::vector<std::string> variables;
    Status status = Status::skipped_budget;
    std::vector<Difference> differences;
    std::size_t checked = 0;
    std::size_t skipped = 0;

    VerificationReport() = default;
    VerificationReport(std::string id, std::string p, std::vector<std::string> vars = {})
        : identity(std::move(id)), params(std::move(p)), variables(std::move(vars)) {}

    void add_difference(std::vector<long> exps, std::string lhs, std::string rhs)
    {
        differences.push_back({std::move(exps), std::move(lhs), std::move(rhs)});
    }
    // Sets status from the counters: nothing checked means skipped.
    VerificationReport& finalize();
    // Folds a sub-report into this one.
    void absorb(const VerificationReport& other);

    bool passed() const { return status == Status::pass; }
    bool failed() const { return status == Status::fail; }
};

} // namespace vcalc

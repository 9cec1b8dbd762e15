#include "vertexcalc/report.hpp"

namespace vcalc {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped_budget: return "skipped-budget";
    }
    return "unknown";
}

VerificationReport& VerificationReport::finalize()
{
    if (!differences.empty())
        status = Status::fail;
    else if (checked == 0)
        status = Status::skipped_budget;
    else
        status = Status::pass;
    return *this;
}

void VerificationReport::absorb(const VerificationReport& other)
{
    differences.insert(differences.end(), other.differences.begin(), other.differences.end());
    checked += other.checked;
    skipped += other.skipped;
}

} // namespace vcalc

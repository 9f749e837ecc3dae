#pragma once

#include <string>
#include <vector>

#include "hexns/report.hpp"

namespace hexns {

struct CriterionInfo {
    int id = 0;
    std::string key;  // suite name for `hexns accept --suite`
    std::string title;
    double budget_seconds = 0.0;
};

const std::vector<CriterionInfo>& acceptance_criteria();

// Accepts a key ("main"), a number ("5") or "accept_5".
int criterion_id(const std::string& name);

struct AcceptOptions {
    bool full = false;  // long large-time run; also set by HEXNS_ACCEPT_FULL=1
};

// Verdict evidence pointers are relative to the outcome ("/measurements/...").
struct CriterionOutcome {
    CriterionInfo info;
    std::vector<Verdict> verdicts;
    ojson measurements = ojson::object();
    std::string headline;
    double seconds = 0.0;

    bool pass() const;
};

CriterionOutcome run_criterion(int id, const AcceptOptions& opt = {});

// "accept_5 PASS main-theorem far field (12.3 s): headline"
std::string criterion_line(const CriterionOutcome& o);

// Report with one entry per outcome under /results/criteria; evidence
// pointers are rebased onto it.
RunReport acceptance_report(const std::vector<CriterionOutcome>& outcomes);

}  // namespace hexns

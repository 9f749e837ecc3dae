// Runs the acceptance criteria and prints one pass/fail line per criterion.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hexns/acceptance.hpp"
#include "hexns/error.hpp"
#include "hexns/report.hpp"

using namespace hexns;

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::vector<std::string> which;
    std::string out;
    bool full = false;
    app.add_option("--criterion", which, "criterion numbers or keys (default: all)")->delimiter(',');
    app.add_option("--out", out, "write the acceptance report to this directory");
    app.add_flag("--full", full, "long large-time run (also HEXNS_ACCEPT_FULL=1)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::vector<int> ids;
    try {
        for (const auto& w : which) ids.push_back(criterion_id(w));
    } catch (const DomainError& e) {
        fmt::print(stderr, "{}\n", e.what());
        return 2;
    }
    if (ids.empty())
        for (const auto& c : acceptance_criteria()) ids.push_back(c.id);

    std::vector<CriterionOutcome> outcomes;
    int failures = 0;
    for (int id : ids) {
        try {
            outcomes.push_back(run_criterion(id, AcceptOptions{full}));
            fmt::print("{}\n", criterion_line(outcomes.back()));
            failures += outcomes.back().pass() ? 0 : 1;
        } catch (const std::exception& e) {
            fmt::print("accept_{} FAIL error: {}\n", id, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (!out.empty()) {
        try {
            emit_report(acceptance_report(outcomes), out);
        } catch (const std::exception& e) {
            fmt::print(stderr, "{}\n", e.what());
            return 3;
        }
    }
    fmt::print("{} of {} criteria passed\n", ids.size() - failures, ids.size());
    return failures == 0 ? 0 : 1;
}

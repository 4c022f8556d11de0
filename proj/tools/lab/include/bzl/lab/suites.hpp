#pragma once

#include "bzl/lab/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bzl::lab {

// One CSV row.
struct Record {
    int m = 0;
    cd x;
    std::string quantity;
    cd value;
};

struct CheckResult {
    std::string id;    // stable key, e.g. "c03"
    std::string title;
    bool pass = false;
    std::string summary; // one line, measured values against tolerances
    json detail = json::object();
    std::vector<Record> records;
    std::string refusal; // non-empty if a fit refused
    double seconds = 0;  // wall time; not part of reports
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool ok() const;
    bool refused() const;
    std::vector<std::string> failures() const;
};

struct CheckSpec {
    std::string id, title;
    std::function<CheckResult(const ExperimentConfig &)> run;
};

std::vector<std::string> suite_names();
std::string suite_description(const std::string &suite);
std::vector<CheckSpec> suite_checks(const std::string &suite);

// Runs the checks of cfg.suite on cfg.workers threads; results are in suite order.
SuiteResult run_suite(const ExperimentConfig &cfg);

// Exit-code contract.
enum ExitCode : int { kPass = 0, kAcceptanceFailure = 1, kConfigError = 2, kNumericalRefusal = 3 };
int exit_code(const SuiteResult &r);

} // namespace bzl::lab

#pragma once

#include "bzl/lab/suites.hpp"

#include <filesystem>

namespace bzl::lab {

json report_json(const SuiteResult &r, const ExperimentConfig &cfg);
std::string report_csv(const SuiteResult &r);

// Writes <dir>/<suite>.json and <dir>/<suite>.csv; returns the paths.
// I/O failures throw std::runtime_error naming the path.
std::vector<std::filesystem::path> emit_report(const SuiteResult &r, const ExperimentConfig &cfg, const std::filesystem::path &dir);

// Golden files: exact level-m data keyed by name.
json golden_data(int max_m);
struct GoldenDrift {
    std::string key;
    std::string detail;
};
// Compares numerically with |a - b| <= tol (tol = 0: exact string equality of rationals).
std::vector<GoldenDrift> compare_golden(const json &expected, const json &actual, double tol);

} // namespace bzl::lab

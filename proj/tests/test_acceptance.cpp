// One line per acceptance criterion; exit status 0 iff all pass.
#include "bzl/lab/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

int main() {
    bzl::lab::ExperimentConfig cfg;
    cfg.suite = "acceptance";
    cfg.workers = static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
    auto res = bzl::lab::run_suite(cfg);
    int n = 0;
    for (auto &c : res.checks) {
        ++n;
        std::printf("criterion %2d %-4s %s: %s\n", n, c.pass ? "PASS" : "FAIL", c.title.c_str(), c.summary.c_str());
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(std::count_if(res.checks.begin(), res.checks.end(), [](auto &c) { return c.pass; })),
                res.checks.size());
    return bzl::lab::exit_code(res);
}

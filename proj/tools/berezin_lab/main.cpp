#include "bzl/lab/config.hpp"
#include "bzl/lab/report.hpp"
#include "bzl/lab/suites.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace bzl::lab;

int main(int argc, char **argv) {
    CLI::App app{"berezin_lab: level-m versus formal quantization experiments on CP^1"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "run a suite and write JSON/CSV reports");
    std::string config_path, suite, backend, out;
    int order = 0, workers = 0;
    long long seed = -1;
    run->add_option("--config", config_path, "key-value config file");
    run->add_option("--suite", suite, "suite name (overrides config)");
    run->add_option("--backend", backend, "exact or double (overrides config)");
    run->add_option("--order", order, "highest nu order compared (overrides config)");
    run->add_option("--out", out, "report directory (BEREZIN_LAB_OUT takes precedence)");
    run->add_option("--workers", workers, "parallel checks");
    run->add_option("--seed", seed, "seed for randomized checks");

    app.add_subcommand("list-suites", "list suites and their checks");
    app.add_subcommand("show-config-schema", "print the JSON schema of the config format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    if (app.got_subcommand("list-suites")) {
        for (auto &s : suite_names()) {
            std::cout << s << ": " << suite_description(s) << "\n";
            for (auto &c : suite_checks(s)) std::cout << "  " << c.id << "  " << c.title << "\n";
        }
        return kPass;
    }
    if (app.got_subcommand("show-config-schema")) {
        std::cout << config_schema().dump(2) << "\n";
        return kPass;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!suite.empty()) cfg.suite = suite;
        if (!backend.empty()) cfg.backend = parse_backend(backend);
        if (order) cfg.order = order;
        if (workers) cfg.workers = workers;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!out.empty()) cfg.out = out;
        if (const char *env = std::getenv("BEREZIN_LAB_OUT"); env && *env) cfg.out = env;
        validate(cfg);
    } catch (const ConfigError &e) {
        std::cerr << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "invalid configuration\n  " << e.what() << "\n";
        return kConfigError;
    }

    auto t0 = std::chrono::steady_clock::now();
    SuiteResult res = run_suite(cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (auto &c : res.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << " " << c.title << ": " << c.summary << "\n";
        std::cerr << "  " << c.id << " took " << c.seconds << " s\n";
    }
    try {
        for (auto &p : emit_report(res, cfg, cfg.out)) std::cerr << "wrote " << p.string() << "\n";
    } catch (const std::exception &e) {
        std::cerr << "report error: " << e.what() << "\n";
        return kAcceptanceFailure;
    }
    int rc = exit_code(res);
    std::cerr << "suite " << res.suite << " finished in " << secs << " s, exit " << rc << "\n";
    for (auto &f : res.failures()) std::cerr << "  failed: " << f << "\n";
    return rc;
}

#include "bzl/lab/suites.hpp"
#include "bzl/lab/checks.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <thread>

namespace bzl::lab {

namespace {

// Small levels and first-order comparisons only.
ExperimentConfig smoke_config(ExperimentConfig c) {
    c.m_grid = {8, 12, 16, 20, 24, 28, 32};
    c.order = 1;
    c.fit_terms = std::min(c.fit_terms, 5);
    c.symbols.resize(1);
    c.points.resize(std::min<size_t>(2, c.points.size()));
    return c;
}

CheckSpec smoke(CheckSpec s) {
    auto inner = s.run;
    s.run = [inner](const ExperimentConfig &c) { return inner(smoke_config(c)); };
    return s;
}

const std::vector<CheckSpec> &criteria() {
    static const std::vector<CheckSpec> c = {
        {"c01", "dimension of H_m", check_dimension},
        {"c02", "density of states expansion", check_zelditch},
        {"c03", "Berezin transform expansion", check_berezin_expansion},
        {"c04", "star product from extraction", check_star_axioms},
        {"c05", "formal versus level-m Berezin transform", check_central},
        {"c06", "recursion and Wick engines agree", check_cross_engine},
        {"c07", "norm chain", check_norm_chain},
        {"c08", "off-diagonal decay", check_decay},
        {"c09", "kernel and trace identities", check_kernel_identities},
        {"c10", "classifying data", check_classifying},
        {"c11", "Kodaira pullback", check_kodaira},
    };
    return c;
}

std::vector<CheckSpec> pick(std::initializer_list<int> ids) {
    std::vector<CheckSpec> out;
    for (int i : ids) out.push_back(criteria()[i - 1]);
    return out;
}

const std::map<std::string, std::string> &descriptions() {
    static const std::map<std::string, std::string> d = {
        {"smoke", "fast sanity run: m <= 32, first order only"},
        {"central", "formal versus level-m expansions: Berezin transform, extracted star product, formal engine"},
        {"invariants", "exact identities: dimensions, engine agreement, norms, kernel and trace identities, classifying data, Kodaira"},
        {"acceptance", "all acceptance criteria 1-11"},
        {"goldens", "exact level-m data for m <= 8, optionally compared against a golden directory"},
    };
    return d;
}

} // namespace

bool SuiteResult::ok() const {
    for (auto &c : checks)
        if (!c.pass) return false;
    return true;
}

bool SuiteResult::refused() const {
    for (auto &c : checks)
        if (!c.refusal.empty()) return true;
    return false;
}

std::vector<std::string> SuiteResult::failures() const {
    std::vector<std::string> f;
    for (auto &c : checks)
        if (!c.pass) f.push_back(c.id + " " + c.title + ": " + (c.refusal.empty() ? c.summary : c.refusal));
    return f;
}

std::vector<std::string> suite_names() { return {"smoke", "central", "invariants", "acceptance", "goldens"}; }

std::string suite_description(const std::string &suite) {
    auto it = descriptions().find(suite);
    return it == descriptions().end() ? std::string() : it->second;
}

std::vector<CheckSpec> suite_checks(const std::string &suite) {
    if (suite == "smoke") {
        std::vector<CheckSpec> s;
        for (auto &c : pick({1, 2, 3, 5, 7, 11})) s.push_back(smoke(c));
        return s;
    }
    if (suite == "central") return pick({3, 4, 5});
    if (suite == "invariants") return pick({1, 6, 7, 9, 10, 11});
    if (suite == "acceptance") return criteria();
    if (suite == "goldens") return {{"g01", "golden level-m data", check_goldens}};
    throw DomainError("unknown suite '" + suite + "'");
}

SuiteResult run_suite(const ExperimentConfig &cfg) {
    auto specs = suite_checks(cfg.suite);
    SuiteResult res;
    res.suite = cfg.suite;
    res.checks.resize(specs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < specs.size();) {
            CheckResult r;
            auto t0 = std::chrono::steady_clock::now();
            try {
                r = specs[i].run(cfg);
            } catch (const NumericalRefusal &e) {
                r.refusal = e.what();
                r.summary = std::string("numerical refusal: ") + e.what();
            } catch (const std::exception &e) {
                r.summary = std::string("error: ") + e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            r.id = specs[i].id;
            r.title = specs[i].title;
            res.checks[i] = std::move(r);
        }
    };
    int n = std::max(1, std::min<int>(cfg.workers, static_cast<int>(specs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    return res;
}

int exit_code(const SuiteResult &r) {
    if (r.refused()) return kNumericalRefusal;
    return r.ok() ? kPass : kAcceptanceFailure;
}

} // namespace bzl::lab

#pragma once

#include "bzl/scalar.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bzl::lab {

enum class Backend { Exact, Double };

struct ExperimentConfig {
    std::vector<int> m_grid{16, 24, 32, 48, 64, 96, 128};
    std::vector<QQi> points; // rational affine points; defaults in default_points()
    std::vector<std::string> symbols{"height", "quadratic"};
    Backend backend = Backend::Exact;
    int order = 2;     // highest nu order compared
    int jet_order = 0; // 0: derived from order
    int fit_terms = 5;
    std::string suite = "smoke";
    std::string out = "lab-out";
    std::string golden_dir; // non-empty: compare goldens against this directory
    double golden_tolerance = 0;
    std::uint64_t seed = 20140317;
    int workers = 1;

    ExperimentConfig();
    int effective_jet_order() const;
};

std::vector<QQi> default_points();

struct ConfigError : std::runtime_error {
    std::vector<std::string> diagnostics;
    explicit ConfigError(std::vector<std::string> d);
};

// key = value lines, '#' comments. Unknown keys and malformed values are errors.
ExperimentConfig parse_config(const std::string &text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string &path, ExperimentConfig base = {});
void validate(const ExperimentConfig &c); // throws ConfigError

// JSON-schema equivalent of the key-value format.
json config_schema();
json to_json(const ExperimentConfig &c);

QQi parse_rational_point(const std::string &s); // "re,im" with p/q rationals
std::string format_point(const QQi &z);
Backend parse_backend(const std::string &s);
std::string backend_name(Backend b);

} // namespace bzl::lab

#include "bzl/lab/config.hpp"
#include "bzl/lab/suites.hpp"

#include "bzl/cp1.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bzl::lab {

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

long long parse_int(const std::string &s) {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
}

Rational parse_rational(const std::string &s) {
    auto t = trim(s);
    if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos) throw std::invalid_argument("not a rational");
    if (t[0] == '+') t = t.substr(1);
    Rational r(t);
    return r;
}

struct KeySpec {
    std::string name, type, description;
    json extra;
    std::function<void(ExperimentConfig &, const std::string &)> set;
};

const std::vector<KeySpec> &keys() {
    static const std::vector<KeySpec> k = {
        {"m_grid", "integer-list", "levels m, increasing, comma separated", {{"minimum", 1}},
         [](ExperimentConfig &c, const std::string &v) {
             c.m_grid.clear();
             for (auto &t : split(v, ',')) c.m_grid.push_back(static_cast<int>(parse_int(t)));
         }},
        {"points", "point-list", "affine points re,im with rational parts, separated by ';'", {},
         [](ExperimentConfig &c, const std::string &v) {
             c.points.clear();
             for (auto &t : split(v, ';')) c.points.push_back(parse_rational_point(t));
         }},
        {"symbols", "string-list", "symbol names, comma separated", {{"enum", cp1::symbol_names()}},
         [](ExperimentConfig &c, const std::string &v) { c.symbols = split(v, ','); }},
        {"backend", "string", "arithmetic for level-m quantities", {{"enum", {"exact", "double"}}},
         [](ExperimentConfig &c, const std::string &v) { c.backend = parse_backend(v); }},
        {"order", "integer", "highest nu order compared", {{"minimum", 1}, {"maximum", 3}},
         [](ExperimentConfig &c, const std::string &v) { c.order = static_cast<int>(parse_int(v)); }},
        {"jet_order", "integer", "jet order of the formal engines, 0 for automatic", {{"minimum", 0}, {"maximum", 24}},
         [](ExperimentConfig &c, const std::string &v) { c.jet_order = static_cast<int>(parse_int(v)); }},
        {"fit_terms", "integer", "number of inverse powers fitted", {{"minimum", 2}, {"maximum", 8}},
         [](ExperimentConfig &c, const std::string &v) { c.fit_terms = static_cast<int>(parse_int(v)); }},
        {"suite", "string", "suite to run", {{"enum", suite_names()}}, [](ExperimentConfig &c, const std::string &v) { c.suite = v; }},
        {"out", "string", "report directory", {}, [](ExperimentConfig &c, const std::string &v) { c.out = v; }},
        {"golden_dir", "string", "compare golden reports against this directory", {},
         [](ExperimentConfig &c, const std::string &v) { c.golden_dir = v; }},
        {"golden_tolerance", "number", "allowed drift in golden comparison, 0 for exact", {{"minimum", 0}},
         [](ExperimentConfig &c, const std::string &v) {
             size_t pos = 0;
             c.golden_tolerance = std::stod(v, &pos);
             if (pos != v.size()) throw std::invalid_argument("trailing characters");
         }},
        {"seed", "integer", "seed for randomized checks", {{"minimum", 0}},
         [](ExperimentConfig &c, const std::string &v) {
             size_t pos = 0;
             if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative seed");
             c.seed = std::stoull(v, &pos);
             if (pos != v.size()) throw std::invalid_argument("trailing characters");
         }},
        {"workers", "integer", "parallel checks", {{"minimum", 1}, {"maximum", 64}},
         [](ExperimentConfig &c, const std::string &v) { c.workers = static_cast<int>(parse_int(v)); }},
    };
    return k;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> d)
    : std::runtime_error([&] {
          std::string s = "invalid configuration";
          for (auto &x : d) s += "\n  " + x;
          return s;
      }()),
      diagnostics(std::move(d)) {}

std::vector<QQi> default_points() {
    return {QQi(), QQi(qq(1, 2)), QQi(Rational(-1, 3), Rational(1, 4)), QQi(Rational(0), Rational(1, 5)), QQi(Rational(3, 2), Rational(-1, 2))};
}

ExperimentConfig::ExperimentConfig() : points(default_points()) {}

int ExperimentConfig::effective_jet_order() const { return jet_order > 0 ? jet_order : 2 * order + 2; }

QQi parse_rational_point(const std::string &s) {
    auto parts = split(s, ',');
    if (parts.empty() || parts.size() > 2) throw std::invalid_argument("point must be 're' or 're,im'");
    QQi z(parse_rational(parts[0]));
    if (parts.size() == 2) z.im = parse_rational(parts[1]);
    return z;
}

std::string format_point(const QQi &z) { return z.re.str() + "," + z.im.str(); }

Backend parse_backend(const std::string &s) {
    if (s == "exact") return Backend::Exact;
    if (s == "double") return Backend::Double;
    throw std::invalid_argument("backend must be exact or double");
}

std::string backend_name(Backend b) { return b == Backend::Exact ? "exact" : "double"; }

ExperimentConfig parse_config(const std::string &text, ExperimentConfig c) {
    std::vector<std::string> diag;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        std::string where = "line " + std::to_string(ln) + ": ";
        if (eq == std::string::npos) {
            diag.push_back(where + "expected 'key = value'");
            continue;
        }
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        auto it = std::find_if(keys().begin(), keys().end(), [&](const KeySpec &k) { return k.name == key; });
        if (it == keys().end()) {
            diag.push_back(where + "unknown key '" + key + "'");
            continue;
        }
        if (seen[key]++) {
            diag.push_back(where + "duplicate key '" + key + "'");
            continue;
        }
        try {
            it->set(c, value);
        } catch (const std::exception &e) {
            diag.push_back(where + "bad value for '" + key + "' (" + it->type + "): " + e.what());
        }
    }
    if (!diag.empty()) throw ConfigError(diag);
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string &path, ExperimentConfig base) {
    std::ifstream f(path);
    if (!f) throw ConfigError({"cannot read config file '" + path + "'"});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

void validate(const ExperimentConfig &c) {
    std::vector<std::string> d;
    if (c.m_grid.empty()) d.push_back("m_grid: empty");
    for (size_t i = 0; i < c.m_grid.size(); ++i) {
        if (c.m_grid[i] < 1) d.push_back("m_grid: levels must be >= 1");
        if (i && c.m_grid[i] <= c.m_grid[i - 1]) d.push_back("m_grid: levels must increase");
    }
    if (static_cast<int>(c.m_grid.size()) < c.fit_terms + 2)
        d.push_back("m_grid: needs at least fit_terms + 2 = " + std::to_string(c.fit_terms + 2) + " levels");
    if (c.points.empty()) d.push_back("points: empty");
    if (c.symbols.empty()) d.push_back("symbols: empty");
    auto names = cp1::symbol_names();
    for (auto &s : c.symbols)
        if (std::find(names.begin(), names.end(), s) == names.end()) d.push_back("symbols: unknown symbol '" + s + "'");
    if (c.order < 1 || c.order > 3) d.push_back("order: must be in 1..3");
    if (c.jet_order < 0 || c.jet_order > 24) d.push_back("jet_order: must be in 0..24");
    if (c.jet_order > 0 && c.jet_order < 2 * c.order + 2) d.push_back("jet_order: below 2 order + 2 = " + std::to_string(2 * c.order + 2));
    if (c.fit_terms < 2 || c.fit_terms > 8) d.push_back("fit_terms: must be in 2..8");
    if (c.fit_terms <= c.order) d.push_back("fit_terms: must exceed order");
    auto suites = suite_names();
    if (std::find(suites.begin(), suites.end(), c.suite) == suites.end()) d.push_back("suite: unknown suite '" + c.suite + "'");
    if (c.out.empty()) d.push_back("out: empty");
    if (c.golden_tolerance < 0) d.push_back("golden_tolerance: negative");
    if (c.workers < 1 || c.workers > 64) d.push_back("workers: must be in 1..64");
    if (!d.empty()) throw ConfigError(d);
}

json config_schema() {
    json props = json::object();
    ExperimentConfig def;
    json defaults = to_json(def);
    for (auto &k : keys()) {
        json p;
        if (k.type == "integer-list")
            p = {{"type", "array"}, {"items", {{"type", "integer"}}}};
        else if (k.type == "point-list")
            p = {{"type", "array"}, {"items", {{"type", "string"}, {"pattern", "^[+-]?[0-9]+(/[0-9]+)?(,[+-]?[0-9]+(/[0-9]+)?)?$"}}}};
        else if (k.type == "string-list")
            p = {{"type", "array"}, {"items", {{"type", "string"}}}};
        else
            p = {{"type", k.type}};
        for (auto &[ek, ev] : k.extra.items()) {
            if (p["type"] == "array")
                p["items"][ek] = ev;
            else
                p[ek] = ev;
        }
        p["description"] = k.description;
        p["default"] = defaults[k.name];
        props[k.name] = p;
    }
    return json{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"title", "berezin_lab experiment config"},
                {"description", "Key-value file: one 'key = value' per line, '#' starts a comment; lists are comma separated, points ';' separated."},
                {"type", "object"},
                {"additionalProperties", false},
                {"properties", props}};
}

json to_json(const ExperimentConfig &c) {
    json pts = json::array();
    for (auto &p : c.points) pts.push_back(format_point(p));
    return json{{"m_grid", c.m_grid},
                {"points", pts},
                {"symbols", c.symbols},
                {"backend", backend_name(c.backend)},
                {"order", c.order},
                {"jet_order", c.jet_order},
                {"fit_terms", c.fit_terms},
                {"suite", c.suite},
                {"out", c.out},
                {"golden_dir", c.golden_dir},
                {"golden_tolerance", c.golden_tolerance},
                {"seed", c.seed},
                {"workers", c.workers}};
}

} // namespace bzl::lab

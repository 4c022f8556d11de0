#include "bzl/lab/report.hpp"
#include "bzl/lab/checks.hpp"

#include "bzl/cp1.hpp"

#include <cstdio>
#include <fstream>

namespace bzl::lab {

namespace fs = std::filesystem;

namespace {

std::string g17(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

json qjson(const QQi &z) { return json::array({z.re.str(), z.im.str()}); }

void write_file(const fs::path &p, const std::string &text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    f << text;
    f.close();
    if (!f) throw std::runtime_error("write to '" + p.string() + "' failed");
}

} // namespace

json report_json(const SuiteResult &r, const ExperimentConfig &cfg) {
    json checks = json::array();
    for (auto &c : r.checks) {
        json d = c.detail;
        if (d.is_object() && d.contains("files")) {
            json names = json::array();
            for (auto &[k, v] : d["files"].items()) names.push_back(k);
            d["files"] = names;
        }
        json e = {{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"summary", c.summary}, {"detail", d}};
        if (!c.refusal.empty()) e["refusal"] = c.refusal;
        checks.push_back(e);
    }
    // execution settings do not affect results and are left out so reruns compare byte for byte
    json c = to_json(cfg);
    c.erase("out");
    c.erase("workers");
    return json{{"suite", r.suite}, {"config", c}, {"ok", r.ok()}, {"exit_code", exit_code(r)}, {"failures", r.failures()}, {"checks", checks}};
}

std::string report_csv(const SuiteResult &r) {
    std::string s = "m,x_re,x_im,quantity,value_re,value_im,suite\n";
    for (auto &c : r.checks)
        for (auto &rec : c.records)
            s += std::to_string(rec.m) + "," + g17(rec.x.real()) + "," + g17(rec.x.imag()) + "," + rec.quantity + "," + g17(rec.value.real()) + "," +
                 g17(rec.value.imag()) + "," + r.suite + "\n";
    return s;
}

std::vector<fs::path> emit_report(const SuiteResult &r, const ExperimentConfig &cfg, const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create report directory '" + dir.string() + "': " + ec.message());
    std::vector<fs::path> out;
    fs::path j = dir / (r.suite + ".json"), c = dir / (r.suite + ".csv");
    write_file(j, report_json(r, cfg).dump(2) + "\n");
    write_file(c, report_csv(r));
    out.push_back(j);
    out.push_back(c);
    for (auto &chk : r.checks)
        if (chk.detail.is_object() && chk.detail.contains("files")) {
            fs::path g = dir / "golden";
            fs::create_directories(g, ec);
            if (ec) throw std::runtime_error("cannot create '" + g.string() + "': " + ec.message());
            for (auto &[name, v] : chk.detail["files"].items()) {
                write_file(g / name, v.dump(1) + "\n");
                out.push_back(g / name);
            }
        }
    return out;
}

json golden_data(int max_m) {
    using namespace cp1;
    json toe = json::object(), ber = json::object(), tw = json::object();
    auto pts = default_points();
    for (auto &name : symbol_names()) {
        auto f = symbol_by_name(name);
        json per_m = json::object();
        for (int m = 1; m <= max_m; ++m) {
            auto T = toeplitz_matrix(f, m);
            json rows = json::array();
            for (int k = 0; k <= m; ++k) {
                json row = json::array();
                for (int i = 0; i <= m; ++i) row.push_back(qjson(T.exact(k, i)));
                rows.push_back(row);
            }
            per_m[std::to_string(m)] = rows;
        }
        toe[name] = per_m;
        json bx = json::object();
        for (auto &x : pts) {
            json vals = json::array();
            for (int m = 1; m <= max_m; ++m) vals.push_back(qjson(berezin_transform_m_exact(f, x, m)));
            bx[format_point(x)] = vals;
        }
        ber[name] = bx;
    }
    for (auto &[fn, gn] : std::vector<std::pair<std::string, std::string>>{{"quadratic", "mixed"}, {"height", "re_z"}}) {
        json bx = json::object();
        for (auto &x : pts) {
            json vals = json::array();
            for (int m = 1; m <= max_m; ++m) vals.push_back(qjson(twisted_product_m_exact(symbol_by_name(fn), symbol_by_name(gn), x, m)));
            bx[format_point(x)] = vals;
        }
        tw[fn + "|" + gn] = bx;
    }
    return json{{"toeplitz.json", toe}, {"berezin.json", ber}, {"twisted.json", tw}};
}

namespace {

double as_number(const json &v) {
    if (v.is_number()) return v.get<double>();
    return static_cast<double>(Rational(v.get<std::string>()));
}

void walk(const json &e, const json &a, const std::string &path, double tol, std::vector<GoldenDrift> &out) {
    if (e.type() != a.type() && !(e.is_number() && a.is_number())) {
        out.push_back({path, "type differs"});
        return;
    }
    if (e.is_object()) {
        for (auto &[k, v] : e.items()) {
            if (!a.contains(k))
                out.push_back({path + "/" + k, "missing"});
            else
                walk(v, a[k], path + "/" + k, tol, out);
        }
        for (auto &[k, v] : a.items())
            if (!e.contains(k)) out.push_back({path + "/" + k, "unexpected"});
    } else if (e.is_array()) {
        if (e.size() != a.size()) {
            out.push_back({path, "length " + std::to_string(a.size()) + " != " + std::to_string(e.size())});
            return;
        }
        for (size_t i = 0; i < e.size(); ++i) walk(e[i], a[i], path + "/" + std::to_string(i), tol, out);
    } else if (e != a) {
        if (tol > 0 && (e.is_string() || e.is_number())) {
            double d = std::abs(as_number(e) - as_number(a));
            if (d > tol) out.push_back({path, "drift " + g17(d)});
        } else {
            out.push_back({path, "expected " + e.dump() + ", got " + a.dump()});
        }
    }
}

} // namespace

std::vector<GoldenDrift> compare_golden(const json &expected, const json &actual, double tol) {
    std::vector<GoldenDrift> out;
    walk(expected, actual, "", tol, out);
    return out;
}

CheckResult check_goldens(const ExperimentConfig &cfg) {
    CheckResult r;
    r.id = "g01";
    r.title = "golden level-m data";
    json data = golden_data(8);
    json drift = json::array();
    if (!cfg.golden_dir.empty()) {
        for (auto &[name, v] : data.items()) {
            fs::path p = fs::path(cfg.golden_dir) / name;
            std::ifstream f(p);
            if (!f) {
                drift.push_back({{"file", p.string()}, {"key", ""}, {"detail", "missing golden file"}});
                continue;
            }
            json expected = json::parse(f, nullptr, false);
            if (expected.is_discarded()) {
                drift.push_back({{"file", p.string()}, {"key", ""}, {"detail", "unparsable"}});
                continue;
            }
            for (auto &d : compare_golden(expected, v, cfg.golden_tolerance)) drift.push_back({{"file", p.string()}, {"key", d.key}, {"detail", d.detail}});
        }
    }
    r.pass = drift.empty();
    r.summary = cfg.golden_dir.empty() ? "golden data for m <= 8 emitted (no comparison directory)"
                                        : std::to_string(drift.size()) + " drifting entries against " + cfg.golden_dir;
    r.detail = {{"files", data}, {"drift", drift}};
    return r;
}

} // namespace bzl::lab

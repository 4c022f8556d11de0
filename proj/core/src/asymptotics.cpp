#include "bzl/asymptotics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

namespace bzl::asym {

namespace {

template <class R> struct Solved {
    std::vector<cd> coeffs;
    std::vector<double> se;
    double cond = 0;
    double rms = 0;
};

template <class R> Solved<R> solve_ls(const std::vector<double> &grid, const std::vector<cd> &y, int N) {
    using C = std::complex<R>;
    using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
    using CVec = Eigen::Matrix<C, Eigen::Dynamic, 1>;
    int M = static_cast<int>(grid.size());
    Mat A(M, N);
    for (int i = 0; i < M; ++i)
        for (int r = 0; r < N; ++r) A(i, r) = std::pow(R(1) / R(grid[i]), r);
    // unit column norms
    std::vector<R> scale(N);
    for (int r = 0; r < N; ++r) {
        scale[r] = A.col(r).norm();
        A.col(r) /= scale[r];
    }
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    Solved<R> out;
    out.cond = static_cast<double>(s(0) / s(N - 1));
    CVec b(M);
    for (int i = 0; i < M; ++i) b(i) = C(R(y[i].real()), R(y[i].imag()));
    Mat U = svd.matrixU(), V = svd.matrixV();
    CVec x = CVec::Zero(N);
    for (int k = 0; k < N; ++k) {
        C proj(0);
        for (int i = 0; i < M; ++i) proj += U(i, k) * b(i);
        for (int r = 0; r < N; ++r) x(r) += V(r, k) * proj / s(k);
    }
    R rss = 0;
    for (int i = 0; i < M; ++i) {
        C model(0);
        for (int r = 0; r < N; ++r) model += A(i, r) * x(r);
        rss += std::norm(model - b(i));
    }
    out.rms = static_cast<double>(std::sqrt(rss / R(M)));
    R s2 = M > N ? rss / R(M - N) : R(0);
    for (int r = 0; r < N; ++r) {
        R var = 0;
        for (int k = 0; k < N; ++k) var += V(r, k) * V(r, k) / (s(k) * s(k));
        out.se.push_back(static_cast<double>(std::sqrt(s2 * var) / scale[r]));
        C c = x(r) / scale[r];
        out.coeffs.push_back(cd(static_cast<double>(c.real()), static_cast<double>(c.imag())));
    }
    return out;
}

} // namespace

AsymptoticFit fit_inverse_powers(const std::vector<double> &grid, const std::vector<cd> &values, int N, int n, const FitOptions &opt) {
    if (grid.size() != values.size()) throw DomainError("grid and values differ in length");
    if (N < 1 || static_cast<int>(grid.size()) < N + 2) throw DomainError("fit needs at least N + 2 grid points");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0)) throw DomainError("grid points must be positive");
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) throw DomainError("sample is not finite");
    }
    std::vector<cd> y(values.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = values[i] / std::pow(grid[i], n);

    AsymptoticFit fit;
    fit.grid = grid;
    fit.values = values;
    fit.prefactor_power = n;
    auto s = solve_ls<double>(grid, y, N);
    if (s.cond > opt.extended_threshold) {
        auto l = solve_ls<long double>(grid, y, N);
        fit.extended_precision = true;
        if (l.cond > opt.refusal_threshold)
            throw NumericalRefusal("fit condition number " + std::to_string(l.cond) + " exceeds " + std::to_string(opt.refusal_threshold) +
                                   " (N = " + std::to_string(N) + ", " + std::to_string(grid.size()) + " points)");
        s.coeffs = l.coeffs;
        s.se = l.se;
        s.cond = l.cond;
        s.rms = l.rms;
    }
    fit.coeffs = s.coeffs;
    fit.std_error = s.se;
    // change against the order N-1 fit estimates the omitted tail
    fit.truncation.assign(N, 0.0);
    if (N >= 2) {
        auto lower = fit.extended_precision ? solve_ls<long double>(grid, y, N - 1).coeffs : solve_ls<double>(grid, y, N - 1).coeffs;
        lower.push_back(0.0);
        for (int r = 0; r < N; ++r) fit.truncation[r] = std::abs(s.coeffs[r] - lower[r]);
    }
    fit.uncertainty.resize(N);
    for (int r = 0; r < N; ++r) fit.uncertainty[r] = std::max(fit.std_error[r], fit.truncation[r]);
    fit.condition = s.cond;
    fit.residual = s.rms;

    // remainder behaviour on suffixes that remain overdetermined
    std::vector<double> lm, lr;
    for (size_t i = 0; i + N + 1 < grid.size() + 1 && grid.size() - i >= static_cast<size_t>(N + 1); ++i) {
        std::vector<double> g(grid.begin() + i, grid.end());
        std::vector<cd> v(y.begin() + i, y.end());
        if (static_cast<int>(g.size()) < N + 1) break;
        auto r = solve_ls<double>(g, v, N);
        fit.suffix_residuals.push_back(r.rms);
        if (r.rms > 0) {
            lm.push_back(std::log(g.front()));
            lr.push_back(std::log(r.rms));
        }
    }
    if (lm.size() >= 2) {
        double mx = 0, my = 0;
        for (size_t i = 0; i < lm.size(); ++i) {
            mx += lm[i];
            my += lr[i];
        }
        mx /= lm.size();
        my /= lm.size();
        double sxy = 0, sxx = 0;
        for (size_t i = 0; i < lm.size(); ++i) {
            sxy += (lm[i] - mx) * (lr[i] - my);
            sxx += (lm[i] - mx) * (lm[i] - mx);
        }
        fit.remainder_slope = sxx > 0 ? sxy / sxx : 0;
    }
    return fit;
}

AsymptoticFit fit_inverse_powers(const std::vector<double> &grid, const std::vector<double> &values, int N, int n, const FitOptions &opt) {
    return fit_inverse_powers(grid, std::vector<cd>(values.begin(), values.end()), N, n, opt);
}

NuSeries<cd> formalize(const AsymptoticFit &fit) {
    int n = fit.prefactor_power;
    int N = static_cast<int>(fit.coeffs.size());
    return NuSeries<cd>(-n, fit.coeffs, N - n, cd(0));
}

cd richardson_limit(const std::vector<double> &grid, const std::vector<cd> &values, int k) {
    int M = static_cast<int>(grid.size());
    if (k < 0 || k + 1 > M) throw DomainError("not enough samples for extrapolation");
    // Neville's scheme in x = 1/m, evaluated at x = 0
    std::vector<double> x;
    std::vector<cd> p;
    for (int i = M - k - 1; i < M; ++i) {
        x.push_back(1.0 / grid[i]);
        p.push_back(values[i]);
    }
    for (int level = 1; level <= k; ++level)
        for (int i = 0; i + level <= k; ++i) p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    return p[0];
}

DecayResult decay_rate(const std::vector<double> &grid, const std::vector<double> &samples, double cap) {
    if (grid.size() != samples.size() || grid.size() < 3) throw DomainError("decay fit needs at least three samples");
    for (double s : samples)
        if (!(s > 0)) throw DomainError("decay samples must be positive");
    int M = static_cast<int>(grid.size());
    Eigen::MatrixXd A(M, 3);
    Eigen::VectorXd b(M);
    for (int i = 0; i < M; ++i) {
        A(i, 0) = grid[i];
        A(i, 1) = std::log(grid[i]);
        A(i, 2) = 1.0;
        b(i) = std::log(samples[i]);
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    DecayResult d{x(0), x(1), x(2), {}, false};
    for (int i = 0; i + 1 < M; ++i)
        d.local_slopes.push_back((std::log(samples[i + 1]) - std::log(samples[i])) / (std::log(grid[i + 1]) - std::log(grid[i])));
    bool decreasing = true;
    for (size_t i = 0; i + 1 < d.local_slopes.size(); ++i)
        if (!(d.local_slopes[i + 1] < d.local_slopes[i])) decreasing = false;
    d.superpolynomial = decreasing && d.local_slopes.back() < -cap;
    return d;
}

double loglog_slope(const std::vector<double> &grid, const std::vector<double> &values) {
    if (grid.size() != values.size() || grid.size() < 2) throw DomainError("slope needs at least two samples");
    double mx = 0, my = 0;
    int M = static_cast<int>(grid.size());
    for (int i = 0; i < M; ++i) {
        mx += std::log(grid[i]);
        my += std::log(std::abs(values[i]));
    }
    mx /= M;
    my /= M;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < M; ++i) {
        double dx = std::log(grid[i]) - mx;
        sxy += dx * (std::log(std::abs(values[i])) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double ToleranceSchedule::at(int r) const { return base * std::pow(growth, r); }

CompareReport compare_formal(const AsymptoticFit &fit, const NuSeries<cd> &formal, const std::vector<int> &orders, const ToleranceSchedule &tol,
                             double floor) {
    CompareReport rep;
    NuSeries<cd> fitted = formalize(fit);
    for (int r : orders) {
        if (!fitted.known(r) || r < fitted.min_order() || !formal.known(r)) continue;
        CompareEntry e;
        e.nu_order = r;
        e.fitted = fitted.coeff(r);
        e.formal = r < formal.min_order() ? cd(0) : formal.coeff(r);
        e.deviation = std::abs(e.fitted - e.formal) / std::max(std::abs(e.formal), floor);
        e.tolerance = tol.at(r);
        e.pass = e.deviation <= e.tolerance;
        rep.entries.push_back(e);
    }
    if (rep.entries.empty()) throw DomainError("fit and formal series share no known orders");
    rep.ok = true;
    for (auto &e : rep.entries) rep.ok = rep.ok && e.pass;
    return rep;
}

namespace {
json cjson(cd v) { return json::array({v.real(), v.imag()}); }
} // namespace

json to_json(const AsymptoticFit &fit) {
    json c = json::array();
    for (auto &x : fit.coeffs) c.push_back(cjson(x));
    return json{{"grid", fit.grid},
                {"prefactor", fit.prefactor_power},
                {"coeffs", c},
                {"uncertainty", fit.uncertainty},
                {"std_error", fit.std_error},
                {"truncation", fit.truncation},
                {"residual", fit.residual},
                {"condition", fit.condition},
                {"extended_precision", fit.extended_precision},
                {"slopes", {{"suffix_residuals", fit.suffix_residuals}, {"remainder_slope", fit.remainder_slope}}}};
}

json to_json(const CompareReport &rep) {
    json e = json::array();
    for (auto &x : rep.entries)
        e.push_back({{"nu_order", x.nu_order},
                     {"fitted", cjson(x.fitted)},
                     {"formal", cjson(x.formal)},
                     {"deviation", x.deviation},
                     {"tolerance", x.tolerance},
                     {"pass", x.pass}});
    return json{{"ok", rep.ok}, {"entries", e}};
}

} // namespace bzl::asym

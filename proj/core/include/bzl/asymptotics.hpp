#pragma once

#include "bzl/nu_series.hpp"

#include <vector>

namespace bzl::asym {

// values(m) ~ m^n sum_{r < N} a_r m^{-r}
struct AsymptoticFit {
    std::vector<double> grid;
    std::vector<cd> values;
    int prefactor_power = 0;
    std::vector<cd> coeffs;
    std::vector<double> std_error;   // least-squares standard errors
    std::vector<double> truncation;  // |a_r - a_r of the order N-1 fit|
    std::vector<double> uncertainty; // max of the two
    double residual = 0;             // rms misfit, in units of values / m^n at the largest m
    double condition = 0;            // of the column-scaled design matrix
    bool extended_precision = false;
    std::vector<double> suffix_residuals; // refits on grid suffixes
    double remainder_slope = 0;           // d log(residual) / d log(m_min) over suffixes

    cd coeff(int r) const { return r < static_cast<int>(coeffs.size()) ? coeffs[r] : cd(0); }
};

struct FitOptions {
    double extended_threshold = 1e8;  // switch to long double above this condition number
    double refusal_threshold = 1e14;  // refuse above this
};

AsymptoticFit fit_inverse_powers(const std::vector<double> &grid, const std::vector<cd> &values, int N, int prefactor_power,
                                 const FitOptions &opt = {});
AsymptoticFit fit_inverse_powers(const std::vector<double> &grid, const std::vector<double> &values, int N, int prefactor_power,
                                 const FitOptions &opt = {});

// Formal Laurent series in nu = 1/m: sum_r a_r nu^{r - n}.
NuSeries<cd> formalize(const AsymptoticFit &fit);

// Polynomial extrapolation of values in 1/m to 1/m = 0 from the last k+1 samples.
cd richardson_limit(const std::vector<double> &grid, const std::vector<cd> &values, int k);

struct DecayResult {
    double rate = 0;   // log s ~ rate m + power log m + offset
    double power = 0;
    double offset = 0;
    std::vector<double> local_slopes; // d log s / d log m between consecutive samples
    bool superpolynomial = false;
};
DecayResult decay_rate(const std::vector<double> &grid, const std::vector<double> &samples, double polynomial_cap = 6.0);

// Least-squares slope of log|values| against log m.
double loglog_slope(const std::vector<double> &grid, const std::vector<double> &values);

// Relative tolerance base * growth^r for the nu^r coefficient.
struct ToleranceSchedule {
    double base = 1e-3;
    double growth = 4.0;
    double at(int r) const;
};

struct CompareEntry {
    int nu_order = 0;
    cd fitted, formal;
    double deviation = 0;
    double tolerance = 0;
    bool pass = false;
};
struct CompareReport {
    std::vector<CompareEntry> entries;
    bool ok = false;
};
CompareReport compare_formal(const AsymptoticFit &fit, const NuSeries<cd> &formal, const std::vector<int> &nu_orders,
                             const ToleranceSchedule &tol = {}, double floor = 1e-2);

json to_json(const AsymptoticFit &fit);
json to_json(const CompareReport &rep);

} // namespace bzl::asym

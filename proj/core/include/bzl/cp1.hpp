#pragma once

#include "bzl/potentials.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace bzl::cp1 {

// Point of CP^1 in homogeneous coordinates, z = z1 / z0.
struct HPoint {
    cd z0{1.0, 0.0}, z1{0.0, 0.0};

    static HPoint affine(cd z) {
        if (std::abs(z) <= 1.0) return {cd(1.0), z};
        return {1.0 / z, cd(1.0)};
    }
    static HPoint infinity() { return {cd(0.0), cd(1.0)}; }
    // polar angle theta from z = 0, azimuth phi
    static HPoint sphere(double theta, double phi) {
        return {cd(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)};
    }
    HPoint normalized() const {
        double n = std::sqrt(std::norm(z0) + std::norm(z1));
        return {z0 / n, z1 / n};
    }
    HPoint phased(double t) const { return {z0 * std::polar(1.0, t), z1 * std::polar(1.0, t)}; }
    bool at_infinity() const { return std::abs(z0) < 1e-300; }
    cd affine_coordinate() const { return z1 / z0; }
};

// sum coeff z^a zb^b (1 + z zb)^{-c}
struct SymbolTerm {
    int a = 0, b = 0, c = 0;
    QQi coeff;
};

class SymbolFunction {
  public:
    SymbolFunction() = default;
    explicit SymbolFunction(std::vector<SymbolTerm> terms, std::string name = {});
    static SymbolFunction constant(const QQi &c);
    // Polynomial p(z, zb) with coefficients p[(i, j)], i.e. terms with c = 0.
    static SymbolFunction polynomial(const std::map<std::pair<int, int>, QQi> &p);

    const std::vector<SymbolTerm> &terms() const { return terms_; }
    const std::string &name() const { return name_; }
    SymbolFunction named(std::string n) const {
        SymbolFunction r = *this;
        r.name_ = std::move(n);
        return r;
    }

    // Common-denominator form: every term shares c = C; exact cancellation.
    SymbolFunction normalized() const;
    // a <= c and b <= c for all terms of the normalized form.
    bool is_smooth() const;
    bool is_real() const;
    int denominator_power() const; // C of the normalized form

    SymbolFunction conj() const;
    SymbolFunction dz() const;
    SymbolFunction dzb() const;
    SymbolFunction scaled(const QQi &s) const;
    friend SymbolFunction operator+(const SymbolFunction &f, const SymbolFunction &g);
    friend SymbolFunction operator-(const SymbolFunction &f, const SymbolFunction &g);
    friend SymbolFunction operator*(const SymbolFunction &f, const SymbolFunction &g);

    cd operator()(const HPoint &p) const;
    cd operator()(cd z) const { return (*this)(HPoint::affine(z)); }
    QQi exact_at(const QQi &z) const;
    // Taylor jet in the displacement (z, zb) about x0, exact.
    Jet<QQi> jet_at(const QQi &x0, int order) const;

  private:
    std::vector<SymbolTerm> terms_;
    std::string name_;
};

// Rational (m+1) x (m+1) matrix, row-major, entry (k, j).
struct QMatrix {
    int n = 0;
    std::vector<QQi> a;
    QMatrix() = default;
    explicit QMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_) {}
    static QMatrix identity(int n);
    QQi &operator()(int k, int j) { return a[static_cast<size_t>(k) * n + j]; }
    const QQi &operator()(int k, int j) const { return a[static_cast<size_t>(k) * n + j]; }
    friend QMatrix operator*(const QMatrix &x, const QMatrix &y);
    friend QMatrix operator-(const QMatrix &x, const QMatrix &y);
    friend QMatrix operator+(const QMatrix &x, const QMatrix &y);
    friend bool operator==(const QMatrix &x, const QMatrix &y) { return x.n == y.n && x.a == y.a; }
    QQi trace() const;
    QMatrix adjoint_in(const std::vector<Rational> &gram) const; // adjoint under diag(gram)
    Eigen::MatrixXcd to_double() const;
};

// ||z^j||^2_m = 2 pi q_j with q_j = j!(m-j)!/(m+1)!
Rational norm_ratio(int j, int m);
// <z^j, z^k>_m as a rational multiple of pi
PiQ section_inner_product(int j, int k, int m);
int dim_sections(int m);

struct ToeplitzOperator {
    int m = 0;
    QMatrix exact; // monomial basis
    std::string symbol;

    Eigen::MatrixXcd monomial_matrix() const { return exact.to_double(); }
    Eigen::MatrixXcd orthonormal_matrix() const;
    friend ToeplitzOperator operator*(const ToeplitzOperator &x, const ToeplitzOperator &y) {
        return {x.m, x.exact * y.exact, x.symbol + "*" + y.symbol};
    }
    friend ToeplitzOperator operator-(const ToeplitzOperator &x, const ToeplitzOperator &y) {
        return {x.m, x.exact - y.exact, x.symbol + "-" + y.symbol};
    }
};

ToeplitzOperator toeplitz_matrix(const SymbolFunction &f, int m);
// Adjoint of a Toeplitz matrix under the L^2 inner product.
ToeplitzOperator adjoint(const ToeplitzOperator &T);

// Kernel functions on CP^1 with unit frames.
struct KernelData {
    int m = 0;
    std::vector<double> inv_norm; // 1 / ||z^j||^2

    explicit KernelData(int m_);
    cd bergman(const HPoint &x, const HPoint &y) const; // B_m(alpha(x), alpha(y))
    double u(const HPoint &x) const;
    double v(const HPoint &x, const HPoint &y) const;
    cd w(const HPoint &x, const HPoint &y, const HPoint &z) const;
    double u_closed_form() const { return (m + 1) / (2 * M_PI); }
};

// Covariant symbol <A e_x, e_x> / <e_x, e_x>.
cd covariant_symbol(const ToeplitzOperator &A, const HPoint &x);
cd covariant_symbol(const ToeplitzOperator &A, const HPoint &x, double frame_phase);
QQi covariant_symbol_exact(const ToeplitzOperator &A, const QQi &x);

// Quadrature over CP^1 with respect to Omega (total 2 pi): Gauss-Legendre in
// cos(theta) times the trapezoid rule in phi.
struct SphereQuadrature {
    std::vector<HPoint> points;
    std::vector<double> weights;
    SphereQuadrature(int n_theta, int n_phi);
    template <class F> auto integrate(F &&f) const {
        using R = decltype(f(points[0]));
        R s{};
        for (size_t i = 0; i < points.size(); ++i) s += weights[i] * f(points[i]);
        return s;
    }
};
// Quadrature exact for polynomials of the embedding coordinates up to degree d.
SphereQuadrature sphere_quadrature_for_degree(int d);

enum class Route { Operator, Integral };
cd berezin_transform_m(const SymbolFunction &f, const HPoint &x, int m, Route route = Route::Operator);
QQi berezin_transform_m_exact(const SymbolFunction &f, const QQi &x, int m);
// Integral route for an arbitrary bounded function (e.g. a smooth bump).
cd berezin_transform_integral(const std::function<cd(const HPoint &)> &f, const HPoint &x, int m, const SphereQuadrature &q);
cd twisted_product_m(const SymbolFunction &f, const SymbolFunction &g, const HPoint &x, int m, Route route = Route::Operator);
QQi twisted_product_m_exact(const SymbolFunction &f, const SymbolFunction &g, const QQi &x, int m);

struct NormResult {
    double value = 0;
    int iterations = 0;
    bool used_fallback = false;
};
// Spectral norm in the L^2 inner product: power iteration on A^dagger A
// from a fixed start vector, Hermitian eigensolver on stagnation.
NormResult operator_norm(const Eigen::MatrixXcd &orthonormal, double tol = 1e-15, int max_iter = 20000);
NormResult operator_norm(const ToeplitzOperator &A);
QQi trace(const ToeplitzOperator &A);
cd trace_integral(const SymbolFunction &f, int m); // int f u_m Omega

// Fixed quasi-uniform grid on the sphere (Fibonacci lattice plus both poles).
std::vector<HPoint> sphere_grid(int n = 2000);
double sup_norm(const SymbolFunction &f, const std::vector<HPoint> &grid);
double covariant_sup_norm(const ToeplitzOperator &A, const std::vector<HPoint> &grid);

// omega^(m) = c_m omega_{-1} from the mixed Hessian of log sum_j |z^j|^2/||z^j||^2.
Rational kodaira_coefficient_exact(int m); // at z = 0
double kodaira_coefficient(int m, cd x);   // at any affine point

// int omega_can / int omega_{-1}, theta the log of the Omega density,
// computed by quadrature of mixed Hessians of jets.
double canonical_degree(int quadrature_degree = 24);

// {f,g} = i (1+|z|^2)^2 (f_z g_zb - f_zb g_z)
SymbolFunction poisson_bracket(const SymbolFunction &f, const SymbolFunction &g);
// The Laplace-Beltrami operator (1+|z|^2)^2 d_z d_zb.
SymbolFunction laplacian(const SymbolFunction &f);

// Named symbols used by configs and suites.
SymbolFunction symbol_by_name(const std::string &name);
std::vector<std::string> symbol_names();

} // namespace bzl::cp1

#include "bzl/cp1.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <mutex>
#include <numbers>

namespace bzl::cp1 {

namespace {

Rational factorial_q(int n) {
    static std::vector<Rational> table{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) table.push_back(table.back() * Rational(static_cast<long>(table.size())));
    return table[n];
}

// B(x, y) for positive integers
Rational beta_q(int x, int y) { return factorial_q(x - 1) * factorial_q(y - 1) / factorial_q(x + y - 1); }

long binom_l(int n, int k) { return binomial(n, k); }

using Key = std::pair<int, int>; // (a, b)

// numerator polynomial over a common denominator (1 + t)^C
struct Normal {
    std::map<Key, QQi> num;
    int C = 0;
};

Normal normal_form(const std::vector<SymbolTerm> &terms) {
    Normal n;
    for (auto &t : terms) n.C = std::max(n.C, t.c);
    for (auto &t : terms) {
        if (t.coeff.is_zero()) continue;
        int e = n.C - t.c;
        for (int i = 0; i <= e; ++i) {
            auto &slot = n.num[{t.a + i, t.b + i}];
            slot += t.coeff * QQi(binom_l(e, i));
        }
    }
    for (auto it = n.num.begin(); it != n.num.end();)
        it = it->second.is_zero() ? n.num.erase(it) : std::next(it);
    // divide by (1 + t) while every diagonal group vanishes at t = -1
    while (n.C > 0 && !n.num.empty()) {
        std::map<int, std::map<int, QQi>> groups; // d = a - b -> (min(a,b) -> coeff)
        for (auto &[k, c] : n.num) groups[k.first - k.second][std::min(k.first, k.second)] = c;
        bool divisible = true;
        for (auto &[d, g] : groups) {
            QQi v;
            for (auto &[i, c] : g) v += (i % 2 ? -c : c);
            if (!v.is_zero()) {
                divisible = false;
                break;
            }
        }
        if (!divisible) break;
        std::map<Key, QQi> out;
        for (auto &[d, g] : groups) {
            int top = g.rbegin()->first;
            // synthetic division of sum g_i t^i by (t + 1), highest degree first
            QQi carry;
            std::vector<QQi> q(top);
            for (int i = top; i >= 1; --i) {
                QQi gi = g.count(i) ? g[i] : QQi();
                carry = gi - carry;
                q[i - 1] = carry;
            }
            for (int i = 0; i < top; ++i)
                if (!q[i].is_zero()) out[{i + std::max(d, 0), i + std::max(-d, 0)}] = q[i];
        }
        n.num = std::move(out);
        --n.C;
    }
    if (n.num.empty()) n.C = 0;
    return n;
}

Jet<QQi> chart_poly_jet(const QQi &x0, int a, int b, int order) {
    auto v = chart_vars();
    Jet<QQi> like(v, kExact);
    Jet<QQi> p = Jet<QQi>::constant(x0, like) + Jet<QQi>::variable(0, like);
    Jet<QQi> q = Jet<QQi>::constant(x0.conj(), like) + Jet<QQi>::variable(1, like);
    Jet<QQi> r = like.one().with_order(order);
    for (int i = 0; i < a; ++i) r = r * p;
    for (int i = 0; i < b; ++i) r = r * q;
    return r.with_order(order);
}

// v_j = z1^j z0^{m-j} for a normalized point
std::vector<cd> section_values(const HPoint &x, int m) {
    std::vector<cd> v(m + 1);
    std::vector<cd> p1(m + 1), p0(m + 1);
    p1[0] = p0[0] = 1.0;
    for (int j = 1; j <= m; ++j) {
        p1[j] = p1[j - 1] * x.z1;
        p0[j] = p0[j - 1] * x.z0;
    }
    for (int j = 0; j <= m; ++j) v[j] = p1[j] * p0[m - j];
    return v;
}

std::vector<double> gram_double(int m) {
    std::vector<double> g(m + 1);
    for (int j = 0; j <= m; ++j) g[j] = norm_ratio(j, m).convert_to<double>();
    return g;
}

} // namespace

SymbolFunction::SymbolFunction(std::vector<SymbolTerm> terms, std::string name) : name_(std::move(name)) {
    Normal n = normal_form(terms);
    for (auto &[k, c] : n.num) terms_.push_back({k.first, k.second, n.C, c});
}

SymbolFunction SymbolFunction::constant(const QQi &c) { return SymbolFunction({{0, 0, 0, c}}); }

SymbolFunction SymbolFunction::polynomial(const std::map<std::pair<int, int>, QQi> &p) {
    std::vector<SymbolTerm> t;
    for (auto &[k, c] : p) t.push_back({k.first, k.second, 0, c});
    return SymbolFunction(t);
}

SymbolFunction SymbolFunction::normalized() const { return *this; }

int SymbolFunction::denominator_power() const { return terms_.empty() ? 0 : terms_.front().c; }

bool SymbolFunction::is_smooth() const {
    for (auto &t : terms_)
        if (t.a > t.c || t.b > t.c) return false;
    return true;
}

bool SymbolFunction::is_real() const {
    SymbolFunction d = *this - conj();
    return d.terms_.empty();
}

SymbolFunction SymbolFunction::conj() const {
    std::vector<SymbolTerm> t;
    for (auto &x : terms_) t.push_back({x.b, x.a, x.c, x.coeff.conj()});
    return SymbolFunction(t, name_.empty() ? "" : "conj(" + name_ + ")");
}

SymbolFunction SymbolFunction::dz() const {
    std::vector<SymbolTerm> t;
    for (auto &x : terms_) {
        if (x.a > 0) t.push_back({x.a - 1, x.b, x.c, x.coeff * QQi(x.a)});
        if (x.c != 0) t.push_back({x.a, x.b + 1, x.c + 1, x.coeff * QQi(-x.c)});
    }
    return SymbolFunction(t);
}

SymbolFunction SymbolFunction::dzb() const { return conj().dz().conj(); }

SymbolFunction SymbolFunction::scaled(const QQi &s) const {
    std::vector<SymbolTerm> t = terms_;
    for (auto &x : t) x.coeff = x.coeff * s;
    return SymbolFunction(t, name_);
}

SymbolFunction operator+(const SymbolFunction &f, const SymbolFunction &g) {
    std::vector<SymbolTerm> t = f.terms_;
    t.insert(t.end(), g.terms_.begin(), g.terms_.end());
    return SymbolFunction(t);
}

SymbolFunction operator-(const SymbolFunction &f, const SymbolFunction &g) { return f + g.scaled(QQi(-1)); }

SymbolFunction operator*(const SymbolFunction &f, const SymbolFunction &g) {
    std::vector<SymbolTerm> t;
    for (auto &x : f.terms_)
        for (auto &y : g.terms_) t.push_back({x.a + y.a, x.b + y.b, x.c + y.c, x.coeff * y.coeff});
    return SymbolFunction(t);
}

cd SymbolFunction::operator()(const HPoint &p0) const {
    HPoint p = p0.normalized();
    cd s = 0;
    if (is_smooth()) {
        for (auto &t : terms_) {
            cd v = std::pow(p.z1, t.a) * std::pow(std::conj(p.z1), t.b) * std::pow(p.z0, t.c - t.a) * std::pow(std::conj(p.z0), t.c - t.b);
            s += scalar_traits<QQi>::to_cd(t.coeff) * v;
        }
        return s;
    }
    if (p.at_infinity()) throw DomainError("symbol is not smooth at infinity");
    cd z = p.affine_coordinate();
    double den = 1 + std::norm(z);
    for (auto &t : terms_) s += scalar_traits<QQi>::to_cd(t.coeff) * std::pow(z, t.a) * std::pow(std::conj(z), t.b) * std::pow(den, -t.c);
    return s;
}

QQi SymbolFunction::exact_at(const QQi &z) const {
    QQi s;
    QQi den = QQi(1) + z * z.conj();
    for (auto &t : terms_) {
        QQi v = t.coeff;
        for (int i = 0; i < t.a; ++i) v = v * z;
        for (int i = 0; i < t.b; ++i) v = v * z.conj();
        QQi d(1);
        for (int i = 0; i < std::abs(t.c); ++i) d = d * den;
        s += t.c >= 0 ? v / d : v * d;
    }
    return s;
}

Jet<QQi> SymbolFunction::jet_at(const QQi &x0, int order) const {
    auto v = chart_vars();
    Jet<QQi> num(v, order);
    bool first = true;
    for (auto &t : terms_) {
        Jet<QQi> m = chart_poly_jet(x0, t.a, t.b, order).scaled(t.coeff);
        num = first ? m : num + m;
        first = false;
    }
    int C = denominator_power();
    if (C == 0) return num.with_order(order);
    Jet<QQi> base = chart_poly_jet(x0, 1, 1, order) + Jet<QQi>::constant(QQi(1), Jet<QQi>(v, kExact));
    Jet<QQi> inv = base.with_order(order).inverse();
    Jet<QQi> r = num;
    for (int i = 0; i < C; ++i) r = r * inv;
    return r;
}

QMatrix QMatrix::identity(int n) {
    QMatrix r(n);
    for (int i = 0; i < n; ++i) r(i, i) = QQi(1);
    return r;
}

QMatrix operator*(const QMatrix &x, const QMatrix &y) {
    QMatrix r(x.n);
    for (int k = 0; k < x.n; ++k)
        for (int l = 0; l < x.n; ++l) {
            const QQi &a = x(k, l);
            if (a.is_zero()) continue;
            for (int j = 0; j < x.n; ++j) {
                const QQi &b = y(l, j);
                if (!b.is_zero()) r(k, j) += a * b;
            }
        }
    return r;
}

QMatrix operator-(const QMatrix &x, const QMatrix &y) {
    QMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMatrix operator+(const QMatrix &x, const QMatrix &y) {
    QMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QQi QMatrix::trace() const {
    QQi s;
    for (int i = 0; i < n; ++i) s += (*this)(i, i);
    return s;
}

QMatrix QMatrix::adjoint_in(const std::vector<Rational> &gram) const {
    QMatrix r(n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            const QQi &v = (*this)(j, k);
            if (!v.is_zero()) r(k, j) = v.conj() * QQi(gram[j] / gram[k]);
        }
    return r;
}

Eigen::MatrixXcd QMatrix::to_double() const {
    Eigen::MatrixXcd r(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) r(k, j) = scalar_traits<QQi>::to_cd((*this)(k, j));
    return r;
}

Rational norm_ratio(int j, int m) {
    if (j < 0 || j > m) throw DomainError("section index out of range");
    return factorial_q(j) * factorial_q(m - j) / factorial_q(m + 1);
}

PiQ section_inner_product(int j, int k, int m) {
    if (j < 0 || k < 0 || j > m || k > m) throw DomainError("section index out of range");
    if (j != k) return PiQ();
    return PiQ(QQi(norm_ratio(j, m) * 2), 1);
}

int dim_sections(int m) {
    if (m < 0) throw DomainError("level must be nonnegative");
    return m + 1; // monomial basis z^0 .. z^m
}

Eigen::MatrixXcd ToeplitzOperator::orthonormal_matrix() const {
    Eigen::MatrixXcd A = exact.to_double();
    std::vector<double> g = gram_double(m);
    for (int k = 0; k <= m; ++k)
        for (int j = 0; j <= m; ++j) A(k, j) *= std::sqrt(g[k] / g[j]);
    return A;
}

ToeplitzOperator toeplitz_matrix(const SymbolFunction &f, int m) {
    if (m < 0) throw DomainError("level must be nonnegative");
    if (!f.is_smooth()) throw DomainError("symbol is not smooth on CP^1");
    ToeplitzOperator T{m, QMatrix(m + 1), f.name()};
    for (auto &t : f.terms())
        for (int j = 0; j <= m; ++j) {
            int k = j + t.a - t.b;
            if (k < 0 || k > m) continue;
            int p = t.a + j;
            Rational e = beta_q(p + 1, t.c + m + 1 - p) / beta_q(k + 1, m + 1 - k);
            T.exact(k, j) += t.coeff * QQi(e);
        }
    return T;
}

ToeplitzOperator adjoint(const ToeplitzOperator &T) {
    std::vector<Rational> g;
    for (int j = 0; j <= T.m; ++j) g.push_back(norm_ratio(j, T.m));
    return {T.m, T.exact.adjoint_in(g), "adj(" + T.symbol + ")"};
}

KernelData::KernelData(int m_) : m(m_) {
    for (int j = 0; j <= m; ++j) inv_norm.push_back(1.0 / (2 * std::numbers::pi * norm_ratio(j, m).convert_to<double>()));
}

cd KernelData::bergman(const HPoint &x, const HPoint &y) const {
    auto vx = section_values(x.normalized(), m), vy = section_values(y.normalized(), m);
    cd s = 0;
    for (int j = 0; j <= m; ++j) s += vx[j] * std::conj(vy[j]) * inv_norm[j];
    return s;
}

double KernelData::u(const HPoint &x) const { return bergman(x, x).real(); }
double KernelData::v(const HPoint &x, const HPoint &y) const { return std::norm(bergman(x, y)); }
cd KernelData::w(const HPoint &x, const HPoint &y, const HPoint &z) const { return bergman(x, y) * bergman(y, z) * bergman(z, x); }

namespace {

cd covariant_symbol_prepared(const Eigen::MatrixXcd &M, const std::vector<double> &g, const HPoint &x, double frame_phase) {
    int m = static_cast<int>(g.size()) - 1;
    auto v = section_values(x.normalized().phased(frame_phase), m);
    Eigen::VectorXcd c(m + 1);
    for (int j = 0; j <= m; ++j) c(j) = std::conj(v[j]) / g[j];
    Eigen::VectorXcd Ac = M * c;
    cd num = 0;
    double den = 0;
    for (int k = 0; k <= m; ++k) {
        num += Ac(k) * std::conj(c(k)) * g[k];
        den += std::norm(c(k)) * g[k];
    }
    return num / den;
}

} // namespace

cd covariant_symbol(const ToeplitzOperator &A, const HPoint &x, double frame_phase) {
    return covariant_symbol_prepared(A.exact.to_double(), gram_double(A.m), x, frame_phase);
}

cd covariant_symbol(const ToeplitzOperator &A, const HPoint &x) { return covariant_symbol(A, x, 0.0); }

QQi covariant_symbol_exact(const ToeplitzOperator &A, const QQi &x) {
    int m = A.m;
    std::vector<QQi> c(m + 1);
    std::vector<Rational> g(m + 1);
    QQi p(1);
    for (int j = 0; j <= m; ++j) {
        g[j] = norm_ratio(j, m);
        c[j] = p * QQi(Rational(1) / g[j]);
        p = p * x.conj();
    }
    QQi num, den;
    for (int k = 0; k <= m; ++k) {
        QQi row;
        for (int j = 0; j <= m; ++j)
            if (!A.exact(k, j).is_zero() && !c[j].is_zero()) row += A.exact(k, j) * c[j];
        num += row * c[k].conj() * QQi(g[k]);
        den += c[k] * c[k].conj() * QQi(g[k]);
    }
    return num / den;
}

SphereQuadrature::SphereQuadrature(int n_theta, int n_phi) {
    std::vector<double> pos = boost::math::legendre_p_zeros<double>(n_theta);
    std::vector<double> nodes;
    for (double x : pos) {
        nodes.push_back(x);
        if (x != 0.0) nodes.push_back(-x);
    }
    for (double u : nodes) {
        double dp = boost::math::legendre_p_prime(n_theta, u);
        double wu = 2.0 / ((1 - u * u) * dp * dp);
        double theta = std::acos(u);
        for (int k = 0; k < n_phi; ++k) {
            points.push_back(HPoint::sphere(theta, 2 * std::numbers::pi * k / n_phi));
            weights.push_back(0.5 * wu * 2 * std::numbers::pi / n_phi);
        }
    }
}

SphereQuadrature sphere_quadrature_for_degree(int d) { return SphereQuadrature(d / 2 + 2, d + 2); }

cd berezin_transform_integral(const std::function<cd(const HPoint &)> &f, const HPoint &x, int m, const SphereQuadrature &q) {
    KernelData K(m);
    double u = K.u(x);
    return q.integrate([&](const HPoint &y) { return K.v(x, y) * f(y); }) / u;
}

cd berezin_transform_m(const SymbolFunction &f, const HPoint &x, int m, Route route) {
    if (route == Route::Operator) return covariant_symbol(toeplitz_matrix(f, m), x);
    auto q = sphere_quadrature_for_degree(m + f.denominator_power() + 2);
    return berezin_transform_integral([&](const HPoint &y) { return f(y); }, x, m, q);
}

QQi berezin_transform_m_exact(const SymbolFunction &f, const QQi &x, int m) { return covariant_symbol_exact(toeplitz_matrix(f, m), x); }

cd twisted_product_m(const SymbolFunction &f, const SymbolFunction &g, const HPoint &x, int m, Route route) {
    if (route == Route::Operator) return covariant_symbol(toeplitz_matrix(f, m) * toeplitz_matrix(g, m), x);
    KernelData K(m);
    auto q = sphere_quadrature_for_degree(m + std::max(f.denominator_power(), g.denominator_power()) + 2);
    std::vector<cd> fy, gy, bxy, bzx;
    for (auto &p : q.points) {
        fy.push_back(f(p));
        gy.push_back(g(p));
        bxy.push_back(K.bergman(x, p));
        bzx.push_back(K.bergman(p, x));
    }
    cd s = 0;
    for (size_t i = 0; i < q.points.size(); ++i) {
        cd inner = 0;
        for (size_t j = 0; j < q.points.size(); ++j) inner += q.weights[j] * K.bergman(q.points[i], q.points[j]) * bzx[j] * gy[j];
        s += q.weights[i] * bxy[i] * fy[i] * inner;
    }
    return s / K.u(x);
}

QQi twisted_product_m_exact(const SymbolFunction &f, const SymbolFunction &g, const QQi &x, int m) {
    return covariant_symbol_exact(toeplitz_matrix(f, m) * toeplitz_matrix(g, m), x);
}

NormResult operator_norm(const Eigen::MatrixXcd &A, double tol, int max_iter) {
    Eigen::MatrixXcd B = A.adjoint() * A;
    int n = static_cast<int>(B.rows());
    Eigen::VectorXcd x(n);
    for (int i = 0; i < n; ++i) x(i) = 1.0 + 0.5 * std::sin(i + 1.0);
    x.normalize();
    double lam = 0, best = std::numeric_limits<double>::infinity();
    int since_best = 0, it = 1;
    const int patience = 100;
    for (; it <= max_iter; ++it) {
        Eigen::VectorXcd y = B * x;
        double l = x.dot(y).real(); // x^H y
        double ny = y.norm();
        if (ny == 0) return {0.0, it, false};
        x = y / ny;
        double d = std::abs(l - lam);
        if (it > 1 && d <= tol * std::abs(l)) return {std::sqrt(std::max(l, 0.0)), it, false};
        // stagnation: successive Rayleigh quotients stop improving (rounding floor)
        if (it > 1 && d < best) {
            best = d;
            since_best = 0;
        } else if (++since_best >= patience) {
            break;
        }
        lam = l;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
    return {std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0)), std::min(it, max_iter), true};
}

NormResult operator_norm(const ToeplitzOperator &A) { return operator_norm(A.orthonormal_matrix()); }

QQi trace(const ToeplitzOperator &A) { return A.exact.trace(); }

cd trace_integral(const SymbolFunction &f, int m) {
    KernelData K(m);
    auto q = sphere_quadrature_for_degree(f.denominator_power() + 2);
    return q.integrate([&](const HPoint &y) { return K.u(y) * f(y); });
}

std::vector<HPoint> sphere_grid(int n) {
    std::vector<HPoint> g;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double u = 1.0 - 2.0 * i / (n - 1);
        g.push_back(HPoint::sphere(std::acos(std::clamp(u, -1.0, 1.0)), golden * i));
    }
    return g;
}

double sup_norm(const SymbolFunction &f, const std::vector<HPoint> &grid) {
    double s = 0;
    for (auto &p : grid) s = std::max(s, std::abs(f(p)));
    return s;
}

double covariant_sup_norm(const ToeplitzOperator &A, const std::vector<HPoint> &grid) {
    Eigen::MatrixXcd M = A.exact.to_double();
    std::vector<double> g = gram_double(A.m);
    double s = 0;
    for (auto &p : grid) s = std::max(s, std::abs(covariant_symbol_prepared(M, g, p, 0.0)));
    return s;
}

Rational kodaira_coefficient_exact(int m) {
    if (m < 1) throw DomainError("level must be at least 1");
    // S(t) = sum_j t^j / q_j; d_z d_zb log S at 0 is S'(0)/S(0); omega_{-1} has Hessian 1 there
    return (Rational(1) / norm_ratio(1, m)) / (Rational(1) / norm_ratio(0, m));
}

double kodaira_coefficient(int m, cd x) {
    if (m < 1) throw DomainError("level must be at least 1");
    double t = std::norm(x);
    double S = 0, S1 = 0, S2 = 0;
    for (int j = 0; j <= m; ++j) {
        double a = 1.0 / norm_ratio(j, m).convert_to<double>();
        S += a * std::pow(t, j);
        if (j >= 1) S1 += a * j * std::pow(t, j - 1);
        if (j >= 2) S2 += a * j * (j - 1) * std::pow(t, j - 2);
    }
    // d_z d_zb F(|z|^2) = F'(t) + t F''(t) with F = log S
    double F1 = S1 / S, F2 = S2 / S - F1 * F1;
    double hess = F1 + t * F2;
    return hess * (1 + t) * (1 + t);
}

double canonical_degree(int quadrature_degree) {
    auto q = sphere_quadrature_for_degree(quadrature_degree);
    auto v = chart_vars();
    double num = 0, den = 0;
    for (size_t i = 0; i < q.points.size(); ++i) {
        cd x = q.points[i].affine_coordinate();
        Jet<cd> like(v, kExact, cd(0));
        Jet<cd> p = Jet<cd>::variable(0, like), pb = Jet<cd>::variable(1, like);
        Jet<cd> phi = (Jet<cd>::constant(1.0 + std::norm(x), like) + p.scaled(std::conj(x)) + pb.scaled(x) + p * pb).with_order(4).log();
        double h = phi.coeff(MultiIndex{1, 1}).real();            // Phi_{z zb}
        Jet<cd> theta = phi.derive(MultiIndex{1, 1}).scaled(2.0).log(); // log of the Omega density
        double th = theta.coeff(MultiIndex{1, 1}).real();
        // dx dy = Omega / (2 Phi_{z zb})
        num += q.weights[i] * th / (2 * h);
        den += q.weights[i] * h / (2 * h);
    }
    return num / den;
}

SymbolFunction poisson_bracket(const SymbolFunction &f, const SymbolFunction &g) {
    SymbolFunction metric({{0, 0, -2, QQi(1)}});
    return (metric * (f.dz() * g.dzb() - f.dzb() * g.dz())).scaled(I_unit);
}

SymbolFunction laplacian(const SymbolFunction &f) {
    SymbolFunction metric({{0, 0, -2, QQi(1)}});
    return metric * f.dz().dzb();
}

namespace {
struct CatalogEntry {
    const char *name;
    std::vector<SymbolTerm> terms;
};
const std::vector<CatalogEntry> &catalog() {
    static const std::vector<CatalogEntry> c{
        {"one", {{0, 0, 0, QQi(1)}}},
        {"height", {{1, 1, 1, QQi(1)}}},                             // z zb / (1 + z zb)
        {"re_z", {{1, 0, 1, QQi(1)}, {0, 1, 1, QQi(1)}}},            // 2 Re z / (1 + |z|^2)
        {"im_z", {{1, 0, 1, qqi(-1)}, {0, 1, 1, qqi(1)}}},           // 2 Im z / (1 + |z|^2)
        {"quadratic", {{2, 0, 2, QQi(1)}, {0, 2, 2, QQi(1)}, {1, 1, 2, qq(3)}, {1, 0, 1, qq(1, 2)}, {0, 1, 1, qq(1, 2)}}},
        {"mixed", {{2, 1, 2, QQi(1)}, {0, 1, 1, qq(-1, 3)}, {1, 0, 2, qqi(1, 2)}}},
        {"cubic", {{3, 1, 3, QQi(1)}, {1, 3, 3, QQi(1)}, {2, 2, 3, qq(-2)}, {0, 0, 1, qq(1)}}},
    };
    return c;
}
} // namespace

SymbolFunction symbol_by_name(const std::string &name) {
    for (auto &e : catalog())
        if (name == e.name) return SymbolFunction(e.terms, e.name);
    throw DomainError("unknown symbol '" + name + "'");
}

std::vector<std::string> symbol_names() {
    std::vector<std::string> n;
    for (auto &e : catalog()) n.push_back(e.name);
    return n;
}

} // namespace bzl::cp1

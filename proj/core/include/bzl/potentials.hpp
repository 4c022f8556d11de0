#pragma once

#include "bzl/jet.hpp"
#include "bzl/nu_series.hpp"

namespace bzl {

// Variable layouts. One complex dimension: a chart jet lives in (z, zb),
// two-point jets in (x, y, xb, yb), three-point jets in (x, y, z, xb, yb, zb).
inline VarsPtr chart_vars() {
    static const VarsPtr v = complex_vars({"z"});
    return v;
}
inline VarsPtr two_point_vars() {
    static const VarsPtr v = complex_vars({"x", "y"});
    return v;
}
inline VarsPtr three_point_vars() {
    static const VarsPtr v = complex_vars({"x", "y", "z"});
    return v;
}

// Copy a chart jet onto a larger variable list, sending z to slot holo and zb
// to slot anti.
template <class S> Jet<S> embed_pair(const Jet<S> &phi, const VarsPtr &target, int holo, int anti) {
    if (phi.nvars() != 2) throw TypeError("embed_pair expects a jet in (z, zb)");
    Jet<S> r(target, nullptr, phi.order(), phi.zero_element());
    for (auto &[a, c] : phi.terms()) {
        MultiIndex b(static_cast<int>(target->size()));
        b.e[holo] += a.e[0];
        b.e[anti] += a.e[1];
        r.add_to(b, c);
    }
    return r;
}

// Holomorphic polarization: phi(z, zb) -> phi~(x, yb). Exact for the
// real-analytic jets used here.
template <class S> Jet<S> polarize(const Jet<S> &phi) { return embed_pair(phi, two_point_vars(), 0, 3); }

// f(x, y) -> f(z, z).
template <class S> Jet<S> restrict_diagonal(const Jet<S> &f) {
    return linear_substitute(f, chart_vars(), {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
}

// Exchange the two points of a two-point jet.
template <class S> Jet<S> swap_points(const Jet<S> &f) {
    return linear_substitute(f, f.vars(), {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

// (1/2)(e(x,y) + conj e(y,x)); leaves the extension of a real jet unchanged.
template <class S> Jet<S> symmetrize(const Jet<S> &ext) {
    Jet<S> r = ext + swap_points(ext).conj();
    return r.scaled(s_rat(Rational(1, 2), ext.zero_element()));
}

template <class S> Jet<S> hermitian_extension(const Jet<S> &phi) { return symmetrize(polarize(phi)); }

inline void require_nondegenerate(const Jet<QQi> &phi) {
    if (phi.coeff(MultiIndex{1, 1}).is_zero()) throw DomainError("mixed Hessian of the potential vanishes at the basepoint");
}
template <class S> void require_nondegenerate(const Jet<S> &phi) {
    if (!scalar_traits<S>::is_unit(phi.coeff(MultiIndex{1, 1}))) throw DomainError("mixed Hessian of the potential vanishes at the basepoint");
}

// D(x,y) = phi~(x,y) + phi~(y,x) - phi(x) - phi(y) as a two-point jet.
template <class S> Jet<S> diastasis_jet(const Jet<S> &phi) {
    Jet<S> e = hermitian_extension(phi);
    auto v = two_point_vars();
    return e + swap_points(e) - embed_pair(phi, v, 0, 2) - embed_pair(phi, v, 1, 3);
}

// chi(x,y) = phi~(x,y) - phi(x)/2 - phi(y)/2.
template <class S> Jet<S> chi_jet(const Jet<S> &phi) {
    auto v = two_point_vars();
    S half = s_rat(Rational(1, 2), phi.zero_element());
    return hermitian_extension(phi) - (embed_pair(phi, v, 0, 2) + embed_pair(phi, v, 1, 3)).scaled(half);
}

// T(x,y,z) = chi(x,y) + chi(y,z) + chi(z,x) on three-point variables.
template <class S> Jet<S> three_point_jet(const Jet<S> &phi) {
    auto v = three_point_vars();
    Jet<S> e = hermitian_extension(phi);
    // slots: x=0 y=1 z=2 xb=3 yb=4 zb=5; e lives on (x, y, xb, yb)
    auto place = [&](int p, int q) {
        std::vector<std::vector<long>> L(4, std::vector<long>(6, 0));
        L[0][p] = 1;
        L[1][q] = 1;
        L[2][p + 3] = 1;
        L[3][q + 3] = 1;
        return linear_substitute(e, v, L);
    };
    Jet<S> t = place(0, 1) + place(1, 2) + place(2, 0);
    for (int k = 0; k < 3; ++k) t -= embed_pair(phi, v, k, k + 3);
    return t;
}

// The same quantities for a formal potential, coefficientwise in nu.
using FormalPotential = NuSeries<Jet<QQi>>;

template <class S> NuSeries<Jet<S>> diastasis(const NuSeries<Jet<S>> &Phi) {
    require_nondegenerate(Phi.coeff(-1));
    return map_coeffs(Phi, [](const Jet<S> &j) { return diastasis_jet(j); });
}
template <class S> NuSeries<Jet<S>> three_point(const NuSeries<Jet<S>> &Phi) {
    require_nondegenerate(Phi.coeff(-1));
    return map_coeffs(Phi, [](const Jet<S> &j) { return three_point_jet(j); });
}

// Model potentials as chart jets about a rational point x0, with the
// constant term dropped (potentials matter up to additive constants).

// log(1 + z zb)
inline Jet<QQi> fubini_study_jet(const QQi &x0, int order) {
    auto v = chart_vars();
    Jet<QQi> p = Jet<QQi>::variable(0, Jet<QQi>(v, kExact)), q = Jet<QQi>::variable(1, p);
    QQi n = QQi(1) + x0 * x0.conj();
    Jet<QQi> t = (p.scaled(x0.conj()) + q.scaled(x0) + p * q).scaled(n.inverse());
    return (p.one() + t).with_order(order).log();
}

// z zb
inline Jet<QQi> flat_jet(const QQi &x0, int order) {
    auto v = chart_vars();
    Jet<QQi> p = Jet<QQi>::variable(0, Jet<QQi>(v, kExact)), q = Jet<QQi>::variable(1, p);
    return (p.scaled(x0.conj()) + q.scaled(x0) + p * q).with_order(order);
}

// (1 + z zb)^k up to the constant factor (1+|x0|^2)^k, as a non-polynomial jet.
inline Jet<QQi> fs_density_power(const QQi &x0, int k, int order) {
    auto v = chart_vars();
    Jet<QQi> p = Jet<QQi>::variable(0, Jet<QQi>(v, kExact)), q = Jet<QQi>::variable(1, p);
    QQi n = QQi(1) + x0 * x0.conj();
    Jet<QQi> base = (p.one() + (p.scaled(x0.conj()) + q.scaled(x0) + p * q).scaled(n.inverse())).with_order(order);
    Jet<QQi> r = base.one().with_order(order);
    Jet<QQi> b = k >= 0 ? base : base.inverse();
    for (int i = 0; i < std::abs(k); ++i) r = r * b;
    return r;
}

} // namespace bzl

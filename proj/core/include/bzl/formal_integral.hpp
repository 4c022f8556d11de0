#pragma once

#include "bzl/jet.hpp"
#include "bzl/nu_series.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace bzl {

// Gauss-Jordan inverse over a scalar type whose units are recognised by
// scalar_traits. Pivots are the first unit (exact types) or the largest
// magnitude (floating types) in the column.
template <class S> std::vector<std::vector<S>> exact_inverse(std::vector<std::vector<S>> A) {
    int n = static_cast<int>(A.size());
    if (n == 0) return {};
    const S z = s_zero(A[0][0]);
    std::vector<std::vector<S>> B(n, std::vector<S>(n, z));
    for (int i = 0; i < n; ++i) B[i][i] = s_one(z);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        double best = 0;
        for (int r = c; r < n; ++r) {
            if (!scalar_traits<S>::is_unit(A[r][c])) continue;
            double mag = scalar_traits<S>::magnitude(A[r][c]);
            if (piv < 0 || (!scalar_traits<S>::exact && mag > best)) {
                piv = r;
                best = mag;
            }
            if (scalar_traits<S>::exact) break;
        }
        if (piv < 0) throw DomainError("degenerate Hessian at the basepoint");
        std::swap(A[c], A[piv]);
        std::swap(B[c], B[piv]);
        S inv = s_inv(A[c][c]);
        for (int k = 0; k < n; ++k) {
            A[c][k] = A[c][k] * inv;
            B[c][k] = B[c][k] * inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || s_is_zero(A[r][c])) continue;
            S f = A[r][c];
            for (int k = 0; k < n; ++k) {
                A[r][k] -= f * A[c][k];
                B[r][k] -= f * B[c][k];
            }
        }
    }
    return B;
}

// A distribution supported at the basepoint, K = sum_r nu^r K_r. Stored as
// moments kappa_{r,alpha} = K_r(y^alpha); the derivative weights are
// kappa / alpha!, so K_r(f) = sum_alpha weight * (d^alpha f)(0).
template <class S> struct PointDistribution {
    VarsPtr vars;
    std::vector<cd> basepoint;
    std::vector<std::map<MultiIndex, S>> moments; // index r = 0..max_nu_order
    S zero{};

    int max_nu_order() const { return static_cast<int>(moments.size()) - 1; }
    int nvars() const { return static_cast<int>(vars->size()); }

    S moment(int r, const MultiIndex &a) const {
        if (r < 0) return zero;
        if (r > max_nu_order()) throw DegenerateTruncation("distribution known only through nu^" + std::to_string(max_nu_order()));
        auto it = moments[r].find(a);
        return it == moments[r].end() ? zero : it->second;
    }
    S weight(int r, const MultiIndex &a) const { return moment(r, a) * s_rat(Rational(1, multi_factorial(a)), zero); }

    NuSeries<S> weight_series(const MultiIndex &a) const {
        std::vector<S> c;
        for (int r = 0; r <= max_nu_order(); ++r) c.push_back(weight(r, a));
        return NuSeries<S>(0, c, max_nu_order() + 1, zero);
    }

    // K_r applied to a jet about the basepoint.
    S apply_r(int r, const Jet<S> &f) const {
        if (r < 0) return zero;
        if (r > max_nu_order()) throw DegenerateTruncation("distribution known only through nu^" + std::to_string(max_nu_order()));
        S s = zero;
        for (auto &[a, k] : moments[r]) s += k * f.coeff(a);
        return s;
    }
    NuSeries<S> apply(const Jet<S> &f) const {
        std::vector<S> c;
        for (int r = 0; r <= max_nu_order(); ++r) c.push_back(apply_r(r, f));
        return NuSeries<S>(0, c, max_nu_order() + 1, zero);
    }
    // Largest multi-index degree touched at nu^r.
    int derivative_order(int r) const {
        int d = 0;
        for (auto &[a, k] : moments[r])
            if (!s_is_zero(k)) d = std::max(d, a.degree());
        return d;
    }

    friend bool operator==(const PointDistribution &a, const PointDistribution &b) {
        if (a.max_nu_order() != b.max_nu_order()) return false;
        for (int r = 0; r <= a.max_nu_order(); ++r) {
            for (auto &[k, v] : a.moments[r])
                if (!s_is_zero(S(v - b.moment(r, k)))) return false;
            for (auto &[k, v] : b.moments[r])
                if (!s_is_zero(S(v - a.moment(r, k)))) return false;
        }
        return true;
    }
};

template <class S> json to_json(const PointDistribution<S> &K) {
    json base = json::array();
    for (auto &b : K.basepoint) base.push_back(json::array({b.real(), b.imag()}));
    std::map<MultiIndex, int> keys;
    for (auto &m : K.moments)
        for (auto &[a, v] : m) keys[a] = 1;
    json terms = json::array();
    for (auto &[a, one] : keys) terms.push_back({{"alpha", a.to_vector()}, {"weights", to_json(K.weight_series(a))}});
    return json{{"basepoint", base}, {"terms", terms}};
}

// phi = (1/nu) phi_{-1} + phi_0 + ..., measure rho(y) dy with rho = rho_0 + nu rho_1 + ...
// log_scale collects nu^0 constants moved out of the measure; it never
// affects a normalized formal integral.
template <class S> struct PhasePair {
    NuSeries<Jet<S>> phi;
    NuSeries<Jet<S>> rho;
    S log_scale{};
};

// Jet order sufficient for a formal integral through nu^N.
inline int required_jet_order(int N) { return 2 * N + 2; }

namespace detail {

template <class S> S constant_of(const Jet<S> &j) { return j.eval0(); }

template <class S> Jet<S> finite(const Jet<S> &j, int order) { return j.is_polynomial() ? j.with_order(order) : j; }

template <class S> NuSeries<Jet<S>> finite_series(const NuSeries<Jet<S>> &a, int order) {
    return map_coeffs(a, [&](const Jet<S> &j) { return finite(j, order); });
}

// sum over stored moments alpha >= shift of kappa_alpha * h_{alpha - shift}
template <class S> S apply_shifted(const std::map<MultiIndex, S> &kappa, const Jet<S> &h, const MultiIndex &shift, const S &zero) {
    S s = zero;
    for (auto &[a, k] : kappa) {
        if (!a.dominates(shift)) continue;
        MultiIndex g = a - shift;
        if (g.degree() > h.order()) {
            if (s_is_zero(k)) continue;
            throw DegenerateTruncation("jet order " + std::to_string(h.order()) + " too low for the formal integral");
        }
        auto it = h.terms().find(g);
        if (it != h.terms().end()) s += k * it->second;
    }
    return s;
}

template <class S> void check_critical(const Jet<S> &phim1) {
    for (auto &[a, c] : phim1.terms())
        if (a.degree() == 1 && !s_is_zero(c)) throw DomainError("basepoint is not a critical point of the leading phase");
}

template <class S> std::vector<std::vector<S>> hessian(const Jet<S> &phim1) {
    int n = phim1.nvars();
    const S z = phim1.zero_element();
    std::vector<std::vector<S>> H(n, std::vector<S>(n, z));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            MultiIndex a = MultiIndex::unit(n, k).bumped(j);
            H[k][j] = phim1.coeff(a) * s_int(k == j ? 2 : 1, z);
        }
    return H;
}

} // namespace detail

// Equivalent pair (phi - u, e^u mu). u may not have a principal part.
// Polynomial inputs are truncated at jet_order and nu_trunc when the inputs
// themselves carry no truncation.
template <class S> PhasePair<S> pair_reduce(const PhasePair<S> &p, const NuSeries<Jet<S>> &u, int jet_order = kExact, int nu_trunc = kExact) {
    for (int k = u.min_order(); k < 0 && k < u.trunc_order(); ++k)
        if (!u.coeff(k).is_zero()) throw DomainError("reduction by a series with a principal part");
    if (u.is_zero_known() && u.is_exact()) return p;
    const Jet<S> &like = p.phi.coeff(-1);
    S c0 = u.known(0) ? u.coeff(0).eval0() : like.zero_element();
    NuSeries<Jet<S>> v = u - NuSeries<Jet<S>>::constant(Jet<S>::constant(c0, like));
    int order = jet_order;
    for (auto &j : u.coeffs()) order = std::min(order, j.order());
    for (auto &j : p.rho.coeffs()) order = std::min(order, j.order());
    int trunc = std::min({p.rho.trunc_order(), u.trunc_order(), nu_trunc});
    if (order >= kExact || trunc >= kExact) throw DegenerateTruncation("pair reduction needs a jet order and a nu truncation");
    NuSeries<Jet<S>> e = series_exp(detail::finite_series(v, order), trunc);
    return PhasePair<S>{p.phi - u, e * detail::finite_series(p.rho, order), p.log_scale + c0};
}

// Move the density into the phase: (phi + log(rho/rho(0)), rho(0) dy).
template <class S> PhasePair<S> reduce_to_coordinate_volume(const PhasePair<S> &p, int N) {
    const Jet<S> &like = p.phi.coeff(-1);
    const S z = like.zero_element();
    std::vector<S> c;
    int trunc = std::min(p.rho.trunc_order(), N + 1);
    for (int s = 0; s < trunc; ++s) c.push_back(p.rho.coeff(s).eval0());
    NuSeries<S> c0(0, c, trunc, z);
    NuSeries<Jet<S>> normalized = mul_with(detail::finite_series(p.rho, required_jet_order(N)), invert(c0),
                                           [](const Jet<S> &j, const S &s) { return j.scaled(s); });
    bool trivial = true;
    for (int s = 0; s < normalized.trunc_order() && s < trunc; ++s) {
        Jet<S> j = normalized.coeff(s);
        Jet<S> expect = s == 0 ? j.one() : j.zero();
        if (!(j - expect).is_zero()) trivial = false;
    }
    if (trivial) return p;
    NuSeries<Jet<S>> u = -series_log(normalized, N + 1);
    return pair_reduce(p, u, required_jet_order(N), N + 1);
}

// Normalized formal integral via the uniqueness recursion.
template <class S> PointDistribution<S> formal_integral_recursion(const PhasePair<S> &p0, int N) {
    PhasePair<S> p = reduce_to_coordinate_volume(p0, N);
    const Jet<S> phim1 = p.phi.coeff(-1);
    const S z = phim1.zero_element();
    const int n = phim1.nvars();
    detail::check_critical(phim1);
    auto Hinv = exact_inverse(detail::hessian(phim1));

    std::vector<Jet<S>> h(n);
    for (int k = 0; k < n; ++k) {
        Jet<S> d = phim1.derive(k);
        for (int j = 0; j < n; ++j) d.set(MultiIndex::unit(n, j), z);
        h[k] = d;
    }
    std::vector<std::vector<Jet<S>>> dphi(N);
    for (int s = 0; s < N; ++s) {
        if (!p.phi.known(s)) throw DegenerateTruncation("phase known only below nu^" + std::to_string(p.phi.trunc_order()));
        Jet<S> ps = detail::finite(p.phi.coeff(s), required_jet_order(N));
        for (int k = 0; k < n; ++k) dphi[s].push_back(ps.derive(k));
    }

    PointDistribution<S> K{phim1.vars(), *phim1.basepoint(), {}, z};
    K.moments.resize(N + 1);
    K.moments[0][MultiIndex(n)] = s_one(z);
    auto by_degree = monomials_upto(n, 2 * N);

    for (int r = 0; r < N; ++r) {
        auto &next = K.moments[r + 1];
        int D = 2 * (r + 1);
        for (auto it = by_degree.rbegin(); it != by_degree.rend(); ++it) {
            const MultiIndex &beta = *it;
            int deg = beta.degree();
            if (deg == 0 || deg > D) continue;
            int j = beta.first_nonzero();
            MultiIndex g = beta;
            g.e[j] -= 1;
            S val = z;
            for (int k = 0; k < n; ++k) {
                if (s_is_zero(Hinv[j][k])) continue;
                S rhs = z;
                if (g[k] > 0) rhs -= K.moment(r, g - MultiIndex::unit(n, k)) * s_int(g[k], z);
                for (int s = 0; s <= r; ++s) rhs -= detail::apply_shifted(K.moments[r - s], dphi[s][k], g, z);
                rhs -= detail::apply_shifted(next, h[k], g, z);
                val += Hinv[j][k] * rhs;
            }
            if (!s_is_zero(val)) next[beta] = val;
        }
    }
    return K;
}

template <class S> struct WickResult {
    PointDistribution<S> K;
    NuSeries<S> normalization; // unnormalized value on the constant 1
};

// Normalized formal integral by formal Gaussian integration: y = sqrt(nu) u,
// exponent expanded in t = sqrt(nu), Gaussian moments with covariance -H^{-1}.
// Constant terms of the phase are dropped; they only rescale.
template <class S> WickResult<S> formal_integral_wick(const PhasePair<S> &p, int N, int max_degree = -1) {
    if (max_degree < 0) max_degree = 2 * N;
    const Jet<S> phim1 = p.phi.coeff(-1);
    const S z = phim1.zero_element();
    const int n = phim1.nvars();
    detail::check_critical(phim1);
    auto H = detail::hessian(phim1);
    auto Hinv = exact_inverse(H);
    std::vector<std::vector<S>> C(n, std::vector<S>(n, z));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C[i][j] = -Hinv[i][j];

    const int T = 2 * N + 1; // t-powers below T are needed
    Jet<S> ulike(phim1.vars(), phim1.basepoint(), kExact, z);
    using TS = NuSeries<Jet<S>>;
    std::vector<Jet<S>> X(T, ulike.zero());
    auto place = [&](const Jet<S> &f, int tshift, int mindeg) {
        for (auto &[a, c] : f.terms()) {
            int d = a.degree();
            if (d < mindeg) continue;
            int tp = d + tshift;
            if (tp < 0) throw std::logic_error("negative t power in the Wick expansion");
            if (tp >= T) continue;
            X[tp].add_to(a, c);
        }
    };
    auto check_order = [&](const Jet<S> &f, int need) {
        if (!f.is_polynomial() && f.order() < need) throw DegenerateTruncation("phase jet order too low for the Wick expansion");
    };
    check_order(phim1, T + 1);
    place(phim1, -2, 3);
    for (int s = 0; 2 * s < T; ++s) {
        if (!p.phi.known(s)) throw DegenerateTruncation("phase known only below nu^" + std::to_string(p.phi.trunc_order()));
        check_order(p.phi.coeff(s), T - 1 - 2 * s);
        place(p.phi.coeff(s), 2 * s, 1);
    }
    TS Xs(0, X, T, ulike.zero());
    TS W = series_exp(Xs, T);
    // density, graded the same way
    std::vector<Jet<S>> R(T, ulike.zero());
    for (int s = 0; 2 * s < T; ++s) {
        if (!p.rho.known(s)) throw DegenerateTruncation("density known only below nu^" + std::to_string(p.rho.trunc_order()));
        const Jet<S> &rs = p.rho.coeff(s);
        check_order(rs, T - 1 - 2 * s);
        for (auto &[a, c] : rs.terms()) {
            int tp = a.degree() + 2 * s;
            if (tp < T) R[tp].add_to(a, c);
        }
    }
    W = W * TS(0, R, T, ulike.zero());

    std::map<MultiIndex, S> gm;
    gm[MultiIndex(n)] = s_one(z);
    auto gauss = [&](auto &&self, const MultiIndex &g) -> S {
        auto it = gm.find(g);
        if (it != gm.end()) return it->second;
        S v = z;
        if (g.degree() % 2 == 0) {
            int j = g.first_nonzero();
            MultiIndex h = g;
            h.e[j] -= 1;
            for (int k = 0; k < n; ++k) {
                if (h[k] == 0 || s_is_zero(C[j][k])) continue;
                v += C[j][k] * s_int(h[k], z) * self(self, h - MultiIndex::unit(n, k));
            }
        }
        gm.emplace(g, v);
        return v;
    };

    auto unnormalized = [&](const MultiIndex &alpha) {
        std::vector<S> c(N + 1, z);
        int da = alpha.degree();
        for (int tp = da; tp < T; ++tp) {
            int nidx = tp - da;
            if (!W.known(nidx) || nidx < W.min_order() || nidx >= W.stored_end()) continue;
            S acc = z;
            const Jet<S> wn = W.coeff(nidx);
            for (auto &[g, w] : wn.terms()) acc += w * gauss(gauss, g + alpha);
            if (tp % 2) {
                if (!s_is_zero(acc)) throw std::logic_error("odd Gaussian moment survived in the Wick expansion");
                continue;
            }
            c[tp / 2] += acc;
        }
        return NuSeries<S>(0, c, N + 1, z);
    };

    NuSeries<S> norm = unnormalized(MultiIndex(n));
    NuSeries<S> inv = invert(norm);
    PointDistribution<S> K{phim1.vars(), *phim1.basepoint(), {}, z};
    K.moments.resize(N + 1);
    for (auto &alpha : monomials_upto(n, max_degree)) {
        NuSeries<S> v = unnormalized(alpha) * inv;
        for (int r = 0; r <= N; ++r) {
            S x = v.coeff(r);
            if (!s_is_zero(x)) K.moments[r][alpha] = x;
        }
    }
    return {K, norm};
}

struct ResidualEntry {
    int field;
    std::vector<int> alpha;
    int nu_order;
    double magnitude;
};

struct ConditionDReport {
    bool ok = true;
    int checked = 0;
    std::vector<ResidualEntry> failures;
};

// Residuals of nu * K(d_k f + (d_k phi + div_mu d_k) f) on the monomial
// basis, labelled by the highest K order entering each coefficient.
template <class S> ConditionDReport verify_condition_d(const PointDistribution<S> &K, const PhasePair<S> &p, std::vector<int> fields = {}, int max_degree = -1) {
    const Jet<S> phim1 = p.phi.coeff(-1);
    const S z = phim1.zero_element();
    const int n = phim1.nvars();
    const int N = K.max_nu_order();
    if (fields.empty())
        for (int k = 0; k < n; ++k) fields.push_back(k);
    if (max_degree < 0) max_degree = 2 * N;
    const int ord = required_jet_order(N);

    NuSeries<Jet<S>> rho = detail::finite_series(p.rho, ord);
    NuSeries<Jet<S>> rinv = invert(rho, N + 1);
    ConditionDReport rep;
    for (int k : fields) {
        Jet<S> d1 = detail::finite(phim1, ord).derive(k);
        NuSeries<Jet<S>> div = map_coeffs(rho, [k](const Jet<S> &j) { return j.derive(k); }) * rinv;
        std::vector<Jet<S>> lower(N);
        for (int s = 0; s < N; ++s) lower[s] = detail::finite(p.phi.coeff(s), ord).derive(k) + div.coeff(s);
        for (auto &beta : monomials_upto(n, max_degree)) {
            for (int q = 0; q <= N; ++q) {
                S v = z;
                if (q >= 1 && beta[k] > 0) v += K.moment(q - 1, beta - MultiIndex::unit(n, k)) * s_int(beta[k], z);
                v += detail::apply_shifted(K.moments[q], d1, beta, z);
                for (int s = 0; s + 1 <= q; ++s) v += detail::apply_shifted(K.moments[q - 1 - s], lower[s], beta, z);
                ++rep.checked;
                if (!s_is_zero(v)) {
                    rep.ok = false;
                    rep.failures.push_back({k, beta.to_vector(), q, scalar_traits<S>::magnitude(v)});
                }
            }
        }
    }
    return rep;
}

} // namespace bzl

#pragma once

#include "bzl/formal_integral.hpp"
#include "bzl/potentials.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace bzl {

// Coefficient functions: chart jets in (z, zb) about a basepoint.
using CJet = Jet<QQi>;
using Idx2 = MultiIndex; // exponents of (d/dz, d/dzb)

namespace detail {
inline long multinomial3(const MultiIndex &g, const MultiIndex &a, const MultiIndex &b) {
    // g! / (a! b! (g-a-b)!)
    long r = 1;
    for (int i = 0; i < g.n; ++i) r *= binomial(g[i], a[i]) * binomial(g[i] - a[i], b[i]);
    return r;
}
inline CJet unit_jet() { return CJet::constant(qq(1), CJet(chart_vars(), kExact)); }

// Cache of derivatives of one coefficient jet.
struct DerivCache {
    const CJet &base;
    std::map<MultiIndex, CJet> memo;
    explicit DerivCache(const CJet &b) : base(b) {}
    const CJet &get(const MultiIndex &g) {
        auto it = memo.find(g);
        if (it != memo.end()) return it->second;
        return memo.emplace(g, base.derive(g)).first->second;
    }
};
} // namespace detail

// sum_gamma c_gamma(z) d^gamma
struct DiffOp {
    std::map<Idx2, CJet> terms;

    static DiffOp identity() { return DiffOp{{{MultiIndex(2), detail::unit_jet()}}}; }
    static DiffOp derivation(const Idx2 &g, const CJet &c) { return DiffOp{{{g, c}}}; }

    void add(const Idx2 &g, const CJet &c) {
        if (c.is_zero()) return;
        auto it = terms.find(g);
        if (it == terms.end())
            terms.emplace(g, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    DiffOp &operator+=(const DiffOp &o) {
        for (auto &[g, c] : o.terms) add(g, c);
        return *this;
    }
    DiffOp operator-() const {
        DiffOp r = *this;
        for (auto &[g, c] : r.terms) c = -c;
        return r;
    }
    friend DiffOp operator+(DiffOp a, const DiffOp &b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp &b) { return a += -b; }
    // Left multiplication by a function.
    DiffOp times(const CJet &f) const {
        DiffOp r;
        for (auto &[g, c] : terms) r.add(g, c * f);
        return r;
    }
    DiffOp scaled(const QQi &s) const {
        DiffOp r;
        for (auto &[g, c] : terms) r.add(g, c.scaled(s));
        return r;
    }
    // Operator f -> d_k (P f).
    DiffOp derived(int k) const {
        DiffOp r;
        for (auto &[g, c] : terms) {
            r.add(g, c.derive(k));
            r.add(g.bumped(k), c);
        }
        return r;
    }
    CJet apply(const CJet &f) const {
        CJet s = f.zero();
        bool first = true;
        for (auto &[g, c] : terms) {
            CJet t = c * f.derive(g);
            if (first) {
                s = t;
                first = false;
            } else
                s += t;
        }
        return s;
    }
    int max_order() const {
        int d = 0;
        for (auto &[g, c] : terms) d = std::max(d, g.degree());
        return d;
    }
    bool agrees_with(const DiffOp &o) const {
        for (auto &[g, c] : terms) {
            auto it = o.terms.find(g);
            if (it == o.terms.end() ? !c.agrees_with(c.zero()) : !c.agrees_with(it->second)) return false;
        }
        for (auto &[g, c] : o.terms)
            if (!terms.count(g) && !c.agrees_with(c.zero())) return false;
        return true;
    }
};

// P o R
inline DiffOp compose(const DiffOp &P, const DiffOp &R) {
    DiffOp out;
    for (auto &[d, r] : R.terms) {
        detail::DerivCache rc(r);
        for (auto &[g, p] : P.terms)
            for (auto &e : sub_indices(g)) {
                long b = multi_binomial(g, e);
                out.add(g - e + d, (p * rc.get(e)).scaled(qq(b)));
            }
    }
    return out;
}

// sum c_{alpha,beta}(z) d^alpha f d^beta g
struct BidiffOperator {
    std::map<std::pair<Idx2, Idx2>, CJet> terms;

    static BidiffOperator product() { return BidiffOperator{{{{MultiIndex(2), MultiIndex(2)}, detail::unit_jet()}}}; }

    void add(const Idx2 &a, const Idx2 &b, const CJet &c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end())
            terms.emplace(key, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    BidiffOperator &operator+=(const BidiffOperator &o) {
        for (auto &[k, c] : o.terms) add(k.first, k.second, c);
        return *this;
    }
    BidiffOperator operator-() const {
        BidiffOperator r = *this;
        for (auto &[k, c] : r.terms) c = -c;
        return r;
    }
    friend BidiffOperator operator+(BidiffOperator a, const BidiffOperator &b) { return a += b; }
    friend BidiffOperator operator-(BidiffOperator a, const BidiffOperator &b) { return a += -b; }
    BidiffOperator scaled(const QQi &s) const {
        BidiffOperator r;
        for (auto &[k, c] : terms) r.add(k.first, k.second, c.scaled(s));
        return r;
    }
    BidiffOperator swapped() const {
        BidiffOperator r;
        for (auto &[k, c] : terms) r.add(k.second, k.first, c);
        return r;
    }
    CJet apply(const CJet &f, const CJet &g) const {
        CJet s = f.zero();
        bool first = true;
        for (auto &[k, c] : terms) {
            CJet t = c * f.derive(k.first) * g.derive(k.second);
            if (first) {
                s = t;
                first = false;
            } else
                s += t;
        }
        return s;
    }
    bool agrees_with(const BidiffOperator &o) const {
        for (auto &[k, c] : terms) {
            auto it = o.terms.find(k);
            if (it == o.terms.end() ? !c.agrees_with(c.zero()) : !c.agrees_with(it->second)) return false;
        }
        for (auto &[k, c] : o.terms)
            if (!terms.count(k) && !c.agrees_with(c.zero())) return false;
        return true;
    }
    // Smallest order among coefficient jets.
    int coefficient_order() const {
        int o = kExact;
        for (auto &[k, c] : terms) o = std::min(o, c.order());
        return o;
    }
};

// P(B(f, g)) by the Leibniz rule.
inline BidiffOperator compose_left(const DiffOp &P, const BidiffOperator &B) {
    BidiffOperator out;
    for (auto &[k, c] : B.terms) {
        detail::DerivCache cc(c);
        for (auto &[g, p] : P.terms)
            for (auto &g1 : sub_indices(g)) {
                MultiIndex rest = g - g1;
                for (auto &g2 : sub_indices(rest)) {
                    MultiIndex g3 = rest - g2;
                    long m = detail::multinomial3(g, g1, g2);
                    out.add(k.first + g2, k.second + g3, (p * cc.get(g1)).scaled(qq(m)));
                }
            }
    }
    return out;
}

// B(P f, R g)
inline BidiffOperator precompose(const BidiffOperator &B, const DiffOp &P, const DiffOp &R) {
    BidiffOperator out;
    std::map<Idx2, std::map<Idx2, CJet>> pd, rd; // derivatives of P and R coefficients
    auto dP = [&](const Idx2 &g, const Idx2 &e) -> const CJet & {
        auto &m = pd[g];
        auto it = m.find(e);
        if (it != m.end()) return it->second;
        return m.emplace(e, P.terms.at(g).derive(e)).first->second;
    };
    auto dR = [&](const Idx2 &g, const Idx2 &e) -> const CJet & {
        auto &m = rd[g];
        auto it = m.find(e);
        if (it != m.end()) return it->second;
        return m.emplace(e, R.terms.at(g).derive(e)).first->second;
    };
    for (auto &[k, c] : B.terms) {
        const Idx2 &al = k.first, &be = k.second;
        for (auto &[gp, p] : P.terms)
            for (auto &e : sub_indices(al)) {
                CJet left = (c * dP(gp, e)).scaled(qq(multi_binomial(al, e)));
                Idx2 fa = al - e + gp;
                for (auto &[gr, r] : R.terms)
                    for (auto &h : sub_indices(be))
                        out.add(fa, be - h + gr, (left * dR(gr, h)).scaled(qq(multi_binomial(be, h))));
            }
    }
    return out;
}

// Formal series of operators, index = power of nu.
using FormalOp = std::vector<DiffOp>;
using StarProduct = std::vector<BidiffOperator>;

inline FormalOp compose(const FormalOp &A, const FormalOp &B) {
    size_t n = std::min(A.size(), B.size());
    FormalOp out(n);
    for (size_t r = 0; r < n; ++r)
        for (size_t j = 0; j <= r; ++j) out[r] += compose(A[j], B[r - j]);
    return out;
}

inline FormalOp inverse(const FormalOp &I) {
    if (I.empty() || !I[0].agrees_with(DiffOp::identity())) throw SingularLeadingTerm("operator series must start with the identity");
    FormalOp J(I.size());
    J[0] = DiffOp::identity();
    for (size_t r = 1; r < I.size(); ++r)
        for (size_t j = 1; j <= r; ++j) J[r] += -compose(I[j], J[r - j]);
    return J;
}

inline StarProduct compose_left(const FormalOp &A, const StarProduct &B) {
    size_t n = std::min(A.size(), B.size());
    StarProduct out(n);
    for (size_t r = 0; r < n; ++r)
        for (size_t j = 0; j <= r; ++j) out[r] += compose_left(A[j], B[r - j]);
    return out;
}

inline StarProduct precompose(const StarProduct &C, const FormalOp &P, const FormalOp &R) {
    size_t n = std::min({C.size(), P.size(), R.size()});
    StarProduct out(n);
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i <= r; ++i)
            for (size_t j = 0; i + j <= r; ++j) out[r] += precompose(C[i], P[j], R[r - i - j]);
    return out;
}

inline StarProduct swapped(const StarProduct &C) {
    StarProduct out;
    for (auto &c : C) out.push_back(c.swapped());
    return out;
}

inline bool agree(const StarProduct &a, const StarProduct &b, size_t upto) {
    if (a.size() < upto || b.size() < upto) throw DegenerateTruncation("star product known to fewer orders than compared");
    for (size_t r = 0; r < upto; ++r)
        if (!a[r].agrees_with(b[r])) return false;
    return true;
}
inline bool agree(const FormalOp &a, const FormalOp &b, size_t upto) {
    if (a.size() < upto || b.size() < upto) throw DegenerateTruncation("operator series known to fewer orders than compared");
    for (size_t r = 0; r < upto; ++r)
        if (!a[r].agrees_with(b[r])) return false;
    return true;
}

// f * g = sum_r nu^r sum_{i+j+k=r} C_i(f_j, g_k)
inline NuSeries<CJet> star_apply(const StarProduct &C, const NuSeries<CJet> &f, const NuSeries<CJet> &g) {
    int fm = f.min_order(), gm = g.min_order();
    int trunc = std::min({static_cast<int>(C.size()) + fm + gm, sat_add(f.trunc_order(), gm), sat_add(g.trunc_order(), fm)});
    CJet zero = f.zero_element();
    std::vector<CJet> out;
    for (int r = fm + gm; r < trunc; ++r) {
        CJet acc = zero;
        for (int i = 0; i < static_cast<int>(C.size()); ++i)
            for (int j = fm; j < f.stored_end(); ++j) {
                int k = r - i - j;
                if (k < gm || k >= g.stored_end()) continue;
                CJet fj = f.coeff(j), gk = g.coeff(k);
                if (fj.is_zero() || gk.is_zero()) continue;
                acc += C[i].apply(fj, gk);
            }
        out.push_back(acc);
    }
    if (out.empty()) return NuSeries<CJet>::zero(zero, trunc);
    return NuSeries<CJet>(fm + gm, out, trunc, zero);
}

// A star product with Berezin transform I: the dual f *~ g = I^{-1}(Ig * If)
// and the opposite of the dual f *' g = I^{-1}(If * Ig).
enum class DualKind { Dual, Opposite };
inline StarProduct dual_opposite(const StarProduct &C, const FormalOp &I, DualKind which) {
    StarProduct P = precompose(C, I, I);
    StarProduct dual = compose_left(inverse(I), swapped(P));
    return which == DualKind::Dual ? dual : swapped(dual);
}

// C_i = Q_i - sum_{j>=1} I_j C_{i-j}
inline StarProduct extract_star_coefficients(const FormalOp &I, const StarProduct &Q) {
    if (I.size() != Q.size()) throw DegenerateTruncation("Berezin transform and twisted product known to different orders");
    if (I.empty() || !I[0].agrees_with(DiffOp::identity())) throw SingularLeadingTerm("Berezin transform must start with the identity");
    StarProduct C(Q.size());
    for (size_t i = 0; i < Q.size(); ++i) {
        C[i] = Q[i];
        for (size_t j = 1; j <= i; ++j) C[i] += -compose_left(I[j], C[i - j]);
    }
    return C;
}

// Slot pattern of C_r, r >= 1.
enum class Separation { Standard, Swapped, Neither, Trivial };
inline Separation separation_pattern(const BidiffOperator &B) {
    bool standard = true, swapped_ = true, any = false;
    for (auto &[k, c] : B.terms) {
        if (c.is_zero()) continue;
        any = true;
        const Idx2 &a = k.first, &b = k.second;
        if (a[0] != 0 || b[1] != 0) standard = false;
        if (a[1] != 0 || b[0] != 0) swapped_ = false;
    }
    if (!any) return Separation::Trivial;
    if (standard) return Separation::Standard;
    if (swapped_) return Separation::Swapped;
    return Separation::Neither;
}
inline bool null_on_constants(const BidiffOperator &B) {
    for (auto &[k, c] : B.terms)
        if (!c.is_zero() && (k.first.degree() == 0 || k.second.degree() == 0)) return false;
    return true;
}

// {f,g} = i g^{zb z}(f_z g_zb - f_zb g_z) with g_{z zb} the mixed Hessian of phi.
inline BidiffOperator poisson_bracket(const CJet &phi) {
    CJet ginv = phi.derive(MultiIndex{1, 1}).inverse();
    BidiffOperator b;
    b.add(MultiIndex{1, 0}, MultiIndex{0, 1}, ginv.scaled(I_unit));
    b.add(MultiIndex{0, 1}, MultiIndex{1, 0}, ginv.scaled(-I_unit));
    return b;
}

// Coefficients C_0..C_N of the star product with separation of variables
// whose formal potential is Phi = sum nu^r Phi_r (r >= -1), one complex
// dimension. Left multiplication L_f = sum_k A_k d_z^k is fixed by commuting
// with d_zb Phi + d_zb; A_k = O(nu^k) is solved order by order.
inline StarProduct karabegov_construct(const NuSeries<CJet> &Phi, int N) {
    if (Phi.min_order() != -1) throw DomainError("formal potential must start at nu^-1");
    if (N > 2) throw DomainError("karabegov_construct stops at nu^2");
    require_nondegenerate(Phi.coeff(-1));
    auto phi = [&](int s) { return Phi.coeff(s).derive(1); }; // d_zb Phi_s
    const CJet h = phi(-1).derive(0);                          // d_z d_zb Phi_{-1}
    const CJet hinv = h.inverse();
    // d_z^j phi_s, memoized
    std::map<std::pair<int, int>, CJet> dphi;
    auto D = [&](int j, int s) -> const CJet & {
        auto key = std::make_pair(j, s);
        auto it = dphi.find(key);
        if (it != dphi.end()) return it->second;
        CJet v = phi(s);
        for (int i = 0; i < j; ++i) v = v.derive(0);
        return dphi.emplace(key, v).first->second;
    };
    // A[k][r] : nu^r part of A_k, as an operator on f
    std::vector<std::vector<DiffOp>> A(N + 1, std::vector<DiffOp>(N + 1));
    A[0][0] = DiffOp::identity();
    for (int r = 1; r <= N; ++r) {
        for (int kk = r; kk >= 1; --kk) {
            DiffOp rhs = A[kk - 1][r - 1].derived(1);
            for (int k = kk; k <= N; ++k)
                for (int s = -1; r - 1 - s >= k; ++s) {
                    if (s == -1 && k == kk) continue;
                    int j = r - 1 - s;
                    if (j > N || A[k][j].terms.empty()) continue;
                    long b = binomial(k, kk - 1);
                    rhs = rhs - A[k][j].times(D(k - kk + 1, s)).scaled(qq(b));
                }
            A[kk][r] = rhs.times(hinv).scaled(qq(1, kk));
        }
    }
    StarProduct C(N + 1);
    for (int r = 0; r <= N; ++r)
        for (int k = 0; k <= r; ++k)
            for (auto &[g, c] : A[k][r].terms) C[r].add(g, MultiIndex{k, 0}, c);
    return C;
}

// A chart germ of a Kahler potential with its volume density.
struct Germ {
    std::string name;
    QQi x0;
    std::function<CJet(const QQi &, int)> potential; // Phi_{-1}, constant dropped
    std::function<CJet(const QQi &, int)> density;   // Omega density up to a constant factor
    std::function<CJet(const QQi &, int)> theta;     // log of the density, constant dropped
};

inline Germ flat_germ(QQi x0 = QQi()) {
    return {"flat", x0, flat_jet, [](const QQi &, int) { return detail::unit_jet(); },
            [](const QQi &, int o) { return CJet(chart_vars(), o); }};
}
inline Germ fubini_study_germ(QQi x0 = QQi()) {
    return {"fubini_study", x0, fubini_study_jet, [](const QQi &x, int o) { return fs_density_power(x, -2, o); },
            [](const QQi &x, int o) { return fubini_study_jet(x, o).scaled(qq(-2)); }};
}

using FamJet = Jet<CJet>;

// Phase pair of the Berezin transform at x = x0 + a, integrating over
// y = x + w: ((1/nu) D(x, y), Omega(y)). Coefficients are jets in a of order M.
inline PhasePair<CJet> berezin_pair(const Germ &G, int N, int M) {
    int L = required_jet_order(N) + M;
    auto vars = complex_vars({"a", "w"}); // a, w, ab, wb
    CJet D = diastasis_jet(G.potential(G.x0, L));
    CJet Ds = linear_substitute(D, vars, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}});
    CJet rho = linear_substitute(G.density(G.x0, L).with_order(L), vars, {{1, 1, 0, 0}, {0, 0, 1, 1}});
    auto outer = complex_vars({"w"});
    FamJet ph = nest(Ds, {1, 3}, {0, 2}, outer, chart_vars(), required_jet_order(N), M);
    FamJet rh = nest(rho, {1, 3}, {0, 2}, outer, chart_vars(), required_jet_order(N), M);
    return {NuSeries<FamJet>::monomial(ph, -1), NuSeries<FamJet>::constant(rh), ph.zero_element()};
}

// Phase pair of the twisted product at (x, x): ((1/nu) T(x, y, z), Omega(y) Omega(z)),
// y = x + w1, z = x + w2.
inline PhasePair<CJet> twisted_pair(const Germ &G, int N, int M) {
    int L = required_jet_order(N) + M;
    auto vars = complex_vars({"a", "w1", "w2"}); // a, w1, w2, ab, w1b, w2b
    CJet T = three_point_jet(G.potential(G.x0, L));
    CJet Ts = linear_substitute(T, vars,
                                {{1, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 1, 0}, {0, 0, 0, 1, 0, 1}});
    CJet dens = G.density(G.x0, L).with_order(L);
    CJet r1 = linear_substitute(dens, vars, {{1, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 0}});
    CJet r2 = linear_substitute(dens, vars, {{1, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 1}});
    auto outer = complex_vars({"w1", "w2"}); // w1, w2, w1b, w2b
    std::vector<int> oi{1, 2, 4, 5}, ii{0, 3};
    FamJet ph = nest(Ts, oi, ii, outer, chart_vars(), required_jet_order(N), M);
    FamJet rh = nest(r1 * r2, oi, ii, outer, chart_vars(), required_jet_order(N), M);
    return {NuSeries<FamJet>::monomial(ph, -1), NuSeries<FamJet>::constant(rh), ph.zero_element()};
}

// Formal Berezin transform I = sum nu^r I_r as differential operators whose
// coefficients are jets about x0.
inline FormalOp formal_berezin_family(const Germ &G, int N, int M) {
    auto K = formal_integral_recursion(berezin_pair(G, N, M), N);
    FormalOp I(N + 1);
    for (int r = 0; r <= N; ++r)
        for (auto &[g, k] : K.moments[r]) I[r].add(g, k.scaled(qq(1, multi_factorial(g))));
    return I;
}

inline StarProduct formal_twisted_family(const Germ &G, int N, int M) {
    auto K = formal_integral_recursion(twisted_pair(G, N, M), N);
    StarProduct Q(N + 1);
    for (int r = 0; r <= N; ++r)
        for (auto &[g, k] : K.moments[r]) Q[r].add(MultiIndex{g[0], g[2]}, MultiIndex{g[1], g[3]}, k.scaled(qq(1, multi_factorial(g))));
    return Q;
}

// Pointwise versions at x0 (coefficients are plain numbers).
inline PointDistribution<QQi> formal_berezin_transform(const Germ &G, int N) {
    auto K = formal_integral_recursion(berezin_pair(G, N, 0), N);
    PointDistribution<QQi> out{K.vars, {scalar_traits<QQi>::to_cd(G.x0)}, {}, QQi()};
    for (auto &m : K.moments) {
        std::map<MultiIndex, QQi> mm;
        for (auto &[a, v] : m)
            if (!v.eval0().is_zero()) mm[a] = v.eval0();
        out.moments.push_back(mm);
    }
    return out;
}
inline PointDistribution<QQi> formal_twisted_product(const Germ &G, int N) {
    auto K = formal_integral_recursion(twisted_pair(G, N, 0), N);
    PointDistribution<QQi> out{K.vars, {scalar_traits<QQi>::to_cd(G.x0)}, {}, QQi()};
    for (auto &m : K.moments) {
        std::map<MultiIndex, QQi> mm;
        for (auto &[a, v] : m)
            if (!v.eval0().is_zero()) mm[a] = v.eval0();
        out.moments.push_back(mm);
    }
    return out;
}

// Formal potentials of the germ: Phi = (1/nu) Phi_{-1} and, for the dual,
// Psi = -(1/nu) Phi_{-1} + theta.
inline NuSeries<CJet> germ_potential(const Germ &G, int order) {
    return NuSeries<CJet>::monomial(G.potential(G.x0, order), -1);
}
inline NuSeries<CJet> dual_potential(const Germ &G, int order) {
    CJet p = G.potential(G.x0, order);
    return NuSeries<CJet>(-1, {-p, G.theta(G.x0, order)}, kExact, p.zero());
}

struct TraceDensityReport {
    bool leading_sum_zero = false;          // Phi_{-1} + Psi_{-1} = 0
    std::vector<bool> relation_zero;        // d Phi + I(d Psi) = 0, per nu order from -1
    std::vector<bool> phase_derivative_zero;           // I(xi_x phi^x)(x) = 0, per I order
    bool ok() const {
        if (!leading_sum_zero) return false;
        for (bool b : relation_zero)
            if (!b) return false;
        for (bool b : phase_derivative_zero)
            if (!b) return false;
        return true;
    }
};

// Residuals of d Phi/dz + I(d Psi/dz) = 0 (as jets about x0) and of the
// vanishing of I applied to the x-derivative of the Berezin phase.
inline TraceDensityReport trace_density_check(const Germ &G, const NuSeries<CJet> &Phi, const NuSeries<CJet> &Psi, int N, int M) {
    TraceDensityReport rep;
    rep.leading_sum_zero = (Phi.coeff(-1) + Psi.coeff(-1)).truncated(M).is_zero();
    FormalOp I = formal_berezin_family(G, N, M);
    // nu^q coefficient for q = -1 .. N-1
    for (int q = -1; q <= N - 1; ++q) {
        CJet acc = Phi.coeff(q).derive(0);
        for (int j = 0; j <= N; ++j) {
            int s = q - j;
            if (s < Psi.min_order()) continue;
            acc += I[j].apply(Psi.coeff(s).derive(0));
        }
        rep.relation_zero.push_back(acc.is_zero());
    }
    // phi^x(y) = (1/nu) D(x, y); xi = d/dx and d/dxb
    auto pair = berezin_pair(G, N, M);
    auto K = formal_integral_recursion(pair, N);
    int L = required_jet_order(N) + M + 1;
    CJet D = diastasis_jet(G.potential(G.x0, L));
    auto vars = complex_vars({"a", "w"});
    for (int r = 0; r <= N; ++r) {
        bool z = true;
        for (int k : {0, 2}) {
            CJet dD = linear_substitute(D.derive(k), vars, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}});
            FamJet F = nest(dD, {1, 3}, {0, 2}, complex_vars({"w"}), chart_vars(), required_jet_order(N), M);
            if (!K.apply_r(r, F).is_zero()) z = false;
        }
        rep.phase_derivative_zero.push_back(z);
    }
    return rep;
}

// Characteristic class (1/i)([omega] - eps/2) with classes on CP^1 given by
// total integrals (rational multiples of pi).
inline NuSeries<PiQ> characteristic_class(const NuSeries<PiQ> &omega_integrals, const PiQ &eps) {
    PiQ half_eps(eps.c * qq(1, 2), eps.pi);
    NuSeries<PiQ> r = omega_integrals - NuSeries<PiQ>::constant(half_eps);
    return r.scaled(PiQ(QQi(Rational(0), Rational(-1)), 0)); // 1/i = -i
}

struct ClassifyingData {
    NuSeries<PiQ> omega_dual;          // -(1/nu) [omega_{-1}] + [omega_can]
    NuSeries<PiQ> cl_dual;             // cl of the dual product
    NuSeries<PiQ> cl_berezin_toeplitz; // cl of the opposite of the dual
    bool opposite_rule = false;        // cl' == -cl~
    bool dual_form_has_no_positive_orders = false;
};

// canonical_degree: integral of omega_can over integral of omega_{-1} (an integer on CP^1).
inline ClassifyingData classifying_data(long canonical_degree) {
    PiQ vol(QQi(2), 1);                                  // integral of omega_{-1} = 2 pi
    PiQ eps(QQi(2 * canonical_degree), 1);               // canonical class
    NuSeries<PiQ> omega_dual(-1, {PiQ(QQi(-2), 1), eps}, kExact, PiQ());
    NuSeries<PiQ> omega_bt = NuSeries<PiQ>::monomial(vol, -1);
    ClassifyingData d;
    d.omega_dual = omega_dual;
    d.cl_dual = characteristic_class(omega_dual, eps);
    d.cl_berezin_toeplitz = characteristic_class(omega_bt, eps);
    d.opposite_rule = d.cl_berezin_toeplitz == -d.cl_dual;
    d.dual_form_has_no_positive_orders = omega_dual.stored_end() <= 1;
    return d;
}

inline json to_json(const BidiffOperator &B) {
    json t = json::array();
    for (auto &[k, c] : B.terms)
        t.push_back({{"alpha", k.first.to_vector()}, {"beta", k.second.to_vector()}, {"coeff", jet_to_json(c)}});
    return t;
}
inline json to_json(const StarProduct &C) {
    json j = json::array();
    for (auto &c : C) j.push_back(to_json(c));
    return j;
}

} // namespace bzl

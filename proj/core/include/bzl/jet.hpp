#pragma once

#include "bzl/multi_index.hpp"
#include "bzl/nu_series.hpp"
#include "bzl/scalar.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bzl {

enum class VarKind { Holo, Antiholo, Real };

struct Var {
    std::string name;
    VarKind kind = VarKind::Real;
    int partner = -1; // index of the conjugate variable, -1 for real variables

    friend bool operator==(const Var &a, const Var &b) {
        return a.name == b.name && a.kind == b.kind && a.partner == b.partner;
    }
};

using VarList = std::vector<Var>;
using VarsPtr = std::shared_ptr<const VarList>;
using BasePtr = std::shared_ptr<const std::vector<cd>>;

inline const char *kind_name(VarKind k) {
    switch (k) {
    case VarKind::Holo: return "holomorphic";
    case VarKind::Antiholo: return "antiholomorphic";
    default: return "real";
    }
}

// Variables z_1..z_n followed by their conjugates.
inline VarsPtr complex_vars(const std::vector<std::string> &names) {
    int n = static_cast<int>(names.size());
    auto v = std::make_shared<VarList>();
    for (int i = 0; i < n; ++i) v->push_back({names[i], VarKind::Holo, n + i});
    for (int i = 0; i < n; ++i) v->push_back({names[i] + "b", VarKind::Antiholo, i});
    return v;
}

inline VarsPtr real_vars(int n, const std::string &prefix = "y") {
    auto v = std::make_shared<VarList>();
    for (int i = 0; i < n; ++i) v->push_back({prefix + std::to_string(i + 1), VarKind::Real, -1});
    return v;
}

// Concatenation of variable lists; partner indices are shifted.
inline VarsPtr concat_vars(const std::vector<VarsPtr> &lists) {
    auto v = std::make_shared<VarList>();
    for (auto &l : lists) {
        int off = static_cast<int>(v->size());
        for (auto x : *l) {
            if (x.partner >= 0) x.partner += off;
            v->push_back(x);
        }
    }
    return v;
}

inline bool same_vars(const VarsPtr &a, const VarsPtr &b) { return a == b || *a == *b; }

// Truncated multivariate power series in displacement variables about a
// basepoint. Monomials of degree <= order are known; kExact marks a polynomial.
template <class S> class Jet {
  public:
    using Terms = std::map<MultiIndex, S>;

    Jet() : vars_(std::make_shared<VarList>()), base_(std::make_shared<std::vector<cd>>()), order_(kExact) {}
    Jet(VarsPtr vars, BasePtr base, int order, S zero = S{})
        : vars_(std::move(vars)), base_(std::move(base)), order_(order), zero_(std::move(zero)) {
        if (!base_ || static_cast<int>(base_->size()) != nvars()) base_ = std::make_shared<std::vector<cd>>(nvars(), cd(0));
    }
    Jet(VarsPtr vars, int order, S zero = S{}) : Jet(std::move(vars), nullptr, order, std::move(zero)) {}

    static Jet constant(const S &c, const Jet &like) {
        Jet j(like.vars_, like.base_, kExact, like.zero_);
        j.set({MultiIndex(like.nvars())}, c);
        return j;
    }
    static Jet variable(int k, const Jet &like) {
        Jet j(like.vars_, like.base_, kExact, like.zero_);
        j.set(MultiIndex::unit(like.nvars(), k), s_one(like.zero_));
        return j;
    }
    static Jet monomial(const MultiIndex &a, const S &c, const Jet &like) {
        Jet j(like.vars_, like.base_, kExact, like.zero_);
        j.set(a, c);
        return j;
    }

    int nvars() const { return static_cast<int>(vars_->size()); }
    int order() const { return order_; }
    bool is_polynomial() const { return order_ >= kExact; }
    const VarsPtr &vars() const { return vars_; }
    const BasePtr &basepoint() const { return base_; }
    const Terms &terms() const { return t_; }
    const S &zero_element() const { return zero_; }
    int max_degree() const {
        int d = 0;
        for (auto &[a, c] : t_) d = std::max(d, a.degree());
        return d;
    }

    S coeff(const MultiIndex &a) const {
        if (a.degree() > order_) throw DegenerateTruncation("jet coefficient of degree " + std::to_string(a.degree()) + " beyond order " + std::to_string(order_));
        auto it = t_.find(a);
        return it == t_.end() ? zero_ : it->second;
    }
    // Coefficient read that treats unknown entries as a caller error only
    // when the degree exceeds the order.
    S operator[](const MultiIndex &a) const { return coeff(a); }
    void set(const MultiIndex &a, S v) {
        if (a.degree() > order_) return;
        if (s_is_zero(v))
            t_.erase(a);
        else
            t_[a] = std::move(v);
    }
    void add_to(const MultiIndex &a, const S &v) {
        if (a.degree() > order_) return;
        auto it = t_.find(a);
        if (it == t_.end()) {
            if (!s_is_zero(v)) t_.emplace(a, v);
            return;
        }
        it->second += v;
        if (s_is_zero(it->second)) t_.erase(it);
    }

    S eval0() const { return coeff(MultiIndex(nvars())); }
    // (d^alpha f)(basepoint) = alpha! * coefficient.
    S derivative_at(const MultiIndex &a) const { return coeff(a) * s_int(multi_factorial(a), zero_); }

    Jet truncated(int n) const {
        Jet r(vars_, base_, std::min(order_, n), zero_);
        for (auto &[a, c] : t_)
            if (a.degree() <= r.order_) r.t_.emplace(a, c);
        return r;
    }
    Jet with_order(int n) const {
        Jet r = truncated(n);
        r.order_ = n;
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (auto &[a, c] : r.t_) c = -c;
        return r;
    }
    Jet &operator+=(const Jet &o) {
        check_compat(o);
        order_ = std::min(order_, o.order_);
        drop_above(order_);
        for (auto &[a, c] : o.t_) add_to(a, c);
        return *this;
    }
    Jet &operator-=(const Jet &o) {
        check_compat(o);
        order_ = std::min(order_, o.order_);
        drop_above(order_);
        for (auto &[a, c] : o.t_) add_to(a, -c);
        return *this;
    }
    friend Jet operator+(Jet a, const Jet &b) { return a += b; }
    friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
    friend Jet operator*(const Jet &a, const Jet &b) {
        a.check_compat(b);
        Jet r(a.vars_, a.base_, std::min(a.order_, b.order_), a.zero_);
        for (auto &[x, cx] : a.t_) {
            int dx = x.degree();
            for (auto &[y, cy] : b.t_) {
                if (dx + y.degree() > r.order_) continue;
                r.add_to(x + y, cx * cy);
            }
        }
        return r;
    }
    Jet &operator*=(const Jet &o) { return *this = *this * o; }
    Jet scaled(const S &s) const {
        Jet r(vars_, base_, order_, zero_);
        for (auto &[a, c] : t_) r.set(a, c * s);
        return r;
    }

    Jet derive(int k) const {
        if (order_ <= 0) throw DegenerateTruncation("derivation below order 0");
        Jet r(vars_, base_, order_ >= kExact ? kExact : order_ - 1, zero_);
        for (auto &[a, c] : t_) {
            if (a[k] == 0) continue;
            MultiIndex b = a;
            b.e[k] -= 1;
            r.add_to(b, c * s_int(a[k], zero_));
        }
        return r;
    }
    Jet derive(const MultiIndex &a) const {
        Jet r = *this;
        for (int k = 0; k < a.n; ++k)
            for (int t = 0; t < a[k]; ++t) r = r.derive(k);
        return r;
    }

    // Complex conjugate as a function: conjugate coefficients and exchange
    // each holomorphic variable with its partner.
    Jet conj() const {
        std::vector<int> perm(nvars());
        for (int i = 0; i < nvars(); ++i) perm[i] = (*vars_)[i].partner >= 0 ? (*vars_)[i].partner : i;
        Jet r(vars_, base_, order_, zero_);
        for (auto &[a, c] : t_) {
            MultiIndex p(nvars());
            for (int i = 0; i < nvars(); ++i) p.e[perm[i]] = a.e[i];
            r.set(p, s_conj(c));
        }
        return r;
    }

    bool is_zero() const { return t_.empty(); }
    bool unit_constant() const { return scalar_traits<S>::is_unit(eval0()); }

    Jet inverse() const {
        S c = eval0();
        if (!scalar_traits<S>::is_unit(c)) throw SingularLeadingTerm("jet with non-invertible constant term");
        S ci = s_inv(c);
        if (is_polynomial() && max_degree() == 0) return constant(ci, *this);
        if (is_polynomial()) throw DegenerateTruncation("inverse of a polynomial jet needs an order");
        // 1/(c(1+g)) = c^{-1} sum (-g)^k
        Jet g = scaled(ci) - one();
        Jet acc = one().with_order(order_);
        Jet term = one().with_order(order_);
        for (int k = 1; k <= order_; ++k) {
            term = term * (-g);
            acc += term;
        }
        return acc.scaled(ci);
    }
    Jet exp() const {
        S c = eval0();
        Jet g = *this - constant(c, *this);
        S ec = scalar_traits<S>::exp(c);
        if (g.is_zero()) return constant(ec, *this).with_order(order_);
        if (is_polynomial()) throw DegenerateTruncation("exp of a polynomial jet needs an order");
        Jet acc = one().with_order(order_);
        Jet term = one().with_order(order_);
        for (int k = 1; k <= order_; ++k) {
            term = (term * g).scaled(s_rat(Rational(1, k), zero_));
            acc += term;
        }
        return acc.scaled(ec);
    }
    Jet log() const {
        S c = eval0();
        if (!scalar_traits<S>::is_unit(c)) throw DomainError("log of a jet with non-invertible constant term");
        S lc = scalar_traits<S>::log(c);
        Jet g = scaled(s_inv(c)) - one();
        if (g.is_zero()) return constant(lc, *this).with_order(order_);
        if (is_polynomial()) throw DegenerateTruncation("log of a polynomial jet needs an order");
        Jet acc(vars_, base_, order_, zero_);
        Jet term = one().with_order(order_);
        for (int k = 1; k <= order_; ++k) {
            term = term * g;
            acc += term.scaled(s_rat(Rational(k % 2 ? 1 : -1, k), zero_));
        }
        return acc + constant(lc, *this);
    }

    Jet one() const { return constant(s_one(zero_), *this); }
    Jet zero() const { return Jet(vars_, base_, kExact, zero_); }

    // Same coefficients on a different (compatible) variable list.
    Jet relabeled(VarsPtr vars, BasePtr base = nullptr) const {
        if (static_cast<int>(vars->size()) != nvars()) throw TypeError("relabel arity mismatch");
        Jet r(std::move(vars), base ? std::move(base) : base_, order_, zero_);
        r.t_ = t_;
        return r;
    }

    bool equal_to(const Jet &o) const { return same_vars(vars_, o.vars_) && order_ == o.order_ && t_ == o.t_; }
    // Agreement of all coefficients both jets know.
    bool agrees_with(const Jet &o) const {
        int n = std::min(order_, o.order_);
        for (auto &[a, c] : t_)
            if (a.degree() <= n && !s_is_zero(S(c - o.coeff(a)))) return false;
        for (auto &[a, c] : o.t_)
            if (a.degree() <= n && t_.find(a) == t_.end()) return false;
        return true;
    }

    friend bool operator==(const Jet &a, const Jet &b) { return a.equal_to(b); }

  private:
    void check_compat(const Jet &o) const {
        if (!same_vars(vars_, o.vars_)) throw TypeError("jet variable mismatch");
    }
    void drop_above(int n) {
        for (auto it = t_.begin(); it != t_.end();)
            if (it->first.degree() > n)
                it = t_.erase(it);
            else
                ++it;
    }

    VarsPtr vars_;
    BasePtr base_;
    int order_;
    Terms t_;
    S zero_;
};

template <class S> struct scalar_traits<Jet<S>> {
    static constexpr bool exact = scalar_traits<S>::exact;
    using J = Jet<S>;
    static J zero_like(const J &s) { return s.zero(); }
    static J one_like(const J &s) { return s.one(); }
    static J from_int(long v, const J &s) { return J::constant(s_int(v, s.zero_element()), s); }
    static J from_rational(const Rational &r, const J &s) { return J::constant(s_rat(r, s.zero_element()), s); }
    static J from_cd(cd v, const J &s) { return J::constant(scalar_traits<S>::from_cd(v, s.zero_element()), s); }
    static bool is_zero(const J &a) { return a.is_zero(); }
    static bool is_unit(const J &a) { return a.unit_constant(); }
    static double magnitude(const J &a) { return scalar_traits<S>::magnitude(a.eval0()); }
    static J inv(const J &a) { return a.inverse(); }
    static J conj(const J &a) { return a.conj(); }
    static J exp(const J &a) { return a.exp(); }
    static J log(const J &a) { return a.log(); }
    static json to_json(const J &a);
};

template <class S> json jet_to_json(const Jet<S> &j) {
    json vars = json::array();
    for (auto &v : *j.vars()) vars.push_back({{"name", v.name}, {"kind", kind_name(v.kind)}});
    json base = json::array();
    for (auto &b : *j.basepoint()) base.push_back(json::array({b.real(), b.imag()}));
    json cs = json::array();
    for (auto &[a, c] : j.terms()) cs.push_back({{"alpha", a.to_vector()}, {"value", scalar_traits<S>::to_json(c)}});
    json out;
    out["vars"] = vars;
    out["basepoint"] = base;
    out["order"] = j.is_polynomial() ? json(nullptr) : json(j.order());
    out["coeffs"] = cs;
    return out;
}

template <class S> json scalar_traits<Jet<S>>::to_json(const Jet<S> &a) { return jet_to_json(a); }

// Polynomial substitution x_i -> sum_j L[i][j] y_j into a jet over new
// variables. Linear maps preserve degree, hence the jet order.
template <class S>
Jet<S> linear_substitute(const Jet<S> &f, VarsPtr new_vars, const std::vector<std::vector<long>> &L, BasePtr base = nullptr) {
    int m = static_cast<int>(new_vars->size());
    Jet<S> like(new_vars, base, kExact, f.zero_element());
    std::vector<Jet<S>> images;
    for (int i = 0; i < f.nvars(); ++i) {
        Jet<S> im = like.zero();
        for (int j = 0; j < m; ++j)
            if (L[i][j]) im += Jet<S>::variable(j, like).scaled(s_int(L[i][j], f.zero_element()));
        images.push_back(im);
    }
    int ord = f.order();
    Jet<S> out(new_vars, like.basepoint(), ord, f.zero_element());
    // cache powers of each image
    std::vector<std::vector<Jet<S>>> pw(f.nvars());
    for (auto &[a, c] : f.terms()) {
        Jet<S> term = Jet<S>::constant(c, like).with_order(ord);
        for (int i = 0; i < f.nvars(); ++i) {
            auto &p = pw[i];
            if (p.empty()) p.push_back(like.one().with_order(ord));
            while (static_cast<int>(p.size()) <= a[i]) p.push_back(p.back() * images[i].with_order(ord));
            if (a[i]) term = term * p[a[i]];
        }
        out += term;
    }
    return out;
}

// Reinterpret a jet in outer+inner variables as a jet in the outer
// variables whose coefficients are jets in the inner ones.
template <class S>
Jet<Jet<S>> nest(const Jet<S> &f, const std::vector<int> &outer, const std::vector<int> &inner, VarsPtr outer_vars, VarsPtr inner_vars, int outer_order,
                 int inner_order) {
    if (outer_order + inner_order > f.order()) throw DegenerateTruncation("nesting exceeds the jet order");
    Jet<S> inner_zero(inner_vars, nullptr, inner_order, f.zero_element());
    Jet<Jet<S>> out(outer_vars, nullptr, outer_order, inner_zero.zero().with_order(inner_order));
    for (auto &[a, c] : f.terms()) {
        MultiIndex ao(static_cast<int>(outer.size())), ai(static_cast<int>(inner.size()));
        for (size_t i = 0; i < outer.size(); ++i) ao.e[i] = a.e[outer[i]];
        for (size_t i = 0; i < inner.size(); ++i) ai.e[i] = a.e[inner[i]];
        if (ao.degree() > outer_order || ai.degree() > inner_order) continue;
        Jet<S> cj = Jet<S>::monomial(ai, c, inner_zero).with_order(inner_order);
        out.add_to(ao, cj);
    }
    return out;
}

// Numerical evaluation of a polynomial or truncated jet at a displacement.
template <class S> cd eval_at(const Jet<S> &f, const std::vector<cd> &x) {
    cd s = 0;
    for (auto &[a, c] : f.terms()) {
        cd t = scalar_traits<S>::to_cd(c);
        for (int i = 0; i < a.n; ++i) t *= std::pow(x[i], a[i]);
        s += t;
    }
    return s;
}

template <class S> Jet<cd> to_double(const Jet<S> &f) {
    Jet<cd> r(f.vars(), f.basepoint(), f.order(), cd(0));
    for (auto &[a, c] : f.terms()) r.set(a, scalar_traits<S>::to_cd(c));
    return r;
}

} // namespace bzl

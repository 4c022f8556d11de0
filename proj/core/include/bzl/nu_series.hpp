#pragma once

#include "bzl/scalar.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace bzl {

// Truncation order of a series whose every coefficient is known.
constexpr int kExact = INT_MAX / 4;

inline int sat_add(int a, int b) {
    if (a >= kExact || b >= kExact) return kExact;
    return a + b;
}

// Formal Laurent series sum_{k >= min_order} c_k nu^k with coefficients known
// for k < trunc_order. The coefficient type only needs the operations that
// the called functions use; see scalar_traits.
template <class C> class NuSeries {
  public:
    NuSeries() : NuSeries(C{}) {}
    explicit NuSeries(C zero) : min_(0), trunc_(kExact), zero_(std::move(zero)) {}
    NuSeries(int min_order, std::vector<C> coeffs, int trunc_order)
        : min_(min_order), trunc_(trunc_order), c_(std::move(coeffs)) {
        if (c_.empty()) throw TypeError("empty coefficient list needs a zero prototype");
        zero_ = s_zero(c_.front());
        check();
    }
    NuSeries(int min_order, std::vector<C> coeffs, int trunc_order, C zero)
        : min_(min_order), trunc_(trunc_order), c_(std::move(coeffs)), zero_(std::move(zero)) {
        check();
    }

    static NuSeries constant(const C &c, int trunc = kExact) { return NuSeries(0, {c}, trunc, s_zero(c)); }
    static NuSeries monomial(const C &c, int k, int trunc = kExact) { return NuSeries(k, {c}, trunc, s_zero(c)); }
    static NuSeries zero(const C &sample, int trunc = kExact) {
        return NuSeries(trunc >= kExact ? 0 : trunc, {}, trunc, s_zero(sample));
    }

    int min_order() const { return min_; }
    int trunc_order() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExact; }
    const std::vector<C> &coeffs() const { return c_; }
    const C &zero_element() const { return zero_; }

    // Highest exponent with a stored coefficient, plus one.
    int stored_end() const { return min_ + static_cast<int>(c_.size()); }

    bool known(int k) const { return k < trunc_; }
    C coeff(int k) const {
        if (k >= trunc_) throw DegenerateTruncation("coefficient of nu^" + std::to_string(k) + " is beyond truncation order " + std::to_string(trunc_));
        if (k < min_ || k >= stored_end()) return zero_;
        return c_[k - min_];
    }
    void set_coeff(int k, C v) {
        if (k >= trunc_) throw DegenerateTruncation("setting a coefficient beyond truncation");
        if (k < min_) {
            c_.insert(c_.begin(), min_ - k, zero_);
            min_ = k;
        }
        if (k >= stored_end()) c_.resize(k - min_ + 1, zero_);
        c_[k - min_] = std::move(v);
    }

    // First exponent with a nonzero coefficient among the known ones.
    int valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!s_is_zero(c_[i]) && min_ + static_cast<int>(i) < trunc_) return min_ + static_cast<int>(i);
        return trunc_;
    }
    bool is_zero_known() const { return valuation() >= trunc_; }

    NuSeries truncated(int n) const {
        NuSeries r = *this;
        r.trunc_ = std::min(trunc_, n);
        if (r.trunc_ < r.min_) r.min_ = r.trunc_;
        int keep = std::max(0, r.trunc_ - r.min_);
        if (static_cast<int>(r.c_.size()) > keep) r.c_.resize(keep, zero_);
        r.trim();
        return r;
    }

    NuSeries operator-() const {
        NuSeries r = *this;
        for (auto &x : r.c_) x = -x;
        return r;
    }
    NuSeries &operator+=(const NuSeries &o) { return *this = add(*this, o, 1); }
    NuSeries &operator-=(const NuSeries &o) { return *this = add(*this, o, -1); }
    NuSeries &operator*=(const NuSeries &o) { return *this = mul(*this, o); }
    friend NuSeries operator+(const NuSeries &a, const NuSeries &b) { return add(a, b, 1); }
    friend NuSeries operator-(const NuSeries &a, const NuSeries &b) { return add(a, b, -1); }
    friend NuSeries operator*(const NuSeries &a, const NuSeries &b) { return mul(a, b); }

    // Multiply every coefficient by an element of the coefficient space.
    NuSeries scaled(const C &s) const {
        NuSeries r = *this;
        for (auto &x : r.c_) x = x * s;
        r.trim();
        return r;
    }
    // Multiply by nu^k.
    NuSeries shifted(int k) const {
        NuSeries r = *this;
        r.min_ += k;
        r.trunc_ = sat_add(r.trunc_, k);
        return r;
    }

    // Exact equality of the known coefficients and truncation orders.
    friend bool operator==(const NuSeries &a, const NuSeries &b) {
        if (a.trunc_ != b.trunc_) return false;
        int lo = std::min(a.min_, b.min_);
        int hi = std::max(a.stored_end(), b.stored_end());
        for (int k = lo; k < hi && k < a.trunc_; ++k)
            if (!(a.coeff(k) == b.coeff(k))) return false;
        return true;
    }

    // Agreement of coefficients for all k < n that both sides know.
    bool agrees_below(const NuSeries &o, int n) const {
        int hi = std::min({n, trunc_, o.trunc_});
        int lo = std::min(min_, o.min_);
        for (int k = lo; k < hi; ++k)
            if (!s_is_zero(C(coeff(k) - o.coeff(k)))) return false;
        return true;
    }

    // Drop trailing zeros of exact series and leading zeros everywhere.
    void trim() {
        while (!c_.empty() && s_is_zero(c_.front())) {
            c_.erase(c_.begin());
            ++min_;
        }
        if (c_.empty()) {
            min_ = is_exact() ? 0 : trunc_; // known to vanish below trunc
            return;
        }
        while (!c_.empty() && s_is_zero(c_.back())) c_.pop_back();
    }

  private:
    void check() {
        if (min_ > trunc_) throw DegenerateTruncation("min_order exceeds trunc_order");
        if (!is_exact() && static_cast<int>(c_.size()) > trunc_ - min_) c_.resize(trunc_ - min_, zero_);
        trim();
    }

    static NuSeries add(const NuSeries &a, const NuSeries &b, int sign) {
        int trunc = std::min(a.trunc_, b.trunc_);
        int lo = std::min(a.min_, b.min_);
        int hi = std::min(std::max(a.stored_end(), b.stored_end()), trunc);
        if (trunc <= lo && !(a.c_.empty() && b.c_.empty()))
            throw DegenerateTruncation("sum has no known coefficients");
        NuSeries r(a.zero_);
        r.min_ = std::min(lo, trunc);
        r.trunc_ = trunc;
        for (int k = lo; k < hi; ++k) {
            C v = a.coeff(k);
            if (sign > 0)
                v += b.coeff(k);
            else
                v -= b.coeff(k);
            r.c_.push_back(std::move(v));
        }
        r.trim();
        return r;
    }

    static NuSeries mul(const NuSeries &a, const NuSeries &b) {
        int lo = a.min_ + b.min_;
        int trunc = std::min(sat_add(a.min_, b.trunc_), sat_add(b.min_, a.trunc_));
        if (a.c_.empty() || b.c_.empty()) {
            NuSeries r(a.zero_);
            r.trunc_ = trunc;
            r.trim();
            return r;
        }
        if (trunc <= lo) throw DegenerateTruncation("product has no known coefficients");
        int hi = std::min(a.stored_end() + b.stored_end() - 1, trunc);
        NuSeries r(a.zero_);
        r.min_ = lo;
        r.trunc_ = trunc;
        r.c_.assign(std::max(0, hi - lo), a.zero_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (s_is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int k = lo + static_cast<int>(i + j);
                if (k >= hi) break;
                r.c_[k - lo] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }

    int min_;
    int trunc_;
    std::vector<C> c_;
    C zero_;
};

// The formal parameter itself.
template <class C> NuSeries<C> nu(const C &sample) { return NuSeries<C>::monomial(s_one(sample), 1); }

// Inverse in the field of formal Laurent series. Exact polynomial inputs
// need an explicit target truncation unless they are monomials.
template <class C> NuSeries<C> invert(const NuSeries<C> &a, int trunc_if_exact = kExact) {
    int v = a.valuation();
    if (v >= a.trunc_order()) throw SingularLeadingTerm("series has no invertible leading term");
    const C &lead = a.coeff(v);
    if (!scalar_traits<C>::is_unit(lead)) throw SingularLeadingTerm("leading coefficient is not invertible");
    C b0 = s_inv(lead);
    int rel; // number of known coefficients of the normalized series
    if (a.is_exact()) {
        if (a.stored_end() == v + 1) return NuSeries<C>::monomial(b0, -v);
        if (trunc_if_exact >= kExact) throw DegenerateTruncation("inverse of a polynomial needs a truncation order");
        rel = trunc_if_exact + v;
    } else {
        rel = a.trunc_order() - v;
    }
    std::vector<C> b{b0};
    for (int k = 1; k < rel; ++k) {
        C acc = s_zero(b0);
        for (int j = 1; j <= k; ++j) {
            if (v + j >= a.stored_end()) break;
            acc += a.coeff(v + j) * b[k - j];
        }
        b.push_back(-(b0 * acc));
    }
    return NuSeries<C>(-v, std::move(b), -v + rel, s_zero(b0));
}

template <class C> NuSeries<C> series_exp(const NuSeries<C> &a, int trunc_if_exact = kExact) {
    for (int k = a.min_order(); k < 0 && k < a.trunc_order(); ++k)
        if (!s_is_zero(a.coeff(k))) throw DomainError("exp of a series with a principal part");
    int trunc = a.trunc_order();
    if (a.is_exact()) {
        if (a.stored_end() <= 1) return NuSeries<C>::constant(scalar_traits<C>::exp(a.coeff(0)));
        if (trunc_if_exact >= kExact) throw DegenerateTruncation("exp of a polynomial needs a truncation order");
        trunc = trunc_if_exact;
    }
    if (trunc <= 0) throw DegenerateTruncation("exp needs the constant term");
    C a0 = a.coeff(0);
    std::vector<C> b{scalar_traits<C>::exp(a0)};
    for (int n = 1; n < trunc; ++n) {
        C acc = s_zero(a0);
        for (int k = 1; k <= n; ++k) {
            if (k >= a.stored_end()) break;
            acc += a.coeff(k) * b[n - k] * s_int(k, a0);
        }
        b.push_back(acc * s_rat(Rational(1, n), a0));
    }
    return NuSeries<C>(0, std::move(b), trunc, s_zero(a0));
}

template <class C> NuSeries<C> series_log(const NuSeries<C> &a, int trunc_if_exact = kExact) {
    int v = a.valuation();
    if (v != 0) throw DomainError("log needs an invertible nu^0 leading term");
    int trunc = a.trunc_order();
    if (a.is_exact()) {
        if (a.stored_end() <= 1) return NuSeries<C>::constant(scalar_traits<C>::log(a.coeff(0)));
        if (trunc_if_exact >= kExact) throw DegenerateTruncation("log of a polynomial needs a truncation order");
        trunc = trunc_if_exact;
    }
    C a0 = a.coeff(0);
    if (!scalar_traits<C>::is_unit(a0)) throw SingularLeadingTerm("log of a non-invertible leading term");
    C inv0 = s_inv(a0);
    std::vector<C> l{scalar_traits<C>::log(a0)};
    auto ak = [&](int k) { return k < a.stored_end() ? a.coeff(k) : s_zero(a0); };
    for (int n = 1; n < trunc; ++n) {
        C acc = ak(n) * s_int(n, a0);
        for (int k = 1; k < n; ++k) acc -= l[k] * ak(n - k) * s_int(k, a0);
        l.push_back(acc * inv0 * s_rat(Rational(1, n), a0));
    }
    return NuSeries<C>(0, std::move(l), trunc, s_zero(a0));
}

// Elementwise product of series over two coefficient spaces.
template <class A, class B, class Op>
auto mul_with(const NuSeries<A> &a, const NuSeries<B> &b, Op op) -> NuSeries<decltype(op(a.zero_element(), b.zero_element()))> {
    using R = decltype(op(a.zero_element(), b.zero_element()));
    R z = op(a.zero_element(), b.zero_element());
    int lo = a.min_order() + b.min_order();
    int trunc = std::min(sat_add(a.min_order(), b.trunc_order()), sat_add(b.min_order(), a.trunc_order()));
    if (a.coeffs().empty() || b.coeffs().empty()) return NuSeries<R>::zero(z, trunc);
    int hi = std::min(a.stored_end() + b.stored_end() - 1, trunc);
    std::vector<R> out(std::max(0, hi - lo), z);
    for (int i = a.min_order(); i < a.stored_end(); ++i)
        for (int j = b.min_order(); j < b.stored_end(); ++j) {
            if (i + j >= hi) break;
            out[i + j - lo] += op(a.coeff(i), b.coeff(j));
        }
    NuSeries<R> r(lo, std::move(out), trunc, z);
    r.trim();
    return r;
}

template <class C, class F>
auto map_coeffs(const NuSeries<C> &a, F f) -> NuSeries<decltype(f(a.zero_element()))> {
    using R = decltype(f(a.zero_element()));
    std::vector<R> out;
    for (auto &c : a.coeffs()) out.push_back(f(c));
    NuSeries<R> r(a.min_order(), std::move(out), a.trunc_order(), f(a.zero_element()));
    r.trim();
    return r;
}

template <class C> json to_json(const NuSeries<C> &a) {
    json cs = json::array();
    int end = a.is_exact() ? a.stored_end() : a.trunc_order();
    for (int k = a.min_order(); k < end; ++k)
        cs.push_back(scalar_traits<C>::to_json(a.coeff(k)));
    json j;
    j["min_order"] = a.min_order();
    j["trunc_order"] = a.is_exact() ? json(nullptr) : json(a.trunc_order());
    j["coeffs"] = cs;
    return j;
}

} // namespace bzl

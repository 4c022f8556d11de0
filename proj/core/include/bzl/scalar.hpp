#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace bzl {

using Rational = boost::multiprecision::mpq_rational;
using cd = std::complex<double>;
using json = nlohmann::json;

struct TypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateTruncation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularLeadingTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a numerical procedure declines to return a result.
struct NumericalRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complex numbers over an exact field. std::complex is only specified for
// floating types, so this covers the rational case.
template <class T> struct Cplx {
    T re{0}, im{0};

    Cplx() = default;
    Cplx(long v) : re(v), im(0) {}
    Cplx(int v) : re(v), im(0) {}
    Cplx(T r) : re(std::move(r)), im(0) {}
    Cplx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx &operator+=(const Cplx &o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx &operator-=(const Cplx &o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cplx &operator*=(const Cplx &o) {
        T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Cplx &operator/=(const Cplx &o) { return *this *= o.inverse(); }
    Cplx inverse() const {
        T n = re * re + im * im;
        if (n == 0) throw SingularLeadingTerm("division by zero");
        return {re / n, -im / n};
    }
    Cplx conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend Cplx operator+(Cplx a, const Cplx &b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx &b) { return a -= b; }
    friend Cplx operator*(Cplx a, const Cplx &b) { return a *= b; }
    friend Cplx operator/(Cplx a, const Cplx &b) { return a /= b; }
    friend bool operator==(const Cplx &a, const Cplx &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Cplx &a, const Cplx &b) { return !(a == b); }
};

using QQi = Cplx<Rational>;

inline QQi qq(long p, long q = 1) { return QQi(Rational(p, q)); }
inline QQi qqi(long p, long q = 1) { return QQi(Rational(0), Rational(p, q)); }
inline const QQi I_unit{Rational(0), Rational(1)};

inline std::string rational_str(const Rational &r) { return r.str(); }

// Traits used by every generic algorithm. The sample argument carries
// metadata for structured scalars (jets); plain scalars ignore it.
template <class S> struct scalar_traits;

template <> struct scalar_traits<QQi> {
    static constexpr bool exact = true;
    static QQi zero_like(const QQi &) { return QQi(); }
    static QQi one_like(const QQi &) { return QQi(1); }
    static QQi from_int(long v, const QQi &) { return QQi(v); }
    static QQi from_rational(const Rational &r, const QQi &) { return QQi(r); }
    static QQi from_cd(cd, const QQi &) { throw TypeError("exact backend cannot absorb a floating value"); }
    static bool is_zero(const QQi &a) { return a.is_zero(); }
    static bool is_unit(const QQi &a) { return !a.is_zero(); }
    static double magnitude(const QQi &a) { return a.is_zero() ? 0.0 : 1.0; }
    static QQi inv(const QQi &a) { return a.inverse(); }
    static QQi conj(const QQi &a) { return a.conj(); }
    static QQi exp(const QQi &a) {
        if (a.is_zero()) return QQi(1);
        throw DomainError("exp of a nonzero constant is not exact");
    }
    static QQi log(const QQi &a) {
        if (a == QQi(1)) return QQi();
        if (a.im == 0 && a.re <= 0) throw DomainError("log of a non-positive real");
        throw DomainError("log of a constant other than 1 is not exact");
    }
    static cd to_cd(const QQi &a) { return {a.re.convert_to<double>(), a.im.convert_to<double>()}; }
    static json to_json(const QQi &a) {
        if (a.im == 0) return rational_str(a.re);
        return json::array({rational_str(a.re), rational_str(a.im)});
    }
};

template <> struct scalar_traits<cd> {
    static constexpr bool exact = false;
    static cd zero_like(const cd &) { return 0.0; }
    static cd one_like(const cd &) { return 1.0; }
    static cd from_int(long v, const cd &) { return double(v); }
    static cd from_rational(const Rational &r, const cd &) { return r.convert_to<double>(); }
    static cd from_cd(cd v, const cd &) { return v; }
    static bool is_zero(const cd &a) { return a == 0.0; }
    static bool is_unit(const cd &a) { return a != 0.0; }
    static double magnitude(const cd &a) { return std::abs(a); }
    static cd inv(const cd &a) {
        if (a == 0.0) throw SingularLeadingTerm("division by zero");
        return 1.0 / a;
    }
    static cd conj(const cd &a) { return std::conj(a); }
    static cd exp(const cd &a) { return std::exp(a); }
    static cd log(const cd &a) {
        if (a.imag() == 0.0 && a.real() <= 0.0) throw DomainError("log of a non-positive real");
        return std::log(a);
    }
    static cd to_cd(const cd &a) { return a; }
    static json to_json(const cd &a) {
        if (a.imag() == 0.0) return a.real();
        return json::array({a.real(), a.imag()});
    }
};

template <class S> S s_zero(const S &sample) { return scalar_traits<S>::zero_like(sample); }
template <class S> S s_one(const S &sample) { return scalar_traits<S>::one_like(sample); }
template <class S> S s_int(long v, const S &sample) { return scalar_traits<S>::from_int(v, sample); }
template <class S> S s_rat(const Rational &r, const S &sample) { return scalar_traits<S>::from_rational(r, sample); }
template <class S> bool s_is_zero(const S &a) { return scalar_traits<S>::is_zero(a); }
template <class S> S s_inv(const S &a) { return scalar_traits<S>::inv(a); }
template <class S> S s_conj(const S &a) { return scalar_traits<S>::conj(a); }

// Rational multiple of a power of pi. Sums require matching powers.
struct PiQ {
    QQi c;
    int pi = 0;

    PiQ() = default;
    PiQ(QQi c_, int p) : c(std::move(c_)), pi(p) {}
    PiQ(int v) : c(v), pi(0) {}

    PiQ operator-() const { return {-c, pi}; }
    PiQ &operator+=(const PiQ &o) {
        if (o.c.is_zero()) return *this;
        if (c.is_zero()) {
            *this = o;
            return *this;
        }
        if (pi != o.pi) throw TypeError("adding different powers of pi");
        c += o.c;
        return *this;
    }
    PiQ &operator-=(const PiQ &o) { return *this += -o; }
    PiQ &operator*=(const PiQ &o) {
        c *= o.c;
        pi += o.pi;
        return *this;
    }
    friend PiQ operator+(PiQ a, const PiQ &b) { return a += b; }
    friend PiQ operator-(PiQ a, const PiQ &b) { return a -= b; }
    friend PiQ operator*(PiQ a, const PiQ &b) { return a *= b; }
    friend bool operator==(const PiQ &a, const PiQ &b) {
        if (a.c.is_zero() && b.c.is_zero()) return true;
        return a.c == b.c && a.pi == b.pi;
    }
    cd value() const { return scalar_traits<QQi>::to_cd(c) * std::pow(M_PI, pi); }
};

template <> struct scalar_traits<PiQ> {
    static constexpr bool exact = true;
    static PiQ zero_like(const PiQ &) { return PiQ(); }
    static PiQ one_like(const PiQ &) { return PiQ(1); }
    static PiQ from_int(long v, const PiQ &) { return PiQ(QQi(v), 0); }
    static PiQ from_rational(const Rational &r, const PiQ &) { return PiQ(QQi(r), 0); }
    static bool is_zero(const PiQ &a) { return a.c.is_zero(); }
    static bool is_unit(const PiQ &a) { return !a.c.is_zero(); }
    static double magnitude(const PiQ &a) { return a.c.is_zero() ? 0.0 : 1.0; }
    static PiQ inv(const PiQ &a) { return PiQ(a.c.inverse(), -a.pi); }
    static PiQ conj(const PiQ &a) { return PiQ(a.c.conj(), a.pi); }
    static PiQ exp(const PiQ &a) {
        if (a.c.is_zero()) return PiQ(1);
        throw DomainError("exp of a nonzero constant is not exact");
    }
    static PiQ log(const PiQ &a) {
        if (a.pi == 0 && a.c == QQi(1)) return PiQ();
        throw DomainError("log of a constant other than 1 is not exact");
    }
    static cd to_cd(const PiQ &a) { return a.value(); }
    static json to_json(const PiQ &a) {
        return json{{"coeff", scalar_traits<QQi>::to_json(a.c)}, {"pi_power", a.pi}};
    }
};

} // namespace bzl

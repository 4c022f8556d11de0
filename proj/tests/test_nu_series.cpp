#include "doctest.h"

#include "bzl/jet.hpp"
#include "bzl/nu_series.hpp"

#include <random>

using namespace bzl;

namespace {

using S = NuSeries<QQi>;

S ser(int min, std::vector<long> c, int trunc = kExact) {
    std::vector<QQi> v;
    for (long x : c) v.push_back(qq(x));
    return S(min, v, trunc, QQi());
}

S random_series(std::mt19937 &rng, int trunc) {
    std::uniform_int_distribution<int> d(-5, 5), lo(-2, 1);
    int min = lo(rng);
    std::vector<QQi> v;
    for (int k = min; k < trunc; ++k) v.push_back(qq(d(rng), 1 + (d(rng) + 5) % 3));
    return S(min, v, trunc, QQi());
}

} // namespace

TEST_CASE("monomial product and additive identity") {
    S a = ser(-1, {1, 1});
    S prod = a * nu(QQi());
    CHECK(prod == ser(0, {1, 1}));
    S zero = S::zero(QQi());
    CHECK(a + zero == a);
}

TEST_CASE("binomial product keeps the pessimistic truncation") {
    S p = ser(0, {1, 1}, 3), m = ser(0, {1, -1}, 3);
    S r = p * m;
    CHECK(r.trunc_order() == 3);
    CHECK(r.coeff(0) == qq(1));
    CHECK(r.coeff(1) == qq(0));
    CHECK(r.coeff(2) == qq(-1));
    CHECK_THROWS_AS(r.coeff(3), DegenerateTruncation);
}

TEST_CASE("truncation bookkeeping for sums and products") {
    S a = ser(0, {1, 2, 3}, 3);       // known below nu^3
    S b = ser(-1, {1, 0, 0, 0, 5}, 4); // known below nu^4
    CHECK((a + b).trunc_order() == 3);
    // min over cross terms: a.min + b.trunc = 4, b.min + a.trunc = 2
    CHECK((a * b).trunc_order() == 2);
    S c = ser(2, {1}, 5);
    CHECK((a * c).trunc_order() == 5);
}

TEST_CASE("inversion") {
    S inv = invert(ser(0, {1, 1}), 4);
    CHECK(inv == ser(0, {1, -1, 1, -1}, 4));
    CHECK(invert(ser(-1, {1})) == ser(1, {1}));

    // 2 + c nu with c = 3/7: inverse 1/2 - (c/4) nu + (c^2/8) nu^2
    QQi c = qq(3, 7);
    S a(0, {qq(2), c}, kExact, QQi());
    S ia = invert(a, 3);
    S back = a * ia;
    CHECK(back.agrees_below(S::constant(qq(1)), 3));
    CHECK(ia.coeff(0) == qq(1, 2));
    CHECK(ia.coeff(1) == qq(-3, 28));
    CHECK(ia.coeff(2) == qq(9, 392));

    CHECK_THROWS_AS(invert(S::zero(QQi(), 3)), SingularLeadingTerm);
}

TEST_CASE("exp and log") {
    QQi u1 = qq(5, 3);
    S e = series_exp(S::monomial(u1, 1), 4);
    CHECK(e.coeff(0) == qq(1));
    CHECK(e.coeff(1) == u1);
    CHECK(e.coeff(2) == u1 * u1 * qq(1, 2));
    CHECK(e.coeff(3) == u1 * u1 * u1 * qq(1, 6));
    CHECK(series_log(S::constant(qq(1))) == S::zero(QQi()));

    S p = ser(0, {1, 1, 1}, 3);
    CHECK(series_exp(series_log(p)) == p);

    CHECK_THROWS_AS(series_exp(ser(-1, {1, 0}, 2)), DomainError);
    NuSeries<cd> neg = NuSeries<cd>::constant(cd(-2.0), 3);
    CHECK_THROWS_AS(series_log(neg), DomainError);
    CHECK_THROWS_AS(series_log(ser(1, {1}, 3)), DomainError);
}

TEST_CASE("double backend exp of nonzero constants") {
    NuSeries<cd> a(0, {cd(0.5), cd(1.0)}, 3, cd(0));
    auto l = series_log(series_exp(a));
    CHECK(std::abs(l.coeff(0) - 0.5) < 1e-15);
    CHECK(std::abs(l.coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(l.coeff(2)) < 1e-15);
}

TEST_CASE("ring axioms on random rational series") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 40; ++trial) {
        S a = random_series(rng, 4), b = random_series(rng, 5), c = random_series(rng, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (!a.is_zero_known()) {
            S ia = invert(a);
            S one = a * ia;
            CHECK(one.agrees_below(S::constant(qq(1)), one.trunc_order()));
        }
    }
}

TEST_CASE("round trips on random unit series") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QQi> v{qq(1)};
        for (int k = 1; k < 5; ++k) v.push_back(qq(d(rng), 3));
        S a(0, v, 5, QQi());
        CHECK(series_exp(series_log(a)) == a);
        S t = a - S::constant(qq(1));
        CHECK(series_log(series_exp(t)) == t.truncated(5));
    }
}

TEST_CASE("jet coefficients and type errors") {
    auto v1 = complex_vars({"z"});
    auto v2 = complex_vars({"w"});
    Jet<QQi> j1(v1, 4), j2(v2, 4);
    j1.set(MultiIndex{1, 0}, qq(1));
    j2.set(MultiIndex{1, 0}, qq(1));
    NuSeries<Jet<QQi>> a = NuSeries<Jet<QQi>>::constant(j1), b = NuSeries<Jet<QQi>>::constant(j2);
    CHECK_THROWS_AS(a + b, TypeError);
    auto sq = a * a;
    CHECK(sq.coeff(0).coeff(MultiIndex{2, 0}) == qq(1));
}

TEST_CASE("json form") {
    json j = to_json(ser(-1, {1, 0, 2}, 3));
    CHECK(j["min_order"] == -1);
    CHECK(j["trunc_order"] == 3);
    CHECK(j["coeffs"].size() == 4);
    CHECK(j["coeffs"][2] == "2");
    CHECK(to_json(ser(0, {1})).at("trunc_order").is_null());
}

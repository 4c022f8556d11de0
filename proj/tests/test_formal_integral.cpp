#include "doctest.h"

#include "bzl/formal_integral.hpp"

#include <random>

using namespace bzl;

namespace {

using J = Jet<QQi>;
using JS = NuSeries<J>;

J poly(const VarsPtr &v, std::initializer_list<std::pair<MultiIndex, QQi>> terms) {
    J j(v, kExact);
    for (auto &[a, c] : terms) j.set(a, c);
    return j;
}

PhasePair<QQi> pair_of(const J &phim1, std::vector<J> lower = {}, std::vector<J> rho = {}) {
    std::vector<J> ph{phim1};
    for (auto &l : lower) ph.push_back(l);
    if (rho.empty()) rho.push_back(phim1.one());
    return {JS(-1, ph, kExact, phim1.zero()), JS(0, rho, kExact, phim1.zero()), QQi()};
}

// E[y^k] for a Gaussian with mean mu and variance s2 given as nu-series.
std::vector<NuSeries<QQi>> gaussian_moments(const NuSeries<QQi> &mu, const NuSeries<QQi> &s2, int kmax) {
    std::vector<NuSeries<QQi>> m{NuSeries<QQi>::constant(qq(1))};
    m.push_back(mu);
    for (int k = 2; k <= kmax; ++k) m.push_back(mu * m[k - 1] + s2 * m[k - 2] * NuSeries<QQi>::constant(qq(k - 1)));
    return m;
}

J random_poly(std::mt19937 &rng, const VarsPtr &v, int mindeg, int maxdeg) {
    std::uniform_int_distribution<int> d(-4, 4);
    J j(v, kExact);
    for (auto &a : monomials_upto(v->size(), maxdeg))
        if (a.degree() >= mindeg) j.set(a, qq(d(rng), 1 + std::abs(d(rng))));
    return j;
}

PhasePair<QQi> random_pair(std::mt19937 &rng, int n, int N) {
    auto v = real_vars(n);
    std::uniform_int_distribution<int> d(1, 5);
    J phim1 = random_poly(rng, v, 3, 4);
    for (int k = 0; k < n; ++k) phim1.set(MultiIndex::unit(n, k).bumped(k), qq(-d(rng)));
    if (n == 2) phim1.set(MultiIndex{1, 1}, qq(1, d(rng)));
    std::vector<J> lower;
    for (int s = 0; s < N; ++s) lower.push_back(random_poly(rng, v, 0, 3));
    std::vector<J> rho{phim1.one() + random_poly(rng, v, 1, 2), random_poly(rng, v, 0, 2)};
    return pair_of(phim1, lower, rho);
}

} // namespace

TEST_CASE("one-dimensional Gaussian") {
    auto v = real_vars(1);
    auto p = pair_of(poly(v, {{MultiIndex{2}, qq(-1)}}));
    auto K = formal_integral_recursion(p, 2);
    CHECK(K.weight(0, MultiIndex{0}) == qq(1));
    CHECK(K.moments[0].size() == 1);
    CHECK(K.weight(1, MultiIndex{2}) == qq(1, 4));
    CHECK(K.weight(2, MultiIndex{4}) == qq(1, 32));
    CHECK(K.moments[1].size() == 1);
    CHECK(K.moments[2].size() == 1);

    // oracle: mean 0, variance nu/2
    auto m = gaussian_moments(NuSeries<QQi>::zero(QQi()), NuSeries<QQi>::monomial(qq(1, 2), 1), 6);
    for (int k = 0; k <= 4; ++k)
        for (int r = 0; r <= 2; ++r) CHECK(K.moment(r, MultiIndex{k}) == m[k].coeff(r));

    auto W = formal_integral_wick(p, 2);
    CHECK(W.K == K);
}

TEST_CASE("normalization and the nu^0 part") {
    std::mt19937 rng(1);
    for (int n = 1; n <= 2; ++n) {
        auto p = random_pair(rng, n, 2);
        for (auto &K : {formal_integral_recursion(p, 2), formal_integral_wick(p, 2).K}) {
            CHECK(K.moment(0, MultiIndex(n)) == qq(1));
            CHECK(K.moments[0].size() == 1);
            for (int r = 1; r <= 2; ++r) CHECK(K.moment(r, MultiIndex(n)) == qq(0));
        }
    }
}

TEST_CASE("completing the square") {
    auto v = real_vars(1);
    QQi c = qq(3, 5);
    auto p = pair_of(poly(v, {{MultiIndex{2}, qq(-1)}}), {poly(v, {{MultiIndex{1}, c}})});
    auto K = formal_integral_recursion(p, 3);
    CHECK(K.weight(1, MultiIndex{2}) == qq(1, 4));
    CHECK(K.weight(1, MultiIndex{1}) == c * qq(1, 2));
    CHECK(K.weight(1, MultiIndex{0}) == qq(0));
    // oracle: mean c nu / 2, variance nu / 2
    auto m = gaussian_moments(NuSeries<QQi>::monomial(c * qq(1, 2), 1), NuSeries<QQi>::monomial(qq(1, 2), 1), 6);
    for (int k = 0; k <= 6; ++k)
        for (int r = 0; r <= 3; ++r) CHECK(K.moment(r, MultiIndex{k}) == m[k].coeff(r));
    CHECK(formal_integral_wick(p, 3).K == K);
}

TEST_CASE("complex flat pair") {
    auto v = complex_vars({"z"});
    auto p = pair_of(poly(v, {{MultiIndex{1, 1}, qq(-1)}}));
    for (auto &K : {formal_integral_recursion(p, 2), formal_integral_wick(p, 2).K}) {
        CHECK(K.weight(1, MultiIndex{1, 1}) == qq(1));
        CHECK(K.moments[1].size() == 1);
        CHECK(K.weight(2, MultiIndex{2, 2}) == qq(1, 2));
        CHECK(K.moments[2].size() == 1);
    }
}

TEST_CASE("condition (d) residuals") {
    auto v = real_vars(1);
    auto p = pair_of(poly(v, {{MultiIndex{2}, qq(-1)}}));
    auto K = formal_integral_recursion(p, 2);
    auto rep = verify_condition_d(K, p);
    CHECK(rep.ok);
    CHECK(rep.checked > 0);

    auto bad = K;
    bad.moments[1][MultiIndex{2}] += qq(2, 7); // adds (1/7) d^2 to K_1
    auto rb = verify_condition_d(bad, p);
    REQUIRE(!rb.ok);
    int first = 99;
    for (auto &f : rb.failures) first = std::min(first, f.nu_order);
    CHECK(first == 1);

    std::mt19937 rng(4);
    for (int n = 1; n <= 2; ++n) {
        auto q = random_pair(rng, n, 3);
        CHECK(verify_condition_d(formal_integral_recursion(q, 3), q).ok);
        CHECK(verify_condition_d(formal_integral_wick(q, 3).K, q).ok);
    }
}

TEST_CASE("pair reduction") {
    auto v = real_vars(1);
    J phim1 = poly(v, {{MultiIndex{2}, qq(-1)}, {MultiIndex{3}, qq(1, 3)}});
    auto p = pair_of(phim1);
    auto same = pair_reduce(p, JS::zero(phim1.zero()));
    CHECK(same.phi == p.phi);
    CHECK(same.rho == p.rho);

    // density e^{nu g}: reducing by u = -nu g gives (phi + nu g, dy)
    J g = poly(v, {{MultiIndex{1}, qq(2)}, {MultiIndex{2}, qq(-1, 2)}}).with_order(8);
    JS nug = JS::monomial(g, 1);
    JS rho = series_exp(nug, 4);
    PhasePair<QQi> q{p.phi, rho, QQi()};
    auto red = pair_reduce(q, -nug, 8, 4);
    CHECK(red.phi.agrees_below(p.phi + nug, 4));
    CHECK(red.rho.agrees_below(JS::constant(phim1.one()), 4));

    auto K1 = formal_integral_recursion(q, 3), K2 = formal_integral_recursion(red, 3);
    CHECK(K1 == K2);
    CHECK(formal_integral_wick(q, 3).K == formal_integral_wick(red, 3).K);
    CHECK(verify_condition_d(K1, q).ok == verify_condition_d(K1, red).ok);

    JS principal = JS::monomial(g, -1);
    CHECK_THROWS_AS(pair_reduce(p, principal, 8, 4), DomainError);
}

TEST_CASE("equivalence and scaling invariance on random pairs") {
    std::mt19937 rng(8);
    for (int t = 0; t < 4; ++t) {
        int n = 1 + t % 2;
        auto p = random_pair(rng, n, 3);
        auto K = formal_integral_recursion(p, 3);
        auto v = p.phi.coeff(-1).vars();
        JS u(0, {random_poly(rng, v, 1, 2), random_poly(rng, v, 0, 2)}, kExact, J(v, kExact));
        auto q = pair_reduce(p, u, required_jet_order(3), 4);
        CHECK(formal_integral_recursion(q, 3) == K);
        CHECK(formal_integral_wick(q, 3).K == K);

        // mu -> c(nu) mu
        NuSeries<QQi> c(0, {qq(3), qq(-1, 2), qq(5)}, kExact, QQi());
        auto scaled = p;
        scaled.rho = mul_with(p.rho, c, [](const J &j, const QQi &s) { return j.scaled(s); });
        CHECK(formal_integral_recursion(scaled, 3) == K);
        CHECK(formal_integral_wick(scaled, 3).K == K);
    }
}

TEST_CASE("derivative order of K_r is at most 2r") {
    std::mt19937 rng(12);
    auto p = random_pair(rng, 2, 3);
    auto W = formal_integral_wick(p, 3, 8);
    for (int r = 0; r <= 3; ++r) CHECK(W.K.derivative_order(r) <= 2 * r);
    auto R = formal_integral_recursion(p, 3);
    for (int r = 0; r <= 3; ++r) CHECK(R.derivative_order(r) <= 2 * r);
}

TEST_CASE("engines agree on random pairs") {
    std::mt19937 rng(2026);
    for (int t = 0; t < 6; ++t) {
        auto p = random_pair(rng, 1 + t % 2, 3);
        CHECK(formal_integral_recursion(p, 3) == formal_integral_wick(p, 3).K);
    }
}

TEST_CASE("degenerate inputs") {
    auto v = real_vars(1);
    CHECK_THROWS_AS(formal_integral_recursion(pair_of(poly(v, {{MultiIndex{3}, qq(1)}})), 1), DomainError);
    CHECK_THROWS_AS(formal_integral_recursion(pair_of(poly(v, {{MultiIndex{1}, qq(1)}, {MultiIndex{2}, qq(-1)}})), 1), DomainError);
    J truncated = poly(v, {{MultiIndex{2}, qq(-1)}, {MultiIndex{3}, qq(1)}}).with_order(3);
    CHECK_THROWS_AS(formal_integral_recursion(pair_of(truncated), 3), DegenerateTruncation);
}

TEST_CASE("json form") {
    auto v = real_vars(1);
    auto K = formal_integral_recursion(pair_of(poly(v, {{MultiIndex{2}, qq(-1)}})), 1);
    json j = to_json(K);
    CHECK(j["terms"].size() == 2);
    CHECK(j["terms"][1]["alpha"][0] == 2);
}

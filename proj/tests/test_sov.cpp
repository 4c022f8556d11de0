#include "doctest.h"

#include "bzl/sov.hpp"

#include <random>

using namespace bzl;

namespace {

MultiIndex mi(std::initializer_list<int> xs) { return MultiIndex(xs); }

CJet poly(std::initializer_list<std::pair<MultiIndex, QQi>> terms) {
    CJet j(chart_vars(), kExact);
    for (auto &[a, c] : terms) j.set(a, c);
    return j;
}

CJet random_poly(std::mt19937 &rng, int maxdeg) {
    std::uniform_int_distribution<int> d(-3, 3);
    CJet j(chart_vars(), kExact);
    for (auto &a : monomials_upto(2, maxdeg)) j.set(a, QQi(Rational(d(rng), 2), Rational(d(rng))));
    return j;
}

// (1 + |x0 + z|^2)^k as an exact polynomial
CJet metric_factor(const QQi &x0, int k) {
    CJet t = poly({{mi({0, 0}), QQi(1) + x0 * x0.conj()}, {mi({1, 0}), x0.conj()}, {mi({0, 1}), x0}, {mi({1, 1}), qq(1)}});
    CJet r = t.one();
    for (int i = 0; i < k; ++i) r = r * t;
    return r;
}

NuSeries<CJet> series_of(const CJet &f) { return NuSeries<CJet>::constant(f); }

} // namespace

TEST_CASE("flat Berezin transform") {
    auto K = formal_berezin_transform(flat_germ(), 2);
    CHECK(K.moments[0].size() == 1);
    CHECK(K.weight(0, mi({0, 0})) == qq(1));
    CHECK(K.moments[1].size() == 1);
    CHECK(K.weight(1, mi({1, 1})) == qq(1));
    CHECK(K.moments[2].size() == 1);
    CHECK(K.weight(2, mi({2, 2})) == qq(1, 2));
}

TEST_CASE("Fubini-Study Berezin transform") {
    auto K = formal_berezin_transform(fubini_study_germ(), 2);
    CHECK(K.weight(1, mi({1, 1})) == qq(1));
    CHECK(K.moments[1].size() == 1);
    for (int r = 1; r <= 2; ++r) CHECK(K.moment(r, mi({0, 0})) == qq(0));

    QQi x0(Rational(1, 2), Rational(-1, 3));
    auto Kx = formal_berezin_transform(fubini_study_germ(x0), 1);
    QQi n = QQi(1) + x0 * x0.conj();
    CHECK(Kx.weight(1, mi({1, 1})) == n * n);

    // the family coefficient is (1 + |x|^2)^2 near x0
    auto I = formal_berezin_family(fubini_study_germ(x0), 2, 6);
    REQUIRE(I[1].terms.size() == 1);
    CHECK(I[1].terms.at(mi({1, 1})).agrees_with(metric_factor(x0, 2)));
    CHECK(I[1].terms.at(mi({1, 1})).order() == 6);
    CHECK(I[0].agrees_with(DiffOp::identity()));
}

TEST_CASE("twisted product: units and the flat first coefficient") {
    auto Q = formal_twisted_product(flat_germ(), 2);
    // vars (w1, w2, w1b, w2b)
    CHECK(Q.weight(0, mi({0, 0, 0, 0})) == qq(1));
    CHECK(Q.moments[1].size() == 3);
    CHECK(Q.weight(1, mi({1, 0, 1, 0})) == qq(1)); // f_{z zb} g
    CHECK(Q.weight(1, mi({0, 1, 0, 1})) == qq(1)); // f g_{z zb}
    CHECK(Q.weight(1, mi({0, 1, 1, 0})) == qq(1)); // f_zb g_z

    for (auto G : {flat_germ(), fubini_study_germ(), fubini_study_germ(QQi(Rational(1, 4), Rational(1, 2))) }) {
        auto Qg = formal_twisted_product(G, 2);
        auto Ig = formal_berezin_transform(G, 2);
        for (int r = 0; r <= 2; ++r) {
            if (r > 0) CHECK(Qg.moment(r, mi({0, 0, 0, 0})) == qq(0)); // Q(1,1) = 1
            // Q(f, 1) = I(f)
            for (auto &[g, k] : Qg.moments[r])
                if (g[1] == 0 && g[3] == 0) CHECK(k == Ig.moment(r, mi({g[0], g[2]})));
            for (auto &[a, k] : Ig.moments[r]) CHECK(Qg.moment(r, mi({a[0], 0, a[1], 0})) == k);
        }
    }
}

TEST_CASE("operator algebra") {
    std::mt19937 rng(31);
    DiffOp P, R;
    P.add(mi({1, 0}), random_poly(rng, 2));
    P.add(mi({0, 1}), random_poly(rng, 2));
    R.add(mi({1, 1}), random_poly(rng, 2));
    R.add(mi({0, 0}), random_poly(rng, 1));
    CJet f = random_poly(rng, 5);
    CHECK(compose(P, R).apply(f) == P.apply(R.apply(f)));

    BidiffOperator B;
    B.add(mi({1, 0}), mi({0, 1}), random_poly(rng, 2));
    B.add(mi({0, 2}), mi({1, 0}), random_poly(rng, 2));
    CJet g = random_poly(rng, 5);
    CHECK(compose_left(P, B).apply(f, g) == P.apply(B.apply(f, g)));
    CHECK(precompose(B, P, R).apply(f, g) == B.apply(P.apply(f), R.apply(g)));
    CHECK(B.swapped().apply(f, g) == B.apply(g, f));

    FormalOp I{DiffOp::identity(), P, R};
    FormalOp J = inverse(I);
    FormalOp id{DiffOp::identity(), DiffOp(), DiffOp()};
    CHECK(agree(compose(I, J), id, 3));
    CHECK(agree(compose(J, I), id, 3));
    CHECK_THROWS_AS(inverse(FormalOp{P}), SingularLeadingTerm);
}

TEST_CASE("extracted Berezin-Toeplitz coefficients") {
    // flat: C_1(f, g) = -f_z g_zb
    auto Cf = extract_star_coefficients(formal_berezin_family(flat_germ(), 2, 2), formal_twisted_family(flat_germ(), 2, 2));
    REQUIRE(Cf[1].terms.size() == 1);
    CHECK(Cf[1].terms.at({mi({1, 0}), mi({0, 1})}).agrees_with(poly({{mi({0, 0}), qq(-1)}})));
    CHECK(Cf[0].agrees_with(BidiffOperator::product()));

    for (QQi x0 : {QQi(), QQi(Rational(1, 2), Rational(1, 2))}) {
        auto G = fubini_study_germ(x0);
        int M = 6;
        auto C = extract_star_coefficients(formal_berezin_family(G, 2, M), formal_twisted_family(G, 2, M));
        REQUIRE(C[1].terms.size() == 1);
        const CJet &c1 = C[1].terms.at({mi({1, 0}), mi({0, 1})});
        CHECK(c1.order() == M);
        CHECK(c1.agrees_with(-metric_factor(x0, 2)));
        for (int r = 1; r <= 2; ++r) {
            CHECK(separation_pattern(C[r]) == Separation::Swapped);
            CHECK(null_on_constants(C[r]));
        }
        // antisymmetrized first coefficient is i times the Poisson bracket
        BidiffOperator anti = C[1] - C[1].swapped();
        CHECK(anti.agrees_with(poisson_bracket(G.potential(x0, M + 2)).scaled(I_unit)));
    }
}

TEST_CASE("Karabegov construction") {
    auto Cf = karabegov_construct(germ_potential(flat_germ(), 8), 2);
    // Wick product: C_1 = f_zb g_z, C_2 = (1/2) f_{zb zb} g_{zz}
    CHECK(Cf[1].agrees_with([] {
        BidiffOperator b;
        b.add(mi({0, 1}), mi({1, 0}), poly({{mi({0, 0}), qq(1)}}));
        return b;
    }()));
    CHECK(Cf[2].agrees_with([] {
        BidiffOperator b;
        b.add(mi({0, 2}), mi({2, 0}), poly({{mi({0, 0}), qq(1, 2)}}));
        return b;
    }()));

    QQi x0(Rational(-1, 2), Rational(1, 5));
    auto G = fubini_study_germ(x0);
    auto C = karabegov_construct(germ_potential(G, 10), 2);
    REQUIRE(C[1].terms.size() == 1);
    CHECK(C[1].terms.at({mi({0, 1}), mi({1, 0})}).agrees_with(metric_factor(x0, 2)));
    for (int r = 1; r <= 2; ++r) {
        CHECK(separation_pattern(C[r]) == Separation::Standard);
        CHECK(null_on_constants(C[r]));
    }

    // L_{dPhi/dz} = dPhi/dz + d/dz
    auto Phi = germ_potential(G, 10);
    NuSeries<CJet> dPhi = map_coeffs(Phi, [](const CJet &j) { return j.derive(0); });
    std::mt19937 rng(5);
    CJet g = random_poly(rng, 4);
    auto lhs = star_apply(C, dPhi, series_of(g));
    auto rhs = dPhi * series_of(g) + series_of(g.derive(0));
    for (int q = -1; q < lhs.trunc_order(); ++q) CHECK(lhs.coeff(q).agrees_with(rhs.coeff(q)));
    CHECK(lhs.trunc_order() >= 1);

    NuSeries<CJet> bad = NuSeries<CJet>::monomial(poly({{mi({2, 0}), qq(1)}}), -1);
    CHECK_THROWS_AS(karabegov_construct(bad, 2), DomainError);
    CHECK_THROWS_AS(karabegov_construct(Phi, 3), DomainError);
}

TEST_CASE("associativity and unit") {
    std::mt19937 rng(77);
    for (auto G : {flat_germ(), fubini_study_germ(), fubini_study_germ(QQi(Rational(1, 2)))}) {
        int M = 8;
        std::vector<StarProduct> products{karabegov_construct(germ_potential(G, M), 2),
                                          karabegov_construct(dual_potential(G, M), 2),
                                          extract_star_coefficients(formal_berezin_family(G, 2, M), formal_twisted_family(G, 2, M))};
        for (auto &C : products) {
            for (int t = 0; t < 2; ++t) {
                auto f = series_of(random_poly(rng, 3)), g = series_of(random_poly(rng, 3)), h = series_of(random_poly(rng, 3));
                auto l = star_apply(C, star_apply(C, f, g), h);
                auto r = star_apply(C, f, star_apply(C, g, h));
                REQUIRE(l.trunc_order() == 3);
                for (int q = 0; q < 3; ++q) {
                    CHECK(l.coeff(q).agrees_with(r.coeff(q)));
                    CHECK(std::min(l.coeff(q).order(), r.coeff(q).order()) >= 2);
                }
                auto one = series_of(poly({{mi({0, 0}), qq(1)}}));
                auto u1 = star_apply(C, one, f), u2 = star_apply(C, f, one);
                for (int q = 0; q < 3; ++q) {
                    CHECK(u1.coeff(q).agrees_with(f.coeff(q)));
                    CHECK(u2.coeff(q).agrees_with(f.coeff(q)));
                }
            }
        }
    }
}

TEST_CASE("dual and opposite products") {
    // flat dual: -f_zb g_z
    auto If = formal_berezin_family(flat_germ(), 2, 4);
    auto Kf = karabegov_construct(germ_potential(flat_germ(), 8), 2);
    auto Df = dual_opposite(Kf, If, DualKind::Dual);
    BidiffOperator expect;
    expect.add(mi({0, 1}), mi({1, 0}), poly({{mi({0, 0}), qq(-1)}}));
    CHECK(Df[1].agrees_with(expect));
    // flat opposite: -f_z g_zb
    CHECK(dual_opposite(Kf, If, DualKind::Opposite)[1].agrees_with(expect.swapped()));

    for (QQi x0 : {QQi(), QQi(Rational(0), Rational(1, 2))}) {
        auto G = fubini_study_germ(x0);
        int M = 8;
        auto I = formal_berezin_family(G, 2, M);
        auto Q = formal_twisted_family(G, 2, M);
        auto star = karabegov_construct(germ_potential(G, M + 4), 2);
        auto dual = dual_opposite(star, I, DualKind::Dual);
        auto opp = dual_opposite(star, I, DualKind::Opposite);
        auto extracted = extract_star_coefficients(I, Q);

        // the dual is the product with potential -(1/nu) Phi_{-1} + theta
        CHECK(agree(dual, karabegov_construct(dual_potential(G, M + 4), 2), 3));
        // the extracted product is the opposite of the dual
        CHECK(agree(opp, extracted, 3));
        CHECK(agree(swapped(extracted), karabegov_construct(dual_potential(G, M + 4), 2), 3));
        // dual of the dual, with Berezin transform I^{-1}
        CHECK(agree(dual_opposite(dual, inverse(I), DualKind::Dual), star, 3));
        // I(f *' g) = I f * I g, i.e. the twisted product
        CHECK(agree(compose_left(I, extracted), precompose(star, I, I), 3));
        CHECK(agree(Q, precompose(star, I, I), 3));
        // coefficient orders stay informative
        CHECK(extracted[2].coefficient_order() >= 2);
    }
}

TEST_CASE("trace density relation") {
    for (QQi x0 : {QQi(), QQi(Rational(1, 2))}) {
        auto G = fubini_study_germ(x0);
        int M = 6;
        auto rep = trace_density_check(G, germ_potential(G, M + 6), dual_potential(G, M + 6), 2, M);
        CHECK(rep.leading_sum_zero);
        REQUIRE(rep.relation_zero.size() == 3);
        for (bool b : rep.relation_zero) CHECK(b);
        for (bool b : rep.phase_derivative_zero) CHECK(b);
        CHECK(rep.ok());

        // a wrong nu^0 term breaks the relation at nu^0
        auto wrong = dual_potential(G, M + 6);
        wrong.set_coeff(0, wrong.coeff(0).scaled(qq(1, 2)));
        auto bad = trace_density_check(G, germ_potential(G, M + 6), wrong, 2, M);
        CHECK(bad.relation_zero[0]);
        CHECK(!bad.relation_zero[1]);
    }
}

TEST_CASE("characteristic classes") {
    auto d = classifying_data(-2);
    // cl(*~) = (1/i)(-2 pi/nu - 2 pi), cl(*') = (1/i)(2 pi/nu + 2 pi)
    PiQ minus_i(QQi(Rational(0), Rational(-1)), 0);
    CHECK(d.cl_dual.coeff(-1) == PiQ(QQi(-2), 1) * minus_i);
    CHECK(d.cl_dual.coeff(0) == PiQ(QQi(-2), 1) * minus_i);
    CHECK(d.cl_berezin_toeplitz.coeff(-1) == PiQ(QQi(2), 1) * minus_i);
    CHECK(d.cl_berezin_toeplitz.coeff(0) == PiQ(QQi(2), 1) * minus_i);
    CHECK(d.opposite_rule);
    CHECK(d.dual_form_has_no_positive_orders);
    CHECK(d.cl_dual.coeff(1) == PiQ());
    CHECK(to_json(d.cl_dual)["coeffs"].size() == 2);
}

TEST_CASE("json form of star coefficients") {
    auto C = karabegov_construct(germ_potential(flat_germ(), 6), 1);
    json j = to_json(C);
    REQUIRE(j.size() == 2);
    CHECK(j[1][0]["alpha"][1] == 1);
    CHECK(j[1][0]["beta"][0] == 1);
}

#include "doctest.h"

#include "bzl/cp1.hpp"
#include "bzl/sov.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <random>

using namespace bzl;
using namespace bzl::cp1;

namespace {

MultiIndex mi(std::initializer_list<int> xs) { return MultiIndex(xs); }

const SymbolFunction height = symbol_by_name("height");

std::vector<HPoint> random_points(std::mt19937 &rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), ph(0.0, 2 * M_PI);
    std::vector<HPoint> p;
    for (int i = 0; i < n; ++i) p.push_back(HPoint::sphere(std::acos(u(rng)), ph(rng)));
    return p;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("inner products of monomial sections") {
    CHECK(section_inner_product(0, 1, 3) == PiQ());
    CHECK(section_inner_product(0, 0, 1) == PiQ(QQi(1), 1));
    CHECK_THROWS_AS(section_inner_product(0, 4, 3), DomainError);
    // radial oracle: ||z^j||^2 = int r^{2j} (1+r^2)^{-m} 2 (1+r^2)^{-2} 2 pi r dr
    boost::math::quadrature::exp_sinh<double> integrator;
    for (int m : {1, 2, 5, 9})
        for (int j = 0; j <= m; ++j) {
            double val = integrator.integrate([&](double r) {
                double t = r * r;
                return std::pow(t / (1 + t), j) * std::pow(1 + t, j - m - 2) * 4 * M_PI * r;
            });
            CHECK(std::abs(section_inner_product(j, j, m).value().real() - val) < 1e-10 * val);
        }
    for (int m = 1; m <= 64; ++m) CHECK(dim_sections(m) == m + 1);
}

TEST_CASE("symbol functions") {
    CHECK(height.is_smooth());
    CHECK(height.is_real());
    CHECK(!SymbolFunction({{2, 0, 1, QQi(1)}}).is_smooth());
    CHECK_THROWS_AS(toeplitz_matrix(SymbolFunction({{2, 0, 1, QQi(1)}}), 4), DomainError);
    // (1 + t)/(1 + t) = 1
    SymbolFunction one_again({{0, 0, 1, QQi(1)}, {1, 1, 1, QQi(1)}});
    REQUIRE(one_again.terms().size() == 1);
    CHECK(one_again.terms()[0].c == 0);
    CHECK(one_again.terms()[0].coeff == QQi(1));
    CHECK((height + SymbolFunction({{0, 0, 1, QQi(1)}})).terms().size() == 1);

    for (auto &name : symbol_names()) {
        auto f = symbol_by_name(name);
        CHECK(f.is_smooth());
        // evaluation in both charts agrees with the affine formula
        QQi x(Rational(1, 3), Rational(-1, 2));
        CHECK(rel(f(cd(1.0 / 3, -0.5)), scalar_traits<QQi>::to_cd(f.exact_at(x))) < 1e-14);
        CHECK(f.jet_at(x, 3).eval0() == f.exact_at(x));
        QQi y(Rational(3), Rational(2));
        CHECK(rel(f(cd(3, 2)), scalar_traits<QQi>::to_cd(f.exact_at(y))) < 1e-13);
    }
    CHECK(std::abs(height(HPoint::infinity()) - 1.0) < 1e-15);

    auto j = height.jet_at(QQi(), 6);
    CHECK(j.coeff(mi({1, 1})) == qq(1));
    CHECK(j.coeff(mi({2, 2})) == qq(-1));
    CHECK(j.coeff(mi({3, 3})) == qq(1));
    CHECK(laplacian(height).exact_at(QQi()) == qq(1));

    // derivatives agree with jets
    QQi x0(Rational(1, 4), Rational(1, 5));
    auto f = symbol_by_name("mixed");
    CHECK(f.dz().jet_at(x0, 3).agrees_with(f.jet_at(x0, 4).derive(0)));
    CHECK(f.dzb().jet_at(x0, 3).agrees_with(f.jet_at(x0, 4).derive(1)));
    CHECK((f * height).jet_at(x0, 4).agrees_with(f.jet_at(x0, 4) * height.jet_at(x0, 4)));
}

TEST_CASE("Poisson bracket against the jet route") {
    auto f = symbol_by_name("quadratic"), g = symbol_by_name("mixed");
    for (QQi x0 : {QQi(), QQi(Rational(1, 2), Rational(-1, 3))}) {
        BidiffOperator pb = poisson_bracket(fubini_study_jet(x0, 6));
        CJet viaJets = pb.apply(f.jet_at(x0, 5), g.jet_at(x0, 5));
        auto viaSymbols = cp1::poisson_bracket(f, g);
        CHECK(viaSymbols.is_smooth());
        CHECK(viaJets.agrees_with(viaSymbols.jet_at(x0, 4)));
    }
}

TEST_CASE("Toeplitz matrices") {
    for (int m : {1, 4, 8}) {
        CHECK(toeplitz_matrix(SymbolFunction::constant(QQi(1)), m).exact == QMatrix::identity(m + 1));
        auto T = toeplitz_matrix(height, m);
        for (int k = 0; k <= m; ++k)
            for (int j = 0; j <= m; ++j) CHECK(T.exact(k, j) == (k == j ? qq(j + 1, m + 2) : qq(0)));
        for (auto &name : {"re_z", "im_z", "quadratic", "cubic"}) {
            auto A = toeplitz_matrix(symbol_by_name(name), m);
            CHECK(adjoint(A).exact == A.exact);
            Eigen::MatrixXcd O = A.orthonormal_matrix();
            CHECK((O - O.adjoint()).norm() < 1e-13);
        }
        // T_f^dagger = T_{conj f}
        auto f = symbol_by_name("mixed");
        CHECK(adjoint(toeplitz_matrix(f, m)).exact == toeplitz_matrix(f.conj(), m).exact);
        // selection rule
        auto R = toeplitz_matrix(symbol_by_name("re_z"), m);
        for (int k = 0; k <= m; ++k)
            for (int j = 0; j <= m; ++j)
                if (std::abs(k - j) != 1) CHECK(R.exact(k, j).is_zero());
    }
}

TEST_CASE("Bergman kernel functions") {
    std::mt19937 rng(42);
    auto pts = random_points(rng, 100);
    for (int m : {1, 8, 32, 128}) {
        KernelData K(m);
        for (auto &p : pts) CHECK(std::abs(K.u(p) - K.u_closed_form()) < 1e-12 * K.u_closed_form());
        CHECK(std::abs(K.u(HPoint::infinity()) - K.u_closed_form()) < 1e-12 * K.u_closed_form());
        // v(0, y) = u^2 (1 + |y|^2)^{-m}
        for (cd y : {cd(1, 0), cd(0.3, -0.4), cd(0, 2)}) {
            double expect = K.u_closed_form() * K.u_closed_form() * std::pow(1 + std::norm(y), -m);
            CHECK(std::abs(K.v(HPoint::affine(0), HPoint::affine(y)) - expect) <= 1e-12 * expect);
        }
        for (size_t i = 0; i + 2 < pts.size(); i += 3) {
            auto &x = pts[i], &y = pts[i + 1], &z = pts[i + 2];
            double lhs = std::norm(K.w(x, y, z)), r = K.v(x, y) * K.v(y, z) * K.v(z, x);
            CHECK(std::abs(lhs - r) <= 1e-12 * r + 1e-300);
            CHECK(K.v(x, y) <= K.u(x) * K.u(y) * (1 + 1e-12));
            CHECK(K.v(x, y) >= 0);
            CHECK(K.u(x) > 0);
        }
    }
    // reproducing property: int v(x, y) Omega(y) = u(x)
    KernelData K(10);
    auto q = sphere_quadrature_for_degree(12);
    for (size_t i = 0; i < 5; ++i) {
        double s = q.integrate([&](const HPoint &y) { return K.v(pts[i], y); });
        CHECK(std::abs(s - K.u(pts[i])) < 1e-11 * K.u(pts[i]));
    }
    CHECK(std::abs(q.integrate([](const HPoint &) { return 1.0; }) - 2 * M_PI) < 1e-13);
}

TEST_CASE("covariant symbols and level-m Berezin transform") {
    std::mt19937 rng(7);
    auto pts = random_points(rng, 6);
    for (int m : {2, 6, 12}) {
        auto Id = toeplitz_matrix(SymbolFunction::constant(QQi(1)), m);
        for (auto &p : pts) CHECK(std::abs(covariant_symbol(Id, p) - 1.0) < 1e-14);
        CHECK(berezin_transform_m_exact(height, QQi(), m) == qq(1, m + 2));
        CHECK(std::abs(berezin_transform_m(height, HPoint::affine(0), m) - 1.0 / (m + 2)) < 1e-15);
        for (auto &name : {"quadratic", "mixed", "cubic"}) {
            auto f = symbol_by_name(name);
            auto T = toeplitz_matrix(f, m);
            for (auto &p : pts) {
                CHECK(std::abs(covariant_symbol(T, p, 0.0) - covariant_symbol(T, p, 1.234)) < 1e-14);
                cd op = berezin_transform_m(f, p, m, Route::Operator);
                cd in = berezin_transform_m(f, p, m, Route::Integral);
                CHECK(std::abs(op - in) < 1e-8);
            }
            // exact and double routes
            QQi x(Rational(1, 2), Rational(1, 3));
            CHECK(std::abs(scalar_traits<QQi>::to_cd(berezin_transform_m_exact(f, x, m)) - berezin_transform_m(f, HPoint::affine(cd(0.5, 1.0 / 3)), m)) < 1e-13);
        }
        CHECK(berezin_transform_m_exact(SymbolFunction::constant(QQi(1)), QQi(Rational(2), Rational(1)), m) == qq(1));
    }
}

TEST_CASE("level-m twisted product") {
    auto one = SymbolFunction::constant(QQi(1));
    for (int m : {3, 8}) {
        QQi x(Rational(-1, 2), Rational(1, 4));
        CHECK(twisted_product_m_exact(one, one, x, m) == qq(1));
        auto f = symbol_by_name("mixed"), g = symbol_by_name("quadratic");
        CHECK(twisted_product_m_exact(f, one, x, m) == berezin_transform_m_exact(f, x, m));
        CHECK(twisted_product_m_exact(one, f, x, m) == berezin_transform_m_exact(f, x, m));
        // diagonal matrices: Q(h, h)(0) = ((1)/(m+2))^2
        CHECK(twisted_product_m_exact(height, height, QQi(), m) == qq(1, (m + 2) * (m + 2)));
        // self-adjointness
        CHECK(twisted_product_m_exact(f, g, x, m).conj() == twisted_product_m_exact(g.conj(), f.conj(), x, m));
    }
    // integral route has the kernel orientation of the operator route
    auto f = symbol_by_name("mixed"), g = symbol_by_name("re_z");
    for (cd x : {cd(0, 0), cd(0.4, -0.2)}) {
        cd a = twisted_product_m(f, g, HPoint::affine(x), 5, Route::Operator);
        cd b = twisted_product_m(f, g, HPoint::affine(x), 5, Route::Integral);
        CHECK(std::abs(a - b) < 1e-9);
        cd swapped_ = twisted_product_m(g, f, HPoint::affine(x), 5, Route::Operator);
        CHECK(std::abs(swapped_ - b) > 1e-4);
    }
}

TEST_CASE("norms and traces") {
    for (int m : {1, 8, 64, 128}) {
        auto Id = toeplitz_matrix(SymbolFunction::constant(QQi(1)), m);
        CHECK(std::abs(operator_norm(Id).value - 1.0) < 1e-14);
        auto T = toeplitz_matrix(height, m);
        auto n = operator_norm(T);
        CHECK(std::abs(n.value - double(m + 1) / (m + 2)) < 1e-10);
        CHECK(!n.used_fallback);
    }
    auto T = toeplitz_matrix(symbol_by_name("cubic"), 10);
    auto direct = operator_norm(T.orthonormal_matrix(), 1e-15, 1);
    CHECK(direct.used_fallback);
    CHECK(std::abs(direct.value - operator_norm(T).value) < 1e-10);

    auto f = symbol_by_name("mixed"), g = symbol_by_name("cubic");
    for (int m : {4, 16}) {
        auto A = toeplitz_matrix(f, m), B = toeplitz_matrix(g, m);
        CHECK(trace(A * B) == trace(B * A));
        CHECK(std::abs(scalar_traits<QQi>::to_cd(trace(A)) - trace_integral(f, m)) < 1e-8);
        CHECK(trace(toeplitz_matrix(SymbolFunction::constant(QQi(1)), m)) == qq(m + 1));
    }
    // sup norm chain
    auto grid = sphere_grid();
    CHECK(grid.size() == 2000);
    CHECK(std::abs(sup_norm(height, grid) - 1.0) < 1e-15); // attained at the pole
    for (int m : {4, 16}) {
        auto A = toeplitz_matrix(symbol_by_name("quadratic"), m);
        double s = covariant_sup_norm(A, grid), nrm = operator_norm(A).value, fs = sup_norm(symbol_by_name("quadratic"), grid);
        CHECK(s <= nrm + 1e-12);
        CHECK(nrm <= fs * (1 + 1e-3)); // grid resolution of the sup norm
    }
}

TEST_CASE("Kodaira coefficient and canonical degree") {
    for (int m = 1; m <= 64; ++m) {
        CHECK(kodaira_coefficient_exact(m) == Rational(m));
        CHECK(std::abs(kodaira_coefficient(m, cd(0.3, 0.7)) - m) < 1e-10 * m);
    }
    CHECK_THROWS_AS(kodaira_coefficient_exact(0), DomainError);
    CHECK(std::abs(canonical_degree() + 2.0) < 1e-12);
}

TEST_CASE("off-diagonal decay and a bump symbol") {
    // v_m(0, y) / u_m^2 = 2^{-m} for |y| = 1
    for (int m : {16, 64, 128}) {
        KernelData K(m);
        double r = K.v(HPoint::affine(0), HPoint::affine(cd(0, 1))) / std::pow(K.u_closed_form(), 2);
        CHECK(std::abs(std::log(r) / m + std::log(2.0)) < 1e-12);
    }
    // bump supported in the southern cap, transform at the north pole
    auto bump = [](const HPoint &p) -> cd {
        HPoint n = p.normalized();
        double Z = std::norm(n.z0) - std::norm(n.z1);
        double s = -Z - 0.5; // positive on the cap Z < -1/2
        return s > 0 ? std::exp(-1.0 / s) : 0.0;
    };
    SphereQuadrature q(200, 8);
    double prev = 1;
    for (int m : {8, 16, 32}) {
        double v = std::abs(berezin_transform_integral(bump, HPoint::affine(0), m, q));
        CHECK(v < prev);
        CHECK(v <= std::pow(0.25, m) * 10);
        prev = v;
    }
}

#include "doctest.h"

#include "bzl/potentials.hpp"

#include <random>

using namespace bzl;

namespace {

using J = Jet<QQi>;

QQi alt_inverse(int n) { return qq(n % 2 ? 1 : -1, n); } // (-1)^{n+1}/n

J random_chart_jet(std::mt19937 &rng, int order, bool real) {
    std::uniform_int_distribution<int> d(-3, 3);
    J j(chart_vars(), order);
    for (auto &a : monomials_upto(2, order)) {
        if (real && a[0] < a[1]) continue;
        QQi c(Rational(d(rng), 2), Rational(real && a[0] == a[1] ? 0 : d(rng)));
        j.set(a, c);
        if (real) j.set(MultiIndex{a[1], a[0]}, c.conj());
    }
    return j;
}

MultiIndex mi(std::initializer_list<int> xs) { return MultiIndex(xs); }

} // namespace

TEST_CASE("Fubini-Study germ and its polarization") {
    J phi = fubini_study_jet(QQi(), 8);
    CHECK(phi.eval0() == qq(0));
    for (int n = 1; n <= 4; ++n) CHECK(phi.coeff(mi({n, n})) == alt_inverse(n));
    CHECK(phi.coeff(mi({2, 1})) == qq(0));

    J pol = polarize(phi);
    for (int n = 1; n <= 4; ++n) CHECK(pol.coeff(mi({n, 0, 0, n})) == alt_inverse(n));
    CHECK(pol.derive(2).is_zero()); // no xb dependence
    CHECK(pol.derive(1).is_zero()); // no y dependence
    CHECK(restrict_diagonal(pol) == phi);

    J zz = flat_jet(QQi(), 4);
    CHECK(polarize(zz).terms().size() == 1);
    CHECK(polarize(zz).coeff(mi({1, 0, 0, 1})) == qq(1));
}

TEST_CASE("polarization of an off-origin germ") {
    QQi x0(Rational(1, 2), Rational(1, 3));
    J phi = fubini_study_jet(x0, 6);
    // mixed Hessian (1+|x0|^2)^{-2}
    QQi n = QQi(1) + x0 * x0.conj();
    CHECK(phi.coeff(mi({1, 1})) == (n * n).inverse());
    CHECK(restrict_diagonal(polarize(phi)) == phi);
}

TEST_CASE("polarize is a ring homomorphism") {
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        J a = random_chart_jet(rng, 4, false), b = random_chart_jet(rng, 4, false);
        CHECK(polarize(a * b) == polarize(a) * polarize(b));
        CHECK(polarize(a + b) == polarize(a) + polarize(b));
    }
}

TEST_CASE("Hermitian symmetrization") {
    std::mt19937 rng(5);
    for (int t = 0; t < 5; ++t) {
        J real = random_chart_jet(rng, 4, true);
        CHECK(symmetrize(polarize(real)) == polarize(real));
        J cplx = random_chart_jet(rng, 4, false);
        J e = hermitian_extension(cplx);
        CHECK(swap_points(e).conj() == e);
    }
}

TEST_CASE("diastasis of the Fubini-Study potential") {
    J D = diastasis_jet(fubini_study_jet(QQi(), 8));
    // D(0, y) = -log(1 + |y|^2)
    for (int n = 1; n <= 4; ++n) CHECK(D.coeff(mi({0, n, 0, n})) == -alt_inverse(n));
    CHECK(D.coeff(mi({0, 2, 0, 1})) == qq(0));
    CHECK(restrict_diagonal(D).is_zero());

    QQi x0(Rational(-1, 3), Rational(1, 4));
    J Dx = diastasis_jet(fubini_study_jet(x0, 6));
    QQi n = QQi(1) + x0 * x0.conj();
    QQi h = (n * n).inverse();
    // quadratic part is -h |x - y|^2
    CHECK(Dx.coeff(mi({1, 0, 1, 0})) == -h);
    CHECK(Dx.coeff(mi({0, 1, 0, 1})) == -h);
    CHECK(Dx.coeff(mi({1, 0, 0, 1})) == h);
    CHECK(Dx.coeff(mi({0, 1, 1, 0})) == h);
    CHECK(Dx.coeff(mi({2, 0, 0, 0})) == qq(0));
    CHECK(Dx.coeff(mi({1, 1, 0, 0})) == qq(0));
    for (auto &[a, c] : Dx.terms()) CHECK(a.degree() >= 2);
}

TEST_CASE("diastasis is negative off the diagonal") {
    J D = diastasis_jet(fubini_study_jet(QQi(), 12));
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    for (int t = 0; t < 50; ++t) {
        cd x(u(rng), u(rng)), y(u(rng), u(rng));
        if (std::abs(x - y) < 1e-3) continue;
        cd val = eval_at(D, {x, y, std::conj(x), std::conj(y)});
        CHECK(val.real() < 0);
        CHECK(std::abs(val.imag()) < 1e-12);
    }
}

TEST_CASE("chi and the three-point function") {
    J phi = fubini_study_jet(QQi(), 8);
    J D = diastasis_jet(phi);
    J chi = chi_jet(phi);
    CHECK(chi + chi.conj() == D);

    J T = three_point_jet(phi);
    auto v3 = three_point_vars();
    auto place = [&](const J &f, int p, int q) {
        std::vector<std::vector<long>> L(4, std::vector<long>(6, 0));
        L[0][p] = 1;
        L[1][q] = 1;
        L[2][p + 3] = 1;
        L[3][q + 3] = 1;
        return linear_substitute(f, v3, L);
    };
    J half_sum = (place(D, 0, 1) + place(D, 1, 2) + place(D, 2, 0)).scaled(qq(1, 2));
    CHECK((T + T.conj()).scaled(qq(1, 2)) == half_sum);
    // the imaginary part does not vanish, so T itself differs from the half sum
    CHECK(!(T == half_sum));

    // T(0,y,z) = log(1 + y zb) - log(1 + |y|^2) - log(1 + |z|^2)
    CHECK(T.coeff(mi({0, 1, 0, 0, 0, 1})) == qq(1));
    CHECK(T.coeff(mi({0, 2, 0, 0, 0, 2})) == qq(-1, 2));
    CHECK(T.coeff(mi({0, 1, 0, 0, 1, 0})) == qq(-1));
    CHECK(T.coeff(mi({0, 2, 0, 0, 2, 0})) == qq(1, 2));
    CHECK(T.coeff(mi({0, 1, 1, 0, 1, 1})) == qq(0));
    // diagonal
    J diag = linear_substitute(T, chart_vars(), {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}});
    CHECK(diag.is_zero());

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int t = 0; t < 50; ++t) {
        cd x(u(rng), u(rng)), y(u(rng), u(rng)), z(u(rng), u(rng));
        cd val = eval_at(T, {x, y, z, std::conj(x), std::conj(y), std::conj(z)});
        CHECK(val.real() <= 1e-15);
    }
}

TEST_CASE("formal potentials and degenerate input") {
    FormalPotential Phi = FormalPotential::monomial(fubini_study_jet(QQi(), 6), -1);
    auto D = diastasis(Phi);
    CHECK(D.min_order() == -1);
    CHECK(D.coeff(-1) == diastasis_jet(fubini_study_jet(QQi(), 6)));
    J bad(chart_vars(), 4);
    bad.set(mi({2, 0}), qq(1));
    CHECK_THROWS_AS(diastasis(FormalPotential::monomial(bad, -1)), DomainError);
}

#include <doctest.h>

#include <random>

#include "hqmf/dual.hpp"
#include "hqmf/laurent.hpp"
#include "hqmf/matrix.hpp"
#include "hqmf/numberfield.hpp"
#include "hqmf/puiseux.hpp"
#include "oracles.hpp"

using namespace hqmf;

namespace {

NFElem random_nf(std::mt19937& rng, const FieldPtr& f) {
    return NFElem(f, {oracle::random_rational(rng), oracle::random_rational(rng), oracle::random_rational(rng)});
}

QSeries random_series(std::mt19937& rng, Exp trunc, Exp val = 0) {
    std::map<Exp, Rational> t;
    std::uniform_int_distribution<int> pick(0, 2);
    for (Exp k = val; k < trunc; ++k)
        if (pick(rng) == 0 || k == val) t[k] = oracle::random_rational(rng);
    if (t[val] == 0) t[val] = 1;
    return QSeries::from_terms(t, trunc);
}

LaurentPoly random_laurent(std::mt19937& rng) {
    std::uniform_int_distribution<int> e(-3, 3), n(1, 4);
    LaurentPoly p;
    int terms = n(rng);
    for (int i = 0; i < terms; ++i) p += LaurentPoly::monomial(oracle::random_rational(rng), e(rng), e(rng));
    return p;
}

QSeries geometric(Exp step, Exp trunc) {
    std::map<Exp, Rational> t;
    for (Exp k = 0; k < trunc; k += step) t[k] = 1;
    return QSeries::from_terms(t, trunc);
}

}  // namespace

TEST_CASE("rational serialization") {
    CHECK(to_string(make_rational(10, -4)) == "-5/2");
    CHECK(to_string(make_rational(7)) == "7");
    CHECK(parse_rational("-6/4") == make_rational(-3, 2));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("number field arithmetic") {
    auto xi = xi_field();
    NFElem x = NFElem::generator(xi);
    CHECK(x * x * x == x * x - NFElem(xi, Rational(1)));
    auto eta = eta_field();
    NFElem y = NFElem::generator(eta);
    CHECK(NFElem(eta, Rational(1)) * y == y);

    // α = -ξ+ξ² solves α³ - α - 1 = 0; oracle: substitute ξ³ -> ξ² - 1 by hand
    NFElem a = -x + x * x;
    NFElem lhs = a * a * a - a - NFElem(xi, Rational(1));
    CHECK(lhs.is_zero());
    // and α = -1-η solves α³ + 2α² - α - 1 = 0
    NFElem b = NFElem(eta, Rational(-1)) - y;
    CHECK((b * b * b + NFElem(Rational(2)) * b * b - b - NFElem(Rational(1))).is_zero());

    CHECK_THROWS_AS(NFElem(xi, Rational(0)).inverse(), std::domain_error);
    CHECK_THROWS_AS(x + y, std::invalid_argument);
    CHECK_THROWS(make_field({-1, 0, 0, 1}, "reducible"));  // x^3 - 1 has root 1
}

TEST_CASE("number field ring axioms on random samples") {
    std::mt19937 rng(7);
    auto f = xi_field();
    for (int it = 0; it < 40; ++it) {
        NFElem a = random_nf(rng, f), b = random_nf(rng, f), c = random_nf(rng, f);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a.coords().size() == 3);
        if (!a.is_zero()) CHECK(a * a.inverse() == NFElem(f, Rational(1)));
    }
}

TEST_CASE("series multiplication and truncation") {
    const Exp N = 64;
    QSeries one_minus_q = QSeries::from_terms({{0, 1}, {8, -1}}, kExact);
    QSeries prod = one_minus_q * geometric(8, N);
    CHECK(prod == QSeries::constant(1, N));

    QSeries a = QSeries::monomial(1, 1), b = QSeries::monomial(1, -1);
    CHECK(a * b == QSeries::constant(1));

    // trunc = min(a.trunc + val b, b.trunc + val a)
    QSeries s1 = QSeries::from_terms({{2, 1}, {5, 3}}, 20);
    QSeries s2 = QSeries::from_terms({{3, 1}}, 30);
    CHECK((s1 * s2).trunc() == 23);

    // (q;q)_2 times the inverse of its expansion
    QSeries poch = one_minus_q * QSeries::from_terms({{0, 1}, {16, -1}}, kExact);
    QSeries inv = poch.truncated(N).inverse();
    CHECK((poch * inv) == QSeries::constant(1, N));
}

TEST_CASE("series inverse") {
    const Exp N = 80;
    QSeries one_minus_q = QSeries::from_terms({{0, 1}, {8, -1}}, N);
    CHECK(one_minus_q.inverse() == geometric(8, N));
    // q^{1/2}(1-q): inverse q^{-1/2}(1+q+...), truncation drops by 2*4
    QSeries shifted = one_minus_q.shifted(4);
    QSeries inv = shifted.inverse();
    CHECK(inv.valuation() == -4);
    CHECK(inv == geometric(8, N).shifted(-4));
    CHECK(inv.trunc() == N + 4 - 8);

    std::mt19937 rng(11);
    for (int it = 0; it < 10; ++it) {
        QSeries s = random_series(rng, 40, it % 3);
        QSeries r = s.inverse().inverse();
        CHECK((r - s).is_zero());
        QSeries u = s * s.inverse();
        CHECK((u - QSeries::constant(1)).is_zero());
    }
    CHECK_THROWS(QSeries(10).inverse());
}

TEST_CASE("series ring axioms on random samples") {
    std::mt19937 rng(3);
    for (int it = 0; it < 15; ++it) {
        QSeries a = random_series(rng, 40), b = random_series(rng, 36, 1), c = random_series(rng, 30, 2);
        CHECK(((a * b) * c - a * (b * c)).is_zero());
        CHECK((a * (b + c) - (a * b + a * c)).is_zero());
    }
}

TEST_CASE("bareiss determinant") {
    auto id = RingMatrix<Rational>::identity(6, 0, 1);
    CHECK(bareiss_det(id) == 1);

    RingMatrix<QSeries> d(3, 3, QSeries());
    d(0, 0) = QSeries::monomial(1, 8);
    d(1, 1) = QSeries::monomial(1, 16);
    d(2, 2) = QSeries::monomial(1, 24);
    CHECK(bareiss_det(d) == QSeries::monomial(1, 48));

    std::mt19937 rng(5);
    for (int n = 1; n <= 5; ++n) {
        RingMatrix<Rational> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = oracle::random_rational(rng);
        CHECK(bareiss_det(m) == oracle::laplace_det(m));
        RingMatrix<NFElem> k(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) k(i, j) = random_nf(rng, xi_field());
        CHECK(bareiss_det(k) == oracle::laplace_det(k));
    }
    // a matrix needing a row swap
    RingMatrix<Rational> p({{0, 1}, {1, 0}});
    CHECK(bareiss_det(p) == -1);
    CHECK_THROWS(bareiss_det(RingMatrix<Rational>(2, 3)));
}

TEST_CASE("bareiss over Laurent polynomials") {
    std::mt19937 rng(9);
    for (int n = 2; n <= 4; ++n) {
        RingMatrix<LaurentPoly> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = random_laurent(rng);
        CHECK(bareiss_det(m) == oracle::laplace_det(m));
    }
}

TEST_CASE("lambda shift") {
    CHECK(LaurentPoly::Lambda().lambda_shift(1) == LaurentPoly::q() * LaurentPoly::Lambda());
    CHECK(LaurentPoly::monomial(1, 4, 1).lambda_shift(-4) == LaurentPoly::Lambda());
    std::mt19937 rng(1);
    for (int it = 0; it < 20; ++it) {
        LaurentPoly p = random_laurent(rng);
        CHECK(p.lambda_shift(2).lambda_shift(-2) == p);
    }
}

TEST_CASE("Laurent ring axioms and exact division") {
    std::mt19937 rng(21);
    for (int it = 0; it < 20; ++it) {
        LaurentPoly a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK(exact_div(a * b, b) == a);
    }
    LaurentPoly x = LaurentPoly::q() + LaurentPoly(1);
    CHECK_THROWS(exact_div(LaurentPoly::q(), x));
}

TEST_CASE("dual numbers") {
    DualRational e(0, 1);
    CHECK(e * e == DualRational(0));
    DualRational x(3, 2);
    CHECK(exact_div(x * DualRational(5, 7), DualRational(5, 7)) == x);
}

TEST_CASE("polynomials over rationals") {
    RationalPoly l = RationalPoly::variable();
    RationalPoly p = (l + RationalPoly(Rational(1))) * (l - RationalPoly(Rational(2)));
    CHECK(p.degree() == 2);
    CHECK(p.eval(Rational(2)) == 0);
    CHECK(exact_div(p, l + RationalPoly(Rational(1))) == l - RationalPoly(Rational(2)));
    CHECK(p.derivative() == RationalPoly(std::vector<Rational>{-1, 2}));
}

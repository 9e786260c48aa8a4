#include <doctest.h>

#include <cmath>

#include "hqmf/statphase.hpp"
#include "oracles.hpp"
#include "saddle_oracle.hpp"

using namespace hqmf;

using oracle::Model;
using oracle::fit_coefficients;
using oracle::eulerian;
using oracle::li_neg;

namespace {

const mpfr_prec_t kPrec = oracle::kModelPrec;

NFElem xi_elem(Rational c0, Rational c1, Rational c2) {
    return NFElem(xi_field(), std::vector<Rational>{c0, c1, c2});
}
NFElem eta_elem(Rational c0, Rational c1, Rational c2) {
    return NFElem(eta_field(), std::vector<Rational>{c0, c1, c2});
}
Rational r(long n, long d = 1) { return make_rational(n, d); }

double cdist(const BigComplex& a, const BigComplex& b) { return abs(a - b).to_double(); }

}  // namespace

TEST_CASE("critical points") {
    auto cps = critical_points(kPrec);
    REQUIRE(cps.size() == 6);
    CHECK(std::abs(cps[0].numeric.real().to_double() + 0.662) < 1e-3);
    CHECK(std::abs(cps[0].numeric.imag().to_double() + 0.562) < 1e-3);
    CHECK(std::abs(cps[1].numeric.imag().to_double() - 0.562) < 1e-3);
    const double reals[] = {1.325, -2.247, -0.555, 0.802};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(cps[k + 2].numeric.real().to_double() - reals[k]) < 1e-3);
        CHECK(cps[k + 2].numeric.imag().is_zero());
    }
    // α satisfies its cubic factor exactly
    NFElem a = cps[0].alpha, b = cps[3].alpha;
    CHECK((a.pow(3) - a - NFElem(Rational(1))).is_zero());
    CHECK((b.pow(3) + NFElem(Rational(2)) * b.pow(2) - b - NFElem(Rational(1))).is_zero());
    // the sextic vanishes at all six numeric points
    auto sextic = critical_polynomial();
    CHECK(sextic == std::vector<Rational>{1, 2, -1, -4, -2, 2, 1});
    for (const auto& c : cps) {
        BigComplex v(kPrec), pw(1.0, 0.0, kPrec);
        for (const auto& co : sextic) {
            v += pw * BigFloat(co, kPrec);
            pw = pw * c.numeric;
        }
        CHECK(abs(v).to_double() < 1e-50);
    }
    CHECK_THROWS(critical_point(7));
}

TEST_CASE("Bernoulli numbers") {
    auto ref = oracle::bernoulli_numbers(30);
    for (int n = 0; n <= 30; ++n) CHECK(bernoulli_number(n) == ref[n]);
    CHECK(bernoulli_half(0) == 1);
    CHECK(bernoulli_half(1) == r(-1, 12));
    CHECK(bernoulli_half(2) == r(7, 240));
}

TEST_CASE("polylogarithms of nonpositive index") {
    NFElem w = xi_elem(r(1, 3), 2, -1);
    NFElem one(xi_field(), Rational(1));
    CHECK(polylog_nonpos(0, w) == w / (one - w));
    CHECK(polylog_nonpos(-1, w) == w / ((one - w) * (one - w)));
    CHECK(polylog_nonpos(-2, w) == w * (one + w) / (one - w).pow(3));
    CHECK_THROWS_AS(polylog_nonpos(-1, one), std::domain_error);
    CHECK_THROWS(polylog_nonpos(1, w));
    // numerators against the Eulerian-number closed form
    auto eul = eulerian(8);
    for (int k = 1; k <= 8; ++k) {
        RationalPoly n = polylog_numerator(k);
        for (int i = 0; i < k; ++i) CHECK(n.coeff(i + 1) == Rational(eul[k][i]));
        CHECK(n.coeff(0) == 0);
    }
}

TEST_CASE("V tables and Δ") {
    auto s1 = critical_point(1, kPrec), s4 = critical_point(4, kPrec);
    VTable t1(s1, 3, 6), t4(s4, 3, 6);
    CHECK(t1.at(0, 2) == xi_elem(0, 2, -3));
    CHECK(t4.at(0, 2) == eta_elem(3, -3, -1));
    CHECK_FALSE(t1.has(0, 0));
    CHECK_FALSE(t1.has(1, 0));
    CHECK_FALSE(t1.has(0, 1));
    CHECK(t1.has(1, 1));
    CHECK_THROWS_AS(t1.at(0, 0), std::out_of_range);
    // V_{0,2} = -(α²-α+2)/((α-1)(α+1)) = α⁵ - α⁴ - 7α³ + α² + 4α + 5
    for (const auto& p : {s1, s4}) {
        NFElem a = p.alpha, one(p.field, Rational(1));
        NFElem closed = -(a * a - a + NFElem(Rational(2))) / ((a - one) * (a + one));
        CHECK(v_coefficient(a, 0, 2) == closed);
        CHECK(delta_from_v(a) == delta_quintic(a));
    }
    CHECK(delta_from_v(s1.alpha) == xi_elem(-4, 10, -6));
    CHECK(delta_from_v(s4.alpha) == eta_elem(-2, 2, -4));
    // V_{0,3}: derivative of V_{0,2} in z, divided by 3
    NFElem a = s1.alpha;
    NFElem li_m1 = polylog_nonpos(-1, -a), li_m1b = polylog_nonpos(-1, a.pow(-2));
    CHECK(v_coefficient(a, 0, 3) == (NFElem(Rational(2)) * li_m1 + NFElem(Rational(8)) * li_m1b) / NFElem(Rational(6)));
}

TEST_CASE("Gaussian expansion: printed first-order coefficients") {
    auto s1 = critical_point(1, kPrec), s4 = critical_point(4, kPrec);
    auto a = gaussian_expand(s1, 2), b = gaussian_expand(s4, 2);
    CHECK(a.c[0] == LambdaPoly(NFElem(xi_field(), Rational(1))));
    CHECK(a.c[1].coeff(2) == xi_elem(r(3, 92), r(-7, 92), r(-1, 46)));
    CHECK(a.c[1].coeff(1) == xi_elem(r(17, 46), r(-11, 92), r(3, 46)));
    CHECK(a.c[1].coeff(0) == xi_elem(r(-681, 8464), r(127, 2116), r(293, 8464)));
    CHECK(a.c[2].coeff(0) == xi_elem(r(2535, 778688), r(-50607, 6229504), r(65537, 6229504)));
    CHECK(b.c[1].coeff(2) == eta_elem(r(-1, 28), r(1, 14), r(1, 28)));
    CHECK(b.c[1].coeff(1) == eta_elem(r(3, 14), r(-1, 14), r(1, 28)));
    CHECK(b.c[1].coeff(0) == eta_elem(r(-17, 168), r(1, 16), r(1, 16)));
    CHECK(a.delta == xi_elem(-4, 10, -6));
    CHECK(b.delta == eta_elem(-2, 2, -4));
    CHECK(a.odd_orders_vanish);
    CHECK(b.odd_orders_vanish);
}

TEST_CASE("Gaussian expansion: degrees and stability") {
    for (int sigma : {1, 5}) {
        auto p = critical_point(sigma, kPrec);
        auto s = gaussian_expand(p, 5);
        for (int k = 0; k <= 5; ++k) {
            CHECK(s.c[k].degree() == 2 * k);
            CHECK_FALSE(s.c[k].lead().is_zero());
        }
        auto bigger = gaussian_expand(p, 3, 3);
        for (int k = 0; k <= 3; ++k) CHECK(bigger.c[k] == s.c[k]);
    }
}

TEST_CASE("second-order coefficient against a numerical saddle-point integral") {
    // σ1 (ξ field, cross-checked with the printed value) and σ6 (η field)
    for (int sigma : {1, 6}) {
        for (long lam : {0L, 2L}) {
            auto p = critical_point(sigma, kPrec);
            auto s = gaussian_expand(p, 2);
            Model m;
            m.u = log(p.numeric);
            m.w0 = pow(p.numeric, -2L);
            m.continued = m.w0.real() > BigFloat(1L, kPrec);
            m.lambda = lam;
            BigComplex v02 = p.embed(v_coefficient(p.alpha, 0, 2));
            auto fit = fit_coefficients(m, v02);
            BigComplex c1 = p.embed(s.at_lambda(1, lam)), c2 = p.embed(s.at_lambda(2, lam));
            CHECK_MESSAGE(cdist(fit[0], c1) < 1e-10, "sigma=", sigma, " lambda=", lam);
            CHECK_MESSAGE(cdist(fit[1], c2) < 1e-7 * (1 + abs(c2).to_double()), "sigma=", sigma, " lambda=", lam,
                          " fit=", fit[1].to_string(12), " exact=", c2.to_string(12));
        }
    }
}

TEST_CASE("dilogarithm") {
    const mpfr_prec_t p = kPrec;
    BigFloat pi = bf_pi(p), ln2 = log(BigFloat(2L, p));
    auto c = [&](double re, double im) { return BigComplex(re, im, p); };
    BigComplex half = li2(c(0.5, 0));
    CHECK(abs(half - BigComplex(pi * pi / BigFloat(12L, p) - ln2 * ln2 * BigFloat(0.5, p))).to_double() < 1e-55);
    CHECK(abs(li2(c(-1, 0)) + BigComplex(pi * pi / BigFloat(12L, p))).to_double() < 1e-55);
    BigFloat catalan("0.91596559417721901505460351493238411077414937428167213426649811962176301977625", p);
    CHECK(abs(li2(c(0, 1)) - BigComplex(-pi * pi / BigFloat(48L, p), catalan)).to_double() < 1e-55);
    // limit from above on the cut: Li2(2 + i0) = π²/4 + iπ log 2
    CHECK(abs(li2(c(2, 0)) - BigComplex(pi * pi / BigFloat(4L, p), pi * ln2)).to_double() < 1e-55);
    // against the defining series inside the disk
    for (auto z : {c(0.3, 0.2), c(-0.4, 0.1), c(0.1, -0.45)}) {
        BigComplex s(p), zp = z;
        for (long k = 1; k < 400; ++k) {
            s += zp / BigFloat(k * k, p);
            zp = zp * z;
        }
        CHECK(abs(li2(z) - s).to_double() < 1e-55);
    }
    // inversion formula off the cut
    for (auto z : {c(3, 2), c(-5, -1), c(0.5, 2)}) {
        BigComplex l = log(-z);
        BigComplex rhs = -li2(BigComplex(1.0, 0.0, p) / z) - BigComplex(pi * pi / BigFloat(6L, p)) - l * l * BigFloat(0.5, p);
        CHECK(abs(li2(z) - rhs).to_double() < 1e-50);
    }
}

TEST_CASE("numeric stationary phase value") {
    auto p = critical_point(1, kPrec);
    auto s = gaussian_expand(p, 2);
    BigComplex hbar = BigComplex(0.0, 1e-3, kPrec);
    BigComplex v0 = phi_hat_numeric(p, s, 0, 0, hbar, 0);
    BigComplex expect = exp(v00_numeric(p) / hbar) / sqrt(BigComplex::i(kPrec) * p.embed(s.delta));
    CHECK(abs(v0 / expect - BigComplex(1.0, 0.0, kPrec)).to_double() < 1e-40);
    BigComplex v1 = phi_hat_numeric(p, s, 0, 0, hbar, 1);
    BigComplex ratio = v1 / v0 - BigComplex(1.0, 0.0, kPrec);
    CHECK(abs(ratio - p.embed(s.at_lambda(1, 0)) * hbar).to_double() < 1e-40);
    // λ' enters only through e^{2πiλ' log α/ℏ}
    BigComplex w = phi_hat_numeric(p, s, 1, 3, hbar, 2) / phi_hat_numeric(p, s, 1, 0, hbar, 2);
    BigComplex f = exp(BigComplex::i(kPrec) * bf_pi(kPrec) * BigFloat(6L, kPrec) * log(p.numeric) / hbar);
    CHECK(abs(w / f - BigComplex(1.0, 0.0, kPrec)).to_double() < 1e-40);
    CHECK_THROWS(phi_hat_numeric(p, s, 0, 0, BigComplex(kPrec), 0));
    CHECK_THROWS(phi_hat_numeric(p, s, 0, 0, hbar, 3));
}

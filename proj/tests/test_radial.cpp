#include <doctest.h>

#include <random>

#include "hqmf/radial.hpp"

using namespace hqmf;

namespace {

const Rational kFifth = make_rational(1, 5);

std::vector<long> range(long lo, long hi, long step) {
    std::vector<long> v;
    for (long n = lo; n <= hi; n += step) v.push_back(n);
    return v;
}

// Σ_k c_k N^{-k}
std::vector<BigComplex> power_tail(const std::vector<BigComplex>& c, const std::vector<long>& Ns, mpfr_prec_t p) {
    std::vector<BigComplex> out;
    for (long N : Ns) {
        BigComplex s(p);
        BigFloat x = BigFloat(1L, p) / BigFloat(N, p);
        BigFloat xk(1L, p);
        for (const auto& ck : c) {
            s += ck * xk;
            xk = xk * x;
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("richardson recovers pure power tails") {
    const mpfr_prec_t p = 256;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-3, 3);
    auto Ns = range(120, 200, 4);
    for (int d = 0; d <= 8; ++d) {
        std::vector<BigComplex> c;
        for (int k = 0; k <= d; ++k) c.push_back(BigComplex(BigFloat(U(rng), p), BigFloat(U(rng), p)));
        auto v = power_tail(c, Ns, p);
        auto R = richardson(v, Ns, std::max(d, 1));
        double err = (abs(R.limit - c[0]) / abs(c[0])).to_double();
        CAPTURE(d);
        CHECK(err < std::pow(10.0, -(d + 2)));
    }

    auto v = power_tail({BigComplex(BigFloat(1L, p)), BigComplex(BigFloat(1L, p)), BigComplex(BigFloat(1L, p))},
                        Ns, p);
    auto R = richardson(v, Ns, 4);
    CHECK((abs(R.limit - BigComplex(BigFloat(1L, p)))).to_double() < 1e-60);
    CHECK(R.diagonal.size() == 5);
    CHECK(abs(richardson(v, Ns, 0).limit - v.back()).is_zero());
    CHECK_THROWS_AS(richardson(v, Ns, static_cast<int>(Ns.size()) - 1), std::invalid_argument);
    CHECK_THROWS_AS(richardson(v, {120}, 1), std::invalid_argument);
}

TEST_CASE("radial rays") {
    CHECK_THROWS_AS(radial_tau(make_rational(0), 10, 128), std::invalid_argument);
    CHECK_THROWS_AS(radial_tau(make_rational(1), 10, 128), std::invalid_argument);
    CHECK_THROWS_AS(radial_tau(make_rational(-1), 10, 128), std::invalid_argument);
    BigComplex t = radial_tau(kFifth, 50, 128);
    CHECK(std::abs(abs(t).to_double() - 0.02) < 1e-15);
    CHECK(t.imag() > BigFloat(0L, 128));
}

TEST_CASE("radial samples stay bounded near the root of unity") {
    auto s = radial_samples(0, Sign::plus, kFifth, {100}, 256);
    REQUIRE(s.size() == 1);
    // H^+_{0,0} grows at most polynomially times the exponential of the volume
    double mag = abs(s[0].value).to_double();
    CHECK(std::isfinite(mag));
    CHECK(mag > 0);
    CHECK(s[0].prec >= 256);
}

TEST_CASE("the table is closed under the quadratic relation") {
    std::string detail;
    CHECK(qasy_quadratic_relation_cancels(&detail));
    CHECK(detail.empty());
    CHECK(qasy_table().size() == 12);
    CHECK(qasy_row(4, Sign::minus).sigma == 3);
    CHECK_THROWS(qasy_row(6, Sign::plus));
}

TEST_CASE("H^±_{0,1} match at desk scale") {
    for (Sign s : {Sign::plus, Sign::minus}) {
        auto rep = asymptotic_match(1, s, kFifth, 10, 256);
        CAPTURE(rep.digits_matched);
        CHECK(rep.pass());
        CHECK(rep.lattice_a == 0);
        CHECK(rep.lattice_b == 0);
        CHECK(rep.best.sigma == rep.sigma);
        CHECK_FALSE(rep.no_match);
    }
}

TEST_CASE("digits grow with the truncation order up to a floor") {
    const QasyRow& row = qasy_row(0, Sign::plus);
    MatchOptions o = MatchOptions::desk();
    auto samples = radial_samples(0, Sign::plus, kFifth, o.N_list, 256);
    std::vector<double> d;
    for (int K = 0; K <= 8; ++K) d.push_back(match_candidate(row, 1, 1, samples, kFifth, K, 256, o).digits);
    for (int K = 1; K <= 4; ++K) {
        CAPTURE(K);
        CHECK(d[K] > d[K - 1]);
    }
    // past the floor the truncation no longer matters
    for (int K = 5; K <= 8; ++K) CHECK(std::abs(d[K] - d[4]) < 0.25);
    CHECK(std::abs(d[8] - d[7]) < 0.01);
    CHECK(d[8] >= 5);
}

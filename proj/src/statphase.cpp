#include "hqmf/statphase.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace hqmf {

namespace {

Rational factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

Rational pow_rational(const Rational& x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

NFElem eval_at(const RationalPoly& p, const NFElem& x) {
    NFElem r(x.field(), Rational(0));
    for (int i = p.degree(); i >= 0; --i) r = r * x + NFElem(x.field(), p.coeff(static_cast<std::size_t>(i)));
    return r;
}

// Σ_{k=0}^{n} B_{2n-2k}(1/2)/((2n-2k)!(2k)! 2^{2k})
Rational even_weight(int n) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k)
        s += bernoulli_half(n - k) / (factorial(2 * n - 2 * k) * factorial(2 * k) * pow_rational(4, k));
    return s;
}

// Σ_{k=0}^{n} B_{2n-2k}(1/2)/((2n-2k)!(2k+1)! 2^{2k+1})
Rational odd_weight(int n) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k)
        s += bernoulli_half(n - k) / (factorial(2 * n - 2 * k) * factorial(2 * k + 1) * pow_rational(4, k) * 2);
    return s;
}

struct RootRef {
    int sigma;
    double re, im;
};
const RootRef kPrinted[] = {{1, -0.662, -0.562}, {2, -0.662, 0.562}, {3, 1.325, 0.0},
                            {4, -2.247, 0.0},    {5, -0.555, 0.0},   {6, 0.802, 0.0}};

using YPoly = std::vector<LambdaPoly>;  // indexed by the power of y

YPoly ymul(const YPoly& a, const YPoly& b, const LambdaPoly& zero) {
    if (a.empty() || b.empty()) return {};
    YPoly r(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].zero()) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

void yadd(YPoly& a, const YPoly& b, const LambdaPoly& zero) {
    if (a.size() < b.size()) a.resize(b.size(), zero);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
}

}  // namespace

// ---------------------------------------------------------------- critical points

BigComplex CriticalPoint::embed(const NFElem& x) const {
    const mpfr_prec_t prec = generator.prec();
    auto c = x.coords();
    BigComplex r(prec), p(1.0, 0.0, prec);
    for (const auto& ci : c) {
        r += to_complex(ci, prec) * p;
        p = p * generator;
    }
    return r;
}

std::vector<Rational> critical_polynomial() {
    // (α³-α-1)(α³+2α²-α-1)
    RationalPoly a(std::vector<Rational>{-1, -1, 0, 1}), b(std::vector<Rational>{-1, -1, 2, 1});
    auto p = a * b;
    return p.coeffs();
}

std::vector<CriticalPoint> critical_points(mpfr_prec_t prec) {
    std::vector<CriticalPoint> out(6);
    for (FieldPtr f : {xi_field(), eta_field()}) {
        const bool xi = f == xi_field();
        NFElem g = NFElem::generator(f);
        NFElem alpha = xi ? NFElem(g * g - g) : NFElem(NFElem(f, Rational(-1)) - g);
        auto roots = polynomial_roots(f->minpoly, prec);
        for (auto& r : roots) {
            // real roots come back with round-off imaginary parts; make them exactly real
            if (abs(r.imag()) < pow2(-static_cast<long>(prec) / 2, prec)) r = BigComplex(r.real());
            CriticalPoint cp;
            cp.field = f;
            cp.alpha = alpha;
            cp.generator = r;
            cp.numeric = cp.embed(alpha);
            // label by the nearest printed numerical value
            double best = 1e300;
            for (const auto& ref : kPrinted) {
                if ((ref.sigma <= 3) != xi) continue;
                double d = std::hypot(cp.numeric.real().to_double() - ref.re, cp.numeric.imag().to_double() - ref.im);
                if (d < best) {
                    best = d;
                    cp.sigma = ref.sigma;
                }
            }
            cp.embedding_index = xi ? cp.sigma - 1 : cp.sigma - 4;
            if (!out[cp.sigma - 1].field) {
                out[cp.sigma - 1] = cp;
            } else {
                throw std::runtime_error("two embeddings matched the same critical point label");
            }
        }
    }
    return out;
}

CriticalPoint critical_point(int sigma, mpfr_prec_t prec) {
    if (sigma < 1 || sigma > 6) throw std::invalid_argument("critical point label must be 1..6");
    return critical_points(prec)[static_cast<std::size_t>(sigma - 1)];
}

// ---------------------------------------------------------------- Bernoulli and polylogarithms

Rational bernoulli_number(int n) {
    if (n < 0) throw std::invalid_argument("Bernoulli index must be nonnegative");
    static std::mutex mu;
    static std::vector<Rational> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        // Akiyama-Tanigawa
        const int m = static_cast<int>(cache.size());
        std::vector<Rational> a(m + 1);
        for (int i = 0; i <= m; ++i) {
            a[i] = make_rational(1, i + 1);
            for (int j = i; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
        }
        cache.push_back(m == 1 ? Rational(-a[0]) : a[0]);
    }
    return cache[static_cast<std::size_t>(n)];
}

Rational bernoulli_half(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli_half needs n >= 0");
    // B_{2n}(1/2) = (2^{1-2n} - 1) B_{2n}
    Rational p = 2;
    for (int i = 0; i < 2 * n; ++i) p /= 2;
    return (p - 1) * bernoulli_number(2 * n);
}

RationalPoly polylog_numerator(int k) {
    if (k < 0) throw std::invalid_argument("polylog_numerator needs k >= 0");
    const RationalPoly w = RationalPoly::variable(Rational(1));
    const RationalPoly one_minus_w = RationalPoly(Rational(1)) - w;
    RationalPoly n = w;
    for (int i = 0; i < k; ++i) n = w * (n.derivative() * one_minus_w + n * Rational(i + 1));
    return n;
}

NFElem polylog_nonpos(int s, const NFElem& w) {
    if (s > 0) throw std::invalid_argument("polylog_nonpos needs s <= 0");
    const NFElem one(w.field(), Rational(1));
    if (w == one) throw std::domain_error("Li_s has a pole at w = 1");
    const int k = -s;
    return eval_at(polylog_numerator(k), w) / (one - w).pow(k + 1);
}

// ---------------------------------------------------------------- V table

NFElem v_coefficient(const NFElem& alpha, int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("V_{n,m} needs n, m >= 0");
    const NFElem ainv2 = alpha.pow(-2);
    const Rational sign_m = (m % 2) ? -1 : 1;
    const Rational two_m = pow_rational(2, m) * sign_m;  // (-2)^m
    if (n % 2 == 0) {
        const int nn = n / 2;
        const int s = 2 - 2 * nn - m;
        if (s > 0) throw std::invalid_argument("V_{n,m} is transcendental for this index");
        NFElem a = polylog_nonpos(s, -alpha) * NFElem(bernoulli_half(nn) / factorial(2 * nn) * 2);
        NFElem b = polylog_nonpos(s, ainv2) * NFElem(two_m * even_weight(nn));
        return (a - b) * NFElem(Rational(1) / factorial(m));
    }
    const int nn = (n - 1) / 2;
    const int s = 1 - 2 * nn - m;
    if (s > 0) throw std::invalid_argument("V_{n,m} is transcendental for this index");
    return -polylog_nonpos(s, ainv2) * NFElem(two_m / factorial(m) * odd_weight(nn));
}

VTable::VTable(const CriticalPoint& p, int n_max, int m_max) : n_max_(n_max), m_max_(m_max) {
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= m_max; ++m) {
            const bool transcendental = (n % 2 == 0) ? (2 - n - m > 0) : (1 - (n - 1) - m > 0);
            if (!transcendental) v_.emplace(std::make_pair(n, m), v_coefficient(p.alpha, n, m));
        }
}

const NFElem& VTable::at(int n, int m) const {
    auto it = v_.find({n, m});
    if (it == v_.end())
        throw std::out_of_range("V_{" + std::to_string(n) + "," + std::to_string(m) + "} is not in the table");
    return it->second;
}

VTable v_table(const CriticalPoint& p, int n_max, int m_max) { return VTable(p, n_max, m_max); }

NFElem delta_from_v(const NFElem& alpha) {
    NFElem one(alpha.field(), Rational(1));
    return v_coefficient(alpha, 0, 2) * NFElem(Rational(2)) / (one - alpha.pow(-2));
}

NFElem delta_quintic(const NFElem& alpha) {
    auto c = [&](long x) { return NFElem(alpha.field(), Rational(x)); };
    return c(-2) * alpha.pow(5) + c(12) * alpha.pow(3) - c(2) * alpha.pow(2) - c(16) * alpha - c(10);
}

// ---------------------------------------------------------------- Gaussian integration

NFElem AsymptoticSeries::at_lambda(int k, long lambda) const {
    if (k < 0 || k >= static_cast<int>(c.size())) throw std::out_of_range("c_k index beyond the computed order");
    const auto& p = c[static_cast<std::size_t>(k)];
    NFElem x(delta.field(), Rational(lambda));
    NFElem r(delta.field(), Rational(0));
    for (int i = p.degree(); i >= 0; --i) r = r * x + p.coeff(static_cast<std::size_t>(i));
    return r;
}

AsymptoticSeries gaussian_expand(const CriticalPoint& p, int K) { return gaussian_expand(p, K, 0); }

AsymptoticSeries gaussian_expand(const CriticalPoint& p, int K, int extra) {
    if (K < 0) throw std::invalid_argument("gaussian_expand needs K >= 0");
    const FieldPtr f = p.field;
    const NFElem zero_c(f, Rational(0)), one_c(f, Rational(1));
    const LambdaPoly zero(zero_c);
    const int n_max = K + 1 + extra, m_max = 2 * K + 2 + extra;
    VTable table(p, n_max, m_max);
    const NFElem v02 = table.at(0, 2);
    if (v02.is_zero()) throw std::domain_error("degenerate critical point");

    // exponent E = Σ_k s^k E_k(y), s = ℏ^{1/2}
    const int top = 2 * K;
    std::vector<YPoly> E(top + 1);
    auto add = [&](int k, int m, const LambdaPoly& c) {
        if (k < 1 || k > top) return;
        if (static_cast<int>(E[k].size()) <= m) E[k].resize(m + 1, zero);
        E[k][m] = E[k][m] + c;
    };
    add(1, 1, LambdaPoly::variable(one_c));
    for (int m = 3; m <= m_max; ++m) add(m - 2, m, LambdaPoly(table.at(0, m)));
    for (int n = 1; n <= n_max; ++n)
        for (int m = 0; m <= m_max; ++m) {
            if (n == 1 && m == 0) continue;
            add(2 * n - 2 + m, m, LambdaPoly(table.at(n, m)));
        }

    // F = exp(E): k F_k = Σ_j j E_j F_{k-j}
    std::vector<YPoly> F(top + 1);
    F[0] = YPoly{LambdaPoly(one_c)};
    for (int k = 1; k <= top; ++k) {
        YPoly acc;
        for (int j = 1; j <= k; ++j) {
            if (E[j].empty()) continue;
            YPoly t = ymul(E[j], F[k - j], zero);
            for (auto& c : t) c = c * NFElem(f, Rational(j));
            yadd(acc, t, zero);
        }
        for (auto& c : acc) c = c * NFElem(f, make_rational(1, k));
        F[k] = acc;
    }

    // ⟨y^{2p}⟩ = (2p-1)!!/(-2V_{0,2})^p
    auto moment = [&](const YPoly& poly, int parity) {
        LambdaPoly tot = zero;
        NFElem weight = one_c;  // (2p-1)!!/(-2V02)^p
        const NFElem step = (NFElem(f, Rational(-2)) * v02).inverse();
        for (std::size_t d = 0; d < poly.size(); d += 2) {
            if (d > 0) weight = weight * NFElem(f, Rational(static_cast<long>(d) - 1)) * step;
            std::size_t idx = d + static_cast<std::size_t>(parity);
            if (idx < poly.size()) tot = tot + poly[idx] * weight;
        }
        return tot;
    };

    AsymptoticSeries out;
    out.sigma = p.sigma;
    out.K = K;
    out.delta = delta_from_v(p.alpha);
    for (int k = 0; k <= K; ++k) out.c.push_back(moment(F[2 * k], 0));
    // odd s-orders: only odd y-powers may appear
    for (int k = 1; k <= top; k += 2)
        for (std::size_t d = 0; d < F[k].size(); d += 2)
            if (!F[k][d].zero()) out.odd_orders_vanish = false;
    return out;
}

// ---------------------------------------------------------------- numerics

namespace {

// Σ_{n>=0} B_n u^{n+1}/(n+1)!,  u = -log(1-z), valid for |u| < 2π
BigComplex li2_bernoulli(const BigComplex& z) {
    const mpfr_prec_t prec = z.prec();
    const BigComplex one(1.0, 0.0, prec);
    const BigComplex u = -log(one - z);
    BigComplex sum = u, upow = u;
    const BigFloat eps = pow2(-static_cast<long>(prec) - 4, prec);
    for (int n = 1; n < 4 * static_cast<int>(prec); ++n) {
        upow = upow * u;
        Rational b = bernoulli_number(n);
        if (b == 0) continue;
        BigComplex term = upow * BigFloat(Rational(b / factorial(n + 1)), prec);
        sum += term;
        if (abs(term) < eps * max(abs(sum), BigFloat(1L, prec)) && n > 4) break;
    }
    return sum;
}

BigComplex li2_unit(const BigComplex& z) {
    const mpfr_prec_t prec = z.prec();
    const BigComplex one(1.0, 0.0, prec);
    if (z.real() > BigFloat(0.5, prec)) {
        BigFloat pi = bf_pi(prec);
        BigComplex pi26 = BigComplex(pi * pi / BigFloat(6L, prec));
        return -li2_bernoulli(one - z) + pi26 - log(z) * log(one - z);
    }
    return li2_bernoulli(z);
}

}  // namespace

BigComplex li2(const BigComplex& z) {
    const mpfr_prec_t prec = z.prec();
    if (z.is_zero()) return BigComplex(prec);
    const BigComplex one(1.0, 0.0, prec);
    BigFloat pi = bf_pi(prec);
    BigComplex pi26 = BigComplex(pi * pi / BigFloat(6L, prec));
    if (z.real() == BigFloat(1L, prec) && z.imag().is_zero()) return pi26;
    if (z.imag().is_zero() && z.real() > BigFloat(1L, prec)) {
        // on the cut: the limit from the upper half plane, log(-z) = log z - iπ
        BigComplex l = log(BigComplex(z.real())) - BigComplex::i(prec) * pi;
        return -li2_unit(one / z) - pi26 - l * l * BigFloat(0.5, prec);
    }
    if (abs(z) > BigFloat(1L, prec)) {
        BigComplex l = log(-z);
        return -li2_unit(one / z) - pi26 - l * l * BigFloat(0.5, prec);
    }
    return li2_unit(z);
}

BigComplex v00_numeric(const CriticalPoint& p) {
    const BigComplex& a = p.numeric;
    return li2(-a) * BigFloat(2L, a.prec()) - li2(pow(a, -2L));
}

BigComplex phi_series_numeric(const CriticalPoint& p, const AsymptoticSeries& s, long lambda,
                              const BigComplex& hbar, int K) {
    if (K > s.K) throw std::invalid_argument("requested more terms than the expansion holds");
    const mpfr_prec_t prec = hbar.prec();
    BigComplex sum(prec), hp(1.0, 0.0, prec);
    for (int k = 0; k <= K; ++k) {
        sum += p.embed(s.at_lambda(k, lambda)) * hp;
        hp = hp * hbar;
    }
    return sum;
}

BigComplex phi_hat_numeric(const CriticalPoint& p, const AsymptoticSeries& s, long lambda, long lambda_prime,
                           const BigComplex& hbar, int K) {
    if (hbar.is_zero()) throw std::invalid_argument("phi_hat_numeric needs hbar != 0");
    const mpfr_prec_t prec = hbar.prec();
    const BigComplex& a = p.numeric;
    BigFloat pi = bf_pi(prec);
    BigComplex two_pi_i = BigComplex::i(prec) * (pi * BigFloat(2L, prec));
    BigComplex expo = (v00_numeric(p) + two_pi_i * BigFloat(lambda_prime, prec) * log(a)) / hbar;
    BigComplex pre = pow(a, lambda) * exp(expo) / sqrt(BigComplex::i(prec) * p.embed(s.delta));
    return pre * phi_series_numeric(p, s, lambda, hbar, K);
}

}  // namespace hqmf

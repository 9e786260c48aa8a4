#pragma once

// Numerical model of the one-dimensional saddle-point integral: the coefficients
// c_k of the asymptotic series are fitted from direct quadrature at small ħ.

#include <vector>

#include "hqmf/statphase.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace hqmf;

inline constexpr mpfr_prec_t kModelPrec = 200;

// Eulerian numbers A(k, i)
inline std::vector<std::vector<long>> eulerian(int kmax) {
    std::vector<std::vector<long>> a(kmax + 1);
    a[0] = {1};
    for (int k = 1; k <= kmax; ++k) {
        a[k].assign(k, 0);
        for (int i = 0; i < k; ++i) {
            long left = (i < static_cast<int>(a[k - 1].size())) ? a[k - 1][i] : 0;
            long right = (i >= 1 && i - 1 < static_cast<int>(a[k - 1].size())) ? a[k - 1][i - 1] : 0;
            a[k][i] = (i + 1) * left + (k - i) * right;
        }
    }
    return a;
}

// Li_{-k}(w) = w Σ_i A(k,i) w^i / (1-w)^{k+1}, Li_0(w) = w/(1-w)
inline BigComplex li_neg(int k, const BigComplex& w) {
    static const auto table = eulerian(24);
    const BigComplex one(1.0, 0.0, w.prec());
    if (k == 0) return w / (one - w);
    BigComplex s(w.prec()), p(1.0, 0.0, w.prec());
    for (long c : table[k]) {
        s += p * BigFloat(c, w.prec());
        p = p * w;
    }
    return w * s / pow(one - w, static_cast<long>(k + 1));
}

inline Rational fact(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline Rational b_half(int n) {  // B_{2n}(1/2) from the recurrence-based Bernoulli oracle
    auto b = oracle::bernoulli_numbers(2 * n);
    Rational p = 2;
    for (int i = 0; i < 2 * n; ++i) p /= 2;
    return (p - 1) * b[2 * n];
}

struct Model {
    BigComplex u;        // log α
    BigComplex w0;       // α^{-2}
    bool continued;      // Li2 continued across its cut near w0
    long lambda;

    BigComplex li2c(const BigComplex& w) const {
        if (!continued) return li2(w);
        const mpfr_prec_t p = w.prec();
        BigFloat pi = bf_pi(p);
        BigComplex l = log(w) - BigComplex::i(p) * pi;
        return -li2(BigComplex(1.0, 0.0, p) / w) - BigComplex(pi * pi / BigFloat(6L, p)) - l * l * BigFloat(0.5, p);
    }
    BigComplex log1m(const BigComplex& w) const {  // log(1-w) on a branch analytic near w0
        const BigComplex one(1.0, 0.0, w.prec());
        if (!continued) return log(one - w);
        return log(w - one) + BigComplex::i(w.prec()) * bf_pi(w.prec());
    }
    BigComplex V0(const BigComplex& z) const {
        return li2(-exp(z)) * BigFloat(2L, z.prec()) - li2c(exp(z * BigFloat(-2L, z.prec())));
    }
    BigComplex V1(const BigComplex& z) const {
        return log1m(exp(z * BigFloat(-2L, z.prec()))) * BigFloat(0.5, z.prec());
    }
    BigComplex Vn(int n, const BigComplex& z) const {
        const mpfr_prec_t p = z.prec();
        BigComplex w = exp(z * BigFloat(-2L, p));
        if (n % 2 == 0) {
            int nn = n / 2;
            Rational s = 0;
            for (int k = 0; k <= nn; ++k) s += b_half(nn - k) / (fact(2 * nn - 2 * k) * fact(2 * k)) / Rational(Integer(1) << (2 * k));
            Rational a = b_half(nn) / fact(2 * nn) * 2;
            return li_neg(2 * nn - 2, -exp(z)) * BigFloat(a, p) - li_neg(2 * nn - 2, w) * BigFloat(s, p);
        }
        int nn = (n - 1) / 2;
        Rational s = 0;
        for (int k = 0; k <= nn; ++k)
            s += b_half(nn - k) / (fact(2 * nn - 2 * k) * fact(2 * k + 1)) / Rational(Integer(1) << (2 * k + 1));
        return -li_neg(2 * nn - 1, w) * BigFloat(s, p);
    }
};

// Σ_k c_k ħ^k as the ratio of the model integral to its Gaussian part
inline BigComplex model_ratio(const Model& m, const BigComplex& v02, const BigFloat& hbar, int points) {
    const mpfr_prec_t p = kModelPrec;
    BigFloat pi = bf_pi(p);
    BigFloat theta = (pi - arg(v02)) * BigFloat(0.5, p);
    BigComplex dir = BigComplex::polar(BigFloat(1L, p), theta);
    BigFloat T = sqrt(BigFloat(80L, p) * hbar / abs(v02));
    BigFloat h = BigFloat(2L, p) * T / BigFloat(static_cast<long>(points), p);
    BigFloat eps = pow2(-p / 3, p);
    const BigComplex v0u = m.V0(m.u), v1u = m.V1(m.u);
    const BigComplex d0 = (m.V0(m.u + BigComplex(eps)) - m.V0(m.u - BigComplex(eps))) / (eps * BigFloat(2L, p));
    BigComplex sum(p);
    for (int k = 0; k <= points; ++k) {
        BigFloat t = -T + h * BigFloat(static_cast<long>(k), p);
        BigComplex x = dir * t;
        BigComplex z = m.u + x;
        BigComplex e = (m.V0(z) - v0u - d0 * x) / hbar + x * BigFloat(m.lambda, p) + (m.V1(z) - v1u);
        BigFloat hp = hbar;
        for (int n = 2; n <= 9; ++n) {
            e += m.Vn(n, z) * hp;
            hp = hp * hbar;
        }
        BigComplex f = exp(e);
        if (k == 0 || k == points) f = f * BigFloat(0.5, p);
        sum += f;
    }
    sum = sum * dir * h;
    BigComplex gauss = dir * sqrt(pi * hbar / abs(v02));
    return sum / gauss;
}

// fit c_1..c_6 from six small ħ
inline std::vector<BigComplex> fit_coefficients(const Model& m, const BigComplex& v02) {
    const mpfr_prec_t p = kModelPrec;
    const int N = 6;
    std::vector<std::vector<BigComplex>> A(N, std::vector<BigComplex>(N + 1, BigComplex(p)));
    for (int i = 0; i < N; ++i) {
        BigFloat hb = BigFloat(static_cast<long>(i + 1), p) / BigFloat(1000L, p);
        BigComplex rr = (model_ratio(m, v02, hb, 240) - BigComplex(1.0, 0.0, p)) / hb;
        BigComplex pw(1.0, 0.0, p);
        for (int j = 0; j < N; ++j) {
            A[i][j] = pw;
            pw = pw * hb;
        }
        A[i][N] = rr;
    }
    for (int c = 0; c < N; ++c) {
        for (int r2 = c + 1; r2 < N; ++r2) {
            BigComplex f = A[r2][c] / A[c][c];
            for (int k = c; k <= N; ++k) A[r2][k] = A[r2][k] - f * A[c][k];
        }
    }
    std::vector<BigComplex> x(N, BigComplex(p));
    for (int i = N - 1; i >= 0; --i) {
        BigComplex s = A[i][N];
        for (int k = i + 1; k < N; ++k) s = s - A[i][k] * x[k];
        x[i] = s / A[i][i];
    }
    return x;
}

}  // namespace oracle

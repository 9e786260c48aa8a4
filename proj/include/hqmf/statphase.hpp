#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hqmf/bigfloat.hpp"
#include "hqmf/numberfield.hpp"
#include "hqmf/poly.hpp"

namespace hqmf {

using LambdaPoly = NFPoly;  // polynomial in λ over a number field

struct CriticalPoint {
    int sigma = 0;  // 1..6
    FieldPtr field;
    NFElem alpha;         // α as an element of ℚ(ξ) or ℚ(η)
    int embedding_index = 0;
    BigComplex generator;  // numeric image of ξ or η
    BigComplex numeric;    // numeric image of α

    std::string label() const { return "sigma" + std::to_string(sigma); }
    BigComplex embed(const NFElem& x) const;
};

// σ1..σ3 (ξ-field, α = -ξ + ξ²) and σ4..σ6 (η-field, α = -1 - η)
std::vector<CriticalPoint> critical_points(mpfr_prec_t prec = 256);
CriticalPoint critical_point(int sigma, mpfr_prec_t prec = 256);
// the sextic (α³-α-1)(α³+2α²-α-1), ascending coefficients
std::vector<Rational> critical_polynomial();

Rational bernoulli_number(int n);  // B_1 = -1/2
Rational bernoulli_half(int n);    // B_{2n}(1/2)

// numerator N_k of Li_{-k}(w) = N_k(w)/(1-w)^{k+1}
RationalPoly polylog_numerator(int k);
// Li_s(w) for s <= 0 evaluated in the field of w
NFElem polylog_nonpos(int s, const NFElem& w);

// V_{n,m} at a critical point.  (0,0), (1,0) and (0,1) are transcendental and not stored.
class VTable {
public:
    VTable(const CriticalPoint& p, int n_max, int m_max);
    bool has(int n, int m) const { return v_.count({n, m}) != 0; }
    const NFElem& at(int n, int m) const;
    int n_max() const { return n_max_; }
    int m_max() const { return m_max_; }

private:
    int n_max_, m_max_;
    std::map<std::pair<int, int>, NFElem> v_;
};

VTable v_table(const CriticalPoint& p, int n_max, int m_max);
NFElem v_coefficient(const NFElem& alpha, int n, int m);

// 2 V_{0,2} / e^{2V_{1,0}} with e^{2V_{1,0}} = 1 - α^{-2}
NFElem delta_from_v(const NFElem& alpha);
// -2α⁵ + 12α³ - 2α² - 16α - 10
NFElem delta_quintic(const NFElem& alpha);

struct AsymptoticSeries {
    int sigma = 0;
    int K = 0;
    std::vector<LambdaPoly> c;  // c[0] = 1
    NFElem delta;
    bool odd_orders_vanish = true;  // no ℏ^{k+1/2} survives the Gaussian integration

    NFElem at_lambda(int k, long lambda) const;
};

AsymptoticSeries gaussian_expand(const CriticalPoint& p, int K);
// the same expansion with the table bounds enlarged by `extra`
AsymptoticSeries gaussian_expand(const CriticalPoint& p, int K, int extra);

// principal-branch dilogarithm; on the cut (1, ∞) the value is the limit from above
BigComplex li2(const BigComplex& z);
BigComplex v00_numeric(const CriticalPoint& p);

// α^λ e^{V_{0,0}/ℏ} e^{2πiλ' log α/ℏ} (iΔ)^{-1/2} Σ_{k<=K} c_k(α,λ) ℏ^k, principal branches
BigComplex phi_hat_numeric(const CriticalPoint& p, const AsymptoticSeries& s, long lambda, long lambda_prime,
                           const BigComplex& hbar, int K);
// Σ_{k<=K} c_k(α,λ) ℏ^k only
BigComplex phi_series_numeric(const CriticalPoint& p, const AsymptoticSeries& s, long lambda,
                              const BigComplex& hbar, int K);

}  // namespace hqmf

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hqmf/dual.hpp"
#include "hqmf/laurent.hpp"
#include "hqmf/poly.hpp"
#include "hqmf/puiseux.hpp"

namespace hqmf {

enum class Sign { plus, minus };
enum class Branch { inside, outside };

// weight vector δ of the outside branch
inline constexpr std::array<int, 6> kDelta{0, 1, 2, 0, 0, 0};

inline int parity_sign(long n) { return (n % 2 == 0) ? 1 : -1; }

struct SeriesFamilyKey {
    long lambda = 0;
    int j = 0;
    Sign sign = Sign::plus;
};

void validate_key(const SeriesFamilyKey& key);
std::string to_string(Sign s);
Sign parse_sign(const std::string& s);

// ℰ1, ℰ2 and E_l^{(m)} modulo q^{order/8}.  E_l^{(0)} comes from ℰ_l, the
// higher E_l^{(m)} from the downward recurrences
//   E_1^{(m)} = E_1^{(m-1)} - q^m/(1-q^m),  E_2^{(m)} = E_2^{(m-1)} - q^m/(1-q^m)^2.
class EisensteinCache {
public:
    explicit EisensteinCache(Exp order);

    Exp order() const { return order_; }
    const QSeries& cal1() const { return cal1_; }
    const QSeries& cal2() const { return cal2_; }
    // E_l^{(m)}, zero to the cache order once m is large
    const QSeries& E(int l, long m) const;
    long m_max() const { return static_cast<long>(e1_.size()) - 1; }

private:
    Exp order_;
    QSeries cal1_, cal2_, zero_;
    std::vector<QSeries> e1_, e2_;
};

EisensteinCache eisenstein(Exp order);
// process-wide shared cache with order at least `order`
std::shared_ptr<const EisensteinCache> eisenstein_shared(Exp order);

// Where p/P take their Eisenstein ingredients from, over a coefficient ring C.
template <class C>
struct EisensteinSource {
    std::function<PuiseuxSeries<C>(int l, long m)> E;
    std::function<PuiseuxSeries<C>()> cal2;
};

template <class C>
EisensteinSource<C> lift_source(std::shared_ptr<const EisensteinCache> ec) {
    auto conv = [](const Rational& r) { return C(r); };
    return {[ec, conv](int l, long m) { return ec->E(l, m).template mapped<C>(conv); },
            [ec, conv]() { return ec->cal2().template mapped<C>(conv); }};
}

// The formal continuation q -> 1/q acting on the ingredients:
//   E_1^{(m)} -> 1/2 + m - E_1^{(m)},  E_2^{(m)} -> 1/12 + E_2^{(m)} - 2E_2^{(0)},  ℰ2 -> -ℰ2
EisensteinSource<Rational> inverted_source(std::shared_ptr<const EisensteinCache> ec);

// ℰ2 replaced by ℰ2 + ε q, consistently in ℰ2 and in every E_2^{(m)}
EisensteinSource<DualRational> perturbed_source(std::shared_ptr<const EisensteinCache> ec);

// p_{λ,j,m} (big = false) or P_{λ,j,m} (big = true) for j in 0..2
template <class C>
PuiseuxSeries<C> p_poly_generic(int j, long m, const C& lambda, bool big, const EisensteinSource<C>& src,
                                Exp order) {
    using S = PuiseuxSeries<C>;
    const C one = C(Rational(1));
    if (j == 0) return S::constant(one, order);
    C c0 = C(Rational((big ? 2 : 4) * m + 1)) + lambda;
    S p1 = S::constant(c0, order) - src.E(1, m) * C(Rational(2)) - src.E(1, 2 * m) * C(Rational(2));
    p1 = p1.truncated(order);
    if (j == 1) return p1;
    S p2 = p1 * p1 - src.E(2, m) * C(Rational(2)) - src.E(2, 2 * m) * C(Rational(4));
    if (big) {
        p2 += src.E(2, 0) * C(Rational(12)) - S::constant(C(make_rational(1, 2)), order) +
              src.cal2() * C(make_rational(1, 3));
    } else {
        p2 -= src.cal2() * C(make_rational(1, 3));
    }
    return p2.truncated(order);
}

QSeries p_poly(long lambda, int j, long m, bool big, Exp order);
// coefficients in ℚ[λ]
PuiseuxSeries<RationalPoly> p_poly_symbolic(int j, long m, bool big, Exp order);
// f_{1,m} = 2q^m/(1-q^m) + 2q^{2m-1}/(1-q^{2m-1}) + 2q^{2m}/(1-q^{2m})
QSeries f1_series(long m, Exp order);

// Summand data of H^±_{λ,j}: q-exponent (lattice units) of the m-th monomial
Exp summand_exponent(long lambda, int j, Sign s, long m);

// H^±_{λ,j} modulo q^{order/8}, over a coefficient ring via an Eisenstein source
template <class C>
PuiseuxSeries<C> h_series_generic(const SeriesFamilyKey& key, Exp order, const EisensteinSource<C>& src);

QSeries h_plus(long lambda, int j, Exp order);
QSeries h_minus(long lambda, int j, Exp order);
QSeries h_series(const SeriesFamilyKey& key, Exp order);
PuiseuxSeries<DualRational> h_series_perturbed(const SeriesFamilyKey& key, Exp order);

// Eisenstein order needed so that every summand is exact to `order`
Exp required_eisenstein_order(const SeriesFamilyKey& key, Exp order);

// inside: H^+_{λ,j}(q).  outside: (-1)^{δ_j} H^-_{-λ,j}(u) as a series in u = 1/q.
QSeries h_wrapped(long lambda, int j, Branch branch, Exp order);

// R^±_{λ,j}: the two-term approximants
QSeries r_approximant(const SeriesFamilyKey& key, Exp order);

// Rational function in x = q^{1/8}: numerator and denominator Laurent
// polynomials (q-exponent counted in lattice units, Λ-exponent zero).
struct RatFunc {
    LaurentPoly num, den;

    RatFunc inverted_variable() const;  // x -> 1/x
    QSeries expand(Exp order) const;
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num * b.den == b.num * a.den; }
};

// the m-th summand of H^±_{λ,j} without its p/P factor, as a rational function
RatFunc summand_ratfunc(const SeriesFamilyKey& key, long m);

struct SymmetryReport {
    long lambda = 0;
    int j = 0;
    Exp order = 0;
    bool summands_match = true;    // R^+_m(1/x) == (-1)^{δ_j} R^-_m(x) for every m
    bool p_relation_holds = true;  // ι p_{λ,j,m} == (-1)^j P_{-λ,j,m}
    bool pass = false;
    bool holds_with_opposite_sign = false;
    long first_bad_m = -1;
    QSeries residual;
};

// H^+_{λ,j}(1/q) = (-1)^{δ_j} H^-_{-λ,j}(q), summand by summand
SymmetryReport symmetry_check(long lambda, int j, Exp order);

struct ComparisonReport {
    int j = 0;
    Sign sign = Sign::plus;
    bool pass = false;
    QSeries residual;
};

// the GZ normalization of the j = 3, 4, 5 series against ours
std::vector<ComparisonReport> gz_comparison(int j, Exp order);

// (a; q)_∞-type products ∏_{i>=0} (1 - c q^{(a + 8i)/8}) modulo q^{order/8};
// a > 0 (a = 0 handled by the caller)
QSeries qpoch_inf(Exp a, const Rational& c, Exp order);

}  // namespace hqmf

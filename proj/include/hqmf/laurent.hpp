#pragma once

#include <map>
#include <string>
#include <utility>

#include "hqmf/puiseux.hpp"
#include "hqmf/rational.hpp"

namespace hqmf {

// Laurent polynomial in q and Λ over ℚ.  Λ stands for q^λ but no relation
// between the two variables is ever assumed.
class LaurentBivariate {
public:
    using Key = std::pair<long, long>;  // (e_q, e_Λ)

    LaurentBivariate() = default;
    LaurentBivariate(const Rational& c);  // NOLINT
    static LaurentBivariate monomial(const Rational& c, long eq, long el);
    static LaurentBivariate q() { return monomial(1, 1, 0); }
    static LaurentBivariate Lambda() { return monomial(1, 0, 1); }

    const std::map<Key, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(long eq, long el) const;

    LaurentBivariate& operator+=(const LaurentBivariate& o);
    LaurentBivariate& operator-=(const LaurentBivariate& o);
    friend LaurentBivariate operator+(LaurentBivariate a, const LaurentBivariate& b) { return a += b; }
    friend LaurentBivariate operator-(LaurentBivariate a, const LaurentBivariate& b) { return a -= b; }
    friend LaurentBivariate operator-(const LaurentBivariate& a);
    friend LaurentBivariate operator*(const LaurentBivariate& a, const LaurentBivariate& b);
    friend bool operator==(const LaurentBivariate& a, const LaurentBivariate& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LaurentBivariate& a, const LaurentBivariate& b) { return !(a == b); }

    LaurentBivariate pow(long e) const;  // e >= 0, or a monomial for e < 0

    // λ -> λ + k, i.e. q^a Λ^b -> q^{a+kb} Λ^b
    LaurentBivariate lambda_shift(long k) const;
    // general monomial substitution q^a Λ^b -> coefficient * q^{a'} Λ^{b'} with
    // (a', b') = (qa*a + qb*b, la*a + lb*b)
    LaurentBivariate substitute_linear(long qa, long qb, long la, long lb) const;
    // λ -> -λ-1 together with q -> 1/q
    LaurentBivariate dual_substitute() const;

    // Λ -> q^λ for an integer λ; the result as an exact q-series on the /8 lattice
    QSeries at_lambda(long lambda) const;

    std::string to_string() const;

    friend bool is_zero(const LaurentBivariate& p) { return p.is_zero(); }
    friend LaurentBivariate zero_like(const LaurentBivariate&) { return LaurentBivariate(); }
    friend LaurentBivariate one_like(const LaurentBivariate&) { return LaurentBivariate(Rational(1)); }
    friend LaurentBivariate exact_div(const LaurentBivariate& a, const LaurentBivariate& b);
    friend int pivot_score(const LaurentBivariate& p) { return static_cast<int>(p.t_.size()); }

private:
    void add(const Key& k, const Rational& c);
    std::map<Key, Rational> t_;
};

using LaurentPoly = LaurentBivariate;

}  // namespace hqmf

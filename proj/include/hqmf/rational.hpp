#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hqmf {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// "num/den", or just "num" when den == 1
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Generic ring hooks.  Every coefficient type used in series and matrices
// provides zero_like / one_like (a zero or one compatible with a sample
// element), is_zero, and exact_div.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational exact_div(const Rational& a, const Rational& b) {
    if (is_zero(b)) throw std::domain_error("division by zero rational");
    return Rational(a / b);
}
inline int pivot_score(const Rational&) { return 0; }

}  // namespace hqmf

#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "hqmf/rational.hpp"

namespace hqmf {

// RAII wrapper over an MPFR real with an explicit precision in bits.
// Binary operations round to the larger of the operand precisions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(double x, mpfr_prec_t prec);
    BigFloat(long x, mpfr_prec_t prec);
    BigFloat(const Rational& x, mpfr_prec_t prec);
    BigFloat(const std::string& decimal, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // scientific notation with `digits` significant digits
    std::string to_string(int digits) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    long exponent2() const;  // binary exponent, so |x| < 2^exponent2

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);
    BigFloat& operator+=(const BigFloat& b);
    BigFloat& operator-=(const BigFloat& b);
    BigFloat& operator*=(const BigFloat& b);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    BigFloat mul_2si(long e) const;

private:
    mpfr_t v_;
};

BigFloat bf_pi(mpfr_prec_t prec);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat tan(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat sinh(const BigFloat& x);
BigFloat cosh(const BigFloat& x);
BigFloat tanh(const BigFloat& x);
BigFloat floor(const BigFloat& x);
BigFloat max(const BigFloat& a, const BigFloat& b);
// 2^e at the given precision
BigFloat pow2(long e, mpfr_prec_t prec);

class BigComplex {
public:
    explicit BigComplex(mpfr_prec_t prec = 128) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    BigComplex(const BigFloat& re) : re_(re), im_(re.prec()) {}  // NOLINT
    BigComplex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}
    BigComplex(const Rational& re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {}

    static BigComplex i(mpfr_prec_t prec) { return BigComplex(BigFloat(0L, prec), BigFloat(1L, prec)); }
    static BigComplex polar(const BigFloat& r, const BigFloat& theta);
    // e^{2πi·x}
    static BigComplex expi2pi(const BigFloat& x);

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    std::string to_string(int digits) const;

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re_ * s, a.im_ * s}; }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return {a.re_ * s, a.im_ * s}; }
    friend BigComplex operator/(const BigComplex& a, const BigFloat& s) { return {a.re_ / s, a.im_ / s}; }
    BigComplex& operator+=(const BigComplex& b) {
        re_ += b.re_;
        im_ += b.im_;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& b) {
        re_ -= b.re_;
        im_ -= b.im_;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }

    BigComplex conj() const { return {re_, -im_}; }
    BigComplex mul_i() const { return {-im_, re_}; }
    BigComplex mul_2si(long e) const { return {re_.mul_2si(e), im_.mul_2si(e)}; }

private:
    BigFloat re_, im_;
};

BigFloat abs(const BigComplex& z);
BigFloat norm(const BigComplex& z);  // |z|^2
BigFloat arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);  // principal branch
BigComplex sqrt(const BigComplex& z);  // principal branch
BigComplex pow(const BigComplex& z, const BigComplex& w);  // exp(w log z), principal
BigComplex pow(const BigComplex& z, long n);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
BigComplex tan(const BigComplex& z);
BigComplex to_complex(const Rational& r, mpfr_prec_t prec);

// bits of precision needed for `digits` decimal digits plus guard bits
inline mpfr_prec_t bits_for_digits(int digits, int guard = 64) {
    return static_cast<mpfr_prec_t>(digits * 3.33 + 1) + guard;
}

}  // namespace hqmf

namespace hqmf {

// all complex roots of a polynomial with rational coefficients (ascending
// order, nonzero leading coefficient), polished at the given precision
std::vector<BigComplex> polynomial_roots(const std::vector<Rational>& ascending, mpfr_prec_t prec);

}  // namespace hqmf

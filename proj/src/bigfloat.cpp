#include "hqmf/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace hqmf {

namespace {
mpfr_prec_t pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}
BigFloat::BigFloat(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
}
BigFloat::BigFloat(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
}
BigFloat::BigFloat(const Rational& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}
BigFloat::BigFloat(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("bad decimal: " + decimal);
    }
}
BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}
BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_string(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

long BigFloat::exponent2() const {
    if (is_zero()) return -(1L << 30);
    return mpfr_get_exp(v_);
}

#define HQMF_BINOP(OP, FN)                                   \
    BigFloat operator OP(const BigFloat& a, const BigFloat& b) { \
        BigFloat r(pmax(a, b));                              \
        FN(r.v_, a.v_, b.v_, MPFR_RNDN);                     \
        return r;                                            \
    }
HQMF_BINOP(+, mpfr_add)
HQMF_BINOP(-, mpfr_sub)
HQMF_BINOP(*, mpfr_mul)
HQMF_BINOP(/, mpfr_div)
#undef HQMF_BINOP

BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}
BigFloat& BigFloat::operator+=(const BigFloat& b) {
    if (b.prec() > prec()) mpfr_prec_round(v_, b.prec(), MPFR_RNDN);
    mpfr_add(v_, v_, b.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& b) {
    if (b.prec() > prec()) mpfr_prec_round(v_, b.prec(), MPFR_RNDN);
    mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& b) {
    if (b.prec() > prec()) mpfr_prec_round(v_, b.prec(), MPFR_RNDN);
    mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
    return *this;
}
BigFloat BigFloat::mul_2si(long e) const {
    BigFloat r(prec());
    mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
    return r;
}

BigFloat bf_pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

#define HQMF_UNARY(NAME, FN)                 \
    BigFloat NAME(const BigFloat& x) {       \
        BigFloat r(x.prec());                \
        FN(r.raw(), x.raw(), MPFR_RNDN);     \
        return r;                            \
    }
HQMF_UNARY(sqrt, mpfr_sqrt)
HQMF_UNARY(exp, mpfr_exp)
HQMF_UNARY(log, mpfr_log)
HQMF_UNARY(sin, mpfr_sin)
HQMF_UNARY(cos, mpfr_cos)
HQMF_UNARY(tan, mpfr_tan)
HQMF_UNARY(abs, mpfr_abs)
HQMF_UNARY(sinh, mpfr_sinh)
HQMF_UNARY(cosh, mpfr_cosh)
HQMF_UNARY(tanh, mpfr_tanh)
#undef HQMF_UNARY

BigFloat floor(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(pmax(y, x));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r(pmax(x, y));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat pow2(long e, mpfr_prec_t prec) {
    BigFloat r(1L, prec);
    return r.mul_2si(e);
}

BigComplex BigComplex::polar(const BigFloat& r, const BigFloat& theta) {
    BigFloat s(theta.prec()), c(theta.prec());
    mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
    return {r * c, r * s};
}

BigComplex BigComplex::expi2pi(const BigFloat& x) {
    BigFloat one(1L, x.prec());
    return polar(one, bf_pi(x.prec()).mul_2si(1) * x);
}

std::string BigComplex::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    // scale by the larger component of b to avoid overflow
    if (abs(b.re_) >= abs(b.im_)) {
        if (b.re_.is_zero()) throw std::domain_error("complex division by zero");
        BigFloat r = b.im_ / b.re_;
        BigFloat d = b.re_ + b.im_ * r;
        return {(a.re_ + a.im_ * r) / d, (a.im_ - a.re_ * r) / d};
    }
    BigFloat r = b.re_ / b.im_;
    BigFloat d = b.re_ * r + b.im_;
    return {(a.re_ * r + a.im_) / d, (a.im_ * r - a.re_) / d};
}

BigFloat abs(const BigComplex& z) { return hypot(z.real(), z.imag()); }
BigFloat norm(const BigComplex& z) { return z.real() * z.real() + z.imag() * z.imag(); }
BigFloat arg(const BigComplex& z) { return atan2(z.imag(), z.real()); }

BigComplex exp(const BigComplex& z) { return BigComplex::polar(exp(z.real()), z.imag()); }

BigComplex log(const BigComplex& z) {
    if (z.is_zero()) throw std::domain_error("log of zero");
    return {log(abs(z)), arg(z)};
}

BigComplex sqrt(const BigComplex& z) {
    if (z.is_zero()) return z;
    BigFloat r = abs(z);
    BigFloat half(0.5, z.prec());
    BigFloat t = sqrt((r + abs(z.real())) * half);
    if (z.real().sign() >= 0) return {t, z.imag() / (t.mul_2si(1))};
    BigFloat im = z.imag().sign() >= 0 ? t : -t;
    return {abs(z.imag()) / t.mul_2si(1), im};
}

BigComplex pow(const BigComplex& z, const BigComplex& w) {
    if (z.is_zero()) return z;
    return exp(log(z) * w);
}

BigComplex pow(const BigComplex& z, long n) {
    BigComplex base = n < 0 ? BigComplex(BigFloat(1L, z.prec())) / z : z;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    BigComplex r(BigFloat(1L, z.prec()));
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

BigComplex sin(const BigComplex& z) {
    return {sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag())};
}
BigComplex cos(const BigComplex& z) {
    return {cos(z.real()) * cosh(z.imag()), -(sin(z.real()) * sinh(z.imag()))};
}
BigComplex tan(const BigComplex& z) { return sin(z) / cos(z); }

BigComplex to_complex(const Rational& r, mpfr_prec_t prec) { return BigComplex(r, prec); }

}  // namespace hqmf

namespace hqmf {

std::vector<BigComplex> polynomial_roots(const std::vector<Rational>& ascending, mpfr_prec_t prec) {
    std::vector<Rational> c = ascending;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("polynomial_roots needs degree at least one");
    const std::size_t n = c.size() - 1;
    std::vector<BigComplex> a;  // monic coefficients
    for (const auto& x : c) a.push_back(to_complex(Rational(x / c.back()), prec));
    auto eval = [&](const BigComplex& z) {
        BigComplex r = a[n];
        for (std::size_t k = n; k-- > 0;) r = r * z + a[k];
        return r;
    };
    // Durand-Kerner from the usual spread of starting points
    std::vector<BigComplex> z;
    BigComplex seed(0.4, 0.9, prec), p(1.0, 0.0, prec);
    for (std::size_t k = 0; k < n; ++k) {
        z.push_back(p);
        p = p * seed;
    }
    const BigFloat tol = pow2(-static_cast<long>(prec) + 8, prec);
    for (int it = 0; it < 10 * static_cast<int>(prec) + 200; ++it) {
        BigFloat worst(0L, prec);
        for (std::size_t k = 0; k < n; ++k) {
            BigComplex den(1.0, 0.0, prec);
            for (std::size_t m = 0; m < n; ++m)
                if (m != k) den = den * (z[k] - z[m]);
            BigComplex step = eval(z[k]) / den;
            z[k] = z[k] - step;
            BigFloat s = abs(step);
            if (s > worst) worst = s;
        }
        if (worst <= tol) break;
    }
    return z;
}

}  // namespace hqmf

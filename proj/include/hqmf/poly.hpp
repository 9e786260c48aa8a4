#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hqmf/rational.hpp"

namespace hqmf {

// Dense univariate polynomial over a commutative ring C.  Used with the
// variable λ (LambdaPolynomial) and for the minimal polynomials of number
// fields.  C must be default-constructible to zero.
template <class C>
class Poly {
public:
    Poly() = default;
    Poly(const C& c) {  // NOLINT: implicit constant embedding
        if (!is_zero(c)) c_.push_back(c);
    }
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const C& c, std::size_t deg) {
        std::vector<C> v(deg + 1, zero_like(c));
        v[deg] = c;
        return Poly(std::move(v));
    }
    // the variable itself, with coefficient one compatible with `sample`
    static Poly variable(const C& sample = C()) {
        return Poly(std::vector<C>{zero_like(sample), one_like(sample)});
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<C>& coeffs() const { return c_; }

    C coeff(std::size_t i) const {
        if (i < c_.size()) return c_[i];
        return c_.empty() ? C() : zero_like(c_[0]);
    }
    C lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    C eval(const C& x) const {
        if (c_.empty()) return zero_like(x);
        C acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<C> d;
        d.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * C(Rational(static_cast<long>(i))));
        return Poly(std::move(d));
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_like(o.c_[0]));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_like(o.c_[0]));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const Poly& a, const C& s) {
        Poly r = a;
        for (auto& x : r.c_) x = x * s;
        r.trim();
        return r;
    }
    friend Poly operator*(const C& s, const Poly& a) { return a * s; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend bool is_zero(const Poly& p) { return p.c_.empty(); }
    friend Poly zero_like(const Poly&) { return Poly(); }
    friend Poly one_like(const Poly& p) {
        return Poly(p.c_.empty() ? C(Rational(1)) : one_like(p.c_[0]));
    }
    friend int pivot_score(const Poly& p) { return p.degree(); }

    // exact division by a polynomial with invertible leading coefficient
    friend Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.zero()) throw std::domain_error("polynomial division is not exact");
        return q;
    }
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.zero()) throw std::domain_error("polynomial division by zero");
        Poly r = a;
        if (a.degree() < b.degree()) return {Poly(), r};
        std::vector<C> q(a.degree() - b.degree() + 1, zero_like(b.lead()));
        C inv_lead = exact_div(one_like(b.lead()), b.lead());
        while (!r.zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            C f = r.lead() * inv_lead;
            q[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] = r.c_[i + shift] - f * b.c_[i];
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<C> c_;
};

using RationalPoly = Poly<Rational>;

}  // namespace hqmf

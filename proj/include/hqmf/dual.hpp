#pragma once

#include "hqmf/rational.hpp"

namespace hqmf {

// a + b·ε with ε² = 0.  Used to carry a first-order formal perturbation
// through series computations.
template <class C>
struct Dual {
    C a{};
    C b{};

    Dual() = default;
    Dual(const C& re) : a(re), b(zero_like(re)) {}  // NOLINT
    Dual(const C& re, const C& eps) : a(re), b(eps) {}

    friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
    friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
    friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }

    friend bool is_zero(const Dual& x) { return is_zero(x.a) && is_zero(x.b); }
    friend Dual zero_like(const Dual& x) { return Dual(zero_like(x.a)); }
    friend Dual one_like(const Dual& x) { return Dual(one_like(x.a)); }
    // requires an invertible real part
    friend Dual exact_div(const Dual& x, const Dual& y) {
        C inv = exact_div(one_like(y.a), y.a);
        C q = x.a * inv;
        return {q, (x.b - q * y.b) * inv};
    }
    friend int pivot_score(const Dual& x) { return is_zero(x.a) ? 1 : 0; }
};

using DualRational = Dual<Rational>;

}  // namespace hqmf

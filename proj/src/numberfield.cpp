#include "hqmf/numberfield.hpp"

#include <stdexcept>

namespace hqmf {

namespace {

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    if (n == 0) return out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

bool has_rational_root(const std::vector<Rational>& p) {
    // clear denominators, then test ±a/b with a | c0, b | lead
    Integer l = 1;
    for (const auto& c : p) l = lcm(l, Integer(c.get_den()));
    std::vector<Integer> z;
    for (const auto& c : p) z.push_back(Integer(c * l));
    if (z.front() == 0) return true;
    for (const auto& a : divisors(z.front())) {
        for (const auto& b : divisors(z.back())) {
            for (int s : {1, -1}) {
                Rational r(s * a, b);
                r.canonicalize();
                Rational v = 0;
                for (std::size_t i = p.size(); i-- > 0;) v = v * r + p[i];
                if (v == 0) return true;
            }
        }
    }
    return false;
}

}  // namespace

FieldPtr make_field(std::vector<Rational> minpoly, std::string label) {
    if (minpoly.size() < 2) throw std::invalid_argument("minimal polynomial must have degree >= 1");
    if (minpoly.back() != 1) throw std::invalid_argument("minimal polynomial must be monic");
    if (minpoly.size() - 1 <= 3 && minpoly.size() - 1 >= 2 && has_rational_root(minpoly))
        throw std::invalid_argument("minimal polynomial has a rational root");
    return std::make_shared<const NumberFieldSpec>(NumberFieldSpec{std::move(minpoly), std::move(label)});
}

FieldPtr xi_field() {
    static const FieldPtr f = make_field({1, 0, -1, 1}, "xi-field");
    return f;
}

FieldPtr eta_field() {
    static const FieldPtr f = make_field({-1, -2, 1, 1}, "eta-field");
    return f;
}

NumberFieldElement::NumberFieldElement(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

NumberFieldElement::NumberFieldElement(FieldPtr f, const Rational& c) : f_(std::move(f)) {
    if (c != 0) c_.push_back(c);
}

NumberFieldElement::NumberFieldElement(FieldPtr f, std::vector<Rational> coords) : f_(std::move(f)) {
    if (!f_ && coords.size() > 1) {
        for (std::size_t i = 1; i < coords.size(); ++i)
            if (coords[i] != 0) throw std::invalid_argument("non-constant element needs a field");
    }
    reduce_from(std::move(coords));
}

NumberFieldElement NumberFieldElement::generator(FieldPtr f) {
    return NumberFieldElement(std::move(f), std::vector<Rational>{0, 1});
}

std::vector<Rational> NumberFieldElement::coords() const {
    std::size_t d = f_ ? static_cast<std::size_t>(f_->degree()) : 1;
    std::vector<Rational> out(d, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    return out;
}

Rational NumberFieldElement::coord(int i) const {
    return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0);
}

bool NumberFieldElement::is_zero() const { return c_.empty(); }
bool NumberFieldElement::is_rational() const { return c_.size() <= 1; }

void NumberFieldElement::reduce_from(std::vector<Rational> full) {
    if (f_) {
        const auto& m = f_->minpoly;
        int d = f_->degree();
        for (int k = static_cast<int>(full.size()) - 1; k >= d; --k) {
            if (full[k] == 0) continue;
            Rational c = full[k];
            for (int i = 0; i <= d; ++i) full[k - d + i] -= c * m[i];
        }
        if (static_cast<int>(full.size()) > d) full.resize(d);
    }
    while (!full.empty() && full.back() == 0) full.pop_back();
    c_ = std::move(full);
}

FieldPtr NumberFieldElement::common(const NumberFieldElement& a, const NumberFieldElement& b) {
    if (a.f_ && b.f_ && a.f_ != b.f_ && a.f_->minpoly != b.f_->minpoly)
        throw std::invalid_argument("number field mismatch: " + a.f_->label + " vs " + b.f_->label);
    return a.f_ ? a.f_ : b.f_;
}

NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
    NumberFieldElement r;
    r.f_ = NumberFieldElement::common(a, b);
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    r.reduce_from(std::move(v));
    return r;
}

NumberFieldElement operator-(const NumberFieldElement& a) {
    NumberFieldElement r = a;
    for (auto& c : r.c_) c = -c;
    return r;
}

NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) { return a + (-b); }

NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
    NumberFieldElement r;
    r.f_ = NumberFieldElement::common(a, b);
    if (a.c_.empty() || b.c_.empty()) return r;
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    r.reduce_from(std::move(v));
    return r;
}

NumberFieldElement NumberFieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero number field element");
    if (!f_ || c_.size() == 1) return NumberFieldElement(f_, Rational(1 / c_[0]));
    // solve (multiplication by *this) y = 1 by Gauss-Jordan over ℚ
    int d = f_->degree();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    NumberFieldElement basis(f_, Rational(1));
    NumberFieldElement gen = generator(f_);
    for (int col = 0; col < d; ++col) {
        auto img = (*this * basis).coords();
        for (int row = 0; row < d; ++row) m[row][col] = img[row];
        basis = basis * gen;
    }
    m[0][d] = 1;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) throw std::domain_error("singular multiplication matrix; minimal polynomial reducible?");
        std::swap(m[piv], m[col]);
        Rational inv = 1 / m[col][col];
        for (int k = col; k <= d; ++k) m[col][k] *= inv;
        for (int row = 0; row < d; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational f = m[row][col];
            for (int k = col; k <= d; ++k) m[row][k] -= f * m[col][k];
        }
    }
    std::vector<Rational> y(d);
    for (int i = 0; i < d; ++i) y[i] = m[i][d];
    return NumberFieldElement(f_, std::move(y));
}

NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) {
    NumberFieldElement::common(a, b);
    return a * b.inverse();
}

NumberFieldElement NumberFieldElement::pow(long e) const {
    NumberFieldElement base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    NumberFieldElement r(f_, Rational(1));
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    NumberFieldElement::common(a, b);
    return a.c_ == b.c_;
}

std::string NumberFieldElement::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rational c = c_[i];
        std::string sign = c < 0 ? "-" : "+";
        Rational a = abs(c);
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string body;
        if (i == 0) body = hqmf::to_string(a);
        else if (a == 1) body = mono;
        else body = hqmf::to_string(a) + "*" + mono;
        if (s.empty()) s = (c < 0 ? "-" : "") + body;
        else s += " " + sign + " " + body;
    }
    return s;
}

}  // namespace hqmf

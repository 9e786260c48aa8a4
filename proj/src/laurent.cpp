#include "hqmf/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace hqmf {

LaurentBivariate::LaurentBivariate(const Rational& c) {
    if (c != 0) t_[{0, 0}] = c;
}

LaurentBivariate LaurentBivariate::monomial(const Rational& c, long eq, long el) {
    LaurentBivariate p;
    if (c != 0) p.t_[{eq, el}] = c;
    return p;
}

Rational LaurentBivariate::coeff(long eq, long el) const {
    auto it = t_.find({eq, el});
    return it == t_.end() ? Rational(0) : it->second;
}

void LaurentBivariate::add(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

LaurentBivariate& LaurentBivariate::operator+=(const LaurentBivariate& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
}

LaurentBivariate& LaurentBivariate::operator-=(const LaurentBivariate& o) {
    for (const auto& [k, c] : o.t_) add(k, Rational(-c));
    return *this;
}

LaurentBivariate operator-(const LaurentBivariate& a) {
    LaurentBivariate r = a;
    for (auto& kv : r.t_) kv.second = -kv.second;
    return r;
}

LaurentBivariate operator*(const LaurentBivariate& a, const LaurentBivariate& b) {
    LaurentBivariate r;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_) r.add({ka.first + kb.first, ka.second + kb.second}, Rational(ca * cb));
    return r;
}

LaurentBivariate LaurentBivariate::pow(long e) const {
    if (e < 0) {
        if (t_.size() != 1) throw std::domain_error("negative power of a non-monomial Laurent polynomial");
        const auto& [k, c] = *t_.begin();
        LaurentBivariate m = monomial(Rational(1 / c), -k.first, -k.second);
        return m.pow(-e);
    }
    LaurentBivariate r(Rational(1)), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

LaurentBivariate LaurentBivariate::substitute_linear(long qa, long qb, long la, long lb) const {
    LaurentBivariate r;
    for (const auto& [k, c] : t_) r.add({qa * k.first + qb * k.second, la * k.first + lb * k.second}, c);
    return r;
}

LaurentBivariate LaurentBivariate::lambda_shift(long k) const { return substitute_linear(1, k, 0, 1); }

// q^a q^{λb} -> q^{-a} q^{(λ+1)b} = q^{b-a} Λ^b
LaurentBivariate LaurentBivariate::dual_substitute() const { return substitute_linear(-1, 1, 0, 1); }

QSeries LaurentBivariate::at_lambda(long lambda) const {
    std::map<Exp, Rational> m;
    for (const auto& [k, c] : t_) {
        Exp e = kDenom * (k.first + lambda * k.second);
        m[e] += c;
    }
    return QSeries::from_terms(m, kExact);
}

std::string LaurentBivariate::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        os << (first ? "" : " + ") << "(" << hqmf::to_string(c) << ")";
        if (k.first) os << "*q^" << k.first;
        if (k.second) os << "*L^" << k.second;
        first = false;
    }
    return os.str();
}

// Exact division: multiply through by monomials so both operands are
// ordinary polynomials, then run multivariate division in lex order.
LaurentBivariate exact_div(const LaurentBivariate& a, const LaurentBivariate& b) {
    if (b.is_zero()) throw std::domain_error("Laurent division by zero");
    if (a.is_zero()) return a;
    auto lead = [](const LaurentBivariate& p) { return *p.t_.rbegin(); };
    LaurentBivariate r = a, quot;
    auto [kb, cb] = lead(b);
    auto mins = [](const LaurentBivariate& p) {
        long mq = p.t_.begin()->first.first, ml = p.t_.begin()->first.second;
        for (const auto& [k, c] : p.t_) {
            mq = std::min(mq, k.first);
            ml = std::min(ml, k.second);
        }
        return std::make_pair(mq, ml);
    };
    // in an exact division the lowest exponents of the quotient are forced
    auto [aq, al] = mins(a);
    auto [bq, bl] = mins(b);
    long lo_q = aq - bq, lo_l = al - bl;
    while (!r.is_zero()) {
        auto [kr, cr] = lead(r);
        long mq = kr.first - kb.first, ml = kr.second - kb.second;
        if (mq < lo_q || ml < lo_l) throw std::domain_error("Laurent polynomial division is not exact");
        LaurentBivariate m = LaurentBivariate::monomial(Rational(cr / cb), mq, ml);
        quot += m;
        r -= m * b;
    }
    return quot;
}

}  // namespace hqmf

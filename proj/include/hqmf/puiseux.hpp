#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hqmf/rational.hpp"

namespace hqmf {

namespace detail {
template <class C>
bool coeff_zero(const C& c) {
    using hqmf::is_zero;
    return is_zero(c);
}
}  // namespace detail

using Exp = std::int64_t;

// Exponents are integers k standing for q^{k/kDenom}.
inline constexpr Exp kDenom = 8;
// Truncation order of an exact (finite) series.
inline constexpr Exp kExact = Exp(1) << 40;

// truncation-order arithmetic: an exact order stays exact
inline Exp sat_add(Exp a, Exp b) {
    if (a >= kExact) return kExact;
    Exp r = a + b;
    return r > kExact ? kExact : r;
}

// Truncated series in q^{1/8}: sum of c_k q^{k/8} for k < trunc, exact
// modulo q^{trunc/8}.  Coefficients are stored densely from the lowest
// stored exponent.
template <class C>
class PuiseuxSeries {
public:
    using Coeff = C;

    explicit PuiseuxSeries(Exp trunc = kExact) : trunc_(trunc) {}

    static PuiseuxSeries constant(const C& c, Exp trunc = kExact) { return monomial(c, 0, trunc); }
    static PuiseuxSeries monomial(const C& c, Exp k, Exp trunc = kExact) {
        PuiseuxSeries s(trunc);
        if (k < trunc && !detail::coeff_zero(c)) {
            s.start_ = k;
            s.c_.push_back(c);
        }
        return s;
    }
    static PuiseuxSeries from_terms(const std::map<Exp, C>& terms, Exp trunc = kExact) {
        PuiseuxSeries s(trunc);
        for (const auto& [k, c] : terms) s.add_term(k, c);
        s.normalize();
        return s;
    }

    Exp trunc() const { return trunc_; }
    bool exact() const { return trunc_ >= kExact; }
    bool is_zero() const { return c_.empty(); }
    Exp valuation() const { return c_.empty() ? trunc_ : start_; }
    // one past the highest stored exponent
    Exp end() const { return c_.empty() ? trunc_ : start_ + static_cast<Exp>(c_.size()); }

    C coeff(Exp k) const {
        if (c_.empty() || k < start_ || k >= end()) return C();
        return c_[static_cast<std::size_t>(k - start_)];
    }
    C lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero series");
        return c_.front();
    }

    // nonzero terms in increasing exponent order
    std::vector<std::pair<Exp, C>> terms() const {
        std::vector<std::pair<Exp, C>> out;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!detail::coeff_zero(c_[i])) out.emplace_back(start_ + static_cast<Exp>(i), c_[i]);
        return out;
    }
    template <class F>
    void for_each_term(F&& f) const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!detail::coeff_zero(c_[i])) f(start_ + static_cast<Exp>(i), c_[i]);
    }

    PuiseuxSeries truncated(Exp n) const {
        PuiseuxSeries r = *this;
        r.trunc_ = std::min(trunc_, n);
        if (!r.c_.empty() && r.end() > r.trunc_) {
            if (r.trunc_ <= r.start_) r.c_.clear();
            else r.c_.resize(static_cast<std::size_t>(r.trunc_ - r.start_));
        }
        r.normalize();
        return r;
    }

    // multiply by q^{k/8}
    PuiseuxSeries shifted(Exp k) const {
        PuiseuxSeries r = *this;
        r.start_ += k;
        r.trunc_ = exact() ? kExact : trunc_ + k;
        return r;
    }

    // q -> q^e for a positive integer e
    PuiseuxSeries power_substituted(Exp e) const {
        if (e <= 0) throw std::invalid_argument("power substitution needs a positive exponent");
        PuiseuxSeries r(exact() ? kExact : trunc_ * e);
        for_each_term([&](Exp k, const C& c) { r.add_term(k * e, c); });
        r.normalize();
        return r;
    }

    template <class D, class F>
    PuiseuxSeries<D> mapped(F&& f) const {
        std::map<Exp, D> t;
        for_each_term([&](Exp k, const C& c) { t.emplace(k, f(c)); });
        return PuiseuxSeries<D>::from_terms(t, trunc_);
    }

    PuiseuxSeries& operator+=(const PuiseuxSeries& o) { return combine(o, false); }
    PuiseuxSeries& operator-=(const PuiseuxSeries& o) { return combine(o, true); }
    friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
    friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
    friend PuiseuxSeries operator-(const PuiseuxSeries& a) {
        PuiseuxSeries r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const C& s) {
        PuiseuxSeries r = a;
        for (auto& c : r.c_) c = c * s;
        r.normalize();
        return r;
    }
    friend PuiseuxSeries operator*(const C& s, const PuiseuxSeries& a) { return a * s; }

    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
        Exp n = std::min(sat_add(a.trunc_, b.valuation()), sat_add(b.trunc_, a.valuation()));
        PuiseuxSeries r(n);
        if (a.c_.empty() || b.c_.empty()) return r;
        auto ta = a.terms();
        auto tb = b.terms();
        Exp lo = a.start_ + b.start_;
        Exp hi = std::min(n, a.end() + b.end() - 1);
        if (hi <= lo) return r;
        r.start_ = lo;
        r.c_.assign(static_cast<std::size_t>(hi - lo), C());
        for (const auto& [ka, ca] : ta) {
            for (const auto& [kb, cb] : tb) {
                Exp k = ka + kb;
                if (k >= hi) break;
                auto& slot = r.c_[static_cast<std::size_t>(k - lo)];
                slot = slot + ca * cb;
            }
        }
        r.normalize();
        return r;
    }
    PuiseuxSeries& operator*=(const PuiseuxSeries& o) { return *this = *this * o; }

    // Multiplicative inverse.  A series with valuation v known mod q^{N/8}
    // has an inverse known mod q^{(N-2v)/8}.
    PuiseuxSeries inverse() const {
        if (c_.empty()) throw std::domain_error("inverse of a zero series");
        if (exact() && c_.size() > 1)
            throw std::domain_error("inverse of an exact non-monomial series needs a truncation order");
        Exp v = start_;
        C inv0 = exact_div(one_like(c_[0]), c_[0]);
        if (exact()) return monomial(inv0, -v, kExact);
        Exp rel = trunc_ - v;
        PuiseuxSeries r(trunc_ - 2 * v);
        r.start_ = -v;
        r.c_.assign(static_cast<std::size_t>(std::max<Exp>(rel, 0)), C());
        if (rel <= 0) {
            r.c_.clear();
            return r;
        }
        std::vector<std::pair<Exp, C>> u;  // nonzero terms of the unit part, index >= 1
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!detail::coeff_zero(c_[i])) u.emplace_back(static_cast<Exp>(i), c_[i]);
        r.c_[0] = inv0;
        for (Exp n = 1; n < rel; ++n) {
            C s = C();
            for (const auto& [k, ck] : u) {
                if (k > n) break;
                const C& b = r.c_[static_cast<std::size_t>(n - k)];
                if (!detail::coeff_zero(b)) s = s + ck * b;
            }
            r.c_[static_cast<std::size_t>(n)] = -(s * inv0);
        }
        r.normalize();
        return r;
    }

    friend PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a * b.inverse(); }
    // s / (1 - c q^{a/8}) for a > 0, keeping the truncation order
    PuiseuxSeries divided_by_binomial(Exp a, const C& c) const {
        if (a <= 0) throw std::invalid_argument("binomial division needs a positive exponent");
        if (c_.empty()) return *this;
        if (exact()) throw std::domain_error("binomial division of an exact series needs a truncation order");
        PuiseuxSeries r = *this;
        r.c_.resize(static_cast<std::size_t>(trunc_ - start_), C());
        for (std::size_t k = static_cast<std::size_t>(a); k < r.c_.size(); ++k) {
            const C& prev = r.c_[k - static_cast<std::size_t>(a)];
            if (!detail::coeff_zero(prev)) r.c_[k] = r.c_[k] + c * prev;
        }
        r.normalize();
        return r;
    }
    // s * (1 - c q^{a/8})
    PuiseuxSeries multiplied_by_binomial(Exp a, const C& c) const {
        PuiseuxSeries t = *this;
        t -= shifted(a) * c;
        return t;
    }


    // strict equality: same truncation order and same terms
    friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
        if (a.trunc_ != b.trunc_ || a.valuation() != b.valuation() || a.end() != b.end()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const PuiseuxSeries& a, const PuiseuxSeries& b) { return !(a == b); }

    friend bool is_zero(const PuiseuxSeries& s) { return s.is_zero(); }
    friend PuiseuxSeries zero_like(const PuiseuxSeries& s) { return PuiseuxSeries(s.trunc_); }
    friend PuiseuxSeries one_like(const PuiseuxSeries& s) {
        return constant(s.c_.empty() ? one_like(C()) : one_like(s.c_[0]), s.trunc_);
    }
    friend PuiseuxSeries exact_div(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a / b; }
    // prefer pivots of low valuation; they cost the least precision
    friend int pivot_score(const PuiseuxSeries& s) {
        return s.c_.empty() ? 1 << 30 : static_cast<int>(s.start_);
    }

    std::string to_string(const std::function<std::string(const C&)>& fmt, int max_terms = 12) const {
        std::ostringstream os;
        int n = 0;
        bool any = false;
        for_each_term([&](Exp k, const C& c) {
            if (n++ >= max_terms) return;
            if (any) os << " + ";
            any = true;
            os << "(" << fmt(c) << ")";
            if (k != 0) os << "*q^(" << to_string_exp(k) << ")";
        });
        if (!any) os << "0";
        if (!exact()) os << " + O(q^(" << to_string_exp(trunc_) << "))";
        return os.str();
    }

    static std::string to_string_exp(Exp k) {
        Rational r(static_cast<long>(k), static_cast<long>(kDenom));
        r.canonicalize();
        return hqmf::to_string(r);
    }

private:
    void add_term(Exp k, const C& c) {
        if (k >= trunc_ || detail::coeff_zero(c)) return;
        if (c_.empty()) {
            start_ = k;
            c_.push_back(c);
            return;
        }
        if (k < start_) {
            c_.insert(c_.begin(), static_cast<std::size_t>(start_ - k), C());
            start_ = k;
        } else if (k >= end()) {
            c_.resize(static_cast<std::size_t>(k - start_ + 1), C());
        }
        auto& slot = c_[static_cast<std::size_t>(k - start_)];
        slot = slot + c;
    }

    PuiseuxSeries& combine(const PuiseuxSeries& o, bool subtract) {
        Exp n = std::min(trunc_, o.trunc_);
        *this = truncated(n);
        o.for_each_term([&](Exp k, const C& c) {
            if (k < n) add_term(k, subtract ? C(-c) : c);
        });
        normalize();
        return *this;
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && detail::coeff_zero(c_[lead])) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            start_ = 0;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            start_ += static_cast<Exp>(lead);
        }
        while (!c_.empty() && detail::coeff_zero(c_.back())) c_.pop_back();
    }

    Exp start_ = 0;
    std::vector<C> c_;
    Exp trunc_;
};

using QSeries = PuiseuxSeries<Rational>;

}  // namespace hqmf

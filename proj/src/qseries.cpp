#include "hqmf/qseries.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hqmf {

void validate_key(const SeriesFamilyKey& key) {
    if (key.j < 0 || key.j > 5) throw std::invalid_argument("series index j must be in 0..5");
}

std::string to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

Sign parse_sign(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw std::invalid_argument("sign must be plus or minus, got " + s);
}

// ---------------------------------------------------------------- Eisenstein

EisensteinCache::EisensteinCache(Exp order) : order_(order), zero_(order) {
    if (order < 1) throw std::invalid_argument("Eisenstein order must be positive");
    const long nmax = static_cast<long>((order - 1) / kDenom);  // largest integer power below the order
    std::vector<Rational> sigma0(nmax + 1, Rational(0)), sigma1(nmax + 1, Rational(0));
    for (long s = 1; s <= nmax; ++s)
        for (long n = s; n <= nmax; n += s) {
            sigma0[n] += 1;
            sigma1[n] += s;
        }
    std::map<Exp, Rational> c1{{0, 1}}, c2{{0, 1}};
    for (long n = 1; n <= nmax; ++n) {
        c1[kDenom * n] = -4 * sigma0[n];
        c2[kDenom * n] = -24 * sigma1[n];
    }
    cal1_ = QSeries::from_terms(c1, order);
    cal2_ = QSeries::from_terms(c2, order);

    // E_l^{(0)} = (1 - ℰ_l)/c
    e1_.push_back((QSeries::constant(1, order) - cal1_) * Rational(make_rational(1, 4)));
    e2_.push_back((QSeries::constant(1, order) - cal2_) * Rational(make_rational(1, 24)));
    for (long m = 1; m <= nmax; ++m) {
        std::map<Exp, Rational> g1, g2;
        for (long k = 1; m * k <= nmax; ++k) {
            g1[kDenom * m * k] = 1;
            g2[kDenom * m * k] = k;
        }
        e1_.push_back(e1_.back() - QSeries::from_terms(g1, order));
        e2_.push_back(e2_.back() - QSeries::from_terms(g2, order));
    }
}

const QSeries& EisensteinCache::E(int l, long m) const {
    if (m < 0) throw std::invalid_argument("E_l^{(m)} needs m >= 0");
    const auto& v = (l == 1) ? e1_ : (l == 2 ? e2_ : throw std::invalid_argument("E_l needs l in {1,2}"));
    if (m < static_cast<long>(v.size())) return v[static_cast<std::size_t>(m)];
    return zero_;
}

EisensteinCache eisenstein(Exp order) { return EisensteinCache(order); }

std::shared_ptr<const EisensteinCache> eisenstein_shared(Exp order) {
    static std::mutex mu;
    static std::map<Exp, std::shared_ptr<const EisensteinCache>> pool;
    std::lock_guard<std::mutex> lock(mu);
    auto it = pool.lower_bound(order);
    if (it != pool.end()) return it->second;
    // round up so nearby requests share one cache
    Exp rounded = ((order + 63) / 64) * 64;
    auto made = std::make_shared<const EisensteinCache>(rounded);
    pool.emplace(rounded, made);
    return made;
}

EisensteinSource<Rational> inverted_source(std::shared_ptr<const EisensteinCache> ec) {
    return {[ec](int l, long m) {
                Exp n = ec->order();
                if (l == 1) return QSeries::constant(Rational(make_rational(1, 2) + m), n) - ec->E(1, m);
                return QSeries::constant(make_rational(1, 12), n) + ec->E(2, m) - ec->E(2, 0) * Rational(2);
            },
            [ec]() { return -ec->cal2(); }};
}

EisensteinSource<DualRational> perturbed_source(std::shared_ptr<const EisensteinCache> ec) {
    auto conv = [](const Rational& r) { return DualRational(r); };
    // every E_2^{(m)} contains (1 - ℰ2)/24, so it moves by -εq/24
    return {[ec, conv](int l, long m) {
                auto e = ec->E(l, m).template mapped<DualRational>(conv);
                if (l == 2)
                    e -= PuiseuxSeries<DualRational>::monomial(DualRational(0, make_rational(1, 24)), kDenom,
                                                               ec->order());
                return e;
            },
            [ec, conv]() {
                auto c = ec->cal2().template mapped<DualRational>(conv);
                return c + PuiseuxSeries<DualRational>::monomial(DualRational(0, 1), kDenom, ec->order());
            }};
}

QSeries p_poly(long lambda, int j, long m, bool big, Exp order) {
    auto ec = eisenstein_shared(order);
    EisensteinSource<Rational> src{[ec](int l, long mm) { return ec->E(l, mm); }, [ec]() { return ec->cal2(); }};
    return p_poly_generic<Rational>(j, m, Rational(lambda), big, src, order);
}

PuiseuxSeries<RationalPoly> p_poly_symbolic(int j, long m, bool big, Exp order) {
    auto src = lift_source<RationalPoly>(eisenstein_shared(order));
    return p_poly_generic<RationalPoly>(j, m, RationalPoly::variable(), big, src, order);
}

QSeries f1_series(long m, Exp order) {
    if (m < 1) throw std::invalid_argument("f_{1,m} needs m >= 1");
    std::map<Exp, Rational> t;
    for (long base : {m, 2 * m - 1, 2 * m})
        for (Exp k = kDenom * base; k < order; k += kDenom * base) t[k] += 2;
    return QSeries::from_terms(t, order);
}

// ---------------------------------------------------------------- H series

Exp summand_exponent(long lambda, int j, Sign s, long m) {
    const bool plus = s == Sign::plus;
    if (j == 3 || j == 5) {
        Exp base = plus ? (2 * m + 1) * (m + 1) : m * (m + 2);
        return kDenom * base + lambda * (kDenom * m + kDenom / 2);
    }
    Exp base = plus ? m * (2 * m + 1) : m * (m + 1);
    return kDenom * (base + lambda * m);
}

namespace {

struct Range {
    long last_m;  // inclusive, guard terms included
    Exp emin;
};

Range summation_range(const SeriesFamilyKey& key, Exp order) {
    Exp prev = summand_exponent(key.lambda, key.j, key.sign, 0);
    Exp emin = std::min<Exp>(prev, 0);
    long m = 1;
    for (;; ++m) {
        Exp e = summand_exponent(key.lambda, key.j, key.sign, m);
        emin = std::min(emin, e);
        if (e >= order && e > prev) break;
        prev = e;
    }
    return {m + 2, emin};
}

// update the Pochhammer reciprocal from index m-1 to m
QSeries next_denominator(const QSeries& d, int j, long m) {
    QSeries r = d;
    switch (j) {
        case 0:
        case 1:
        case 2:
            r = r.divided_by_binomial(kDenom * m, 1).divided_by_binomial(kDenom * m, 1);
            return r.divided_by_binomial(kDenom * (2 * m - 1), 1).divided_by_binomial(kDenom * 2 * m, 1);
        case 4:
            r = r.divided_by_binomial(kDenom * m, -1).divided_by_binomial(kDenom * m, -1);
            return r.divided_by_binomial(kDenom * (2 * m - 1), 1).divided_by_binomial(kDenom * 2 * m, 1);
        default: {
            Rational c = (j == 3) ? 1 : -1;
            Exp half = kDenom * m + kDenom / 2;  // q^{m+1/2}
            r = r.divided_by_binomial(half, c).divided_by_binomial(half, c);
            return r.divided_by_binomial(kDenom * 2 * m, 1).divided_by_binomial(kDenom * (2 * m + 1), 1);
        }
    }
}

// q^{±1/8}/(1 ∓ q^{1/2})^2 prefactor for j = 3, 5 (minus branch rewritten as q^{7/8}/(1 ∓ q^{1/2})^2)
QSeries prefactor35(int j, Sign s, Exp order) {
    Rational c = (j == 3) ? 1 : -1;
    QSeries p = QSeries::constant(1, order).divided_by_binomial(kDenom / 2, c).divided_by_binomial(kDenom / 2, c);
    return p.shifted(s == Sign::plus ? 1 : 7).truncated(order);
}

}  // namespace

Exp required_eisenstein_order(const SeriesFamilyKey& key, Exp order) {
    return order - summation_range(key, order).emin;
}

template <class C>
PuiseuxSeries<C> h_series_generic(const SeriesFamilyKey& key, Exp order, const EisensteinSource<C>& src) {
    validate_key(key);
    using S = PuiseuxSeries<C>;
    const int j = key.j;
    const bool plus = key.sign == Sign::plus;
    Range range = summation_range(key, order);
    const Exp nrel = order - range.emin;

    QSeries d = QSeries::constant(1, nrel);
    if (j == 3 || j == 5) d = d.divided_by_binomial(kDenom, 1);  // (q;q)_1
    S total(order);
    for (long m = 0; m <= range.last_m; ++m) {
        if (m > 0) d = next_denominator(d, j, m);
        Exp e = summand_exponent(key.lambda, j, key.sign, m);
        if (e >= order) continue;
        S term = d.template mapped<C>([](const Rational& r) { return C(r); });
        if (j <= 2) term = term * p_poly_generic<C>(j, m, C(Rational(key.lambda)), !plus, src, nrel);
        total += term.shifted(e).truncated(order);
    }
    if (j == 3 || j == 5) {
        QSeries pre = prefactor35(j, key.sign, nrel);
        total = total * pre.template mapped<C>([](const Rational& r) { return C(r); });
    }
    if ((j <= 3) && parity_sign(key.lambda) < 0) total = -total;
    return total.truncated(order);
}

template PuiseuxSeries<Rational> h_series_generic<Rational>(const SeriesFamilyKey&, Exp,
                                                            const EisensteinSource<Rational>&);
template PuiseuxSeries<DualRational> h_series_generic<DualRational>(const SeriesFamilyKey&, Exp,
                                                                    const EisensteinSource<DualRational>&);

QSeries h_series(const SeriesFamilyKey& key, Exp order) {
    validate_key(key);
    auto ec = eisenstein_shared(required_eisenstein_order(key, order));
    EisensteinSource<Rational> src{[ec](int l, long m) { return ec->E(l, m); }, [ec]() { return ec->cal2(); }};
    return h_series_generic<Rational>(key, order, src);
}

QSeries h_plus(long lambda, int j, Exp order) { return h_series({lambda, j, Sign::plus}, order); }
QSeries h_minus(long lambda, int j, Exp order) { return h_series({lambda, j, Sign::minus}, order); }

PuiseuxSeries<DualRational> h_series_perturbed(const SeriesFamilyKey& key, Exp order) {
    validate_key(key);
    auto ec = eisenstein_shared(required_eisenstein_order(key, order));
    return h_series_generic<DualRational>(key, order, perturbed_source(ec));
}

QSeries h_wrapped(long lambda, int j, Branch branch, Exp order) {
    if (branch == Branch::inside) return h_plus(lambda, j, order);
    QSeries h = h_minus(-lambda, j, order);
    return (kDelta.at(static_cast<std::size_t>(j)) % 2) ? QSeries(-h) : h;
}

// ---------------------------------------------------------------- rational functions

RatFunc RatFunc::inverted_variable() const {
    return {num.substitute_linear(-1, 0, 0, 1), den.substitute_linear(-1, 0, 0, 1)};
}

namespace {

QSeries laurent_to_series(const LaurentPoly& p) {
    std::map<Exp, Rational> t;
    for (const auto& [k, c] : p.terms()) t[k.first] += c;
    return QSeries::from_terms(t, kExact);
}

LaurentPoly binom(Exp a, const Rational& c) {  // 1 - c x^a
    return LaurentPoly(Rational(1)) - LaurentPoly::monomial(c, a, 0);
}

}  // namespace

QSeries RatFunc::expand(Exp order) const {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    QSeries n = laurent_to_series(num), d = laurent_to_series(den);
    Exp v = d.valuation();
    n = n.shifted(-v);
    d = d.shifted(-v);
    if (n.is_zero()) return QSeries(order);
    Exp need = order - n.valuation();
    if (need <= 0) return QSeries(order);
    return (n * d.truncated(need).inverse()).truncated(order);
}

RatFunc summand_ratfunc(const SeriesFamilyKey& key, long m) {
    validate_key(key);
    const int j = key.j;
    const bool plus = key.sign == Sign::plus;
    RatFunc r{LaurentPoly::monomial(1, summand_exponent(key.lambda, j, key.sign, m), 0), LaurentPoly(Rational(1))};
    auto mul_den = [&](Exp a, const Rational& c) { r.den = r.den * binom(a, c); };
    if (j == 3 || j == 5) {
        Rational c = (j == 3) ? 1 : -1;
        for (long i = 0; i < m; ++i) {
            mul_den(kDenom * i + 12, c);
            mul_den(kDenom * i + 12, c);
        }
        for (long i = 1; i <= 2 * m + 1; ++i) mul_den(kDenom * i, 1);
        // q^{1/8}/(1 - c q^{1/2})^2 or q^{-1/8}/(1 - c q^{-1/2})^2
        Exp s = plus ? 1 : -1;
        r.num = r.num * LaurentPoly::monomial(1, s, 0);
        r.den = r.den * binom(4 * s, c) * binom(4 * s, c);
    } else {
        Rational c = (j == 4) ? -1 : 1;
        for (long i = 1; i <= m; ++i) {
            mul_den(kDenom * i, c);
            mul_den(kDenom * i, c);
        }
        for (long i = 1; i <= 2 * m; ++i) mul_den(kDenom * i, 1);
    }
    if (j <= 3 && parity_sign(key.lambda) < 0) r.num = -r.num;
    return r;
}

// ---------------------------------------------------------------- symmetry

SymmetryReport symmetry_check(long lambda, int j, Exp order) {
    if (j < 0 || j > 5) throw std::invalid_argument("series index j must be in 0..5");
    SymmetryReport rep;
    rep.lambda = lambda;
    rep.j = j;
    rep.order = order;
    const SeriesFamilyKey plus_key{lambda, j, Sign::plus}, minus_key{-lambda, j, Sign::minus};
    const Rational sgn = (kDelta[static_cast<std::size_t>(j)] % 2) ? -1 : 1;
    // the p/P relation carries (-1)^j, the summands carry the rest
    const Rational pj = (j <= 2 && j % 2) ? -1 : 1;
    const Rational summand_sgn = sgn * pj;
    Range range = summation_range(minus_key, order);
    const Exp nrel = order - range.emin + 2 * kDenom;
    auto ec = eisenstein_shared(nrel);
    auto inv = inverted_source(ec);

    bool opposite = true;
    QSeries total(order);
    for (long m = 0; m <= range.last_m; ++m) {
        RatFunc rp = summand_ratfunc(plus_key, m).inverted_variable();
        RatFunc rm = summand_ratfunc(minus_key, m);
        RatFunc rm_signed{rm.num * LaurentPoly(summand_sgn), rm.den};
        RatFunc rm_opposite{rm.num * LaurentPoly(Rational(-summand_sgn)), rm.den};
        if (!(rp == rm_signed)) {
            if (rep.summands_match) rep.first_bad_m = m;
            rep.summands_match = false;
        }
        if (!(rp == rm_opposite)) opposite = false;
        QSeries term = rp.expand(nrel);
        if (j <= 2) {
            QSeries ip = p_poly_generic<Rational>(j, m, Rational(lambda), false, inv, nrel);
            QSeries pm = p_poly(-lambda, j, m, true, nrel);
            QSeries diff = ip - pm * pj;
            if (!diff.is_zero()) {
                if (rep.p_relation_holds && rep.first_bad_m < 0) rep.first_bad_m = m;
                rep.p_relation_holds = false;
            }
            term = term * ip;
        }
        total += term.truncated(order);
    }
    QSeries hm = h_minus(-lambda, j, order);
    rep.residual = (total - hm * sgn).truncated(order);
    rep.pass = rep.summands_match && rep.p_relation_holds && rep.residual.is_zero();
    rep.holds_with_opposite_sign = opposite && rep.p_relation_holds && (total + hm * sgn).truncated(order).is_zero();
    return rep;
}

// ---------------------------------------------------------------- approximants

QSeries r_approximant(const SeriesFamilyKey& key, Exp order) {
    validate_key(key);
    const int j = key.j;
    const long lam = key.lambda;
    const bool plus = key.sign == Sign::plus;
    const Rational sign = parity_sign(lam);
    const Exp work = order + 8 * kDenom + std::max<Exp>(0, -kDenom * (lam + 3));
    if (j <= 2) {
        // p_{λ,j,0} + p_{λ,j,1} q^{λ+3}/((1-q)^4(1+q)), or P with q^{λ+2}
        Exp e = kDenom * (lam + (plus ? 3 : 2));
        LaurentPoly den = binom(kDenom, 1).pow(4) * binom(kDenom, -1);
        QSeries frac = RatFunc{LaurentPoly::monomial(1, e, 0), den}.expand(work);
        QSeries r = p_poly(lam, j, 0, !plus, work) + p_poly(lam, j, 1, !plus, work) * frac;
        return (r * sign).truncated(order);
    }
    if (j == 4) {
        Exp e = kDenom * (lam + (plus ? 3 : 2));
        LaurentPoly den = binom(kDenom, -1).pow(3) * binom(kDenom, 1).pow(2);
        return (QSeries::constant(1, order) + RatFunc{LaurentPoly::monomial(1, e, 0), den}.expand(work))
            .truncated(order);
    }
    // j = 3, 5: prefactor times q^{1+λ/2}/(1-q) (plus) or q^{λ/2}/(1-q) (minus)
    Rational c = (j == 3) ? 1 : -1;
    Exp s = plus ? 1 : -1;
    Exp e = (plus ? kDenom : 0) + lam * kDenom / 2;
    LaurentPoly num = LaurentPoly::monomial(1, e + s, 0);
    LaurentPoly den = binom(4 * s, c) * binom(4 * s, c) * binom(kDenom, 1);
    QSeries r = RatFunc{num, den}.expand(order);
    if (j == 3) r = r * sign;
    return r.truncated(order);
}

// ---------------------------------------------------------------- comparison with the GZ normalization

QSeries qpoch_inf(Exp a, const Rational& c, Exp order) {
    if (a <= 0) throw std::invalid_argument("qpoch_inf needs a positive first exponent");
    QSeries r = QSeries::constant(1, order);
    for (Exp e = a; e < order; e += kDenom) r = r.multiplied_by_binomial(e, c);
    return r.truncated(order);
}

namespace {

// the plain sums of the GZ series, built from directly expanded finite products
QSeries gz_sum(int j, Sign s, Exp order) {
    QSeries total(order);
    for (long m = 0;; ++m) {
        Exp e = summand_exponent(0, j, s, m);
        if (e >= order) break;
        QSeries den = QSeries::constant(1, kExact);
        auto times = [&](Exp a, const Rational& c) { den = den.multiplied_by_binomial(a, c); };
        if (j == 4) {
            for (long i = 1; i <= m; ++i) {
                times(kDenom * i, -1);
                times(kDenom * i, -1);
            }
            for (long i = 1; i <= 2 * m; ++i) times(kDenom * i, 1);
        } else {
            Rational c = (j == 3) ? 1 : -1;
            for (long i = 0; i < m; ++i) {
                times(12 + kDenom * i, c);
                times(12 + kDenom * i, c);
            }
            for (long i = 1; i <= 2 * m + 1; ++i) times(kDenom * i, 1);
        }
        total += den.truncated(order - e).inverse().shifted(e).truncated(order);
    }
    return total;
}

// q^{±1/8}/(1 - c q^{±1/2})^2 as printed
QSeries literal_prefactor(const Rational& c, Sign s, Exp order) {
    Exp sg = s == Sign::plus ? 1 : -1;
    LaurentPoly den = binom(4 * sg, c) * binom(4 * sg, c);
    return RatFunc{LaurentPoly::monomial(1, sg, 0), den}.expand(order);
}

}  // namespace

std::vector<ComparisonReport> gz_comparison(int j, Exp order) {
    if (j < 3 || j > 5) throw std::invalid_argument("gz_comparison needs j in {3,4,5}");
    const Exp work = order + 4 * kDenom;
    std::vector<ComparisonReport> out;
    const QSeries qq = qpoch_inf(kDenom, 1, work);  // (q;q)_inf
    const QSeries qq2 = qq * qq;
    for (Sign s : {Sign::plus, Sign::minus}) {
        ComparisonReport rep;
        rep.j = j;
        rep.sign = s;
        const QSeries sum = gz_sum(j, s, work);
        QSeries rhs;
        if (j == 4) {
            QSeries mq = qpoch_inf(kDenom, -1, work);  // (-q;q)_inf
            if (s == Sign::plus) {
                QSeries gz = (mq * mq / qq2) * sum;
                rhs = (qq2 / (mq * mq)) * gz;
            } else {
                QSeries m1 = mq * Rational(2);  // (-1;q)_inf
                QSeries gz = (qq2 / (m1 * m1)) * sum;
                rhs = ((m1 * m1) / qq2) * gz;
            }
        } else {
            Rational c = (j == 3) ? 1 : -1;
            QSeries pre = literal_prefactor(c, s, work);
            if (s == Sign::plus) {
                QSeries p32 = qpoch_inf(12, c, work);  // (c q^{3/2};q)_inf
                QSeries gz = (p32 * p32 / qq2) * sum;
                rhs = pre * (qq2 / (p32 * p32)) * gz;
            } else {
                // (c q^{-1/2};q)_inf = (1 - c q^{-1/2}) (c q^{1/2};q)_inf
                QSeries first = QSeries::from_terms({{0, Rational(1)}, {-4, Rational(-c)}}, kExact);
                QSeries ph = (first * qpoch_inf(4, c, work)).truncated(work);
                QSeries ph2 = (ph * ph).truncated(work);
                QSeries gz = (qq2 / ph2) * sum;
                rhs = pre * (ph2 / qq2) * gz;
            }
        }
        rep.residual = (h_series({0, j, s}, order) - rhs).truncated(order);
        rep.pass = rep.residual.is_zero() && rhs.trunc() >= order;
        out.push_back(rep);
    }
    return out;
}

}  // namespace hqmf

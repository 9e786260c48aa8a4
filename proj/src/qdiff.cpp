#include "hqmf/qdiff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hqmf {

namespace {

using LP = LaurentPoly;

LP qm(long a, long b = 0, long c = 1) { return LP::monomial(c, a, b); }
LP k(long c) { return LP(Rational(c)); }

LaurentMatrix build(const std::vector<std::vector<LP>>& rows) { return LaurentMatrix(rows); }

LaurentMatrix laurent_identity(std::size_t n) { return LaurentMatrix::identity(n, LP(), k(1)); }

std::string describe_mismatch(const LaurentMatrix& lhs, const LaurentMatrix& rhs) {
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (lhs(i, j) != rhs(i, j)) {
                std::ostringstream os;
                os << "entry (" << i + 1 << "," << j + 1 << "): lhs - rhs = " << (lhs(i, j) - rhs(i, j)).to_string();
                return os.str();
            }
    return "";
}

SymbolicCheck compare(const std::string& name, const LaurentMatrix& lhs, const LaurentMatrix& rhs) {
    SymbolicCheck c{name, false, describe_mismatch(lhs, rhs)};
    c.pass = c.detail.empty();
    return c;
}

SymbolicCheck compare(const std::string& name, const LP& lhs, const LP& rhs) {
    SymbolicCheck c{name, lhs == rhs, ""};
    if (!c.pass) c.detail = "lhs = " + lhs.to_string() + ", expected " + rhs.to_string();
    return c;
}

Exp min_trunc(const SeriesMatrix& m) {
    Exp t = kExact;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t = std::min(t, m(i, j).trunc());
    return t;
}

SeriesMatrix truncate_all(const SeriesMatrix& m, Exp order) {
    return m.map([order](const QSeries& s) { return s.truncated(order); });
}

// evaluate f at growing working orders until its result is valid to `order`
template <class F>
auto with_precision(Exp order, Exp margin, F&& f) {
    Exp work = order + margin;
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto r = f(work);
        Exp got = [&] {
            if constexpr (std::is_same_v<decltype(r), QSeries>)
                return r.trunc();
            else
                return min_trunc(r);
        }();
        if (got >= order) {
            if constexpr (std::is_same_v<decltype(r), QSeries>)
                return r.truncated(order);
            else
                return truncate_all(r, order);
        }
        work += (order - got) + 16;
    }
    throw std::runtime_error("could not reach the requested truncation order");
}

QSeries scalar_inverse(const QSeries& d) { return d.inverse(); }

}  // namespace

// ---------------------------------------------------------------- operators and matrices

RecurrenceOperator hqdiff_operator() {
    // y_{λ+6} + 2y_{λ+5} - (q + q^{λ+4}) y_{λ+4} - 2(q+1) y_{λ+3} - y_{λ+2} + 2q y_{λ+1} + q y_λ
    return {qm(1), qm(1, 0, 2), k(-1), qm(0, 0, -2) + qm(1, 0, -2), -(qm(1) + qm(4, 1)), k(2), k(1)};
}

LaurentMatrix companion_A() {
    std::vector<std::vector<LP>> r(6, std::vector<LP>(6, LP()));
    for (int i = 0; i < 5; ++i) r[i][i + 1] = k(1);
    r[5] = {qm(1, 0, -1), qm(1, 0, -2), k(1), k(2) + qm(1, 0, 2), qm(1) + qm(4, 1), k(-2)};
    return build(r);
}

RecurrenceOperator companion_operator() {
    LaurentMatrix a = companion_A();
    RecurrenceOperator op;
    for (int c = 0; c < 6; ++c) op[c] = -a(5, c);
    op[6] = k(1);
    return op;
}

LaurentMatrix companion_A_tilde() {
    std::vector<std::vector<LP>> r(6, std::vector<LP>(6, LP()));
    r[0] = {k(-2), qm(1), k(2) + qm(1, 0, 2), k(1) + qm(-2, 1), qm(1, 0, -2), qm(1, 0, -1)};
    for (int i = 1; i < 6; ++i) r[i][i - 1] = k(1);
    return build(r);
}

LaurentMatrix quad_Q() {
    return build({{k(-12), k(8), k(-4), k(2), LP(), LP()},
                  {k(8), k(-4), k(2), LP(), LP(), LP()},
                  {k(-4), k(2), LP(), LP(), LP(), k(2)},
                  {k(2), LP(), LP(), LP(), k(2), k(-4)},
                  {LP(), LP(), LP(), k(2), k(-4), k(8) + qm(2, 1, 2)},
                  {LP(), LP(), k(2), k(-4), k(8) + qm(3, 1, 2), k(-12) - qm(2, 1, 4) - qm(3, 1, 4)}});
}

RingMatrix<Rational> pairing_D() {
    RingMatrix<Rational> d(6, 6, Rational(0));
    d(0, 2) = d(2, 0) = make_rational(1, 2);
    d(1, 1) = 1;
    d(3, 3) = -1;
    d(4, 4) = make_rational(1, 4);
    d(5, 5) = -1;
    return d;
}

LaurentMatrix pairing_D_laurent() {
    return pairing_D().map([](const Rational& r) { return LP(r); });
}

SeriesMatrix at_lambda(const LaurentMatrix& m, long lambda) {
    return m.map([lambda](const LP& p) { return p.at_lambda(lambda); });
}

// ---------------------------------------------------------------- series checks

QSeries recurrence_residual(int j, long lambda, Branch branch, Exp order) {
    if (j < 0 || j > 5) throw std::invalid_argument("series index j must be in 0..5");
    const RecurrenceOperator op = hqdiff_operator();
    return with_precision(order, 8 * (std::labs(lambda) + 6), [&](Exp work) {
        QSeries acc(kExact);
        for (int i = 0; i <= 6; ++i) {
            QSeries y = branch == Branch::inside ? h_plus(lambda + i, j, work)
                                                 : h_wrapped(lambda + i, j, Branch::outside, work);
            // outside: q -> 1/u and Λ = q^λ -> u^{-λ}
            LP c = branch == Branch::inside ? op[i] : op[i].substitute_linear(-1, 0, 0, -1);
            acc += c.at_lambda(lambda) * y;
        }
        return acc;
    });
}

SeriesMatrix wronskian(long lambda, Branch branch, Exp order) {
    std::vector<std::vector<QSeries>> rows(6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            rows[i].push_back(branch == Branch::inside ? h_plus(lambda + i, j, order)
                                                       : h_wrapped(lambda + i, j, Branch::outside, order));
    return SeriesMatrix(rows);
}

QSeries expected_wronskian_det(long lambda) { return QSeries::monomial(32, 8 * lambda + 22, kExact); }

QSeries wronskian_det(long lambda, Exp order) {
    return with_precision(order, 32, [&](Exp work) { return minor_det(wronskian(lambda, Branch::inside, work)); });
}

QSeries wronskian_det_eisenstein_part(long lambda, Exp order) {
    auto det = with_precision(order, 32, [&](Exp work) {
        std::vector<std::vector<PuiseuxSeries<DualRational>>> rows(6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) rows[i].push_back(h_series_perturbed({lambda + i, j, Sign::plus}, work));
        auto d = minor_det(RingMatrix<PuiseuxSeries<DualRational>>(rows));
        return d.mapped<Rational>([](const DualRational& x) { return x.b; });
    });
    return det;
}

SeriesMatrix orthogonality_product(long lambda, Exp order) {
    const SeriesMatrix d = at_lambda(pairing_D_laurent(), lambda);
    return with_precision(order, 32, [&](Exp work) {
        SeriesMatrix w = wronskian(lambda, Branch::inside, work);
        SeriesMatrix v = wronskian(-lambda - 5, Branch::outside, work);
        return w * d * v.transpose();
    });
}

SeriesMatrix orthogonality_residual(long lambda, Exp order) {
    return truncate_all(orthogonality_product(lambda, order) - at_lambda(quad_Q(), lambda), order);
}

QSeries quadratic_relation(long lambda, Exp order) {
    return with_precision(order, 32, [&](Exp work) {
        auto hp = [&](int j) { return h_plus(lambda, j, work); };
        auto hm = [&](int j) { return h_minus(lambda, j, work); };
        const Rational half = make_rational(1, 2), quarter = make_rational(1, 4);
        QSeries r = hp(0) * hm(2) * half - hp(1) * hm(1) + hp(2) * hm(0) * half - hp(3) * hm(3) +
                    hp(4) * hm(4) * quarter - hp(5) * hm(5);
        return r;
    });
}

SeriesMatrix pairing_matrix(long lambda, Exp order) {
    const SeriesMatrix q = at_lambda(quad_Q(), lambda);
    return with_precision(order, 128, [&](Exp work) {
        SeriesMatrix w = wronskian(lambda, Branch::inside, work);
        SeriesMatrix v = wronskian(-lambda - 5, Branch::outside, work);
        QSeries dw = scalar_inverse(minor_det(w)), dv = scalar_inverse(minor_det(v));
        SeriesMatrix wi = adjugate(w).map([&](const QSeries& s) { return s * dw; });
        SeriesMatrix vi = adjugate(v).map([&](const QSeries& s) { return s * dv; });
        return wi * q * vi.transpose();
    });
}

SeriesMatrix companion_residual(long lambda, Exp order) {
    const SeriesMatrix a = at_lambda(companion_A(), lambda);
    return with_precision(order, 16, [&](Exp work) {
        return wronskian(lambda + 1, Branch::inside, work) - a * wronskian(lambda, Branch::inside, work);
    });
}

SeriesMatrix dual_companion_residual(long lambda, Exp order) {
    const SeriesMatrix at = at_lambda(companion_A_tilde(), lambda);
    return with_precision(order, 8 * (std::labs(lambda) + 4), [&](Exp work) {
        return wronskian(-lambda - 1, Branch::outside, work) - at * wronskian(-lambda, Branch::outside, work);
    });
}

bool all_zero(const SeriesMatrix& m) { return m.all_zero(); }

std::string first_nonzero_term(const SeriesMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) {
                const QSeries& s = m(i, j);
                std::ostringstream os;
                os << "(" << i + 1 << "," << j + 1 << "): " << to_string(s.lead()) << "*q^("
                   << QSeries::to_string_exp(s.valuation()) << ")";
                return os.str();
            }
    return "";
}

// ---------------------------------------------------------------- symbolic identities

bool SelfDualityReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SymbolicCheck& c) { return c.pass; });
}

const SymbolicCheck& SelfDualityReport::at(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("no symbolic check named " + name);
}

SelfDualityReport verify_symbolic_selfduality() {
    SelfDualityReport rep;
    const LaurentMatrix a = companion_A(), at = companion_A_tilde(), q = quad_Q();
    auto shift = [](const LaurentMatrix& m, long s) { return m.map([s](const LP& p) { return p.lambda_shift(s); }); };

    // the operator and the companion matrix describe the same recurrence
    {
        RecurrenceOperator h = hqdiff_operator(), c = companion_operator();
        SymbolicCheck chk{"operator-matches-companion", true, ""};
        for (int i = 0; i <= 6; ++i)
            if (h[i] != c[i]) {
                chk.pass = false;
                chk.detail = "coefficient of y_{λ+" + std::to_string(i) + "}: " + (h[i] - c[i]).to_string();
                break;
            }
        rep.checks.push_back(chk);
    }
    // Ã(λ, q) A(-λ-1, 1/q) = I, with A(-λ-1, 1/q) obtained by q^a Λ^b -> q^{b-a} Λ^b
    LaurentMatrix a_dual = a.map([](const LP& p) { return p.dual_substitute(); });
    rep.checks.push_back(compare("A_tilde-is-dual-inverse", at * a_dual, laurent_identity(6)));
    rep.checks.push_back(compare("quad-q-dif", a * q * shift(at, 5), shift(q, 1)));
    rep.checks.push_back(compare("quad-q-dif-transposed", a * q * shift(at, 5).transpose(), shift(q, 1)));
    rep.checks.push_back(compare("det-A", bareiss_det(a), qm(1)));
    rep.checks.push_back(compare("det-A_tilde", bareiss_det(at), qm(1)));
    rep.checks.push_back(compare("det-Q", bareiss_det(q), qm(5, 2, -64)));
    return rep;
}

}  // namespace hqmf

#include "hqmf/numerics.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "hqmf/qdiff.hpp"

namespace hqmf {

namespace {

using Kind = NumericsError::Kind;
using cd = std::complex<double>;

BigComplex one(mpfr_prec_t p) { return BigComplex(BigFloat(1L, p)); }
BigComplex cnum(const Rational& r, mpfr_prec_t p) { return BigComplex(r, p); }
BigComplex cnum(long n, mpfr_prec_t p) { return BigComplex(BigFloat(n, p)); }
cd to_cd(const BigComplex& z) { return {z.real().to_double(), z.imag().to_double()}; }

BigFloat eps_bits(long bits, mpfr_prec_t p) { return pow2(-bits, p); }

void require_unit_disc(const BigComplex& q, const char* name) {
    if (!(abs(q) < BigFloat(1L, q.prec())))
        throw NumericsError(Kind::wrong_half_plane, std::string("|") + name + "| >= 1: Im(tau) must be positive");
}

std::string sci(const BigFloat& x) { return x.to_string(6); }

BigFloat rounded(const BigFloat& x, mpfr_prec_t p) {
    BigFloat r(p);
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

// ---------------------------------------------------------------- modular pair

ModularPair ModularPair::from_tau(const BigComplex& tau, mpfr_prec_t prec) {
    if (tau.imag().is_zero()) throw NumericsError(Kind::wrong_half_plane, "tau must not be real");
    ModularPair p;
    p.prec = prec;
    p.tau = BigComplex(rounded(tau.real(), prec), rounded(tau.imag(), prec));
    p.b = sqrt(p.tau);
    BigComplex i = BigComplex::i(prec);
    p.c_b = (i * (p.b + one(prec) / p.b)).mul_2si(-1);
    p.q = p.q_pow(1);
    p.q_tilde = p.q_tilde_pow(1);
    return p;
}

ModularPair ModularPair::from_tau(const Rational& re, const Rational& im, mpfr_prec_t prec) {
    return from_tau(BigComplex(BigFloat(re, prec), BigFloat(im, prec)), prec);
}

BigComplex ModularPair::q_pow(const Rational& r) const {
    BigFloat s = pi().mul_2si(1) * BigFloat(r, prec);
    return exp(tau.mul_i() * s);
}

BigComplex ModularPair::q_tilde_pow(const Rational& r) const {
    BigFloat s = pi().mul_2si(1) * BigFloat(r, prec);
    return exp(-(one(prec) / tau).mul_i() * s);
}

// ---------------------------------------------------------------- Pochhammer and Φ_b

BigComplex qpochhammer(const BigComplex& x, const BigComplex& q, mpfr_prec_t prec) {
    require_unit_disc(q, "q");
    const BigFloat tiny = eps_bits(prec + 8, prec);
    BigComplex r = one(prec), t = x;
    for (long k = 0; k < 10000000; ++k) {
        r = r * (one(prec) - t);
        if (abs(t) < tiny) return r;
        t = t * q;
    }
    throw NumericsError(Kind::nonconvergent, "q-Pochhammer product did not converge");
}

BigComplex qpochhammer_finite(const BigComplex& x, const BigComplex& q, long n) {
    if (n < 0) throw std::invalid_argument("finite q-Pochhammer needs n >= 0");
    mpfr_prec_t p = std::max(x.prec(), q.prec());
    BigComplex r = one(p), t = x;
    for (long k = 0; k < n; ++k) {
        r = r * (one(p) - t);
        t = t * q;
    }
    return r;
}

BigComplex faddeev(const ModularPair& pair, const BigComplex& x) {
    const mpfr_prec_t p = pair.prec;
    require_unit_disc(pair.q, "q");
    require_unit_disc(pair.q_tilde, "q_tilde");
    BigFloat two_pi = pair.pi().mul_2si(1);
    BigComplex num = qpochhammer(exp(pair.b * (x + pair.c_b) * two_pi), pair.q, p);

    const BigFloat tiny = eps_bits(p + 8, p);
    const BigFloat near = eps_bits(p / 2, p);
    BigComplex den = one(p), t = exp((x - pair.c_b) / pair.b * two_pi);
    for (long k = 0;; ++k) {
        BigComplex f = one(p) - t;
        if (abs(f) < near) {
            std::ostringstream os;
            os << "x is within 2^-" << p / 2 << " of a pole of Phi_b (factor " << k << ")";
            throw NumericsError(Kind::near_pole, os.str());
        }
        den = den * f;
        if (abs(t) < tiny) break;
        if (k > 10000000) throw NumericsError(Kind::nonconvergent, "q-Pochhammer product did not converge");
        t = t * pair.q_tilde;
    }
    return num / den;
}

BigComplex faddeev_pole(const ModularPair& pair, long m, long n) {
    const mpfr_prec_t p = pair.prec;
    BigComplex i = BigComplex::i(p);
    Rational hm = Rational(m) + make_rational(1, 2), hn = Rational(n) + make_rational(1, 2);
    return i * (pair.b * cnum(hm, p) + cnum(hn, p) / pair.b);
}

// ---------------------------------------------------------------- state integral

ContourSpec ContourSpec::standard(const ModularPair& pair) {
    ContourSpec c;
    c.offset = pair.c_b.mul_2si(-1);
    c.epsilon = abs(pair.b) / BigFloat(10L, pair.prec);
    c.half_width = BigFloat(0L, pair.prec);
    return c;
}

BigComplex descendant_integrand(const ModularPair& pair, long lambda, long lambda_prime, const BigComplex& x) {
    const mpfr_prec_t p = pair.prec;
    BigComplex phi = faddeev(pair, x);
    BigComplex y = x.mul_2si(1) - pair.c_b;
    BigComplex phi2 = faddeev(pair, y);
    BigFloat pi = pair.pi();
    BigComplex lin = (pair.b * cnum(lambda, p) - cnum(lambda_prime, p) / pair.b) * x * pi.mul_2si(1);
    BigComplex quad = -(y * y).mul_i() * pi;
    return phi * phi * phi2 * exp(quad + lin);
}

namespace {

struct ContourGeometry {
    BigComplex base;  // offset + iε
    BigFloat slope;   // tan(bend)
    mpfr_prec_t prec;

    BigComplex point(const BigFloat& t) const {
        BigFloat one_(1L, prec);
        BigFloat rise = slope * (sqrt(t * t + one_) - one_);
        return base + BigComplex(t, rise);
    }
    BigComplex tangent(const BigFloat& t) const {
        BigFloat one_(1L, prec);
        return BigComplex(one_, slope * t / sqrt(t * t + one_));
    }
};

ContourGeometry geometry(const ModularPair& pair, const ContourSpec& c) {
    BigComplex base = c.offset + BigComplex(BigFloat(0L, pair.prec), c.epsilon);
    return {base, tan(BigFloat(c.bend, pair.prec)), pair.prec};
}

double contour_distance_double(const ModularPair& pair, const ContourSpec& c, double R) {
    cd b = to_cd(pair.b), cb = to_cd(pair.c_b);
    cd base = to_cd(c.offset) + cd(0, c.epsilon.to_double());
    double slope = std::tan(c.bend);
    const cd I(0, 1);
    std::vector<cd> poles;
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n) {
            cd xp = I * (m + 0.5) * b + I * (n + 0.5) / b;
            poles.push_back(xp);
            poles.push_back((xp + cb) / 2.0);
        }
    double best = 1e300;
    for (double t = -R; t <= R; t += 1.0 / 64) {
        cd x = base + cd(t, slope * (std::sqrt(t * t + 1) - 1));
        for (const cd& pl : poles) best = std::min(best, std::abs(x - pl));
    }
    return best;
}

}  // namespace

BigFloat contour_pole_distance(const ModularPair& pair, const ContourSpec& contour) {
    double R = contour.half_width.is_zero() ? 16.0 : contour.half_width.to_double();
    return BigFloat(contour_distance_double(pair, contour, R), 53);
}

ZValue descendant_Z(const ModularPair& pair, long lambda, long lambda_prime, const ContourSpec& contour) {
    if (!(pair.tau.imag().sign() > 0))
        throw NumericsError(Kind::wrong_half_plane, "descendant_Z needs Im(tau) > 0");
    const mpfr_prec_t p = pair.prec;
    const ContourGeometry geo = geometry(pair, contour);
    auto g = [&](const BigFloat& t) {
        return descendant_integrand(pair, lambda, lambda_prime, geo.point(t)) * geo.tangent(t);
    };

    BigFloat R = contour.half_width;
    if (R.is_zero()) {
        BigFloat peak(0L, p);
        for (long k = -8; k <= 8; ++k) peak = max(peak, abs(g(BigFloat(Rational(make_rational(k, 4)), p))));
        const BigFloat thr = peak * eps_bits(p + 16, p);
        long r = 4;
        BigFloat left = abs(g(BigFloat(-r, p))), right = abs(g(BigFloat(r, p)));
        while (left > thr || right > thr) {
            r += 2;
            if (r > 96) {
                throw NumericsError(Kind::nonconvergent, "integrand tail does not decay: |f(-96)| = " + sci(left) +
                                                             ", |f(96)| = " + sci(right) + ", peak " + sci(peak));
            }
            left = abs(g(BigFloat(-r, p)));
            right = abs(g(BigFloat(r, p)));
        }
        R = BigFloat(r, p);
    }
    const double dist = contour_distance_double(pair, contour, R.to_double());
    if (dist < 1e-3 * std::abs(to_cd(pair.b)))
        throw NumericsError(Kind::near_pole, "contour passes within " + std::to_string(dist) + " of a pole");

    // relative target, or the rounding floor set by cancellation in the sum
    const BigFloat tol = eps_bits(3 * p / 4, p);
    const BigFloat floor = eps_bits(p - 24, p);
    constexpr int kMaxLevels = 12;
    ZValue out;
    out.half_width = R;

    if (contour.scheme == QuadratureScheme::trapezoid) {
        long n = contour.node_count > 0 ? contour.node_count : 8 * static_cast<long>(R.to_double());
        BigFloat h = R.mul_2si(1) / BigFloat(n, p);
        BigComplex sum(p);
        BigFloat l1(0L, p);
        for (long k = -n / 2; k <= n / 2; ++k) {
            BigComplex v = g(h * BigFloat(k, p));
            l1 += abs(v);
            sum += v;
        }
        BigComplex S = sum * h;
        long nodes = n + 1;
        for (int level = 0; level < kMaxLevels; ++level) {
            BigFloat hh = h.mul_2si(-1);
            BigComplex odd(p);
            for (long k = -n / 2; k < n / 2; ++k) {
                BigComplex v = g(hh * BigFloat(2 * k + 1, p));
                l1 += abs(v);
                odd += v;
            }
            nodes += n;
            n *= 2;
            BigComplex S2 = S.mul_2si(-1) + odd * hh;
            BigFloat diff = abs(S2 - S);
            S = S2;
            h = hh;
            out.error = diff;
            if (diff <= tol * abs(S2) || diff <= floor * l1 * h) break;
        }
        out.value = S;
        out.nodes = nodes;
        return out;
    }

    // tanh-sinh on [−R, R]
    BigFloat one_(1L, p), half_pi = bf_pi(p).mul_2si(-1);
    BigFloat U = log(BigFloat(4L * static_cast<long>(p), p));
    auto node = [&](const BigFloat& u, BigFloat& w) {
        BigFloat s = half_pi * sinh(u);
        BigFloat c = cosh(s);
        w = R * half_pi * cosh(u) / (c * c);
        return R * tanh(s);
    };
    long n = contour.node_count > 0 ? contour.node_count : 16;
    BigFloat h = U / BigFloat(n, p);
    auto panel = [&](long k) {
        BigFloat w(p);
        BigFloat t = node(h * BigFloat(k, p), w);
        return g(t) * w;
    };
    BigComplex sum(p);
    BigFloat l1(0L, p);
    for (long k = -n; k <= n; ++k) {
        BigComplex v = panel(k);
        l1 += abs(v);
        sum += v;
    }
    BigComplex S = sum * h;
    long nodes = 2 * n + 1;
    for (int level = 0; level < kMaxLevels; ++level) {
        h = h.mul_2si(-1);
        n *= 2;
        BigComplex odd(p);
        for (long k = -n + 1; k < n; k += 2) {
            BigComplex v = panel(k);
            l1 += abs(v);
            odd += v;
        }
        nodes += n;
        BigComplex S2 = S.mul_2si(-1) + odd * h;
        BigFloat diff = abs(S2 - S);
        S = S2;
        out.error = diff;
        if (diff <= tol * abs(S2) || diff <= floor * l1 * h) break;
    }
    out.value = S;
    out.nodes = nodes;
    return out;
}

ZValue descendant_Z(const ModularPair& pair, long lambda, long lambda_prime) {
    return descendant_Z(pair, lambda, lambda_prime, ContourSpec::standard(pair));
}

BigComplex renormalized_Z(const ModularPair& pair, const BigComplex& z) {
    return pair.q_tilde_pow(make_rational(1, 24)) * pair.q_pow(make_rational(-1, 24)) * z;
}

BigComplex normalized_Z(const ModularPair& pair, long lambda, long lambda_prime, const BigComplex& z) {
    const mpfr_prec_t p = pair.prec;
    BigComplex eighth = BigComplex::expi2pi(BigFloat(make_rational(1, 8), p));
    return (eighth * pair.q_pow(make_rational(-lambda, 2)) * pair.q_tilde_pow(make_rational(-lambda_prime, 2)) * z)
        .mul_2si(1);
}

// ---------------------------------------------------------------- numeric q-series

namespace {

// E_1^{(m)}, E_2^{(m)} at a numeric q, grown on demand
class NumericEisenstein {
public:
    NumericEisenstein(const BigComplex& q, mpfr_prec_t prec) : q_(q), prec_(prec) {
        const BigFloat tiny = eps_bits(prec + 8, prec);
        BigComplex e1(prec), e2(prec), qk = q;
        for (long k = 1; k < 100000000; ++k) {
            BigComplex r = one(prec) / (one(prec) - qk);
            BigComplex t = qk * r;
            e1 += t;
            e2 += t * r;
            if (abs(qk) < tiny) break;
            qk = qk * q;
        }
        e1_.push_back(e1);
        e2_.push_back(e2);
        qm_ = one(prec);
    }
    const BigComplex& E(int l, long m) {
        while (static_cast<long>(e1_.size()) <= m) {
            qm_ = qm_ * q_;
            BigComplex r = one(prec_) / (one(prec_) - qm_);
            BigComplex t = qm_ * r;
            e1_.push_back(e1_.back() - t);
            e2_.push_back(e2_.back() - t * r);
        }
        return l == 1 ? e1_[static_cast<std::size_t>(m)] : e2_[static_cast<std::size_t>(m)];
    }
    BigComplex cal2() { return one(prec_) - E(2, 0) * cnum(24, prec_); }

private:
    BigComplex q_;
    mpfr_prec_t prec_;
    BigComplex qm_;
    std::vector<BigComplex> e1_, e2_;
};

}  // namespace

HValue h_numeric(const SeriesFamilyKey& key, const BigComplex& x8, mpfr_prec_t prec, Exp order) {
    validate_key(key);
    if (!(abs(x8) < BigFloat(1L, prec)))
        throw NumericsError(Kind::wrong_half_plane, "numeric H series need |q| < 1");
    const int j = key.j;
    const bool plus = key.sign == Sign::plus;
    const BigComplex q = pow(x8, 8);
    const BigComplex c1 = one(prec);
    NumericEisenstein eis(q, prec);

    BigComplex d = c1;  // reciprocal of the Pochhammer denominator
    if (j == 3 || j == 5) d = c1 / (c1 - q);
    const BigComplex pm = (j == 5) ? -c1 : c1;  // (1 − c q^{m+1/2})

    BigComplex total(prec);
    BigFloat peak(0L, prec);
    BigFloat tail(0L, prec);
    const BigFloat tiny = eps_bits(prec + 16, prec);
    Exp prev = summand_exponent(key.lambda, j, key.sign, 0);
    int small_run = 0;
    for (long m = 0;; ++m) {
        if (m > 0) {
            BigComplex qm = pow(q, m);
            BigComplex q2m = qm * qm;
            BigComplex q2m1 = q2m / q;
            switch (j) {
                case 0:
                case 1:
                case 2:
                    d = d / ((c1 - qm) * (c1 - qm) * (c1 - q2m1) * (c1 - q2m));
                    break;
                case 4:
                    d = d / ((c1 + qm) * (c1 + qm) * (c1 - q2m1) * (c1 - q2m));
                    break;
                default: {
                    BigComplex h = pow(x8, 8 * m + 4);
                    BigComplex f = c1 - pm * h;
                    d = d / (f * f * (c1 - q2m) * (c1 - q2m * q));
                }
            }
        }
        const Exp e = summand_exponent(key.lambda, j, key.sign, m);
        BigComplex term = d * pow(x8, e);
        if (j == 1 || j == 2) {
            long base = (plus ? 4 : 2) * m + 1 + key.lambda;
            BigComplex p1 = cnum(base, prec) - (eis.E(1, m) + eis.E(1, 2 * m)).mul_2si(1);
            BigComplex f = p1;
            if (j == 2) {
                f = p1 * p1 - eis.E(2, m).mul_2si(1) - eis.E(2, 2 * m).mul_2si(2);
                BigComplex third = eis.cal2() / cnum(3, prec);
                if (plus)
                    f -= third;
                else
                    f += eis.E(2, 0) * cnum(12, prec) - cnum(make_rational(1, 2), prec) + third;
            }
            term = term * f;
        }
        if (order > 0 && e >= order && e > prev) {
            tail = abs(term);
            break;
        }
        total += term;
        BigFloat a = abs(term);
        peak = max(peak, a);
        if (e > prev && a < tiny * peak) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        prev = std::max(prev, e);
        if (m > 10000000) throw NumericsError(Kind::nonconvergent, "H series did not converge");
    }
    if (j == 3 || j == 5) {
        BigComplex x4 = pow(x8, 4);
        BigComplex f = c1 - pm * x4;
        BigComplex pre = pow(x8, plus ? 1 : 7) / (f * f);
        total = total * pre;
        tail = tail * abs(pre);
        peak = peak * abs(pre);
    }
    if (j <= 3 && parity_sign(key.lambda) < 0) total = -total;
    return {total, tail, peak};
}

HValue h_value(const ModularPair& pair, long lambda, int j, Branch branch, Exp order) {
    if (branch == Branch::inside) return h_numeric({lambda, j, Sign::plus}, pair.q_pow(make_rational(1, 8)), pair.prec, order);
    HValue v = h_numeric({-lambda, j, Sign::minus}, pair.q_tilde_pow(make_rational(1, 8)), pair.prec, order);
    if (kDelta.at(static_cast<std::size_t>(j)) % 2) v.value = -v.value;
    return v;
}

// ---------------------------------------------------------------- matrices

ComplexMatrix complex_matrix(std::size_t n, std::size_t m, mpfr_prec_t prec) {
    return ComplexMatrix(n, std::vector<BigComplex>(m, BigComplex(prec)));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.empty() || b.empty() || a[0].size() != b.size()) throw std::invalid_argument("matrix shape mismatch");
    ComplexMatrix r = complex_matrix(a.size(), b[0].size(), a[0][0].prec());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix r = complex_matrix(a[0].size(), a.size(), a[0][0].prec());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    const mpfr_prec_t p = a[0][0].prec();
    ComplexMatrix m = a, inv = complex_matrix(n, n, p);
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = one(p);
    BigFloat scale(0L, p);
    for (const auto& row : a)
        for (const auto& x : row) scale = max(scale, abs(x));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (!(abs(m[piv][c]) > scale * eps_bits(p - 16, p)))
            throw NumericsError(Kind::singular, "matrix is numerically singular");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        BigComplex s = one(p) / m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] = m[c][k] * s;
            inv[c][k] = inv[c][k] * s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            BigComplex f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

BigFloat max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    BigFloat r(0L, a[0][0].prec());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r = max(r, abs(a[i][j] - b[i][j]));
    return r;
}

ComplexMatrix descendant_middle(const ModularPair& pair) {
    const mpfr_prec_t p = pair.prec;
    ComplexMatrix m = complex_matrix(6, 6, p);
    BigComplex i = BigComplex::i(p);
    m[0][2] = -pair.tau.mul_2si(-1);
    m[1][1] = -one(p);
    m[2][0] = -(one(p) / pair.tau).mul_2si(-1);
    m[3][4] = i.mul_2si(-1);
    m[4][3] = -i.mul_2si(-1);
    m[5][5] = -i;
    return m;
}

ComplexMatrix cocycle_middle(const ModularPair& pair) {
    const mpfr_prec_t p = pair.prec;
    ComplexMatrix m = complex_matrix(6, 6, p);
    BigComplex i = BigComplex::i(p);
    m[0][0] = -(one(p) / pair.tau);
    m[1][1] = -one(p);
    m[2][2] = -pair.tau;
    m[3][4] = -i.mul_2si(-1);
    m[4][3] = -i.mul_2si(1);
    m[5][5] = i;
    return m;
}

// ---------------------------------------------------------------- factorization

FactorizationReport factorization(const ModularPair& pair, long lambda, long lambda_prime, Exp series_order) {
    const mpfr_prec_t p = pair.prec;
    std::vector<HValue> h, hp, hl;
    for (int j = 0; j < 6; ++j) {
        h.push_back(h_value(pair, lambda, j, Branch::inside, series_order));
        hp.push_back(h_value(pair, -lambda_prime, j, Branch::outside, series_order));
        hl.push_back(h_value(pair, lambda_prime, j, Branch::outside, series_order));
    }
    const ComplexMatrix M = descendant_middle(pair);
    FactorizationReport r;
    r.rhs = BigComplex(p);
    r.truncation = BigFloat(0L, p);
    for (int a = 0; a < 6; ++a)
        for (int k = 0; k < 6; ++k) {
            if (M[a][k].is_zero()) continue;
            r.rhs += hp[a].value * M[a][k] * h[k].value;
            BigFloat t = abs(M[a][k]) * (abs(hp[a].value) * h[k].tail + hp[a].tail * abs(h[k].value));
            r.truncation = max(r.truncation, t);
        }
    BigComplex i = BigComplex::i(p);
    BigComplex half = cnum(make_rational(1, 2), p);
    r.rhs_literal = -(one(p) / pair.tau) * half * h[0].value * hl[2].value + h[1].value * hl[1].value -
                    pair.tau * half * h[2].value * hl[0].value -
                    i * (half * h[3].value * hl[4].value - half * h[4].value * hl[3].value +
                         h[5].value * hl[5].value);

    ZValue z = descendant_Z(pair, lambda, lambda_prime);
    r.lhs = normalized_Z(pair, lambda, lambda_prime, z.value);
    r.quadrature_error = abs(normalized_Z(pair, lambda, lambda_prime, BigComplex(z.error)));
    r.residual = abs(r.lhs - r.rhs);
    r.literal_residual = abs(r.lhs - r.rhs_literal);
    return r;
}

BigFloat factorization_residual(const ModularPair& pair, long lambda, long lambda_prime, Exp series_order) {
    return factorization(pair, lambda, lambda_prime, series_order).residual;
}

// ---------------------------------------------------------------- cocycle

std::pair<long, long> descendant_entry_indices(long lambda, long lambda_prime, std::size_t a, std::size_t b) {
    return {lambda + static_cast<long>(b), lambda_prime + 5 - static_cast<long>(a)};
}

namespace {

ComplexMatrix numeric_wronskian_inside(const ModularPair& pair, bool tilde, long lambda, Exp order) {
    // rows H^+_{λ+i, j} at q (or at q̃)
    const mpfr_prec_t p = pair.prec;
    BigComplex x8 = tilde ? pair.q_tilde_pow(make_rational(1, 8)) : pair.q_pow(make_rational(1, 8));
    ComplexMatrix w = complex_matrix(6, 6, p);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) w[i][j] = h_numeric({lambda + i, j, Sign::plus}, x8, p, order).value;
    return w;
}

ComplexMatrix numeric_quad_Q(const ModularPair& pair, long lambda_prime) {
    const mpfr_prec_t p = pair.prec;
    LaurentMatrix Q = quad_Q();
    ComplexMatrix r = complex_matrix(6, 6, p);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            for (const auto& [key, c] : Q(i, j).terms())
                r[i][j] += cnum(c, p) * pow(pair.q_tilde, key.first + lambda_prime * key.second);
    return r;
}

}  // namespace

CocycleReport cocycle_matrices(const ModularPair& pair, long lambda, long lambda_prime, Exp series_order) {
    const mpfr_prec_t p = pair.prec;
    ComplexMatrix W = numeric_wronskian_inside(pair, false, lambda, series_order);
    ComplexMatrix Wt = numeric_wronskian_inside(pair, true, lambda_prime, series_order);
    ComplexMatrix G = complex_matrix(6, 6, p);
    for (int a = 0; a < 6; ++a)
        for (int j = 0; j < 6; ++j) G[a][j] = h_value(pair, a - lambda_prime - 5, j, Branch::outside, series_order).value;

    CocycleReport r;
    const ComplexMatrix MF = descendant_middle(pair), Dc = cocycle_middle(pair);
    r.F = G * MF * transpose(W);
    r.Wcoc = inverse(transpose(Wt)) * Dc * transpose(W);
    r.Wcoc_from_F = inverse(transpose(numeric_quad_Q(pair, lambda_prime))) * r.F;
    r.consistency = max_abs_diff(r.Wcoc, r.Wcoc_from_F);

    RingMatrix<Rational> D = pairing_D();
    ComplexMatrix Dn = complex_matrix(6, 6, p);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) Dn[i][j] = cnum(D(i, j), p);
    r.middle_mismatch = max_abs_diff(inverse(transpose(Dn)) * MF, Dc);
    return r;
}

// ---------------------------------------------------------------- eta quotients

BigFloat EtaQuotientReport::max_residual() const {
    BigFloat r = eta;
    for (const auto& c : connection) r = max(r, c);
    return r;
}

EtaQuotientReport eta_quotient_check(const ModularPair& pair) {
    const mpfr_prec_t p = pair.prec;
    if (!(pair.tau.imag().sign() > 0)) throw NumericsError(Kind::wrong_half_plane, "eta check needs Im(tau) > 0");
    auto poch = [&](const BigComplex& x, const BigComplex& q) { return qpochhammer(x, q, p); };
    auto sq = [](const BigComplex& z) { return z * z; };
    auto rel = [](const BigComplex& l, const BigComplex& r) { return abs(l - r) / abs(r); };
    const BigComplex& q = pair.q;
    const BigComplex& qt = pair.q_tilde;
    const BigComplex c1 = one(p);
    const BigComplex mi = -BigComplex::i(p);
    BigComplex qq = poch(q, q), qtqt = poch(qt, qt);
    BigComplex q8 = pair.q_pow(make_rational(1, 8)), q2 = pair.q_pow(make_rational(1, 2));
    BigComplex qtm8 = pair.q_tilde_pow(make_rational(-1, 8)), qtm2 = pair.q_tilde_pow(make_rational(-1, 2));
    BigComplex base = sq(qtqt) / sq(qq);

    EtaQuotientReport r;
    BigComplex l1 = sq(poch(q * q2, q)) * base / sq(poch(-c1, qt));
    BigComplex r1 = mi * q8 * pair.tau / sq(c1 - q2).mul_2si(1);
    r.connection[0] = rel(l1, r1);

    BigComplex r2 = mi * qtm8 * pair.tau / sq(c1 - qtm2).mul_2si(1);
    BigComplex l2 = sq(poch(-q, q)) * base / sq(poch(-qtm2, qt));
    r.connection[1] = rel(l2, r2);
    BigComplex l2c = sq(poch(-q, q)) * base / sq(poch(qtm2, qt));
    r.connection2_corrected = rel(l2c, r2);

    BigComplex l3 = sq(poch(-(q * q2), q)) * base / sq(poch(-qtm2, qt));
    BigComplex r3 = mi * q8 * qtm8 * pair.tau / (sq(c1 + q2) * sq(c1 + qtm2));
    r.connection[2] = rel(l3, r3);

    BigComplex e8 = BigComplex::expi2pi(BigFloat(make_rational(1, 8), p));
    BigComplex le = qq / qtqt;
    BigComplex re = e8 * pair.q_pow(make_rational(1, 24)) * pair.q_tilde_pow(make_rational(-1, 24)) / pair.b;
    BigComplex rec = e8 * pair.q_pow(make_rational(-1, 24)) * pair.q_tilde_pow(make_rational(1, 24)) / pair.b;
    r.eta = rel(le, re);
    r.eta_corrected = rel(le, rec);
    return r;
}

// ---------------------------------------------------------------- Φ_b identities

BigComplex faddeev_residue_formula(const ModularPair& pair, long m, long n) {
    const mpfr_prec_t p = pair.prec;
    BigComplex qq = qpochhammer(pair.q, pair.q, p), qtqt = qpochhammer(pair.q_tilde, pair.q_tilde, p);
    BigComplex qti = one(p) / pair.q_tilde;
    BigComplex fm = qpochhammer_finite(pair.q, pair.q, m), fn = qpochhammer_finite(qti, qti, n);
    BigComplex pre = -pair.b / pair.pi().mul_2si(1);
    return pre * qq / qtqt / (fm * fn);
}

BigComplex faddeev_residue_numeric(const ModularPair& pair, long m, long n) {
    const mpfr_prec_t p = pair.prec;
    const BigComplex x0 = faddeev_pole(pair, m, n);
    // central averages of hΦ(x0 + h) are even in h; extrapolate in h²
    BigFloat h = pow2(-static_cast<long>(p) / 10, p) * abs(pair.b);
    std::vector<BigComplex> a;
    for (int k = 0; k < 4; ++k) {
        BigComplex hc(h);
        BigComplex g = (faddeev(pair, x0 + hc) - faddeev(pair, x0 - hc)) * hc;
        a.push_back(g.mul_2si(-1));
        h = h.mul_2si(-1);
    }
    for (int level = 1; level < 4; ++level) {
        BigFloat f = pow2(2 * level, p);
        BigFloat den = f - BigFloat(1L, p);
        for (int k = 3; k >= level; --k) a[k] = (a[k] * f - a[k - 1]) / den;
    }
    return a[3];
}

std::array<BigFloat, 2> quasi_periodicity_residual(const ModularPair& pair, const BigComplex& x) {
    const mpfr_prec_t p = pair.prec;
    const BigComplex i = BigComplex::i(p);
    const BigFloat two_pi = pair.pi().mul_2si(1);
    BigComplex base = faddeev(pair, x + pair.c_b);
    BigComplex r1 = faddeev(pair, x + pair.c_b + i * pair.b) / base;
    BigComplex e1 = one(p) / (one(p) - pair.q * exp(pair.b * x * two_pi));
    BigComplex r2 = faddeev(pair, x + pair.c_b + i / pair.b) / base;
    BigComplex e2 = one(p) / (one(p) - exp(x / pair.b * two_pi) / pair.q_tilde);
    return {abs(r1 - e1) / abs(e1), abs(r2 - e2) / abs(e2)};
}

std::array<BigFloat, 2> inversion_residual(const ModularPair& pair, const BigComplex& x) {
    const mpfr_prec_t p = pair.prec;
    BigComplex z = faddeev(pair, BigComplex(p));
    BigComplex z2 = z * z;
    BigComplex lhs = faddeev(pair, x) * faddeev(pair, -x);
    BigComplex rhs = exp((x * x).mul_i() * pair.pi()) * z2;
    BigComplex expect = pair.q_pow(make_rational(1, 24)) * pair.q_tilde_pow(make_rational(-1, 24));
    return {abs(lhs - rhs) / abs(rhs), abs(z2 - expect) / abs(expect)};
}

}  // namespace hqmf

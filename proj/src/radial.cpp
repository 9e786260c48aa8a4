#include "hqmf/radial.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace hqmf {

namespace {

bool valid_ray(const Rational& t) { return t != 0 && t > -1 && t < 1; }

void require_ray(const Rational& t) {
    if (!valid_ray(t)) throw std::invalid_argument("theta must lie in (-pi, pi) and be nonzero");
}

const AsymptoticSeries& cached_expansion(int sigma, int K) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, AsymptoticSeries> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(sigma, K);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gaussian_expand(critical_point(sigma), K)).first;
    return it->second;
}

std::string rat(const Rational& r) { return r.get_str(); }

// deepest Richardson extrapolant whose table still converges
BigComplex stable_limit(const std::vector<BigComplex>& r, const std::vector<long>& Ns, int depth) {
    for (int d = std::max(depth, 0); d > 0; --d) {
        try {
            return richardson(r, Ns, d).best;
        } catch (const NumericsError&) {
        }
    }
    return r.back();
}

}  // namespace

BigComplex radial_tau(const Rational& theta_over_pi, long N, mpfr_prec_t prec) {
    require_ray(theta_over_pi);
    if (N <= 0) throw std::invalid_argument("N must be positive");
    BigFloat theta = bf_pi(prec) * BigFloat(theta_over_pi, prec);
    return BigComplex::polar(BigFloat(1L, prec) / BigFloat(N, prec), theta);
}

std::vector<RadialSample> radial_samples(int j, Sign sign, const Rational& theta_over_pi,
                                         const std::vector<long>& N_list, mpfr_prec_t prec) {
    require_ray(theta_over_pi);
    std::vector<RadialSample> out;
    for (long N : N_list) {
        mpfr_prec_t p = prec;
        HValue v;
        for (int attempt = 0; attempt < 4; ++attempt) {
            ModularPair pair = ModularPair::from_tau(radial_tau(theta_over_pi, N, p), p);
            v = h_numeric({0, j, sign}, pair.q_pow(make_rational(1, 8)), p);
            if (v.value.is_zero()) break;
            long loss = (v.peak / abs(v.value)).exponent2();
            if (loss <= 32) break;
            p = prec + loss + 32;
        }
        RadialSample s;
        s.theta = (bf_pi(53) * BigFloat(theta_over_pi, 53)).to_double();
        s.N = N;
        s.value = v.value;
        s.j = j;
        s.sign = sign;
        s.prec = p;
        out.push_back(s);
    }
    return out;
}

RichardsonResult richardson(const std::vector<BigComplex>& values, const std::vector<long>& N, int depth) {
    if (values.size() != N.size() || values.empty()) throw std::invalid_argument("richardson needs one value per N");
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    const std::size_t n = values.size();
    if (depth > 0 && static_cast<std::size_t>(depth) + 2 > n)
        throw std::invalid_argument("richardson depth must be below the sample count minus two");
    const mpfr_prec_t p = values.back().prec();
    RichardsonResult r;
    if (depth == 0) {
        r.limit = values.back();
        r.error = BigFloat(0L, p);
        r.diagonal = {values.back()};
        r.best = r.limit;
        r.best_error = r.error;
        return r;
    }
    const std::size_t first = n - static_cast<std::size_t>(depth) - 1;
    std::vector<BigFloat> x;
    std::vector<BigComplex> P;
    for (std::size_t i = first; i < n; ++i) {
        x.push_back(BigFloat(1L, p) / BigFloat(N[i], p));
        P.push_back(values[i]);
    }
    // Neville towards x = 0; after level k, P[i] uses points i..i+k, and P.back()-ward
    // entries give the extrapolants through the last k+1 points
    const std::size_t m = P.size();
    r.diagonal.push_back(P[m - 1]);
    for (std::size_t k = 1; k < m; ++k) {
        for (std::size_t i = 0; i + k < m; ++i) P[i] = (P[i + 1] * x[i] - P[i] * x[i + k]) / (x[i] - x[i + k]);
        r.diagonal.push_back(P[m - 1 - k]);
    }
    r.limit = r.diagonal.back();
    r.error = abs(r.diagonal.back() - r.diagonal[r.diagonal.size() - 2]);
    r.best = r.limit;
    r.best_error = r.error;
    r.best_depth = depth;
    for (std::size_t i = 1; i < r.diagonal.size(); ++i) {
        BigFloat d = abs(r.diagonal[i] - r.diagonal[i - 1]);
        if (d < r.best_error) {
            r.best_error = d;
            r.best = r.diagonal[i];
            r.best_depth = static_cast<int>(i);
        }
    }
    // growth that stays at the rounding level is noise, not divergence
    const BigFloat noise = abs(r.diagonal.front()) * pow2(-static_cast<long>(p) / 2, p);
    if (r.diagonal.size() >= 4 && r.error > noise) {
        bool growing = true;
        BigFloat prev = abs(r.diagonal[1] - r.diagonal[0]);
        for (std::size_t i = 2; i < r.diagonal.size(); ++i) {
            BigFloat d = abs(r.diagonal[i] - r.diagonal[i - 1]);
            if (!(d > prev)) growing = false;
            prev = d;
        }
        if (growing) throw NumericsError(NumericsError::Kind::nonconvergent, "Richardson table differences grow at every depth");
    }
    return r;
}

// ---------------------------------------------------------------- the table

std::string QasyRow::describe() const {
    std::ostringstream os;
    os << rat(coeff);
    if (phase8 != 0) os << "*e^(" << phase8 << "*pi*i/4)";
    if (tau_pow != 0) os << "*tau^" << tau_pow;
    if (qt_pow != 0) os << "*qt^(" << rat(qt_pow) << ")";
    if (qqt_pow != 0) os << "*(q/qt)^(" << rat(qqt_pow) << ")";
    os << " * Phihat^(sigma" << sigma << ")(" << (hbar_sign > 0 ? "+" : "-") << "hbar)";
    return os.str();
}

BigComplex QasyRow::prefactor(const ModularPair& pair) const {
    const mpfr_prec_t p = pair.prec;
    BigComplex v(coeff, p);
    v = v * BigComplex::expi2pi(BigFloat(make_rational(phase8, 8), p));
    v = v * pow(pair.tau, tau_pow);
    v = v * pair.q_pow(qqt_pow) * pair.q_tilde_pow(-qqt_pow);
    if (qt_pow != 0) v = v * pair.q_tilde_pow(qt_pow);
    return v;
}

std::vector<QasyRow> qasy_table() {
    const Rational p24 = make_rational(1, 24), m24 = make_rational(-1, 24);
    const Rational p78 = make_rational(7, 8), m78 = make_rational(-7, 8);
    auto row = [](int j, Sign s, Rational c, int ph, int tp, Rational qqt, Rational qt, int sigma, int hs) {
        QasyRow r;
        r.j = j;
        r.sign = s;
        r.coeff = c;
        r.phase8 = ph;
        r.tau_pow = tp;
        r.qqt_pow = qqt;
        r.qt_pow = qt;
        r.sigma = sigma;
        r.hbar_sign = hs;
        return r;
    };
    const Sign P = Sign::plus, M = Sign::minus;
    return {
        row(0, P, 1, 1, 1, p24, 0, 1, 1),
        row(0, M, 1, 1, 1, m24, 0, 2, -1),
        row(1, P, 1, 1, 0, p24, 0, 1, 1),
        row(1, M, 1, 1, 0, m24, 0, 2, -1),
        row(2, P, make_rational(2, 3), 1, -1, p24, 0, 1, 1),
        row(2, M, make_rational(5, 6), 1, -1, m24, 0, 2, -1),
        row(3, P, make_rational(1, 2), -1, 0, p24, 0, 1, 1),
        row(3, M, make_rational(1, 2), -1, 0, m24, 0, 2, -1),
        row(4, P, 2, -1, 0, p24, m78, 6, 1),
        row(4, M, 2, -1, 0, m24, p78, 3, 1),
        row(5, P, 1, -1, 0, p24, m78, 6, 1),
        row(5, M, 1, -1, 0, m24, p78, 3, 1),
    };
}

const QasyRow& qasy_row(int j, Sign sign) {
    static const std::vector<QasyRow> table = qasy_table();
    for (const auto& r : table)
        if (r.j == j && r.sign == sign) return r;
    throw std::invalid_argument("series index j must be in 0..5");
}

bool qasy_quadratic_relation_cancels(std::string* detail) {
    using Key = std::tuple<int, int, Rational, Rational, int, int, int, int>;
    std::map<Key, Rational> sum;
    const std::vector<std::tuple<int, int, Rational>> terms{
        {0, 2, make_rational(1, 2)}, {1, 1, -1}, {2, 0, make_rational(1, 2)},
        {3, 3, -1},                  {4, 4, make_rational(1, 4)}, {5, 5, -1}};
    for (const auto& [a, b, kappa] : terms) {
        const QasyRow& x = qasy_row(a, Sign::plus);
        const QasyRow& y = qasy_row(b, Sign::minus);
        Rational c = kappa * x.coeff * y.coeff;
        int phase = ((x.phase8 + y.phase8) % 8 + 8) % 8;
        if (phase >= 4) {  // e^{πi} = −1
            phase -= 4;
            c = -c;
        }
        Key k{phase, x.tau_pow + y.tau_pow, x.qqt_pow + y.qqt_pow, x.qt_pow + y.qt_pow,
              x.sigma, x.hbar_sign, y.sigma, y.hbar_sign};
        sum[k] += c;
    }
    bool ok = true;
    std::ostringstream os;
    for (const auto& [k, c] : sum) {
        if (c == 0) continue;
        ok = false;
        os << "coefficient " << rat(c) << " at phase " << std::get<0>(k) << " tau^" << std::get<1>(k) << "; ";
    }
    if (detail) *detail = os.str();
    return ok;
}

// ---------------------------------------------------------------- matching

MatchOptions MatchOptions::desk() {
    MatchOptions o;
    for (long N = 120; N <= 200; N += 4) o.N_list.push_back(N);
    return o;
}

bool MatchReport::pass(int min_digits, double unimodular_tol) const {
    return digits_matched >= min_digits && std::abs(abs(constant_ratio).to_double() - 1.0) < unimodular_tol;
}

MatchCandidate match_candidate(const QasyRow& row, int sigma, int hbar_sign, const std::vector<RadialSample>& samples,
                               const Rational& theta_over_pi, int K, mpfr_prec_t prec, const MatchOptions& opts) {
    const CriticalPoint cp = critical_point(sigma, prec);
    const AsymptoticSeries& series = cached_expansion(sigma, K);
    const BigFloat pi = bf_pi(prec);
    const BigComplex log_alpha = log(cp.numeric);

    std::vector<BigComplex> ratio, inv_hbar;
    std::vector<long> Ns;
    for (const auto& s : samples) {
        ModularPair pair = ModularPair::from_tau(radial_tau(theta_over_pi, s.N, prec), prec);
        BigComplex hbar = pair.tau.mul_i() * pi.mul_2si(1) * BigFloat(static_cast<long>(hbar_sign), prec);
        BigComplex phi = phi_hat_numeric(cp, series, 0, 0, hbar, K);
        ratio.push_back(s.value / (row.prefactor(pair) * phi));
        inv_hbar.push_back(BigComplex(BigFloat(1L, prec)) / hbar);
        Ns.push_back(s.N);
    }

    MatchCandidate best;
    best.sigma = sigma;
    best.hbar_sign = hbar_sign;
    best.digits = -1;
    const int L = opts.lattice_range;
    for (int a = -L; a <= L; ++a)
        for (int b = -L; b <= L; ++b) {
            BigComplex dV = BigComplex(pi * pi * BigFloat(4L * a, prec)) + log_alpha.mul_i() * pi.mul_2si(1) * BigFloat(static_cast<long>(b), prec);
            std::vector<BigComplex> r;
            for (std::size_t i = 0; i < ratio.size(); ++i) r.push_back(ratio[i] / exp(dV * inv_hbar[i]));
            double digits = 0;
            BigComplex C(prec);
            try {
                const BigComplex one(BigFloat(1L, prec));
                auto spread = [&](const BigComplex& c) {
                    BigFloat w(0L, prec);
                    for (const auto& v : r) w = max(w, abs(v / c - one));
                    return w;
                };
                C = stable_limit(r, Ns, std::min<int>(opts.depth, static_cast<int>(r.size()) - 3));
                if (C.is_zero()) continue;
                BigFloat worst = spread(C);
                if (!r.back().is_zero()) {
                    BigFloat w = spread(r.back());
                    if (w < worst) {
                        worst = w;
                        C = r.back();
                    }
                }
                digits = worst.is_zero() ? static_cast<double>(prec) * 0.30103 : -std::log10(worst.to_double());
                if (!std::isfinite(digits)) digits = 0;
                digits = std::max(digits, 0.0);
            } catch (const NumericsError&) {
                digits = 0;
            }
            if (digits > best.digits) {
                best.digits = digits;
                best.lattice_a = a;
                best.lattice_b = b;
                best.constant = C;
            }
        }
    return best;
}

MatchReport asymptotic_match(int j, Sign sign, const Rational& theta_over_pi, int K, mpfr_prec_t prec,
                             const MatchOptions& opts) {
    const QasyRow& row = qasy_row(j, sign);
    std::vector<RadialSample> samples = radial_samples(j, sign, theta_over_pi, opts.N_list, prec);

    MatchReport rep;
    rep.j = j;
    rep.sign = sign;
    rep.theta = samples.empty() ? 0 : samples.front().theta;
    rep.sigma = row.sigma;
    rep.hbar_sign = row.hbar_sign;
    rep.prefactor = row.describe();
    rep.sigma_label = critical_point(row.sigma, 64).label();

    rep.best.digits = -1;
    for (int sigma = 1; sigma <= 6; ++sigma)
        for (int hs : {1, -1}) {
            MatchCandidate c = match_candidate(row, sigma, hs, samples, theta_over_pi, K, prec, opts);
            if (sigma == row.sigma && hs == row.hbar_sign) {
                rep.digits_matched = static_cast<int>(std::floor(c.digits));
                rep.constant_ratio = c.constant;
                rep.lattice_a = c.lattice_a;
                rep.lattice_b = c.lattice_b;
            }
            if (c.digits > rep.best.digits) rep.best = c;
            rep.candidates.push_back(c);
        }
    rep.no_match = rep.best.digits < 2;
    return rep;
}

}  // namespace hqmf

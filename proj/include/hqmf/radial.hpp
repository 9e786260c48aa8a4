#pragma once

#include <string>
#include <vector>

#include "hqmf/numerics.hpp"
#include "hqmf/statphase.hpp"

namespace hqmf {

// τ = e^{iθ}/N with θ = theta_over_pi·π
struct RadialSample {
    double theta = 0;  // radians, for display
    long N = 0;
    BigComplex value;
    int j = 0;
    Sign sign = Sign::plus;
    mpfr_prec_t prec = 0;  // precision actually used after cancellation control
};

BigComplex radial_tau(const Rational& theta_over_pi, long N, mpfr_prec_t prec);

// H^±_{0,j}(q) on the ray; the precision is raised when the summands cancel
std::vector<RadialSample> radial_samples(int j, Sign sign, const Rational& theta_over_pi,
                                         const std::vector<long>& N_list, mpfr_prec_t prec);

struct RichardsonResult {
    BigComplex limit;
    BigFloat error;                   // |last − previous| on the diagonal
    std::vector<BigComplex> diagonal; // extrapolants of increasing depth
    BigComplex best;                  // the extrapolant with the smallest change from its predecessor
    BigFloat best_error;
    int best_depth = 0;
};

// Polynomial extrapolation in 1/N to 1/N = 0 from the last depth+1 samples.
// depth = 0 returns the last value.
RichardsonResult richardson(const std::vector<BigComplex>& values, const std::vector<long>& N, int depth);

// one row of the table of radial asymptotics:
// H^sign_{0,j} ≈ coeff · e^{πi·phase8/4} · τ^{tau_pow} · (q/q̃)^{qqt_pow} · q̃^{qt_pow} · Φ̂^{(σ)}(hbar_sign·ℏ)
struct QasyRow {
    int j = 0;
    Sign sign = Sign::plus;
    Rational coeff;
    int phase8 = 0;
    int tau_pow = 0;
    Rational qqt_pow;
    Rational qt_pow;
    int sigma = 1;
    int hbar_sign = 1;

    std::string describe() const;
    BigComplex prefactor(const ModularPair& pair) const;
};

// the twelve rows as printed
std::vector<QasyRow> qasy_table();
const QasyRow& qasy_row(int j, Sign sign);

// Substituting the table into ½H⁺₀H⁻₂ − H⁺₁H⁻₁ + ½H⁺₂H⁻₀ − H⁺₃H⁻₃ + ¼H⁺₄H⁻₄ − H⁺₅H⁻₅
// and collecting equal monomials; true when every coefficient cancels.
bool qasy_quadratic_relation_cancels(std::string* detail = nullptr);

struct MatchCandidate {
    int sigma = 0;
    int hbar_sign = 1;
    long lattice_a = 0, lattice_b = 0;  // V_{0,0} shifted by a·4π² + b·2πi·log α
    double digits = 0;
    BigComplex constant;
};

struct MatchOptions {
    std::vector<long> N_list;  // default 120..200 step 4
    int depth = 12;
    int lattice_range = 2;
    static MatchOptions desk();
};

struct MatchReport {
    int j = 0;
    Sign sign = Sign::plus;
    double theta = 0;
    int sigma = 0;  // designated σ
    int hbar_sign = 1;
    std::string sigma_label;
    std::string prefactor;
    int digits_matched = 0;
    BigComplex constant_ratio;
    long lattice_a = 0, lattice_b = 0;
    MatchCandidate best;                  // over all σ and both signs of ℏ
    std::vector<MatchCandidate> candidates;
    bool no_match = false;                // nothing beyond 2 digits

    bool pass(int min_digits = 5, double unimodular_tol = 1e-4) const;
};

MatchReport asymptotic_match(int j, Sign sign, const Rational& theta_over_pi, int K, mpfr_prec_t prec,
                             const MatchOptions& opts = MatchOptions::desk());

// the same comparison for one (σ, ±ℏ) choice on precomputed samples
MatchCandidate match_candidate(const QasyRow& row, int sigma, int hbar_sign, const std::vector<RadialSample>& samples,
                               const Rational& theta_over_pi, int K, mpfr_prec_t prec, const MatchOptions& opts);

}  // namespace hqmf

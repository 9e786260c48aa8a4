#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqmf/bigfloat.hpp"
#include "hqmf/matrix.hpp"
#include "hqmf/qseries.hpp"

namespace hqmf {

class NumericsError : public std::runtime_error {
public:
    enum class Kind { wrong_half_plane, near_pole, nonconvergent, truncation, singular };
    NumericsError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// τ together with b = √τ (principal), c_b = i(b + 1/b)/2, q = e^{2πiτ}, q̃ = e^{-2πi/τ}
struct ModularPair {
    BigComplex tau, b, c_b, q, q_tilde;
    mpfr_prec_t prec = 128;

    static ModularPair from_tau(const BigComplex& tau, mpfr_prec_t prec);
    static ModularPair from_tau(const Rational& re, const Rational& im, mpfr_prec_t prec);

    // fractional powers always through the exponential, never through log q
    BigComplex q_pow(const Rational& r) const;        // e^{2πiτr}
    BigComplex q_tilde_pow(const Rational& r) const;  // e^{-2πir/τ}
    BigFloat pi() const { return bf_pi(prec); }
};

// (x; q)_∞ for |q| < 1, stopping once the running factor is within 2^{-prec-8} of one
BigComplex qpochhammer(const BigComplex& x, const BigComplex& q, mpfr_prec_t prec);
// (x; q)_n, n >= 0
BigComplex qpochhammer_finite(const BigComplex& x, const BigComplex& q, long n);

BigComplex faddeev(const ModularPair& pair, const BigComplex& x);

// pole x_{m,n} = i(m+½)b + i(n+½)/b of Φ_b
BigComplex faddeev_pole(const ModularPair& pair, long m, long n);

enum class QuadratureScheme { trapezoid, tanh_sinh };

// The contour is x(t) = offset + iε + t + i·tan(bend)(√(t²+1) − 1), t ∈ [−R, R]
struct ContourSpec {
    BigComplex offset;
    BigFloat epsilon;
    BigFloat half_width;  // zero: chosen from the decay of the integrand
    long node_count = 0;  // initial nodes on [−R, R]; doubled until converged
    QuadratureScheme scheme = QuadratureScheme::trapezoid;
    double bend = 0.35;

    // offset c_b/2, ε = |b|/10
    static ContourSpec standard(const ModularPair& pair);
};

struct ZValue {
    BigComplex value;
    BigFloat error;  // change under the last node doubling
    BigFloat half_width;
    long nodes = 0;
};

BigComplex descendant_integrand(const ModularPair& pair, long lambda, long lambda_prime, const BigComplex& x);
ZValue descendant_Z(const ModularPair& pair, long lambda, long lambda_prime, const ContourSpec& contour);
ZValue descendant_Z(const ModularPair& pair, long lambda, long lambda_prime);
// (q̃/q)^{1/24} Z
BigComplex renormalized_Z(const ModularPair& pair, const BigComplex& z);
// closest approach of the contour to a pole of the integrand
BigFloat contour_pole_distance(const ModularPair& pair, const ContourSpec& contour);

// H^±_{λ,j} evaluated at q^{1/8} = x8 by direct summation; `order` caps the
// q-exponent (units of 1/8) of the summands used, 0 means "until converged"
struct HValue {
    BigComplex value;
    BigFloat tail;  // size of the first summand left out
    BigFloat peak;  // largest summand, for judging cancellation
};
HValue h_numeric(const SeriesFamilyKey& key, const BigComplex& x8, mpfr_prec_t prec, Exp order = 0);

// inside: H^+_{λ,j}(q);  outside: h_{λ,j}(τ^{-1}) = (−1)^{δ_j} H^-_{−λ,j}(q̃)
HValue h_value(const ModularPair& pair, long lambda, int j, Branch branch, Exp order = 0);

using ComplexMatrix = std::vector<std::vector<BigComplex>>;

ComplexMatrix complex_matrix(std::size_t n, std::size_t m, mpfr_prec_t prec);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix inverse(const ComplexMatrix& a);  // Gauss–Jordan with partial pivoting
BigFloat max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// the two middle matrices
ComplexMatrix descendant_middle(const ModularPair& pair);  // of F
ComplexMatrix cocycle_middle(const ModularPair& pair);     // of the cocycle, as printed

struct FactorizationReport {
    BigComplex lhs;           // 2e^{πi/4} q^{−λ/2} q̃^{−λ'/2} Z
    BigComplex rhs;           // bilinear form with the middle matrix of F, q̃-index +λ'
    BigComplex rhs_literal;   // outside branch h_{λ',j}(τ^{-1}) and +h_1h_1 term
    BigFloat residual;        // |lhs − rhs|
    BigFloat literal_residual;
    BigFloat quadrature_error;
    BigFloat truncation;      // largest neglected series term
};
FactorizationReport factorization(const ModularPair& pair, long lambda, long lambda_prime, Exp series_order = 0);
BigFloat factorization_residual(const ModularPair& pair, long lambda, long lambda_prime, Exp series_order = 0);

struct CocycleReport {
    ComplexMatrix F;
    ComplexMatrix Wcoc;          // (W_λ'(q̃)^T)^{-1} D_c W_λ(q)^T with D_c as printed
    ComplexMatrix Wcoc_from_F;   // (Q(λ', q̃)^T)^{-1} F
    BigFloat consistency;        // max entry difference of the two
    BigFloat middle_mismatch;    // |D_c − D^{-1} M_F|, D the orthogonality pairing
};
CocycleReport cocycle_matrices(const ModularPair& pair, long lambda, long lambda_prime, Exp series_order = 0);

// indices of the state integral carried by F(a, b) (0-based)
std::pair<long, long> descendant_entry_indices(long lambda, long lambda_prime, std::size_t a, std::size_t b);
// 2e^{πi/4} q^{−λ/2} q̃^{−λ'/2} Z^{(λ,λ')}
BigComplex normalized_Z(const ModularPair& pair, long lambda, long lambda_prime, const BigComplex& z);

struct EtaQuotientReport {
    std::array<BigFloat, 3> connection;  // the three identities as printed
    BigFloat connection2_corrected;      // second identity with (q̃^{-1/2}; q̃) in the denominator
    BigFloat eta;                        // (q;q)/(q̃;q̃) = e^{πi/4}(q/q̃)^{1/24}τ^{-1/2} as printed
    BigFloat eta_corrected;              // with (q̃/q)^{1/24}
    BigFloat max_residual() const;       // over the printed forms
};
EtaQuotientReport eta_quotient_check(const ModularPair& pair);

// residue of Φ_b at x_{m,n} from the formula, and by 4-point Richardson on (x − x_{m,n})Φ_b(x)
BigComplex faddeev_residue_formula(const ModularPair& pair, long m, long n);
BigComplex faddeev_residue_numeric(const ModularPair& pair, long m, long n);

// |Φ(x+c_b+ib)/Φ(x+c_b) − 1/(1 − q e^{2πbx})| and the b^{-1} companion
std::array<BigFloat, 2> quasi_periodicity_residual(const ModularPair& pair, const BigComplex& x);
// |Φ(x)Φ(−x) − e^{πix²}Φ(0)²| and |Φ(0)² − q^{1/24}q̃^{−1/24}|
std::array<BigFloat, 2> inversion_residual(const ModularPair& pair, const BigComplex& x);

}  // namespace hqmf

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqmf/laurent.hpp"
#include "hqmf/matrix.hpp"
#include "hqmf/qseries.hpp"

namespace hqmf {

using LaurentMatrix = RingMatrix<LaurentPoly>;
using SeriesMatrix = RingMatrix<QSeries>;

// Coefficients c_0..c_6 of the operator Σ c_k(q, Λ) y_{λ+k}, Λ = q^λ
using RecurrenceOperator = std::array<LaurentPoly, 7>;

RecurrenceOperator hqdiff_operator();
// the same operator read off the last row of the companion matrix A
RecurrenceOperator companion_operator();

LaurentMatrix companion_A();
LaurentMatrix companion_A_tilde();  // as printed
LaurentMatrix quad_Q();
RingMatrix<Rational> pairing_D();
LaurentMatrix pairing_D_laurent();

// entries of a Laurent matrix at Λ = q^λ
SeriesMatrix at_lambda(const LaurentMatrix& m, long lambda);

// Σ c_k y_{λ+k} with y_μ = H_{μ,j}; for the outside branch the series variable is u = 1/q
QSeries recurrence_residual(int j, long lambda, Branch branch, Exp order);

// rows i = 0..5 hold H_{λ+i,j}(q) (inside), or H_{λ+i,j}(1/q) as a series in q (outside)
SeriesMatrix wronskian(long lambda, Branch branch, Exp order);

// determinant by expansion along rows, memoized over column subsets
template <class R>
R minor_det(const RingMatrix<R>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return R();
    if (n > 16) throw std::invalid_argument("minor_det is meant for small matrices");
    const std::size_t full = (std::size_t(1) << n) - 1;
    std::vector<R> dp(full + 1, zero_like(m(0, 0)));
    std::vector<bool> nonzero(full + 1, false);
    dp[0] = one_like(m(0, 0));
    nonzero[0] = true;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
        bool started = false;
        R acc = dp[0];
        std::size_t pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask >> c & 1)) continue;
            const std::size_t rest = mask ^ (std::size_t(1) << c);
            if (nonzero[rest] && !is_zero(m(r, c))) {
                R term = m(r, c) * dp[rest];
                if ((r + pos) % 2) term = -term;
                acc = started ? R(acc + term) : term;
                started = true;
            }
            ++pos;
        }
        if (started) {
            dp[mask] = std::move(acc);
            nonzero[mask] = true;
        }
    }
    return dp[full];
}

// adjugate (transpose of the cofactor matrix)
template <class R>
RingMatrix<R> adjugate(const RingMatrix<R>& m) {
    const std::size_t n = m.rows();
    if (n != m.cols() || n == 0) throw std::invalid_argument("adjugate of a non-square matrix");
    RingMatrix<R> adj(n, n, zero_like(m(0, 0)));
    if (n == 1) {
        adj(0, 0) = one_like(m(0, 0));
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RingMatrix<R> sub(n - 1, n - 1, zero_like(m(0, 0)));
            for (std::size_t a = 0, ra = 0; a < n; ++a) {
                if (a == i) continue;
                for (std::size_t b = 0, cb = 0; b < n; ++b) {
                    if (b == j) continue;
                    sub(ra, cb++) = m(a, b);
                }
                ++ra;
            }
            R d = minor_det(sub);
            adj(j, i) = ((i + j) % 2) ? R(-d) : d;
        }
    return adj;
}

QSeries wronskian_det(long lambda, Exp order);
QSeries expected_wronskian_det(long lambda);  // 32 q^{λ+11/4}
// ε-part of det W_λ with ℰ2 -> ℰ2 + εq
QSeries wronskian_det_eisenstein_part(long lambda, Exp order);

// W_λ(q) D W_{-λ-5}(1/q)^T - Q(λ, q)
SeriesMatrix orthogonality_residual(long lambda, Exp order);
// W_λ(q) D W_{-λ-5}(1/q)^T itself
SeriesMatrix orthogonality_product(long lambda, Exp order);

// ½H⁺₀H⁻₂ − H⁺₁H⁻₁ + ½H⁺₂H⁻₀ − H⁺₃H⁻₃ + ¼H⁺₄H⁻₄ − H⁺₅H⁻₅ at index λ
QSeries quadratic_relation(long lambda, Exp order);

// W_λ^{-1} Q(λ) (W_{-λ-5}(1/q)^{-1})^T
SeriesMatrix pairing_matrix(long lambda, Exp order);

struct SymbolicCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // first offending entry, empty on success
};

struct SelfDualityReport {
    std::vector<SymbolicCheck> checks;
    bool pass() const;
    const SymbolicCheck& at(const std::string& name) const;
};

// exact identities over ℚ[q^{±1}, Λ^{±1}]
SelfDualityReport verify_symbolic_selfduality();

// the companion relations W_{λ+1} = A W_λ and W_{-λ-1}(1/q) = Ã(λ) W_{-λ}(1/q) as series
SeriesMatrix companion_residual(long lambda, Exp order);
SeriesMatrix dual_companion_residual(long lambda, Exp order);

bool all_zero(const SeriesMatrix& m);
// lowest nonzero term of a series matrix, "" when all entries vanish
std::string first_nonzero_term(const SeriesMatrix& m);

}  // namespace hqmf

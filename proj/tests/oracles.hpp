#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "hqmf/matrix.hpp"
#include "hqmf/rational.hpp"

namespace oracle {

using hqmf::is_zero;
using hqmf::one_like;
using hqmf::zero_like;

// determinant by cofactor expansion along the first row
template <class R>
R laplace_det(const hqmf::RingMatrix<R>& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    R acc = zero_like(m(0, 0));
    for (std::size_t c = 0; c < n; ++c) {
        hqmf::RingMatrix<R> minor(n - 1, n - 1, zero_like(m(0, 0)));
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, cc++) = m(i, j);
            }
        }
        R term = m(0, c) * laplace_det(minor);
        acc = (c % 2 == 0) ? R(acc + term) : R(acc - term);
    }
    return acc;
}

// determinant as the signed sum over all permutations
template <class R>
R leibniz_det(const hqmf::RingMatrix<R>& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    R acc = zero_like(m(0, 0));
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        R term = m(0, perm[0]);
        for (std::size_t i = 1; i < n; ++i) term = term * m(i, perm[i]);
        acc = (inversions % 2) ? R(acc - term) : R(acc + term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

inline hqmf::Rational random_rational(std::mt19937& rng, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    hqmf::Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

// number of divisors of n
inline long divisor_count(long n) {
    long c = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

// sum of divisors of n
inline long divisor_sum(long n) {
    long c = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) c += d;
    return c;
}

// Bernoulli numbers B_0..B_n (B_1 = -1/2) from sum_{k<=m} C(m+1,k) B_k = 0
inline std::vector<hqmf::Rational> bernoulli_numbers(int n) {
    std::vector<hqmf::Rational> b(static_cast<std::size_t>(n) + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        hqmf::Rational s = 0;
        hqmf::Integer binom = 1;  // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            s += hqmf::Rational(binom) * b[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        b[m] = -s / (m + 1);
    }
    return b;
}

}  // namespace oracle

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hqmf {

// Dense matrix over a commutative ring R.
template <class R>
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols, const R& fill = R())
        : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
    RingMatrix(std::vector<std::vector<R>> rows) {  // NOLINT
        rows_ = rows.size();
        cols_ = rows_ ? rows[0].size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix rows");
            for (auto& x : r) e_.push_back(std::move(x));
        }
    }

    static RingMatrix identity(std::size_t n, const R& zero, const R& one) {
        RingMatrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    R& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RingMatrix transpose() const {
        RingMatrix t(cols_, rows_, rows_ && cols_ ? e_[0] : R());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <class F>
    auto map(F&& f) const -> RingMatrix<decltype(f(std::declval<const R&>()))> {
        using D = decltype(f(std::declval<const R&>()));
        std::vector<std::vector<D>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(f((*this)(i, j)));
        return RingMatrix<D>(std::move(out));
    }

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch in product");
        std::vector<std::vector<R>> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < b.cols_; ++j) {
                bool started = false;
                R acc{};
                for (std::size_t k = 0; k < a.cols_; ++k) {
                    if (is_zero(a(i, k)) || is_zero(b(k, j))) continue;
                    R term = a(i, k) * b(k, j);
                    acc = started ? R(acc + term) : term;
                    started = true;
                }
                if (!started) acc = zero_like(a.rows_ && a.cols_ ? a(i, 0) : b(0, j));
                out[i].push_back(std::move(acc));
            }
        }
        return RingMatrix(std::move(out));
    }
    friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) { return zip(a, b, false); }
    friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) { return zip(a, b, true); }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (!(a.e_[i] == b.e_[i])) return false;
        return true;
    }

    bool all_zero() const {
        for (const auto& x : e_)
            if (!is_zero(x)) return false;
        return true;
    }

private:
    static RingMatrix zip(const RingMatrix& a, const RingMatrix& b, bool sub) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
        RingMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = sub ? R(a.e_[i] - b.e_[i]) : R(a.e_[i] + b.e_[i]);
        return r;
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<R> e_;
};

// Fraction-free (Bareiss) determinant.  Requires exact_div to be exact on
// the quotients that arise, which holds over any integral domain.  Pivots
// are chosen by the lowest pivot_score among nonzero candidates.
template <class R>
R bareiss_det(RingMatrix<R> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return R();
    R one = one_like(m(0, 0));
    R prev = one;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n || k == 0; ++k) {
        std::size_t piv = n;
        int best = 0;
        for (std::size_t i = k; i < n; ++i) {
            if (is_zero(m(i, k))) continue;
            int s = pivot_score(m(i, k));
            if (piv == n || s < best) {
                piv = i;
                best = s;
            }
        }
        if (piv == n) return zero_like(m(0, 0));
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            negate = !negate;
        }
        if (k + 1 >= n) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                R num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = exact_div(num, prev);
            }
            m(i, k) = zero_like(prev);
        }
        prev = m(k, k);
    }
    R d = m(n - 1, n - 1);
    return negate ? R(-d) : d;
}

}  // namespace hqmf

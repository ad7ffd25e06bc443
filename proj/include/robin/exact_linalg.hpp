#pragma once

#include <robin/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace robin {

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("exact solve: singular matrix") {}
};

/// Minimal row-major dense matrix for the exact solvers.
template <class T>
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<T> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, T init = T(0)) : rows(r), cols(c), data(r * c, init) {}

    T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Exact Gaussian elimination with pivot-row normalization. Works over any
/// exact field type (Rat in production use).
template <class T>
std::vector<T> gauss_solve(DenseMatrix<T> a, std::vector<T> b) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw std::invalid_argument("gauss_solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == T(0)) ++piv;
        if (piv == n) throw SingularMatrix();
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        const T inv_piv = T(1) / a(col, col);
        for (std::size_t j = col; j < n; ++j) a(col, j) *= inv_piv;
        b[col] *= inv_piv;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == T(0)) continue;
            const T factor = a(i, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
            b[i] -= factor * b[col];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s;  // pivot already normalized to 1
    }
    return x;
}

/// Fraction-free (Bareiss) elimination over the integers after clearing row
/// denominators. Intermediate entries are exact minors, so nothing is lost to
/// gcd churn even when coefficients carry large powers like q^(2|n|).
inline std::vector<Rat> bareiss_solve(const DenseMatrix<Rat>& a, const std::vector<Rat>& b) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw std::invalid_argument("bareiss_solve: shape mismatch");

    DenseMatrix<BigInt> m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        BigInt lcm = denominator(b[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const BigInt& d = denominator(a(i, j));
            lcm = lcm / gcd(lcm, d) * d;
        }
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = numerator(a(i, j)) * (lcm / denominator(a(i, j)));
        m(i, n) = numerator(b[i]) * (lcm / denominator(b[i]));
    }

    BigInt prev_pivot(1);
    for (std::size_t col = 0; col + 1 < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) throw SingularMatrix();
        if (piv != col)
            for (std::size_t j = col; j <= n; ++j) std::swap(m(col, j), m(piv, j));
        for (std::size_t i = col + 1; i < n; ++i) {
            for (std::size_t j = col + 1; j <= n; ++j)
                m(i, j) = (m(i, j) * m(col, col) - m(i, col) * m(col, j)) / prev_pivot;
            m(i, col) = 0;
        }
        prev_pivot = m(col, col);
    }
    if (m(n - 1, n - 1) == 0) throw SingularMatrix();

    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = n; i-- > 0;) {
        Rat s(m(i, n));
        for (std::size_t j = i + 1; j < n; ++j) s -= Rat(m(i, j)) * x[j];
        x[i] = s / Rat(m(i, i));
    }
    return x;
}

}  // namespace robin

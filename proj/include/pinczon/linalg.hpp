#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace pinczon {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zero_matrix(std::size_t rows, std::size_t cols) {
    return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

inline Matrix identity_matrix(std::size_t n) {
    auto m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    auto c = zero_matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline Matrix transpose(const Matrix& a) {
    const std::size_t n = a.size(), m = n ? a[0].size() : 0;
    auto t = zero_matrix(m, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
    return t;
}

namespace detail {

/// Integer row echelon form by Bareiss elimination. Pivots are searched only
/// in the first `pivot_cols` columns; later columns are carried along.
struct Echelon {
    std::vector<std::vector<Integer>> rows;
    std::vector<std::size_t> pivots;
};

inline Echelon bareiss(const Matrix& m, std::size_t pivot_cols) {
    Echelon e;
    for (const auto& row : m) {
        Integer l = 1;
        for (const auto& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<Integer> r;
        r.reserve(row.size());
        for (const auto& v : row) r.push_back(v.get_num() * (l / v.get_den()));
        e.rows.push_back(std::move(r));
    }
    auto& A = e.rows;
    const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && A[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                A[i][j] = A[r][c] * A[i][j] - A[i][c] * A[r][j];
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            A[i][c] = 0;
        }
        prev = A[r][c];
        e.pivots.push_back(c);
        ++r;
    }
    A.resize(r);
    return e;
}

/// Solves the echelon system restricted to the first n columns for x, given
/// the values of the free variables and an optional right-hand column.
inline std::vector<Rational> back_substitute(const Echelon& e, std::size_t n, std::vector<Rational> x,
                                             std::optional<std::size_t> rhs) {
    for (std::size_t r = e.pivots.size(); r-- > 0;) {
        const auto& row = e.rows[r];
        const std::size_t pc = e.pivots[r];
        Rational acc = rhs ? Rational(row[*rhs]) : Rational(0);
        for (std::size_t j = pc + 1; j < n; ++j)
            if (row[j] != 0 && sgn(x[j]) != 0) acc -= Rational(row[j]) * x[j];
        x[pc] = acc / Rational(row[pc]);
    }
    return x;
}

}  // namespace detail

struct RankResult {
    std::size_t rank = 0;
    /// Basis of the right kernel, one vector per free column.
    std::vector<std::vector<Rational>> kernel;
};

/// Exact rank and right-kernel basis (fraction-free elimination).
inline RankResult rational_rank(const Matrix& m, std::size_t cols_if_empty = 0) {
    const std::size_t n = m.empty() ? cols_if_empty : m[0].size();
    auto e = detail::bareiss(m, n);
    RankResult out;
    out.rank = e.pivots.size();
    std::vector<char> is_pivot(n, 0);
    for (auto c : e.pivots) is_pivot[c] = 1;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(n, Rational(0));
        x[f] = 1;
        out.kernel.push_back(detail::back_substitute(e, n, std::move(x), std::nullopt));
    }
    return out;
}

/// Rank only; skips the kernel back-substitution.
inline std::size_t matrix_rank(const Matrix& m) {
    if (m.empty()) return 0;
    return detail::bareiss(m, m[0].size()).pivots.size();
}

/// Exact inverse, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix aug = m;
    for (std::size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) return std::nullopt;
        aug[i].resize(2 * n, Rational(0));
        aug[i][n + i] = 1;
    }
    auto e = detail::bareiss(aug, n);
    if (e.pivots.size() != n) return std::nullopt;
    auto inv = zero_matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        auto x = detail::back_substitute(e, n, std::vector<Rational>(n, Rational(0)), n + c);
        for (std::size_t i = 0; i < n; ++i) inv[i][c] = x[i];
    }
    return inv;
}

}  // namespace pinczon

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace thoma {

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix rat_identity(std::size_t n) {
    RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    RatMatrix out(n, std::vector<Rat>(c, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline RatMatrix mat_sub(RatMatrix a, const RatMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
    return a;
}

inline RatMatrix mat_scale(RatMatrix a, const Rat& s) {
    for (auto& row : a)
        for (auto& x : row) x *= s;
    return a;
}

inline Rat mat_trace(const RatMatrix& a) {
    Rat t{0};
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

inline bool mat_is_zero(const RatMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

/// Coefficients of det(xI - A), monic, ascending: out[k] multiplies x^k.
/// Faddeev–LeVerrier over exact rationals.
inline std::vector<Rat> char_poly(const RatMatrix& a) {
    const std::size_t n = a.size();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix m = rat_identity(n);
    Rat ck{1};
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        RatMatrix am = mat_mul(a, m);
        ck = -mat_trace(am) / Rat(static_cast<int>(k));
        c[n - k] = ck;
        m = am;
        for (std::size_t i = 0; i < n; ++i) m[i][i] += ck;
    }
    return c;
}

/// Exact positive semidefiniteness of a symmetric rational matrix, by
/// diagonally pivoted elimination: a PSD matrix with a zero diagonal entry
/// must have that whole row zero, and every pivot must be positive.
inline bool psd_exact(RatMatrix m, std::string* witness = nullptr) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t j = k; j < n; ++j) {
            if (m[j][j] < 0) {
                if (witness) *witness = "negative diagonal entry at index " + std::to_string(j);
                return false;
            }
            if (piv == n && m[j][j] > 0) piv = j;
        }
        if (piv == n) {
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (m[i][j] != 0) {
                        if (witness)
                            *witness = "zero diagonal with nonzero entry at (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")";
                        return false;
                    }
            return true;
        }
        if (piv != k) {
            std::swap(m[piv], m[k]);
            for (std::size_t i = 0; i < n; ++i) std::swap(m[i][piv], m[i][k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const Rat f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
        for (std::size_t i = k + 1; i < n; ++i) m[k][i] = 0;  // keep symmetric view
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m[j][i] = m[i][j];
    }
    return true;
}

/// Solves A x = b exactly; returns nullopt when the (possibly overdetermined)
/// system is inconsistent or underdetermined.
inline std::optional<std::vector<Rat>> solve_exact(RatMatrix a, std::vector<Rat> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_row(cols, rows);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        std::swap(b[p], b[rank]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][c] == 0) continue;
            const Rat f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_row[c] = rank;
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivot_row[c] == rows) return std::nullopt;
        x[c] = b[pivot_row[c]] / a[pivot_row[c]][c];
    }
    return x;
}

}  // namespace thoma

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "check.hpp"
#include "rational.hpp"

namespace thoma {

// ---------------------------------------------------------------------------
// The Pascal-triangle toy chain. States at level n are pairs (a, b) with
// a + b = n; the uniform measure is stationary and the scaling limit is the
// Jacobi-type diffusion x(1-x) d^2/dx^2 + (1-2x) d/dx on [0,1].
// ---------------------------------------------------------------------------

struct PascalMove {
    long a;
    long b;
    Rat prob;
};

/// Row of the level-(a+b) up-down chain at state (a, b): move right/left or
/// stay, with the three exact probabilities.
inline std::vector<PascalMove> pascal_row(long a, long b) {
    if (a < 0 || b < 0 || a + b < 1) throw std::invalid_argument("pascal_row: need a+b >= 1");
    const Rat denom = Rat((a + b + 2)) * Rat((a + b + 1));
    std::vector<PascalMove> out;
    if (b >= 1) out.push_back({a + 1, b - 1, Rat((a + 1) * b) / denom});
    if (a >= 1) out.push_back({a - 1, b + 1, Rat(a * (b + 1)) / denom});
    out.push_back({a, b, Rat((a + 1) * (a + 1) + (b + 1) * (b + 1)) / denom});
    return out;
}

/// Uniform measure on level n is stationary: column sums of T_n equal 1.
inline Verdict pascal_uniform_stationary(long n) {
    std::vector<Rat> col(static_cast<std::size_t>(n + 1), Rat(0));
    for (long a = 0; a <= n; ++a)
        for (const auto& mv : pascal_row(a, n - a)) col[static_cast<std::size_t>(mv.a)] += mv.prob;
    for (long a = 0; a <= n; ++a)
        if (col[static_cast<std::size_t>(a)] != 1)
            return Verdict::fail("column sum at a=" + std::to_string(a) + " is " +
                                 format_rat(col[static_cast<std::size_t>(a)]));
    return Verdict::pass();
}

// Dense univariate polynomials with rational coefficients, ascending order.
using Poly1 = std::vector<Rat>;

inline Rat poly_eval(const Poly1& f, const Rat& x) {
    Rat r{0};
    for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

inline Poly1 poly_derivative(const Poly1& f) {
    Poly1 g;
    for (std::size_t i = 1; i < f.size(); ++i) g.push_back(f[i] * Rat(i));
    return g;
}

inline Poly1 poly_mul(const Poly1& f, const Poly1& g) {
    if (f.empty() || g.empty()) return {};
    Poly1 h(f.size() + g.size() - 1, Rat(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    return h;
}

inline Poly1 poly_add(Poly1 f, const Poly1& g) {
    if (g.size() > f.size()) f.resize(g.size(), Rat(0));
    for (std::size_t i = 0; i < g.size(); ++i) f[i] += g[i];
    return f;
}

/// The limit generator x(1-x) f'' + (1-2x) f' as an exact polynomial map.
inline Poly1 pascal_limit_generator(const Poly1& f) {
    const Poly1 f1 = poly_derivative(f);
    const Poly1 f2 = poly_derivative(f1);
    return poly_add(poly_mul({Rat(0), Rat(1), Rat(-1)}, f2), poly_mul({Rat(1), Rat(-2)}, f1));
}

/// Sup over level-n states of | n^2 (T_n - 1) f(a/n) - (Af)(a/n) |, exact.
/// Expected to decay like 1/n for polynomial f.
inline Rat pascal_generator_residual(const Poly1& f, long n) {
    const Poly1 af = pascal_limit_generator(f);
    Rat worst{0};
    for (long a = 0; a <= n; ++a) {
        const Rat x(a, n);
        Rat tf{0};
        for (const auto& mv : pascal_row(a, n - a)) tf += mv.prob * poly_eval(f, Rat(mv.a, n));
        Rat r = Rat(n) * Rat(n) * (tf - poly_eval(f, x)) - poly_eval(af, x);
        if (rat_abs(r) > worst) worst = rat_abs(r);
    }
    return worst;
}

}  // namespace thoma

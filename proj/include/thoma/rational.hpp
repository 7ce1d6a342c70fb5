#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thoma {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    BigInt r{1};
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

/// n(n-1)...(n-m+1); zero when m > n >= 0.
inline BigInt falling_factorial(int n, int m) {
    BigInt r{1};
    for (int k = 0; k < m; ++k) r *= (n - k);
    return r;
}

/// (x)_m = x(x+1)...(x+m-1).
inline Rat rising_factorial(const Rat& x, int m) {
    Rat r{1};
    for (int k = 0; k < m; ++k) r *= (x + k);
    return r;
}

inline Rat rat_pow(const Rat& x, unsigned k) {
    Rat r{1}, base = x;
    while (k) {
        if (k & 1u) r *= base;
        base *= base;
        k >>= 1u;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline BigInt rat_floor(const Rat& x) {
    BigInt q = numerator(x) / denominator(x);  // truncates toward zero
    if (x < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

/// Canonical serialization, always "num/den" with positive denominator.
inline std::string format_rat(const Rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Accepts "num" or "num/den" with optional leading '-'. Rejects den == 0.
inline std::optional<Rat> parse_rat(std::string_view s) {
    auto is_int = [](std::string_view t) {
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    if (!is_int(num)) return std::nullopt;
    BigInt n{std::string(num)};
    if (slash == std::string_view::npos) return Rat(n);
    std::string_view den = s.substr(slash + 1);
    if (!is_int(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rat(n, d);
}

}  // namespace thoma

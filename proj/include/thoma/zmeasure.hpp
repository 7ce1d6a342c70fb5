#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "check.hpp"
#include "dimension.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "symfunc.hpp"

namespace thoma {

// ---------------------------------------------------------------------------
// Parameters. The pair (z, z') enters every formula only through
// e = z + z' and d = z z', so we carry (e, d) as exact rationals; the
// principal series (complex conjugate z) never needs complex arithmetic.
// ---------------------------------------------------------------------------

enum class Series { principal, complementary, non_admissible };

struct ZParams {
    Rat e;  // z + z'
    Rat d;  // z z'
    Series series = Series::non_admissible;

    bool admissible() const { return series != Series::non_admissible; }
};

inline const char* series_name(Series s) {
    switch (s) {
        case Series::principal: return "principal";
        case Series::complementary: return "complementary";
        default: return "non-admissible-algebraic";
    }
}

/// Series classification by rational sign tests only (no root extraction):
/// principal when z, z' are a non-real conjugate pair (e^2 - 4d < 0);
/// complementary when both roots of t^2 - e t + d lie strictly inside one
/// open unit interval (N, N+1), detected by the sign of the quadratic at the
/// integer endpoints.
inline ZParams classify(const Rat& e, const Rat& d) {
    ZParams p{e, d, Series::non_admissible};
    const Rat disc = e * e - 4 * d;
    if (disc < 0) {
        p.series = Series::principal;
        return p;
    }
    const Rat half = e / 2;
    const BigInt nfloor = rat_floor(half);
    if (Rat(nfloor) != half) {
        const Rat qn = Rat(nfloor) * Rat(nfloor) - e * Rat(nfloor) + d;
        const Rat qn1 = Rat(nfloor + 1) * Rat(nfloor + 1) - e * Rat(nfloor + 1) + d;
        if (qn > 0 && qn1 > 0) p.series = Series::complementary;
    }
    return p;
}

inline ZParams classify(const std::string& e, const std::string& d) {
    auto pe = parse_rat(e), pd = parse_rat(d);
    if (!pe || !pd) throw std::invalid_argument("classify: bad rational literal");
    return classify(*pe, *pd);
}

/// (z + c)(z' + c) = c^2 + e c + d for a box of content c.
inline Rat box_factor(int content, const ZParams& params) {
    return Rat(content) * Rat(content) + params.e * Rat(content) + params.d;
}

/// (zz')_n = d(d+1)...(d+n-1).
inline Rat zz_pochhammer(const ZParams& params, int n) { return rising_factorial(params.d, n); }

/// Weight of la under the level-n z-measure:
/// prod over boxes of box_factor(content) / (zz')_n * (dim la)^2 / n!.
/// Requires (zz')_n != 0 (in particular d not in {0,-1,-2,...}).
inline Rat z_weight(const Partition& la, const ZParams& params) {
    const int n = la.size();
    const Rat denom = zz_pochhammer(params, n);
    if (denom == 0) throw std::domain_error("z_weight: (zz')_n vanishes for d = " + format_rat(params.d));
    Rat w{1};
    for (int i = 1; i <= la.num_rows(); ++i)
        for (int j = 1; j <= la.row(i); ++j) w *= box_factor(j - i, params);
    const BigInt dm = dim(la);
    return w / denom * Rat(dm * dm, factorial(n));
}

/// The level-n z-measure, indexed in enumerate_level order.
struct LevelMeasure {
    int level = 0;
    std::vector<Partition> support;
    std::vector<Rat> weights;

    Rat total() const {
        Rat s{0};
        for (const Rat& w : weights) s += w;
        return s;
    }
    Rat of(const Partition& la) const {
        for (std::size_t i = 0; i < support.size(); ++i)
            if (support[i] == la) return weights[i];
        throw std::invalid_argument("LevelMeasure: partition not at this level");
    }
};

inline LevelMeasure level_measure(int n, const ZParams& params) {
    LevelMeasure m;
    m.level = n;
    m.support = enumerate_level(n);
    m.weights.reserve(m.support.size());
    for (const auto& la : m.support) m.weights.push_back(z_weight(la, params));
    return m;
}

// ---------------------------------------------------------------------------
// Transition kernels between adjacent levels, stored sparse per row.
// Row order and target indices follow enumerate_level.
// ---------------------------------------------------------------------------

struct TransitionKernel {
    int source_level = 0;
    int target_level = 0;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> rows;

    Rat row_sum(std::size_t i) const {
        Rat s{0};
        for (const auto& [j, p] : rows[i]) s += p;
        return s;
    }
};

/// p_down(la, mu) = dim(mu)/dim(la) on mu -> la covers; parameter free.
inline TransitionKernel down_kernel(int n) {
    if (n < 1) throw std::invalid_argument("down_kernel: n must be >= 1");
    TransitionKernel k;
    k.source_level = n;
    k.target_level = n - 1;
    const auto src = enumerate_level(n);
    const auto dst = enumerate_level(n - 1);
    std::map<Partition, std::size_t> index;
    for (std::size_t j = 0; j < dst.size(); ++j) index.emplace(dst[j], j);
    k.rows.resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const BigInt dla = dim(src[i]);
        for (const auto& b : src[i].removable()) {
            Partition mu = src[i].with_box_removed(b.row);
            k.rows[i].emplace_back(index.at(mu), Rat(dim(mu), dla));
        }
    }
    return k;
}

/// p_up(la, la+box) = box_factor(content) / (zz'+n) * dim(la+box) / ((n+1) dim(la)).
/// Row sums are exactly 1; this is the identity
/// sum over corners of box_factor(c) * dim(la+box) = (d+n)(n+1) dim(la).
inline TransitionKernel up_kernel(int n, const ZParams& params) {
    if (params.d + n == 0) throw std::domain_error("up_kernel: zz' + n vanishes");
    TransitionKernel k;
    k.source_level = n;
    k.target_level = n + 1;
    const auto src = enumerate_level(n);
    const auto dst = enumerate_level(n + 1);
    std::map<Partition, std::size_t> index;
    for (std::size_t j = 0; j < dst.size(); ++j) index.emplace(dst[j], j);
    k.rows.resize(src.size());
    const Rat denom = (params.d + n) * Rat(n + 1);
    for (std::size_t i = 0; i < src.size(); ++i) {
        const BigInt dla = dim(src[i]);
        for (const auto& b : src[i].addable()) {
            Partition nu = src[i].with_box_added(b.row);
            Rat p = box_factor(b.content(), params) * Rat(dim(nu), dla) / denom;
            k.rows[i].emplace_back(index.at(nu), std::move(p));
        }
    }
    return k;
}

/// M_upper * kernel == M_lower, exactly; reports the first violating target.
inline Verdict check_kernel_consistency(const LevelMeasure& source, const LevelMeasure& target,
                                        const TransitionKernel& kernel) {
    std::vector<Rat> image(target.support.size(), Rat(0));
    for (std::size_t i = 0; i < source.support.size(); ++i)
        for (const auto& [j, p] : kernel.rows[i]) image[j] += source.weights[i] * p;
    for (std::size_t j = 0; j < target.support.size(); ++j)
        if (image[j] != target.weights[j])
            return Verdict::fail("mismatch at " + target.support[j].str() + ": got " +
                                 format_rat(image[j]) + ", want " + format_rat(target.weights[j]));
    return Verdict::pass();
}

/// Coherency at level n: M_n p_down = M_{n-1} and M_n p_up = M_{n+1}.
inline Verdict coherency_check(int n, const ZParams& params) {
    if (n < 1) throw std::invalid_argument("coherency_check: n must be >= 1");
    const LevelMeasure below = level_measure(n - 1, params);
    const LevelMeasure here = level_measure(n, params);
    const LevelMeasure above = level_measure(n + 1, params);
    if (auto v = check_kernel_consistency(here, below, down_kernel(n)); !v)
        return Verdict::fail("down: " + v.witness);
    if (auto v = check_kernel_consistency(here, above, up_kernel(n, params)); !v)
        return Verdict::fail("up: " + v.witness);
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// The expectation functional of the boundary measure on the quotient
// algebra: phi(s_nu) = z_weight(nu) / dim(nu), extended linearly.
// Well-definedness on the quotient (phi vanishes on the ideal (p_1 - 1))
// is a tested property, not an assumption.
// ---------------------------------------------------------------------------

inline Rat phi_schur(const Partition& nu, const ZParams& params) {
    return z_weight(nu, params) / Rat(dim(nu));
}

/// phi on an arbitrary element of the symmetric function algebra.
inline Rat expectation_power_sum(const PowerSumPoly& f, const ZParams& params) {
    Rat total{0};
    for (const auto& [deg, part] : f.by_degree()) {
        const SchurVector sv = p_to_schur(part);
        for (const auto& [nu, c] : sv.coeffs) total += c * phi_schur(nu, params);
    }
    return total;
}

/// Expectation of a moment-coordinate polynomial under the boundary measure,
/// through the canonical lift q_i -> p_{i+1}.
inline Rat boundary_expectation(const QPoly& f, const ZParams& params) {
    if (!params.admissible())
        throw std::domain_error("boundary_expectation: parameters must be principal or complementary");
    return expectation_power_sum(lift_to_power_sums(f), params);
}

}  // namespace thoma

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "check.hpp"
#include "dimension.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "zmeasure.hpp"

namespace thoma {

// ---------------------------------------------------------------------------
// Local kernel rows. These never touch the level-wide matrices: a row is
// assembled from the corners of one diagram with hook-ratio products, so the
// cost per row is O(corners * (rows + columns)) at any level.
// ---------------------------------------------------------------------------

/// One row of the up kernel, as (target, probability) pairs. Exact; the row
/// sums to 1 identically in (e, d) as long as d + n != 0.
inline std::vector<std::pair<Partition, Rat>> up_row(const Partition& la, const ZParams& params) {
    const int n = la.size();
    if (params.d + n == 0) throw std::domain_error("up_row: zz' + n vanishes");
    const Rat denom = (params.d + n) * Rat(n + 1);
    std::vector<std::pair<Partition, Rat>> out;
    for (const auto& b : la.addable())
        out.emplace_back(la.with_box_added(b.row),
                         box_factor(b.content(), params) * up_dim_ratio(la, b.row) / denom);
    return out;
}

/// One row of the down kernel; p(la, la-box) = dim(la-box)/dim(la).
inline std::vector<std::pair<Partition, Rat>> down_row(const Partition& la) {
    std::vector<std::pair<Partition, Rat>> out;
    if (la.size() == 1) {
        out.emplace_back(Partition{}, Rat(1));
        return out;
    }
    for (const auto& b : la.removable())
        out.emplace_back(la.with_box_removed(b.row), down_dim_ratio(la, b.row));
    return out;
}

/// One row of the up-down chain T_n = p_up then p_down (or the down-up
/// variant). Support is {la} together with the diagrams obtained by moving a
/// single boundary box.
inline std::map<Partition, Rat> transition_row(const Partition& la, const ZParams& params,
                                               bool down_up = false) {
    std::map<Partition, Rat> out;
    if (!down_up) {
        for (const auto& [nu, pu] : up_row(la, params))
            for (const auto& [tgt, pd] : down_row(nu)) out[tgt] += pu * pd;
    } else {
        for (const auto& [mu, pd] : down_row(la))
            for (const auto& [tgt, pu] : up_row(mu, params)) out[tgt] += pd * pu;
    }
    return out;
}

/// One step of the chain: sample the intermediate level, then return.
inline Partition chain_step(const Partition& la, const ZParams& params, SampleRng& rng,
                            bool down_up = false) {
    if (!down_up) {
        const Partition nu = sample_discrete(up_row(la, params), rng);
        return sample_discrete(down_row(nu), rng);
    }
    const Partition mu = sample_discrete(down_row(la), rng);
    return sample_discrete(up_row(mu, params), rng);
}

/// Grows the empty diagram to level n through the up kernels; the result is
/// distributed exactly as the level-n z-measure. Rows for small levels are
/// cached so that repeated draws are cheap.
class GrowthSampler {
public:
    GrowthSampler(int n, const ZParams& params, int cache_levels = 14)
        : n_(n), params_(params), cache_cap_(cache_levels) {
        for (int m = 0; m < std::min(n_, cache_cap_); ++m)
            for (const auto& la : enumerate_level(m)) cache_.emplace(la, up_row(la, params_));
    }

    Partition draw(SampleRng& rng) const {
        Partition la;
        for (int m = 0; m < n_; ++m) {
            if (m < cache_cap_) {
                la = sample_discrete(cache_.at(la), rng);
            } else {
                la = sample_discrete(up_row(la, params_), rng);
            }
        }
        return la;
    }

    /// Draw one growth trajectory and snapshot it at the requested levels
    /// (ascending). Each snapshot is exactly z-measure distributed at its
    /// level, and consecutive snapshots are coupled along the same path.
    std::vector<Partition> draw_nested(const std::vector<int>& levels, SampleRng& rng) const {
        std::vector<Partition> out;
        Partition la;
        int m = 0;
        for (int target : levels) {
            for (; m < target; ++m)
                la = (m < cache_cap_) ? sample_discrete(cache_.at(la), rng)
                                      : sample_discrete(up_row(la, params_), rng);
            out.push_back(la);
        }
        return out;
    }

private:
    int n_;
    ZParams params_;
    int cache_cap_;
    std::map<Partition, std::vector<std::pair<Partition, Rat>>> cache_;
};

inline Partition sample_stationary(int n, const ZParams& params, SampleRng& rng) {
    Partition la;
    for (int m = 0; m < n; ++m) la = sample_discrete(up_row(la, params), rng);
    return la;
}

/// The level-n up-down chain as an object: lazy row evaluation everywhere,
/// with an optional dense materialization for small levels.
struct UpDownChain {
    int level = 1;
    ZParams params;
    bool down_up = false;

    std::map<Partition, Rat> row(const Partition& la) const {
        if (la.size() != level) throw std::invalid_argument("UpDownChain: wrong level");
        return transition_row(la, params, down_up);
    }

    Partition step(const Partition& la, SampleRng& rng) const {
        if (la.size() != level) throw std::invalid_argument("UpDownChain: wrong level");
        return chain_step(la, params, rng, down_up);
    }

    /// Dense row-stochastic matrix over enumerate_level(level); exponential
    /// in the level, intended for exact checks at small n.
    std::vector<std::vector<Rat>> materialize() const {
        const auto states = enumerate_level(level);
        std::map<Partition, std::size_t> index;
        for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);
        std::vector<std::vector<Rat>> mat(states.size(), std::vector<Rat>(states.size(), Rat(0)));
        for (std::size_t i = 0; i < states.size(); ++i)
            for (const auto& [tgt, p] : row(states[i])) mat[i][index.at(tgt)] = p;
        return mat;
    }
};

/// Exact stationarity and reversibility of the level-n up-down chain with
/// respect to the z-measure: M(la) T(la, mu) is a symmetric matrix and
/// M T = M. Materializes all |Y_n| rows, so keep n small.
inline Verdict reversibility_check(int n, const ZParams& params, bool down_up = false) {
    const LevelMeasure m = level_measure(n, params);
    const std::size_t sz = m.support.size();
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < sz; ++i) index.emplace(m.support[i], i);

    std::vector<std::vector<Rat>> flux(sz, std::vector<Rat>(sz, Rat(0)));
    for (std::size_t i = 0; i < sz; ++i)
        for (const auto& [tgt, p] : transition_row(m.support[i], params, down_up))
            flux[i][index.at(tgt)] = m.weights[i] * p;

    for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = i + 1; j < sz; ++j)
            if (flux[i][j] != flux[j][i])
                return Verdict::fail("detailed balance fails for " + m.support[i].str() + " <-> " +
                                     m.support[j].str());
    for (std::size_t j = 0; j < sz; ++j) {
        Rat col{0};
        for (std::size_t i = 0; i < sz; ++i) col += flux[i][j];
        if (col != m.weights[j])
            return Verdict::fail("stationarity fails at " + m.support[j].str());
    }
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Embedding into the Thoma simplex and moment coordinates.
// ---------------------------------------------------------------------------

/// Image of a diagram under the scaled Frobenius embedding: alpha_i = a_i/n,
/// beta_i = b_i/n, together with the first `moments.size()` moment
/// coordinates q_k = sum alpha_i^{k+1} + (-1)^k sum beta_i^{k+1} of the
/// associated Thoma measure.
struct EmbeddedPoint {
    std::vector<Rat> alpha;
    std::vector<Rat> beta;
    Rat gamma;
    std::vector<Rat> moments;  // q_1 .. q_K

    const Rat& q(int k) const {
        if (k < 1 || k > static_cast<int>(moments.size()))
            throw std::out_of_range("EmbeddedPoint: moment index");
        return moments[static_cast<std::size_t>(k - 1)];
    }
};

inline EmbeddedPoint embed(const Partition& la, int order) {
    if (la.empty()) throw std::invalid_argument("embed: empty diagram");
    const int n = la.size();
    const auto fc = frobenius(la);
    EmbeddedPoint pt;
    Rat mass{0};
    for (int i = 0; i < fc.diag; ++i) {
        pt.alpha.emplace_back(fc.arm2[i], 2 * n);
        pt.beta.emplace_back(fc.leg2[i], 2 * n);
        mass += pt.alpha.back() + pt.beta.back();
    }
    pt.gamma = Rat(1) - mass;
    pt.moments.reserve(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) {
        Rat q{0};
        for (const Rat& a : pt.alpha) q += rat_pow(a, static_cast<unsigned>(k + 1));
        Rat qb{0};
        for (const Rat& b : pt.beta) qb += rat_pow(b, static_cast<unsigned>(k + 1));
        pt.moments.push_back(k % 2 == 0 ? Rat(q + qb) : Rat(q - qb));
    }
    return pt;
}

/// Evaluate a moment-coordinate polynomial at an embedded point (q_0 = 1).
inline Rat eval_qpoly(const QPoly& f, const EmbeddedPoint& pt) {
    if (f.max_index() > static_cast<int>(pt.moments.size()))
        throw std::invalid_argument("eval_qpoly: point carries too few moments");
    return f.eval([&](int i) { return pt.q(i); });
}

// ---------------------------------------------------------------------------
// Simulation configuration: everything a stochastic run needs to be
// bit-for-bit reproducible.
// ---------------------------------------------------------------------------

struct SimConfig {
    std::uint64_t master_seed = 1;
    int replicas = 1;
    long burn_in = 0;
    long steps = 1000;
    long sample_interval = 1;
    int level = 10;
    int moment_order = 3;
    bool down_up = false;
};

}  // namespace thoma

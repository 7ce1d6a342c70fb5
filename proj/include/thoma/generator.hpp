#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chains.hpp"
#include "check.hpp"
#include "linalg.hpp"
#include "partition.hpp"
#include "rational.hpp"
#include "symfunc.hpp"
#include "zmeasure.hpp"

namespace thoma {

// ---------------------------------------------------------------------------
// Eigenrelations of the down and up operators on the Frobenius-Schur basis.
// Both checks are pointwise exact on whole levels.
// ---------------------------------------------------------------------------

/// The down operator multiplies FS_mu by (p_1 - |mu|)/(n+1) when averaged
/// over covers: for every nu at level n+1,
///   sum over nu-box of p_down(nu, .) FS_mu(.) == (n+1-|mu|)/(n+1) FS_mu(nu).
inline Verdict check_down_action_on_fs(const Partition& mu, int n) {
    const int m = mu.size();
    for (const auto& nu : enumerate_level(n + 1)) {
        const BigInt dnu = dim(nu);
        Rat lhs{0};
        for (const auto& b : nu.removable()) {
            const Partition sub = nu.with_box_removed(b.row);
            lhs += Rat(dim(sub), dnu) * fs_eval(mu, sub);
        }
        const Rat rhs = Rat(n + 1 - m, n + 1) * fs_eval(mu, nu);
        if (lhs != rhs)
            return Verdict::fail("down action on FS_" + mu.str() + " fails at " + nu.str());
    }
    return Verdict::pass();
}

/// The up operator acts on FS_mu by corner lowering plus (p_1 + zz' + |mu|):
/// for every la at level n,
///   (zz'+n) sum over la+box of p_up(la, .) FS_mu(.)
///     == sum over mu-box of box_factor FS_{mu-box}(la) + (n+zz'+|mu|) FS_mu(la).
inline Verdict check_up_action_on_fs(const Partition& mu, int n, const ZParams& params) {
    if (params.d + n == 0) throw std::domain_error("check_up_action_on_fs: zz' + n vanishes");
    const int m = mu.size();
    for (const auto& la : enumerate_level(n)) {
        const BigInt dla = dim(la);
        Rat lhs{0};
        for (const auto& b : la.addable()) {
            const Partition up = la.with_box_added(b.row);
            lhs += box_factor(b.content(), params) * Rat(dim(up), dla * (n + 1)) * fs_eval(mu, up);
        }
        Rat rhs = (Rat(n + m) + params.d) * fs_eval(mu, la);
        for (const auto& b : mu.removable())
            rhs += box_factor(b.content(), params) * fs_eval(mu.with_box_removed(b.row), la);
        if (lhs != rhs)
            return Verdict::fail("up action on FS_" + mu.str() + " fails at " + la.str() +
                                 " for (e,d)=(" + format_rat(params.e) + "," + format_rat(params.d) + ")");
    }
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// The sl(2) triple on delta functions of diagrams, truncated to |la| <= N.
//   E raises with box_factor weights, F lowers with weight -1,
//   H is diagonal with entries zz' + 2|la|.
// ---------------------------------------------------------------------------

struct Sl2Truncation {
    int max_size = 0;
    std::vector<Partition> basis;  // levels 0..N, enumerate_level order
    RatMatrix E, F, H;

    std::size_t index_of(const Partition& p) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == p) return i;
        throw std::invalid_argument("Sl2Truncation: out of basis");
    }
};

inline Sl2Truncation sl2_truncation(int N, const ZParams& params) {
    Sl2Truncation t;
    t.max_size = N;
    std::map<Partition, std::size_t> index;
    for (int n = 0; n <= N; ++n)
        for (auto& la : enumerate_level(n)) {
            index.emplace(la, t.basis.size());
            t.basis.push_back(la);
        }
    const std::size_t sz = t.basis.size();
    t.E.assign(sz, std::vector<Rat>(sz, Rat(0)));
    t.F.assign(sz, std::vector<Rat>(sz, Rat(0)));
    t.H.assign(sz, std::vector<Rat>(sz, Rat(0)));
    for (std::size_t j = 0; j < sz; ++j) {
        const Partition& la = t.basis[j];
        t.H[j][j] = params.d + 2 * la.size();
        if (la.size() < N)
            for (const auto& b : la.addable())
                t.E[index.at(la.with_box_added(b.row))][j] = box_factor(b.content(), params);
        for (const auto& b : la.removable())
            t.F[index.at(la.with_box_removed(b.row))][j] = -1;
    }
    return t;
}

/// [E,F] = H, [H,E] = 2E, [H,F] = -2F, checked exactly on the columns indexed
/// by |la| <= N-1 (the top level only sees truncation artifacts).
inline Verdict sl2_commutator_check(int N, const ZParams& params) {
    const Sl2Truncation t = sl2_truncation(N, params);
    const RatMatrix ef = mat_sub(mat_mul(t.E, t.F), mat_mul(t.F, t.E));
    const RatMatrix he = mat_sub(mat_mul(t.H, t.E), mat_mul(t.E, t.H));
    const RatMatrix hf = mat_sub(mat_mul(t.H, t.F), mat_mul(t.F, t.H));
    for (std::size_t j = 0; j < t.basis.size(); ++j) {
        if (t.basis[j].size() > N - 1) continue;
        for (std::size_t i = 0; i < t.basis.size(); ++i) {
            if (ef[i][j] != t.H[i][j])
                return Verdict::fail("[E,F] != H at (" + t.basis[i].str() + "," + t.basis[j].str() + ")");
            if (he[i][j] != 2 * t.E[i][j])
                return Verdict::fail("[H,E] != 2E at (" + t.basis[i].str() + "," + t.basis[j].str() + ")");
            if (hf[i][j] != -2 * t.F[i][j])
                return Verdict::fail("[H,F] != -2F at (" + t.basis[i].str() + "," + t.basis[j].str() + ")");
        }
    }
    return Verdict::pass();
}

/// At z = k, z' = -l (e = k-l, d = -kl) the span of diagrams inside the k x l
/// rectangle is invariant: the raising weight vanishes on every escape box.
inline Verdict rectangle_invariance_check(int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("rectangle_invariance_check: k,l >= 1");
    const ZParams params = classify(Rat(k - l), Rat(-k * l));
    for (int n = 0; n <= k * l; ++n)
        for (const auto& la : enumerate_level(n)) {
            if (la.num_rows() > k || la.row(1) > l) continue;
            for (const auto& b : la.addable()) {
                const bool escapes = b.row > k || b.column > l;
                if (escapes && box_factor(b.content(), params) != 0)
                    return Verdict::fail("escape coefficient at " + la.str() + " + box(" +
                                         std::to_string(b.row) + "," + std::to_string(b.column) + ")");
            }
        }
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// The pre-generator in its four guises.
// ---------------------------------------------------------------------------

/// Formal action on the spanning family of Schur images in the quotient:
///   s°_mu -> -m(m-1+zz') s°_mu + sum over corners box_factor s°_{mu-box}.
/// The family is not linearly independent; this rewriting is only used
/// inside well-definedness tests and conversions.
inline std::map<Partition, Rat> generator_on_schur(const std::map<Partition, Rat>& coeffs,
                                                   const ZParams& params) {
    std::map<Partition, Rat> out;
    auto add = [&](const Partition& p, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = out.try_emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [mu, c] : coeffs) {
        const int m = mu.size();
        add(mu, -c * Rat(m) * (Rat(m - 1) + params.d));
        for (const auto& b : mu.removable())
            add(mu.with_box_removed(b.row), c * box_factor(b.content(), params));
    }
    return out;
}

/// The grading-preserving lift to the symmetric function algebra:
///   B s_mu = -|mu|(|mu|-1+zz') s_mu + p_1 sum over corners box_factor s_{mu-box}.
/// Commutes with multiplication by p_1 (tested), hence descends to the quotient.
inline SchurVector lifted_generator_on_schur(const SchurVector& v, const ZParams& params) {
    SchurVector diagonal = v;
    const int m = v.degree;
    diagonal *= -Rat(m) * (Rat(m - 1) + params.d);
    SchurVector lowered;
    lowered.degree = m - 1;
    for (const auto& [mu, c] : v.coeffs)
        for (const auto& b : mu.removable())
            lowered.add(mu.with_box_removed(b.row), c * box_factor(b.content(), params));
    SchurVector out = pieri_p1(lowered);
    out.degree = m;
    out += diagonal;
    return out;
}

namespace detail {
inline PowerSumPoly p_var(int i) { return PowerSumPoly::variable(i); }
inline QPoly q_var_or_one(int i) { return i == 0 ? QPoly::constant(1) : QPoly::variable(i); }

/// sum_{a=0}^{s} q_a q_{s-a} with q_0 = 1.
inline QPoly qq_sum(int s) {
    QPoly out;
    for (int a = 0; a <= s; ++a) out += q_var_or_one(a) * q_var_or_one(s - a);
    return out;
}
}  // namespace detail

/// The lift as a differential operator in the power sums:
///   B = sum_{i,j>=2} ij (p_1 p_{i+j-1} - p_i p_j) d^2/dp_i dp_j
///     - zz' sum_{i>=2} i p_i d/dp_i + (z+z') sum_{i>=2} i p_1 p_{i-1} d/dp_i
///     + sum_{i,j>=1} (i+j+1) p_1 p_i p_j d/dp_{i+j+1}
///     - sum_{i>=2} i(i-1) p_i d/dp_i.
/// No d/dp_1 occurs, so the operator reduces modulo (p_1 - 1).
inline PowerSumPoly lifted_generator_diff(const PowerSumPoly& f, const ZParams& params) {
    PowerSumPoly out;
    const int top = f.max_index();
    for (int i = 2; i <= top; ++i) {
        const PowerSumPoly fi = f.derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 2; j <= top; ++j) {
            const PowerSumPoly fij = fi.derivative(j);
            if (fij.is_zero()) continue;
            PowerSumPoly coeff = detail::p_var(1) * detail::p_var(i + j - 1) -
                                 detail::p_var(i) * detail::p_var(j);
            out += Rat(i * j) * coeff * fij;
        }
        out += (-params.d * Rat(i) - Rat(i * (i - 1))) * detail::p_var(i) * fi;
        out += params.e * Rat(i) * detail::p_var(1) * detail::p_var(i - 1) * fi;
    }
    for (int k = 3; k <= top; ++k) {
        const PowerSumPoly fk = f.derivative(k);
        if (fk.is_zero()) continue;
        PowerSumPoly factor;
        for (int a = 1; a <= k - 2; ++a) factor += detail::p_var(a) * detail::p_var(k - 1 - a);
        out += Rat(k) * detail::p_var(1) * factor * fk;
    }
    return out;
}

/// The pre-generator as a differential operator in the moment coordinates
/// (q_0 = 1 by convention):
///   A = sum_{i,j>=1} (i+1)(j+1)(q_{i+j} - q_i q_j) d^2/dq_i dq_j
///     - zz' sum (i+1) q_i d/dq_i + (z+z') sum (i+1) q_{i-1} d/dq_i
///     + sum_{i,j>=0} (i+j+3) q_i q_j d/dq_{i+j+2} - sum (i+1)i q_i d/dq_i.
/// Preserves the weighted-degree filtration.
inline QPoly apply_generator(const QPoly& f, const ZParams& params) {
    QPoly out;
    const int top = f.max_index();
    for (int i = 1; i <= top; ++i) {
        const QPoly fi = f.derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 1; j <= top; ++j) {
            const QPoly fij = fi.derivative(j);
            if (fij.is_zero()) continue;
            QPoly coeff = QPoly::variable(i + j) - QPoly::variable(i) * QPoly::variable(j);
            out += Rat((i + 1) * (j + 1)) * coeff * fij;
        }
        out += (-params.d * Rat(i + 1) - Rat((i + 1) * i)) * QPoly::variable(i) * fi;
        out += params.e * Rat(i + 1) * detail::q_var_or_one(i - 1) * fi;
        if (i >= 2) out += Rat(i + 1) * detail::qq_sum(i - 2) * fi;
    }
    return out;
}

/// Truncation used for smooth cylinder functions of q_1..q_m: keep only the
/// terms of the differential expression whose derivative index is <= m.
/// On polynomials in q_1..q_m this agrees with the full operator.
inline QPoly apply_generator_cylinder(const QPoly& f, int m, const ZParams& params) {
    QPoly out;
    for (int i = 1; i <= m; ++i) {
        const QPoly fi = f.derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 1; j <= m; ++j) {
            const QPoly fij = fi.derivative(j);
            if (fij.is_zero()) continue;
            QPoly coeff = QPoly::variable(i + j) - QPoly::variable(i) * QPoly::variable(j);
            out += Rat((i + 1) * (j + 1)) * coeff * fij;
        }
        out += (-params.d * Rat(i + 1) - Rat((i + 1) * i)) * QPoly::variable(i) * fi;
        out += params.e * Rat(i + 1) * detail::q_var_or_one(i - 1) * fi;
        if (i >= 2) out += Rat(i + 1) * detail::qq_sum(i - 2) * fi;
    }
    return out;
}

/// Content operator of order 1 as a differential expression:
///   C'_1 = sum_{i>=1} (i+1) p_i d/dp_{i+1}.
inline PowerSumPoly content_diff_1(const PowerSumPoly& f) {
    PowerSumPoly out;
    for (int i = 1; i <= f.max_index() - 1; ++i)
        out += Rat(i + 1) * detail::p_var(i) * f.derivative(i + 1);
    return out;
}

/// Content operator of order 2 as a differential expression:
///   C'_2 = sum_{i,j>=1} ij p_{i+j-1} d^2/dp_i dp_j
///        + sum_{i,j>=1} (i+j+1) p_i p_j d/dp_{i+j+1}.
inline PowerSumPoly content_diff_2(const PowerSumPoly& f) {
    PowerSumPoly out;
    const int top = f.max_index();
    for (int i = 1; i <= top; ++i) {
        const PowerSumPoly fi = f.derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 1; j <= top; ++j) {
            const PowerSumPoly fij = fi.derivative(j);
            if (fij.is_zero()) continue;
            out += Rat(i * j) * detail::p_var(i + j - 1) * fij;
        }
    }
    for (int k = 3; k <= top; ++k) {
        const PowerSumPoly fk = f.derivative(k);
        if (fk.is_zero()) continue;
        PowerSumPoly factor;
        for (int a = 1; a <= k - 2; ++a) factor += detail::p_var(a) * detail::p_var(k - 1 - a);
        out += Rat(k) * factor * fk;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The matrix of the pre-generator on the monomial basis of the filtration
// level <= D, and its exact spectrum.
// ---------------------------------------------------------------------------

struct OperatorMatrix {
    int cutoff = 0;
    std::vector<QPoly::Monomial> basis;  // weighted degree ascending, then reverse-lex
    RatMatrix mat;
};

/// Monomials in q of weighted degree exactly m, in reverse-lex order on the
/// underlying partitions of m into parts >= 2 (part c <-> index c-1).
inline std::vector<QPoly::Monomial> q_monomials_of_degree(int m) {
    std::vector<QPoly::Monomial> out;
    if (m == 0) return {QPoly::Monomial{}};
    for (const auto& la : enumerate_level(m)) {
        if (la.num_rows() > 0 && la.rows().back() == 1) continue;
        QPoly::Monomial mono;
        for (int part : la.rows()) mono.push_back(part - 1);
        out.push_back(std::move(mono));
    }
    return out;
}

inline OperatorMatrix generator_matrix(int D, const ZParams& params) {
    OperatorMatrix om;
    om.cutoff = D;
    for (int m = 0; m <= D; ++m)
        for (auto& mono : q_monomials_of_degree(m)) om.basis.push_back(std::move(mono));
    std::map<QPoly::Monomial, std::size_t> index;
    for (std::size_t i = 0; i < om.basis.size(); ++i) index.emplace(om.basis[i], i);
    const std::size_t sz = om.basis.size();
    om.mat.assign(sz, std::vector<Rat>(sz, Rat(0)));
    for (std::size_t j = 0; j < sz; ++j) {
        const QPoly image = apply_generator(QPoly::monomial(om.basis[j], Rat(1)), params);
        for (const auto& [mono, c] : image.terms()) {
            auto it = index.find(mono);
            if (it == index.end())
                throw std::logic_error("generator_matrix: image leaves the filtration");
            om.mat[it->second][j] = c;
        }
    }
    return om;
}

/// Exact spectrum of the pre-generator on the filtration level <= D:
/// {0} with multiplicity 1 and -sigma_m = -m(m-1+zz') with multiplicity the
/// number of partitions of m without parts equal to 1, 2 <= m <= D.
/// Read off the block-triangular matrix after verifying that every diagonal
/// block is the expected scalar; requires admissible parameters (then d > 0,
/// so the sigma_m are strictly increasing and never collide).
inline std::vector<std::pair<Rat, int>> spectrum_exact(int D, const ZParams& params) {
    if (D < 2) throw std::invalid_argument("spectrum_exact: D must be >= 2");
    if (!params.admissible())
        throw std::domain_error("spectrum_exact: parameters must be principal or complementary");
    if (!(params.d > 0)) throw std::logic_error("spectrum_exact: admissible parameters must have d > 0");
    const OperatorMatrix om = generator_matrix(D, params);
    const std::size_t sz = om.basis.size();
    for (std::size_t j = 0; j < sz; ++j) {
        const int dj = QPoly::monomial_degree(om.basis[j]);
        const Rat expected = -Rat(dj) * (Rat(dj - 1) + params.d);
        for (std::size_t i = 0; i < sz; ++i) {
            const int di = QPoly::monomial_degree(om.basis[i]);
            if (i == j) {
                if (om.mat[i][j] != expected)
                    throw std::logic_error("spectrum_exact: unexpected diagonal entry");
            } else if (di >= dj && om.mat[i][j] != 0) {
                throw std::logic_error("spectrum_exact: matrix not filtration-triangular");
            }
        }
    }
    std::vector<std::pair<Rat, int>> out;
    out.emplace_back(Rat(0), 1);
    for (int m = 2; m <= D; ++m)
        out.emplace_back(-Rat(m) * (Rat(m - 1) + params.d),
                         static_cast<int>(q_monomials_of_degree(m).size()));
    return out;
}

// ---------------------------------------------------------------------------
// Carre du champ and the Dirichlet form identity.
// ---------------------------------------------------------------------------

/// Gamma_{ij} = (i+1)(j+1)(q_{i+j} - q_i q_j); parameter free and symmetric.
inline QPoly gamma_coeff(int i, int j) {
    if (i < 1 || j < 1) throw std::invalid_argument("gamma_coeff: indices >= 1");
    QPoly g = QPoly::variable(i + j) - QPoly::variable(i) * QPoly::variable(j);
    return Rat((i + 1) * (j + 1)) * g;
}

/// Gamma(f,g) = sum_{i,j} Gamma_{ij} df/dq_i dg/dq_j; a finite sum, and
/// 2 Gamma(f,g) = A(fg) - (Af)g - f(Ag) exactly.
inline QPoly carre_du_champ(const QPoly& f, const QPoly& g) {
    QPoly out;
    for (int i = 1; i <= f.max_index(); ++i) {
        const QPoly fi = f.derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 1; j <= g.max_index(); ++j) {
            const QPoly gj = g.derivative(j);
            if (gj.is_zero()) continue;
            out += gamma_coeff(i, j) * fi * gj;
        }
    }
    return out;
}

/// The Dirichlet-form identity and generator symmetry under the boundary
/// expectation: -<(Af)g> = <Gamma(f,g)> = -<f(Ag)>, and <Af> = 0.
inline Verdict dirichlet_check(const QPoly& f, const QPoly& g, const ZParams& params) {
    const QPoly af = apply_generator(f, params);
    const QPoly ag = apply_generator(g, params);
    const Rat lhs = -boundary_expectation(af * g, params);
    const Rat mid = boundary_expectation(carre_du_champ(f, g), params);
    const Rat rhs = -boundary_expectation(f * ag, params);
    if (lhs != mid)
        return Verdict::fail("-<(Af)g> = " + format_rat(lhs) + " but <Gamma(f,g)> = " + format_rat(mid));
    if (lhs != rhs)
        return Verdict::fail("<(Af)g> = " + format_rat(lhs) + " but <f(Ag)> = " + format_rat(rhs));
    if (boundary_expectation(af, params) != 0) return Verdict::fail("<Af> != 0");
    return Verdict::pass();
}

/// The I x I matrix [Gamma_{ij}(omega)] at an embedded point (needs moments
/// up to 2I).
inline RatMatrix gamma_matrix(const EmbeddedPoint& pt, int I) {
    RatMatrix m(static_cast<std::size_t>(I), std::vector<Rat>(static_cast<std::size_t>(I)));
    for (int i = 1; i <= I; ++i)
        for (int j = 1; j <= I; ++j)
            m[i - 1][j - 1] = Rat((i + 1) * (j + 1)) * (pt.q(i + j) - pt.q(i) * pt.q(j));
    return m;
}

/// Exact positive semidefiniteness of the Gamma matrices at sample points.
inline Verdict gamma_psd_check(const std::vector<EmbeddedPoint>& samples, int I) {
    for (std::size_t s = 0; s < samples.size(); ++s) {
        std::string why;
        if (!psd_exact(gamma_matrix(samples[s], I), &why))
            return Verdict::fail("sample " + std::to_string(s) + ": " + why);
    }
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Finite-n generator residuals: how far n^2 (T_n - 1) is from A on a given
// moment-coordinate polynomial.
// ---------------------------------------------------------------------------

inline Rat generator_residual(const QPoly& f, const Partition& la, const ZParams& params) {
    const int n = la.size();
    if (n < 1) throw std::invalid_argument("generator_residual: need a nonempty diagram");
    const QPoly af = apply_generator(f, params);
    const int order = std::max(f.max_index(), af.max_index());
    const EmbeddedPoint here = embed(la, order);
    Rat tf{0};
    for (const auto& [tgt, p] : transition_row(la, params)) tf += p * eval_qpoly(f, embed(tgt, order));
    return Rat(n) * Rat(n) * (tf - eval_qpoly(f, here)) - eval_qpoly(af, here);
}

/// Max |residual| over an evaluation set of level-n diagrams; O(1/n) for
/// fixed f.
inline Rat convergence_residual(const QPoly& f, const ZParams& params,
                                const std::vector<Partition>& eval_set) {
    Rat worst{0};
    for (const auto& la : eval_set) {
        const Rat r = rat_abs(generator_residual(f, la, params));
        if (r > worst) worst = r;
    }
    return worst;
}

}  // namespace thoma

// Acceptance suite: every release criterion, one pass/fail line each.
// All exact checks are bit-exact rational identities; the stochastic checks
// are seeded and deterministic. Exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "thoma/chains.hpp"
#include "thoma/generator.hpp"
#include "thoma/pascal.hpp"
#include "thoma/zmeasure.hpp"

using namespace thoma;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, double elapsed, double limit,
            const std::string& detail = "") {
    const bool time_ok = limit <= 0 || elapsed < limit;
    const bool pass = ok && time_ok;
    if (!pass) ++failures;
    std::string limit_note =
        limit > 0 ? ", limit " + std::to_string(static_cast<int>(limit)) + " s" : "";
    std::printf("[%2d] %-46s %s  (%.2f s%s)%s%s\n", idx, name.c_str(), pass ? "PASS" : "FAIL",
                elapsed, limit_note.c_str(), detail.empty() ? "" : "  -- ", detail.c_str());
}

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const ZParams kComp = classify(Rat(1), Rat(6, 25));
const ZParams kPrin = classify(Rat(0), Rat(1));
const std::vector<ZParams> kDefaults{kComp, kPrin};

std::vector<ZParams> five_points() {
    return {kPrin, kComp, classify(Rat(1), Rat(1)), classify(Rat(-2), Rat(3, 7)),
            classify(Rat(5, 2), Rat(-1, 3))};
}

}  // namespace

int main() {
    // 1. Exact coherency for n <= 8 at both default parameter points.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& p : kDefaults)
            for (int n = 1; n <= 8 && ok; ++n) {
                const Verdict v = coherency_check(n, p);
                if (!v.ok) {
                    ok = false;
                    detail = v.witness;
                }
            }
        report(1, "exact coherency (n <= 8, both points)", ok, secs(t0), 10, detail);
    }

    // 2. Exact reversibility of the up-down chain for n <= 6.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& p : kDefaults)
            for (int n = 1; n <= 6 && ok; ++n) {
                const Verdict v = reversibility_check(n, p);
                if (!v.ok) {
                    ok = false;
                    detail = v.witness;
                }
            }
        report(2, "exact reversibility (n <= 6, both points)", ok, secs(t0), 30, detail);
    }

    // 3. Down/up eigenrelations on the FS basis: |mu| <= 4, n <= 8,
    //    five rational parameter points for the up relation.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (int m = 0; m <= 4 && ok; ++m)
            for (const auto& mu : enumerate_level(m)) {
                for (int n = 0; n <= 8 && ok; ++n) {
                    const Verdict v = check_down_action_on_fs(mu, n);
                    if (!v.ok) {
                        ok = false;
                        detail = v.witness;
                    }
                }
                if (!ok) break;
            }
        for (const auto& p : five_points())
            for (int m = 0; m <= 4 && ok; ++m)
                for (const auto& mu : enumerate_level(m)) {
                    for (int n = 0; n <= 8 && ok; ++n) {
                        const Verdict v = check_up_action_on_fs(mu, n, p);
                        if (!v.ok) {
                            ok = false;
                            detail = v.witness;
                        }
                    }
                    if (!ok) break;
                }
        report(3, "up/down eigenrelations on the FS basis", ok, secs(t0), 120, detail);
    }

    // 4. sl(2) commutation on the N = 6 truncation at five points, and
    //    rectangle invariance for (1,1), (2,3), (3,2).
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& p : five_points()) {
            const Verdict v = sl2_commutator_check(6, p);
            if (!v.ok) {
                ok = false;
                detail = v.witness;
                break;
            }
        }
        for (auto [k, l] : {std::pair{1, 1}, {2, 3}, {3, 2}}) {
            if (!ok) break;
            const Verdict v = rectangle_invariance_check(k, l);
            if (!v.ok) {
                ok = false;
                detail = v.witness;
            }
        }
        report(4, "sl2 commutation and rectangle invariance", ok, secs(t0), 60, detail);
    }

    // 5. Interlacing identities for all |la| <= 10, exact.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (int n = 0; n <= 10 && ok; ++n)
            for (const auto& la : enumerate_level(n)) {
                auto [x, y] = interlacing(la);
                long s1 = 0, s2 = 0;
                for (int c : x) s1 += c, s2 += c * c;
                for (int c : y) s1 -= c, s2 -= c * c;
                if (x.size() != y.size() + 1 || s1 != 0 || s2 != 2 * la.size()) {
                    ok = false;
                    detail = "at " + la.str();
                    break;
                }
            }
        report(5, "corner interlacing identities (|la| <= 10)", ok, secs(t0), 0, detail);
    }

    // 6. Operator equivalences on degree <= 6: the lift commutes with p1,
    //    the differential form matches the corner action, the content
    //    operator forms match, and both differential forms agree mod (p1-1).
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        const ZParams p = kComp;
        for (int m = 0; m <= 6 && ok; ++m)
            for (const auto& mu : enumerate_level(m)) {
                const SchurVector s = SchurVector::unit(mu);
                const PowerSumPoly f = schur_to_p(mu);
                if (!(lifted_generator_on_schur(pieri_p1(s), p) ==
                      pieri_p1(lifted_generator_on_schur(s, p)))) {
                    ok = false;
                    detail = "p1 commutation at " + mu.str();
                    break;
                }
                PowerSumPoly via_schur;
                for (const auto& [la, c] : lifted_generator_on_schur(s, p).coeffs)
                    via_schur += c * schur_to_p(la);
                if (!(lifted_generator_diff(f, p) == via_schur)) {
                    ok = false;
                    detail = "differential vs corner action at " + mu.str();
                    break;
                }
                for (int k : {1, 2}) {
                    PowerSumPoly want;
                    for (const auto& [la, c] : content_op(k, s).coeffs) want += c * schur_to_p(la);
                    if (!((k == 1 ? content_diff_1(f) : content_diff_2(f)) == want)) {
                        ok = false;
                        detail = "content form " + std::to_string(k) + " at " + mu.str();
                        break;
                    }
                }
                if (ok && !(reduce_mod_p1(lifted_generator_diff(f, p)) ==
                            apply_generator(reduce_mod_p1(f), p))) {
                    ok = false;
                    detail = "quotient consistency at " + mu.str();
                }
                if (!ok) break;
            }
        report(6, "operator equivalences (degree <= 6)", ok, secs(t0), 120, detail);
    }

    // 7. Spectrum at D = 8: eigenvalues -m(m-1+d) with multiplicities
    //    1; 1,1,2,2,4,4,7, exact, both default points.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        const std::vector<int> want{1, 1, 1, 2, 2, 4, 4, 7};
        for (const auto& p : kDefaults) {
            try {
                const auto sp = spectrum_exact(8, p);
                if (sp.size() != want.size()) ok = false;
                for (std::size_t i = 0; ok && i < sp.size(); ++i) {
                    const Rat ev = i == 0 ? Rat(0) : Rat(-Rat(static_cast<int>(i) + 1) *
                                                         (Rat(static_cast<int>(i)) + p.d));
                    if (sp[i].second != want[i] || sp[i].first != ev) {
                        ok = false;
                        detail = "entry " + std::to_string(i);
                    }
                }
            } catch (const std::exception& ex) {
                ok = false;
                detail = ex.what();
            }
            if (!ok) break;
        }
        report(7, "exact spectrum at D = 8 (both points)", ok, secs(t0), 60, detail);
    }

    // 8. Dirichlet form identity and generator symmetry for
    //    f, g in {q1, q2, q3, q1^2} at both default points.
    const QPoly q1 = QPoly::variable(1), q2 = QPoly::variable(2), q3 = QPoly::variable(3);
    const std::vector<QPoly> test_set{q1, q2, q3, q1 * q1};
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& p : kDefaults)
            for (const auto& f : test_set)
                for (const auto& g : test_set) {
                    const Verdict v = dirichlet_check(f, g, p);
                    if (!v.ok) {
                        ok = false;
                        detail = v.witness;
                    }
                }
        report(8, "dirichlet identity and symmetry", ok, secs(t0), 60, detail);
    }

    // 9. Carre du champ: 2 Gamma(f,g) = A(fg) - (Af)g - f(Ag) exactly on the
    //    same test set; Gamma matrices PSD at 100 sampled points, n=50, I=4.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (const auto& p : kDefaults)
            for (const auto& f : test_set)
                for (const auto& g : test_set) {
                    const QPoly lhs = Rat(2) * carre_du_champ(f, g);
                    const QPoly rhs = apply_generator(f * g, p) - apply_generator(f, p) * g -
                                      f * apply_generator(g, p);
                    if (!(lhs == rhs)) {
                        ok = false;
                        detail = "product rule";
                    }
                }
        if (ok) {
            GrowthSampler gs(50, kComp);
            SampleRng rng(20260810);
            std::vector<EmbeddedPoint> samples;
            samples.reserve(100);
            for (int s = 0; s < 100; ++s) samples.push_back(embed(gs.draw(rng), 8));
            const Verdict v = gamma_psd_check(samples, 4);
            if (!v.ok) {
                ok = false;
                detail = v.witness;
            }
        }
        report(9, "carre du champ identity and PSD samples", ok, secs(t0), 0, detail);
    }

    // 10. Scaling-limit rate: mean |n^2(T_n-1)f - Af| over 50 z-measure
    //     sampled diagrams per level halves per doubling of n, ratio within
    //     [0.4, 0.6], for f in {q1, q2, q1^2}, both default points.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        const std::vector<int> grid{20, 40, 80, 160};
        const std::vector<std::pair<std::string, QPoly>> fns{
            {"q1", q1}, {"q2", q2}, {"q1^2", q1 * q1}};
        for (const auto& p : kDefaults) {
            GrowthSampler gs(grid.back(), p);
            SampleRng rng(20260810);
            std::vector<std::vector<Partition>> sets(grid.size());
            for (int s = 0; s < 50; ++s) {
                const auto snaps = gs.draw_nested(grid, rng);
                for (std::size_t g = 0; g < grid.size(); ++g) sets[g].push_back(snaps[g]);
            }
            for (const auto& [name, f] : fns) {
                Rat prev{0};
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    Rat mean{0};
                    for (const auto& la : sets[g])
                        mean += rat_abs(generator_residual(f, la, p));
                    mean /= 50;
                    if (g > 0) {
                        const Rat ratio = mean / prev;
                        if (!(ratio >= Rat(2, 5) && ratio <= Rat(3, 5))) {
                            ok = false;
                            detail = name + " ratio " + format_rat(ratio) + " at n=" +
                                     std::to_string(grid[g]);
                        }
                    }
                    prev = mean;
                }
            }
        }
        report(10, "generator residual rate (z-chain)", ok, secs(t0), 300, detail);
    }

    // 11. Pascal toy chain: exact uniform stationarity for n <= 50 and
    //     residual rate within [0.4, 0.6] for f in {x, x^2, x^3}.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (long n = 1; n <= 50 && ok; ++n) {
            const Verdict v = pascal_uniform_stationary(n);
            if (!v.ok) {
                ok = false;
                detail = v.witness;
            }
        }
        const std::vector<Poly1> fns{{Rat(0), Rat(1)},
                                     {Rat(0), Rat(0), Rat(1)},
                                     {Rat(0), Rat(0), Rat(0), Rat(1)}};
        for (const auto& f : fns) {
            if (!ok) break;
            Rat prev{0};
            for (long n : {20L, 40L, 80L, 160L}) {
                const Rat r = pascal_generator_residual(f, n);
                if (prev != 0) {
                    const Rat ratio = r / prev;
                    if (!(ratio >= Rat(2, 5) && ratio <= Rat(3, 5))) {
                        ok = false;
                        detail = "ratio " + format_rat(ratio) + " at n=" + std::to_string(n);
                    }
                }
                prev = r;
            }
        }
        report(11, "pascal stationarity and residual rate", ok, secs(t0), 60, detail);
    }

    // 12. Monte Carlo stationarity: TV between 1e5 growth samples and the
    //     exact level-6 measure below 0.01; at n = 200 the replica mean of
    //     q1 within three standard errors of e/(d+1). Seeded.
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        {
            GrowthSampler gs(6, kComp);
            SampleRng rng(20260810);
            std::map<Partition, long> counts;
            const long N = 100000;
            for (long i = 0; i < N; ++i) ++counts[gs.draw(rng)];
            const LevelMeasure exact = level_measure(6, kComp);
            Rat tv{0};
            for (std::size_t i = 0; i < exact.support.size(); ++i) {
                auto it = counts.find(exact.support[i]);
                const long c = it == counts.end() ? 0 : it->second;
                tv += rat_abs(Rat(c, N) - exact.weights[i]);
            }
            tv /= 2;
            if (!(tv < Rat(1, 100))) {
                ok = false;
                detail = "TV = " + format_rat(tv);
            }
        }
        if (ok) {
            const int n = 200, R = 24;
            const long steps = 2000, interval = 5;
            GrowthSampler gs(n, kComp);
            std::vector<double> means;
            for (int r = 0; r < R; ++r) {
                SampleRng rng(replica_seed(20260810, r));
                Partition la = gs.draw(rng);
                Rat acc{0};
                long cnt = 0;
                for (long t = 0; t < steps; ++t) {
                    la = chain_step(la, kComp, rng);
                    if ((t + 1) % interval == 0) {
                        acc += embed(la, 1).q(1);
                        ++cnt;
                    }
                }
                means.push_back(static_cast<double>(Rat(acc / cnt)));
            }
            double mean = 0;
            for (double m : means) mean += m;
            mean /= R;
            double var = 0;
            for (double m : means) var += (m - mean) * (m - mean);
            var /= (R - 1);
            const double se = std::sqrt(var / R);
            const double target = static_cast<double>(Rat(kComp.e / (kComp.d + 1)));
            if (!(std::abs(mean - target) < 3 * se)) {
                ok = false;
                char buf[160];
                std::snprintf(buf, sizeof(buf), "mean %.5f target %.5f se %.5f", mean, target, se);
                detail = buf;
            }
        }
        report(12, "monte carlo stationarity (TV and q1 mean)", ok, secs(t0), 300, detail);
    }

    std::printf("%s (%d criteria failed)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures);
    return failures;
}

#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "thoma/chains.hpp"

using namespace thoma;

namespace {
const ZParams kComp = classify(Rat(1), Rat(6, 25));
}

TEST_CASE("stationary sampling matches exact weights at level 6", "[mc]") {
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
    CHECK(static_cast<double>(tv) < 0.01);
}

TEST_CASE("replica seeds are distinct and deterministic", "[mc]") {
    CHECK(replica_seed(1, 0) == replica_seed(1, 0));
    CHECK(replica_seed(1, 0) != replica_seed(1, 1));
    CHECK(replica_seed(1, 0) != replica_seed(2, 0));

    SampleRng a(replica_seed(42, 3)), b(replica_seed(42, 3));
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("unit uniforms are dyadic rationals in [0,1)", "[mc]") {
    SampleRng rng(8);
    for (int i = 0; i < 200; ++i) {
        const Rat u = rng.next_unit_rational();
        CHECK(u >= 0);
        CHECK(u < 1);
        CHECK((BigInt(1) << 128) % denominator(u) == 0);
    }
}

TEST_CASE("chain equilibrium mean of q1 stays near the boundary target", "[mc]") {
    // Small-scale version of the equilibrium statistics run: level 40,
    // stationary start, a few replicas, mean of q1 within 4 replica
    // standard errors of the finite-level exact value (1 - 1/n) e/(d+1).
    const int n = 40, R = 6;
    const long steps = 400;
    GrowthSampler gs(n, kComp);
    std::vector<double> means;
    for (int r = 0; r < R; ++r) {
        SampleRng rng(replica_seed(7, r));
        Partition la = gs.draw(rng);
        Rat acc{0};
        for (long t = 0; t < steps; ++t) {
            la = chain_step(la, kComp, rng);
            acc += embed(la, 1).q(1);
        }
        means.push_back(static_cast<double>(Rat(acc / steps)));
    }
    double mean = 0;
    for (double m : means) mean += m;
    mean /= R;
    double var = 0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (R - 1);
    const double se = std::sqrt(var / R);
    const double finite_target =
        static_cast<double>(Rat((Rat(1) - Rat(1, n)) * kComp.e / (kComp.d + 1)));
    CHECK(std::abs(mean - finite_target) < 4 * se + 1e-12);
}

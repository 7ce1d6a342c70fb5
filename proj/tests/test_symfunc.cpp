#include <catch2/catch_amalgamated.hpp>

#include "thoma/linalg.hpp"
#include "thoma/symfunc.hpp"

using namespace thoma;

namespace {

PowerSumPoly p_mono(std::vector<int> idx, Rat c = Rat(1)) {
    return PowerSumPoly::monomial(std::move(idx), std::move(c));
}

// Matrix of a degree-homogeneous Schur-basis operator, columns indexed by
// enumerate_level(src_deg), rows by enumerate_level(dst_deg).
RatMatrix schur_op_matrix(int src_deg, int dst_deg,
                          const std::function<SchurVector(const SchurVector&)>& op) {
    const auto src = enumerate_level(src_deg);
    const auto dst = enumerate_level(dst_deg);
    RatMatrix m(dst.size(), std::vector<Rat>(src.size(), Rat(0)));
    for (std::size_t j = 0; j < src.size(); ++j) {
        const SchurVector out = op(SchurVector::unit(src[j]));
        for (std::size_t i = 0; i < dst.size(); ++i) {
            auto it = out.coeffs.find(dst[i]);
            if (it != out.coeffs.end()) m[i][j] = it->second;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("murnaghan-nakayama character values") {
    // Trivial representation: all values 1.
    for (int n = 1; n <= 6; ++n)
        for (const auto& rho : enumerate_level(n)) CHECK(mn_character(Partition{n}, rho) == 1);
    // Sign character on a transposition.
    CHECK(mn_character(Partition{1, 1}, Partition{2}) == -1);
    // Value at the identity class is the dimension.
    CHECK(mn_character(Partition{2, 1}, Partition{1, 1, 1}) == 2);
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> ones(n, 1);
        for (const auto& la : enumerate_level(n))
            CHECK(mn_character(la, Partition(ones)) == dim(la));
    }
    CHECK_THROWS_AS(mn_character(Partition{2}, Partition{3}), std::invalid_argument);
}

TEST_CASE("character orthogonality validates the table") {
    for (int m = 0; m <= 8; ++m) {
        const auto& tbl = CharacterTable::of_degree(m);
        const auto& labels = tbl.labels();
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = a; b < labels.size(); ++b) {
                Rat dot{0};
                for (std::size_t r = 0; r < labels.size(); ++r)
                    dot += Rat(tbl.value(a, r) * tbl.value(b, r), centralizer_size(labels[r]));
                CHECK(dot == Rat(a == b ? 1 : 0));
            }
    }
}

TEST_CASE("schur_to_p small cases") {
    CHECK(schur_to_p(Partition{1}) == p_mono({1}));
    CHECK(schur_to_p(Partition{2}) == p_mono({1, 1}, Rat(1, 2)) + p_mono({2}, Rat(1, 2)));
    CHECK(schur_to_p(Partition{1, 1}) == p_mono({1, 1}, Rat(1, 2)) + p_mono({2}, Rat(-1, 2)));
}

TEST_CASE("p_to_schur small cases") {
    SchurVector p2 = p_to_schur(p_mono({2}));
    SchurVector want;
    want.degree = 2;
    want.add(Partition{2}, Rat(1));
    want.add(Partition{1, 1}, Rat(-1));
    CHECK(p2 == want);

    CHECK(p_to_schur(p_mono({1})) == SchurVector::unit(Partition{1}));

    SchurVector p11 = p_to_schur(p_mono({1, 1}));
    SchurVector want2;
    want2.degree = 2;
    want2.add(Partition{2}, Rat(1));
    want2.add(Partition{1, 1}, Rat(1));
    CHECK(p11 == want2);

    CHECK_THROWS_AS(p_to_schur(p_mono({1}) + p_mono({2})), std::invalid_argument);
}

TEST_CASE("schur/p round trip up to degree 8") {
    for (int m = 0; m <= 8; ++m)
        for (const auto& mu : enumerate_level(m))
            CHECK(p_to_schur(schur_to_p(mu)) == SchurVector::unit(mu));
}

TEST_CASE("eval_on_diagram examples") {
    CHECK(eval_on_diagram(p_mono({1}), Partition{3, 1}) == 4);
    CHECK(eval_on_diagram(p_mono({2}), Partition{3, 1}) == 4);  // (5/2)^2 - (3/2)^2
    CHECK(eval_on_diagram(p_mono({2}), Partition{1}) == 0);
    for (int n = 0; n <= 9; ++n)
        for (const auto& la : enumerate_level(n))
            CHECK(eval_on_diagram(p_mono({1}), la) == la.size());
}

TEST_CASE("eval_on_diagram is an algebra morphism") {
    const std::vector<Partition> mus{Partition{2}, Partition{1, 1}, Partition{2, 1}, Partition{3}};
    const std::vector<Partition> las{Partition{3, 1}, Partition{2, 2, 1}, Partition{4, 2},
                                     Partition{1}};
    for (const auto& mu : mus)
        for (const auto& nu : mus)
            for (const auto& la : las) {
                const PowerSumPoly f = schur_to_p(mu), g = schur_to_p(nu);
                CHECK(eval_on_diagram(f * g, la) ==
                      eval_on_diagram(f, la) * eval_on_diagram(g, la));
            }
}

TEST_CASE("fs_eval examples") {
    for (int n = 0; n <= 6; ++n)
        for (const auto& la : enumerate_level(n)) CHECK(fs_eval(Partition{1}, la) == n);
    CHECK(fs_eval(Partition{2}, Partition{2, 1}) == 3);
    CHECK(fs_eval(Partition{2}, Partition{1, 1, 1}) == 0);  // not contained
    CHECK(fs_eval(Partition{}, Partition{3, 2}) == 1);
}

// Reconstruct FS_mu as an element of the polynomial algebra from its values
// on diagrams and compare its top-degree part with s_mu. The evaluation
// system is solved exactly; uniqueness pins the interpolant.
TEST_CASE("frobenius-schur functions have schur top term") {
    for (int m = 1; m <= 5; ++m) {
        // p-monomial basis of all degrees <= m.
        std::vector<std::vector<int>> basis;
        for (int d = 0; d <= m; ++d)
            for (const auto& rho : enumerate_level(d)) basis.push_back(rho.rows());
        std::vector<Partition> sample;
        for (int n = 0; n <= m + 3; ++n)
            for (const auto& la : enumerate_level(n)) sample.push_back(la);

        RatMatrix a(sample.size(), std::vector<Rat>(basis.size()));
        for (std::size_t i = 0; i < sample.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                a[i][j] = eval_on_diagram(PowerSumPoly::monomial(basis[j], Rat(1)), sample[i]);

        for (const auto& mu : enumerate_level(m)) {
            std::vector<Rat> b;
            b.reserve(sample.size());
            for (const auto& la : sample) b.push_back(fs_eval(mu, la));
            const auto sol = solve_exact(a, b);
            REQUIRE(sol.has_value());
            PowerSumPoly fs;
            for (std::size_t j = 0; j < basis.size(); ++j)
                fs += PowerSumPoly::monomial(basis[j], (*sol)[j]);
            // Values reproduced everywhere in the sample...
            for (std::size_t i = 0; i < sample.size(); ++i)
                REQUIRE(eval_on_diagram(fs, sample[i]) == b[i]);
            // ...and the degree-m part is exactly the schur expansion.
            CHECK(fs.by_degree()[m] == schur_to_p(mu));
        }
    }
}

TEST_CASE("pieri_p1 examples") {
    SchurVector from_empty = pieri_p1(SchurVector::unit(Partition{}));
    CHECK(from_empty == SchurVector::unit(Partition{1}));

    SchurVector from_one = pieri_p1(SchurVector::unit(Partition{1}));
    SchurVector want;
    want.degree = 2;
    want.add(Partition{2}, Rat(1));
    want.add(Partition{1, 1}, Rat(1));
    CHECK(from_one == want);

    SchurVector from_21 = pieri_p1(SchurVector::unit(Partition{2, 1}));
    SchurVector want21;
    want21.degree = 4;
    want21.add(Partition{3, 1}, Rat(1));
    want21.add(Partition{2, 2}, Rat(1));
    want21.add(Partition{2, 1, 1}, Rat(1));
    CHECK(from_21 == want21);
}

TEST_CASE("pieri matches multiplication by p1") {
    for (int m = 0; m <= 6; ++m)
        for (const auto& mu : enumerate_level(m)) {
            const PowerSumPoly prod = p_mono({1}) * schur_to_p(mu);
            CHECK(p_to_schur(prod) == pieri_p1(SchurVector::unit(mu)));
        }
}

TEST_CASE("content_op examples") {
    CHECK(content_op(1, SchurVector::unit(Partition{2})) == SchurVector::unit(Partition{1}));
    CHECK(content_op(2, SchurVector::unit(Partition{1})).is_zero());
    SchurVector got = content_op(0, SchurVector::unit(Partition{2, 1}));
    SchurVector want;
    want.degree = 2;
    want.add(Partition{2}, Rat(1));
    want.add(Partition{1, 1}, Rat(1));
    CHECK(got == want);
}

TEST_CASE("content_op(0) is adjoint to pieri") {
    for (int m = 0; m <= 8; ++m) {
        const RatMatrix up =
            schur_op_matrix(m, m + 1, [](const SchurVector& v) { return pieri_p1(v); });
        const RatMatrix down = schur_op_matrix(
            m + 1, m, [](const SchurVector& v) { return content_op(0, v); });
        REQUIRE(down.size() == up[0].size());
        REQUIRE(down[0].size() == up.size());
        for (std::size_t i = 0; i < up.size(); ++i)
            for (std::size_t j = 0; j < up[i].size(); ++j) CHECK(up[i][j] == down[j][i]);
    }
}

TEST_CASE("reduce_mod_p1 examples") {
    CHECK(reduce_mod_p1(p_mono({1})) == QPoly::constant(1));
    CHECK(reduce_mod_p1(p_mono({2, 1, 1, 1})) == QPoly::variable(1));
    const QPoly s2 = reduce_mod_p1(schur_to_p(Partition{2}));
    CHECK(s2 == QPoly::constant(Rat(1, 2)) + QPoly::monomial({1}, Rat(1, 2)));
}

TEST_CASE("reduction kernel is the ideal (p1 - 1)") {
    const std::vector<PowerSumPoly> gs{schur_to_p(Partition{2, 1}), p_mono({3, 2}),
                                       p_mono({2}) + p_mono({1, 1}, Rat(-3))};
    for (const auto& g : gs) CHECK(reduce_mod_p1(p_mono({1}) * g - g).is_zero());
    // lift then reduce is the identity on moment polynomials
    const QPoly f = QPoly::monomial({3, 1}, Rat(7, 3)) + QPoly::variable(2) + QPoly::constant(5);
    CHECK(reduce_mod_p1(lift_to_power_sums(f)) == f);
}

TEST_CASE("mpoly arithmetic sanity") {
    const PowerSumPoly a = p_mono({2}) + p_mono({1});
    const PowerSumPoly b = p_mono({1}) - p_mono({2});
    CHECK(a * b == p_mono({1, 1}) - p_mono({2, 2}));
    CHECK((a - a).is_zero());
    CHECK(a * Rat(0) == PowerSumPoly());
    const PowerSumPoly c = p_mono({3, 3, 1}, Rat(2));
    CHECK(c.derivative(3) == p_mono({3, 1}, Rat(4)));
    CHECK(c.derivative(2).is_zero());
    CHECK(QPoly::monomial({2, 1}, Rat(1)).degree() == 5);  // weighted: (2+1)+(1+1)
    CHECK(p_mono({2, 1}).degree() == 3);
}

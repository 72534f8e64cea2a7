#include <doctest.h>

#include "kplab/inverse.hpp"
#include "kplab/validate.hpp"

using namespace kplab;

TEST_CASE("three-term closure reproduces the Ptolemy value") {
    std::map<Subset, double> v{{subset_from({1, 2}), 2}, {subset_from({2, 3}), 3}, {subset_from({3, 4}), 5},
                               {subset_from({1, 4}), 7}, {subset_from({1, 3}), 11}};
    CHECK(plucker_closure(v, 2, 4, all_k_subsets(4, 2)) == 1);
    CHECK(v.at(subset_from({2, 4})) == doctest::Approx((2.0 * 5 + 7.0 * 3) / 11.0).epsilon(1e-14));
}

TEST_CASE("network minors are monomials") {
    auto L = le_from_derangement(Derangement::from({3, 4, 1, 2}));
    auto N = network_exponents(L);
    CHECK(N.labels.size() == 4);
    std::vector<Rational> w{Rational(2), Rational(3), Rational(5), Rational(7)};
    auto P = pluckers(le_network_matrix(L, w));
    for (size_t b = 0; b < N.labels.size(); ++b) {
        Rational m = N.coeff[b];
        for (size_t p = 0; p < w.size(); ++p)
            for (int e = 0; e < N.exponent[b][p]; ++e) m *= w[p];
        CHECK(P.at(N.labels[b]) == m);
    }
}

TEST_CASE("projective distance ignores scale") {
    std::map<Subset, double> a{{1, 1.0}, {2, 2.0}}, b{{1, 3.0}, {2, 6.0}}, c{{1, 1.0}, {2, 4.0}};
    CHECK(projective_distance(a, b) < 1e-15);
    CHECK(projective_distance(a, c) > 0.1);
}

TEST_CASE("round trip in both time limits for n <= 4") {
    Rng rng(12);
    for (int n = 2; n <= 4; ++n)
        for (const auto& L : all_irreducible_le(n))
            for (double t : {-1000.0, 1000.0}) {
                auto kap = random_generic_kappa(n, rng);
                auto A = GrassmannPoint::from(random_cell_point(L, rng));
                Times tm;
                tm.t = t;
                auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
                REQUIRE(R.pi);
                CHECK(*R.pi == derangement_from_le(L));
                auto Rc = reconstruct_limit(R, L, t < 0 ? Regime::MinusInfinity : Regime::PlusInfinity);
                CHECK(projective_distance(A.plucker, Rc.pluckers) < 1e-6);
                CHECK(Rc.point.is_tnn(1e-9));
            }
}

TEST_CASE("plus regime: dual route agrees with the direct solve") {
    Rng rng(13);
    auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
    // Pairwise sums must be distinct for slope reading, so not the limit-plot example values.
    auto kap = KappaParams::parse("-1,-1/3,0,1/2,5/4,3");
    REQUIRE(kap.distinct_pair_sums());
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    Times tm;
    tm.t = 1000;
    auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
    auto a = reconstruct_limit(R, L, Regime::PlusInfinity);
    auto b = reconstruct_limit_direct(R, L, Regime::PlusInfinity);
    CHECK(projective_distance(a.pluckers, b.pluckers) < 1e-6);
}

TEST_CASE("TP Gr(2,5) at t = 0") {
    Rng rng(14);
    auto L = top_cell_gr2n(5);
    for (int s = 0; s < 5; ++s) {
        auto kap = random_generic_kappa(5, rng);
        auto A = GrassmannPoint::from(random_cell_point(L, rng));
        Times tm;
        auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
        CHECK(projective_distance(A.plucker, reconstruct_tp_anytime(R).pluckers) < 1e-8);
    }
}

TEST_CASE("tp2 mode rejects k != 2") {
    Rng rng(15);
    auto L = le_from_derangement(Derangement::from({2, 3, 1}));
    auto kap = KappaParams::parse("-1,0,1");
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    Times tm;
    auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
    if (R.k != 2) CHECK_THROWS(reconstruct_tp_anytime(R));
}

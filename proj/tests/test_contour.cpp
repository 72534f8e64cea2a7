#include <doctest.h>

#include "kplab/contour.hpp"
#include "kplab/json_io.hpp"
#include "kplab/validate.hpp"

#include <cmath>

using namespace kplab;

namespace {
const char* kExampleKappa = "-1,-1/2,0,1/2,1,3/2";
}

TEST_CASE("kappa parsing and genericity") {
    auto k = KappaParams::parse(kExampleKappa);
    CHECK(k.n() == 6);
    CHECK(k.exact[1] == Rational(-1, 2));
    CHECK(k.str() == "-1,-1/2,0,1/2,1,3/2");
    CHECK_THROWS(KappaParams::parse("0,1,1"));
    CHECK_FALSE(KappaParams::parse("0,1,2,3").distinct_pair_sums());  // 0+3 = 1+2
    CHECK(KappaParams::parse("0,1,1.5,1.75").distinct_pair_sums());
}

TEST_CASE("K factor is a Vandermonde product") {
    auto k = KappaParams::parse("0,1,3");
    CHECK(k_factor_exact(subset_from({1, 2, 3}), k) == Rational(1 * 3 * 2));
    CHECK(k_factor_exact(subset_from({2, 3}), k) == Rational(2));
}

TEST_CASE("single soliton of type [1,2]") {
    QMatrix a{{Rational(1), Rational(1)}};
    auto A = GrassmannPoint::from(a);
    auto kap = KappaParams::parse("-1,2");
    auto C = contour_at_t(A, kap, Times{});
    REQUIRE(C.edges.size() == 1);
    CHECK(C.edges[0].type == std::array<int, 2>{1, 2});
    CHECK(C.edges[0].ray == true);  // one line clipped by the box is stored as a ray end to end
    CHECK(C.regions.size() == 2);
    CHECK(C.trivalent() == 0);
}

TEST_CASE("limit plots of the six-letter example") {
    auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
    auto kap = KappaParams::parse(kExampleKappa);
    auto M = matroid_from_le(L);
    auto Cm = contour_at_infinity(M, kap, Frame::MinusInfinity);
    auto Cp = contour_at_infinity(M, kap, Frame::PlusInfinity);
    CHECK(Cm.trivalent() == 8);
    CHECK(Cp.trivalent() == 8);
    CHECK(Cp.count(VKind::Cross) == 2);
    CHECK(check_plot_laws(Cm, kap).empty());
    CHECK(check_plot_laws(Cp, kap).empty());
    CHECK(slide_m2_key(extract_soliton_graph(Cm)) == slide_m2_key(build_g_minus(L)));
    CHECK(slide_m2_key(extract_soliton_graph(Cp)) == slide_m2_key(build_g_plus(L)));
}

TEST_CASE("dispersion and balancing hold for every triple") {
    auto kap = KappaParams::parse(kExampleKappa);
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            for (int l = j + 1; l <= 6; ++l) CHECK(dispersion_resonance_check(kap, i, j, l));
}

TEST_CASE("tau argmax matches a direct evaluation") {
    Rng rng(4);
    auto L = le_from_derangement(Derangement::from({3, 4, 1, 2}));
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    auto kap = KappaParams::parse("-1,0,1/2,2");
    Times tm;
    tm.x = 0.3, tm.y = -0.7, tm.t = 0.1;
    double best = -INFINITY;
    Subset arg = 0;
    for (auto [J, d] : A.plucker) {
        if (d <= 0) continue;
        double v = std::log(d * k_factor(J, kap));
        for (int j : elements(J)) v += theta(j, kap, tm);
        if (v > best) best = v, arg = J;
    }
    CHECK(tau_eval(A, kap, tm).argmax == arg);
}

TEST_CASE("asymptotic regions of a TP Schubert cell form its necklace") {
    auto pi = Derangement::from({3, 4, 1, 2});
    auto kap = KappaParams::parse("-1,0,1/2,2");
    auto D = asymptotic_solitons(pi, kap);
    CHECK(D.regions == necklace_from_derangement(pi).subsets);
}

TEST_CASE("counterexample cell: unbounded labels differ from the necklace") {
    auto pi = Derangement::from({4, 3, 1, 2});
    auto kap = KappaParams::parse("0,1,1.5,1.75");
    auto D = asymptotic_solitons(pi, kap);
    CHECK(D.regions == std::vector<Subset>{subset_from({1, 2}), subset_from({2, 3}), subset_from({3, 4}),
                                           subset_from({1, 3})});
    CHECK(necklace_from_derangement(pi).subsets[3] == subset_from({2, 4}));
}

TEST_CASE("rays of a finite plot read back the derangement") {
    Rng rng(8);
    auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    auto kap = KappaParams::parse(kExampleKappa);
    auto D = unbounded_from_matrix(A, kap);
    REQUIRE(D.pi);
    CHECK(*D.pi == derangement_from_le(L));
}

TEST_CASE("X-crossings of the example satisfy their two-term relations") {
    Rng rng(2);
    auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
    auto kap = KappaParams::parse(kExampleKappa);
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    auto Cp = contour_at_infinity(matroid_from_le(L), kap, Frame::PlusInfinity);
    auto reps = verify_xcrossings(Cp, A, kap, false);
    CHECK(reps.size() == 2);
    for (const auto& r : reps) {
        CHECK(r.ok);
        CHECK(r.vanishing_value == 0);
        CHECK(r.relation_error < 1e-9);
    }
}

TEST_CASE("plot JSON round trip is exact") {
    Rng rng(6);
    auto L = le_from_derangement(Derangement::from({3, 4, 5, 1, 2}));
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    auto kap = KappaParams::parse("-1,-1/3,1/4,1,5/2");
    Times tm;
    tm.t = -2;
    auto C = contour_at_t(A, kap, tm);
    auto j = to_json(C);
    CHECK(j.contains("segments"));
    CHECK(j.contains("rays"));
    auto back = plot_from_json(Json::parse(j.dump()));
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.phase_walls == C.phase_walls);
    CHECK(back.edges.size() == C.edges.size());
    CHECK(back.regions.size() == C.regions.size());
}

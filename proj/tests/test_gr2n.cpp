#include <doctest.h>

#include "kplab/gr2n.hpp"
#include "kplab/validate.hpp"

#include <set>

using namespace kplab;

TEST_CASE("triangulation counts are Catalan numbers") {
    CHECK(enumerate_triangulations(3).size() == 1);
    CHECK(enumerate_triangulations(4).size() == 2);
    CHECK(enumerate_triangulations(5).size() == 5);
    CHECK(enumerate_triangulations(6).size() == 14);
    CHECK(enumerate_triangulations(7).size() == 42);
}

TEST_CASE("chord crossing") {
    CHECK(chords_cross({1, 3}, {2, 4}));
    CHECK_FALSE(chords_cross({1, 3}, {3, 5}));
    CHECK_FALSE(chords_cross({1, 4}, {2, 3}));
}

TEST_CASE("invalid triangulations are rejected") {
    Triangulation T{5, {{1, 3}, {2, 4}}};
    CHECK_THROWS(T.validate());
    Triangulation U{5, {{1, 3}}};
    CHECK_THROWS(U.validate());
}

TEST_CASE("graphs of triangulations are reduced and distinct") {
    for (int n = 4; n <= 6; ++n) {
        auto L = top_cell_gr2n(n);
        auto pi = derangement_from_le(L);
        std::set<std::string> keys;
        for (const auto& T : enumerate_triangulations(n)) {
            auto G = psi_of_triangulation(T);
            auto tr = compute_trips(G);
            CHECK(tr.derangement() == std::optional<Derangement>(pi));
            CHECK(check_resonance(G, tr).ok);
            CHECK(int(tr.faces.size()) == 2 * n - 3);
            // Face labels are the sides and diagonals.
            std::set<Subset> want;
            for (int i = 1; i <= n; ++i) want.insert(bit(i) | bit(i % n + 1));
            for (auto d : T.diagonals) want.insert(bit(d[0]) | bit(d[1]));
            CHECK(std::set<Subset>(tr.face_labels.begin(), tr.face_labels.end()) == want);
            keys.insert(m2_key(G));
        }
        CHECK(keys.size() == enumerate_triangulations(n).size());
    }
}

TEST_CASE("flags and triangulations") {
    auto f = ExponentFlag::parse("1,2,4", 4);
    CHECK(f.order == std::vector<int>{1, 2, 4, 3});
    auto T = triangulation_of_flag(f);
    REQUIRE(T.diagonals.size() == 1);
    CHECK(T.diagonals[0] == std::array<int, 2>{2, 4});
    CHECK_THROWS(ExponentFlag::parse("1,1,2", 4));
    for (const auto& U : enumerate_triangulations(6)) CHECK(triangulation_of_flag(flag_of_triangulation(U)) == U);
}

TEST_CASE("realize_flag hits the target graph") {
    Rng rng(9);
    auto L = top_cell_gr2n(5);
    for (const auto& T : enumerate_triangulations(5)) {
        auto kap = random_generic_kappa(5, rng);
        auto A = GrassmannPoint::from(random_cell_point(L, rng));
        auto R = realize_flag(flag_of_triangulation(T), A, kap);
        CHECK(R.ok);
        CHECK(R.graph_key == m2_key(psi_of_triangulation(T)));
    }
}

TEST_CASE("chord of a two-element label") { CHECK(chord_of(subset_from({2, 5})) == std::array<int, 2>{2, 5}); }

#include <doctest.h>

#include "kplab/gr2n.hpp"
#include "kplab/json_io.hpp"
#include "kplab/plabic.hpp"
#include "kplab/validate.hpp"

using namespace kplab;

TEST_CASE("bubble graph fails the resonance test") {
    auto G = bubble_graph();
    CHECK_FALSE(check_resonance(G).ok);
    bool has_r1 = false;
    for (const auto& m : applicable_moves(G)) has_r1 = has_r1 || m.type == MoveType::R1Reduce;
    CHECK(has_r1);
}

TEST_CASE("G- of the six-letter example") {
    auto pi = Derangement::from({4, 5, 1, 2, 6, 3});
    auto L = le_from_derangement(pi);
    auto G = build_g_minus(L);
    auto T = compute_trips(G);
    REQUIRE(T.derangement());
    CHECK(*T.derangement() == pi);
    CHECK(check_resonance(G, T).ok);
    auto M = matroid_from_le(L);
    for (Subset s : T.face_labels) CHECK(M.has(s));
    CHECK(M.has(g_minus_northwest_label(L)));
}

TEST_CASE("all three constructions have the right trips for n <= 5") {
    for (int n = 2; n <= 5; ++n)
        for (const auto& L : all_irreducible_le(n)) {
            auto pi = derangement_from_le(L);
            for (const auto& G : {build_g_minus(L), build_g_plus(L), build_hook_plabic(L)}) {
                auto d = compute_trips(G).derangement();
                CHECK(d == std::optional<Derangement>(pi));
                CHECK(check_resonance(G).ok);
            }
        }
}

TEST_CASE("every edge lies on two trips and adjacent faces differ by a swap") {
    auto G = build_hook_plabic(le_from_derangement(Derangement::from({3, 4, 5, 1, 2})));
    auto T = compute_trips(G);
    for (size_t e = 0; e < G.E.size(); ++e) CHECK(T.edge_trips[e].size() == 2);
    for (size_t e = 0; e < G.E.size(); ++e) {
        auto lab = T.edge_label(int(e));
        CHECK(lab[0] < lab[1]);
    }
}

TEST_CASE("M2 and M3 moves do not change the M2 key") {
    auto G = psi_of_triangulation(enumerate_triangulations(5)[0]);
    std::string key = m2_key(G);
    for (const auto& m : applicable_moves(G)) {
        if (m.type == MoveType::M2Contract || m.type == MoveType::M2Uncontract || m.type == MoveType::M3Insert ||
            m.type == MoveType::M3Remove)
            CHECK(m2_key(apply_move(G, m)) == key);
    }
}

TEST_CASE("square move keeps trips but changes the graph") {
    auto Ts = enumerate_triangulations(4);
    auto G = psi_of_triangulation(Ts[0]);
    auto pi = compute_trips(G).derangement();
    bool found = false;
    for (const auto& m : applicable_moves(G)) {
        if (m.type != MoveType::M1Square) continue;
        auto H = apply_move(G, m);
        CHECK(compute_trips(H).derangement() == pi);
        CHECK(check_resonance(H).ok);
        CHECK(m2_key(H) != m2_key(G));
        CHECK(m2_key(H) == m2_key(psi_of_triangulation(Ts[1])));
        found = true;
    }
    CHECK(found);
}

TEST_CASE("crossings: erasing keeps the trip permutation") {
    auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
    auto G = build_g_plus(L);
    auto pi = compute_trips(G).derangement();
    CHECK(compute_trips(erase_crossings(G)).derangement() == pi);
}

TEST_CASE("mirror reverses boundary order") {
    auto G = build_g_minus(le_from_derangement(Derangement::from({3, 4, 1, 2})));
    auto H = mirror(G);
    auto a = G.boundary_labels(), b = H.boundary_labels();
    std::reverse(b.begin(), b.end());
    CHECK(a == b);
}

TEST_CASE("graph JSON round trip preserves the planar code") {
    auto G = build_g_plus(le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3})));
    auto j = to_json(G);
    CHECK(j["xcrossings"].size() == 2 * size_t(G.count(VKind::Cross)));
    auto H = graph_from_json(Json::parse(j.dump()));
    CHECK(planar_code(H) == planar_code(G));
    CHECK(to_json(H).dump() == j.dump());
}

TEST_CASE("rotation listing a foreign edge is rejected") {
    auto j = to_json(bubble_graph());
    j["rotation"]["0"] = Json::array({3});
    CHECK_THROWS(graph_from_json(j));
}

TEST_CASE("move search agrees with resonance on small graphs") {
    CHECK_FALSE(reduced_by_moves(bubble_graph()));
    CHECK(reduced_by_moves(build_g_minus(le_from_derangement(Derangement::from({3, 4, 1, 2})))));
}

#include <doctest.h>

#include "kplab/json_io.hpp"
#include "kplab/positroid.hpp"

using namespace kplab;

namespace {
std::vector<std::string> necklace_strings(const Derangement& pi) {
    std::vector<std::string> out;
    for (Subset s : necklace_from_derangement(pi).subsets) out.push_back(subset_string(s, pi.n));
    return out;
}
}  // namespace

TEST_CASE("nine-letter derangement has the expected necklace") {
    auto pi = Derangement::from({6, 7, 1, 2, 8, 3, 9, 4, 5});
    CHECK(pi.k() == 4);
    CHECK(necklace_strings(pi) ==
          std::vector<std::string>{"1257", "2357", "3457", "4567", "5678", "6789", "1789", "1289", "1259"});
    CHECK(derangement_from_necklace(necklace_from_derangement(pi)) == pi);
}

TEST_CASE("transposition on two letters") {
    auto pi = Derangement::from({2, 1});
    auto L = le_from_derangement(pi);
    CHECK(L.k == 1);
    CHECK(L.rows == std::vector<int>{1});
    CHECK(L.plus(0, 0));
    auto M = matroid_from_le(L);
    CHECK(M.bases == std::vector<Subset>{bit(1), bit(2)});
    CHECK(necklace_strings(pi) == std::vector<std::string>{"1", "2"});
}

TEST_CASE("derangements must be fixed-point free permutations") {
    CHECK_THROWS(Derangement::from({1, 2}));
    CHECK_THROWS(Derangement::from({2, 2, 1}));
    CHECK_NOTHROW(Derangement::from({3, 1, 2}));
}

TEST_CASE("shape of the Le-diagram follows the excedances") {
    // Excedances at 1,2,4,7 give vertical border steps there.
    auto L = le_from_derangement(Derangement::from({7, 4, 2, 9, 1, 3, 8, 6, 5}));
    CHECK(L.k == 4);
    CHECK(L.n == 9);
    CHECK(L.rows == std::vector<int>{5, 5, 4, 2});
    CHECK(L.row_labels() == std::vector<int>{1, 2, 4, 7});
}

TEST_CASE("round trips over all derangements of five letters") {
    for (const auto& pi : all_derangements(5)) {
        auto L = le_from_derangement(pi);
        CHECK(derangement_from_le(L) == pi);
        CHECK(L.le_property());
        CHECK(necklace_from_matroid(matroid_from_le(L)) == necklace_from_derangement(pi));
        CHECK(dualize(dualize(pi)) == pi);
        CHECK(dualize(dualize(L)) == L);
    }
    CHECK(all_derangements(5).size() == 44);
}

TEST_CASE("dual cell has the reflected matroid") {
    for (const auto& pi : all_derangements(4)) {
        auto L = le_from_derangement(pi);
        CHECK(matroid_from_le(dualize(L)) == dualize(matroid_from_le(L)));
    }
}

TEST_CASE("top cell of Gr(2,4) has all six bases") {
    auto L = le_from_derangement(Derangement::from({3, 4, 1, 2}));
    CHECK(matroid_from_le(L).bases.size() == 6);
    CHECK(classify_cell(L).top_cell);
}

TEST_CASE("network points are totally nonnegative") {
    Rng rng(3);
    for (const auto& L : all_irreducible_le(4)) {
        auto A = GrassmannPoint::from(random_cell_point(L, rng));
        CHECK(A.is_tnn());
        CHECK(A.matroid() == matroid_from_le(L));
    }
}

TEST_CASE("rationals parse from fractions and decimals") {
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(parse_rational("1.75") == Rational(7, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK(rational_string(Rational(3, 6)) == "1/2");
}

TEST_CASE("cell objects survive a JSON round trip") {
    auto pi = Derangement::from({4, 5, 1, 2, 6, 3});
    auto L = le_from_derangement(pi);
    auto I = necklace_from_derangement(pi);
    auto M = matroid_from_le(L);
    CHECK(derangement_from_json(Json::parse(to_json(pi).dump())) == pi);
    CHECK(le_from_json(Json::parse(to_json(L).dump())) == L);
    CHECK(necklace_from_json(Json::parse(to_json(I).dump())) == I);
    CHECK(matroid_from_json(Json::parse(to_json(M).dump())) == M);
    CHECK(to_json(L)["fill"][0][0].is_string());
}

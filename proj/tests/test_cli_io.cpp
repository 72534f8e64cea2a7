#include <doctest.h>

#include "kplab/json_io.hpp"
#include "kplab/svg.hpp"
#include "kplab/validate.hpp"

#include <filesystem>

using namespace kplab;

namespace {
std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("kplab_test_" + name)).string();
}
}  // namespace

TEST_CASE("cell sources: inline permutation and JSON files") {
    auto L = cell_from_source("4,5,1,2,6,3");
    CHECK(derangement_from_le(L) == Derangement::from({4, 5, 1, 2, 6, 3}));
    auto p = temp_path("le.json");
    write_text_file(p, to_json(L).dump());
    CHECK(cell_from_source(p) == L);
    write_text_file(p, to_json(necklace_from_derangement(derangement_from_le(L))).dump());
    CHECK(cell_from_source(p) == L);
    CHECK_THROWS(cell_from_source("4,x,1"));
}

TEST_CASE("kappa sources: inline, csv file and JSON file") {
    CHECK(kappa_from_source("-1,1/2,2").str() == "-1,1/2,2");
    auto p = temp_path("kappa.txt");
    write_text_file(p, "-1\n1/2\n2\n");
    CHECK(kappa_from_source(p).str() == "-1,1/2,2");
    write_text_file(p, R"({"kappa": ["-1", 0.5, 2]})");
    CHECK(kappa_from_source(p).str() == "-1,1/2,2");
    CHECK(kappa_from_json(to_json(kappa_from_source("-1,1/2,2"))).str() == "-1,1/2,2");
}

TEST_CASE("points: exact and floating matrices") {
    QMatrix q{{Rational(1), Rational(0), Rational(-1)}, {Rational(0), Rational(1), Rational(1, 2)}};
    auto A = GrassmannPoint::from(q);
    auto B = point_from_json(Json::parse(to_json(A).dump()));
    CHECK(B.exact == A.exact);
    CHECK(B.exact_plucker == A.exact_plucker);
    auto C = point_from_json(Json::parse(R"({"matrix": [[1.0, 0.5, 0.0], [0.0, 1.0, 2.0]]})"));
    CHECK(C.exact.empty());
    CHECK(C.plucker.at(subset_from({1, 3})) == doctest::Approx(2.0));
}

TEST_CASE("malformed JSON is a schema error") {
    CHECK_THROWS_AS(le_from_json(Json::parse(R"({"k":1,"n":2,"rows":[1],"fill":[["x"]]})")), Error);
    CHECK_THROWS_AS(plot_from_json(Json::parse(R"({"frame":"sideways","k":1,"n":2})")), Error);
    CHECK_THROWS_AS(necklace_from_json(Json::parse(R"({"k":1,"n":2,"subsets":[[1]]})")), Error);
}

TEST_CASE("SVG output is deterministic and labelled") {
    Rng rng(21);
    auto L = le_from_derangement(Derangement::from({2, 1}));
    auto A = GrassmannPoint::from(random_cell_point(L, rng));
    auto C = contour_at_t(A, KappaParams::parse("-1,1"), Times{});
    auto s = plot_svg(C);
    CHECK(s == plot_svg(plot_from_json(Json::parse(to_json(C).dump()))));
    CHECK(s.find(">[1,2]<") != std::string::npos);
    CHECK(s.find(">1<") != std::string::npos);
    CHECK(s.find(">2<") != std::string::npos);
    auto g = graph_svg(build_g_minus(le_from_derangement(Derangement::from({3, 4, 1, 2}))));
    CHECK(g.find("[1,3]") != std::string::npos);
}

TEST_CASE("validation report of a small suite") {
    auto r = run_validation("bijections", 4, 1);
    CHECK(r["pass"].get<bool>());
    CHECK(r["suites"]["bijections"]["properties"]["necklace_roundtrip"]["checked"].get<long>() == 1 + 2 + 9);
    CHECK_THROWS(run_validation("nonsense", 4, 1));
    CHECK(run_validation("bijections", 4, 1).dump() == r.dump());
}

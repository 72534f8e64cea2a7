// kplab command-line front end.

#include "kplab/gr2n.hpp"
#include "kplab/inverse.hpp"
#include "kplab/json_io.hpp"
#include "kplab/svg.hpp"
#include "kplab/validate.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace kplab;

namespace {

struct Common {
    std::uint64_t seed = 20240601;
    std::string out;
};

void emit(const Json& j, const std::string& out) {
    std::string text = j.dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else write_text_file(out, text);
}

Json cell_json(const LeDiagram& L) {
    auto pi = derangement_from_le(L);
    auto I = necklace_from_derangement(pi);
    auto M = matroid_from_le(L);
    Json strings = Json::array();
    for (Subset s : I.subsets) strings.push_back(subset_string(s, pi.n));
    auto cls = classify_cell(pi);
    return Json{{"derangement", to_json(pi)},
                {"derangement_string", pi.str()},
                {"necklace", to_json(I)},
                {"necklace_strings", strings},
                {"le", to_json(L)},
                {"matroid", to_json(M)},
                {"class",
                 {{"irreducible", cls.irreducible}, {"tp_schubert", cls.tp_schubert}, {"top_cell", cls.top_cell}}}};
}

// Finite-time plots evaluate tau, which needs distinct pairwise sums; limit
// plots are exact and only warn.
KappaParams checked_kappa(const std::string& source, int n, bool finite = true) {
    auto kap = kappa_from_source(source);
    if (kap.n() != n) throw Error("InvalidKappa", "kappa has " + std::to_string(kap.n()) + " entries, need " +
                                                      std::to_string(n));
    if (!kap.distinct_pair_sums()) {
        if (finite) throw Error("NonGenericKappa", "pairwise sums of kappa coincide");
        std::cerr << "warning: pairwise sums of kappa coincide\n";
        return kap;
    }
    if (!kap.generic()) std::cerr << "warning: kappa is not generic (some subset sums coincide)\n";
    return kap;
}

Times make_times(double x, double y, double t, const std::vector<double>& higher) {
    Times tm;
    tm.x = x;
    tm.y = y;
    tm.t = t;
    tm.higher = higher;
    return tm;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kplab: positroid cells, plabic graphs and line-soliton contour plots"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--seed", common.seed, "seed of the single random generator")->capture_default_str();

    // convert
    auto* convert = app.add_subcommand("convert", "print all four descriptions of a cell");
    std::string perm, le_file, necklace_file, matroid_file;
    std::string convert_out;
    auto* g_perm = convert->add_option("--perm", perm, "derangement, e.g. 6,7,1,2,8,3,9,4,5");
    auto* g_le = convert->add_option("--le", le_file, "Le-diagram JSON file");
    auto* g_neck = convert->add_option("--necklace", necklace_file, "necklace JSON file");
    auto* g_mat = convert->add_option("--matroid", matroid_file, "matroid JSON file");
    g_perm->excludes(g_le, g_neck, g_mat);
    g_le->excludes(g_neck, g_mat);
    g_neck->excludes(g_mat);
    convert->add_option("--out", convert_out, "output file (default stdout)");

    // plabic
    auto* plabic = app.add_subcommand("plabic", "build a plabic graph for a cell");
    std::string plabic_cell, plabic_kind = "gminus", plabic_out, plabic_svg;
    plabic->add_option("--cell", plabic_cell, "permutation or Le/necklace/derangement JSON")->required();
    plabic->add_option("--kind", plabic_kind, "gminus | gplus | hook")
        ->check(CLI::IsMember({"gminus", "gplus", "hook"}))
        ->capture_default_str();
    plabic->add_option("--out", plabic_out, "graph JSON");
    plabic->add_option("--svg", plabic_svg, "graph SVG");

    // contour
    auto* contour = app.add_subcommand("contour", "contour plot at a finite time or in a time limit");
    std::string c_cell, c_kappa, c_matrix, c_limit, c_out, c_svg;
    double c_time = 0, c_x = 0, c_y = 0;
    std::vector<double> c_higher;
    contour->add_option("--cell", c_cell, "permutation or Le/necklace/derangement JSON")->required();
    contour->add_option("--kappa", c_kappa, "inline list or file")->required();
    contour->add_option("--matrix", c_matrix, "point JSON (default: random point of the cell)");
    auto* o_time = contour->add_option("--time", c_time, "t");
    auto* o_limit = contour->add_option("--limit", c_limit, "plus | minus")->check(CLI::IsMember({"plus", "minus"}));
    o_time->excludes(o_limit);
    contour->add_option("--x", c_x, "x of the time vector (unused by the plot window)");
    contour->add_option("--y", c_y, "y");
    contour->add_option("--higher", c_higher, "t4, t5, ...")->delimiter(',');
    contour->add_option("--out", c_out, "plot JSON");
    contour->add_option("--svg", c_svg, "plot SVG");

    // gr2n
    auto* gr2n = app.add_subcommand("gr2n", "soliton graphs of TP Gr(2,n)");
    gr2n->require_subcommand(1);
    auto* enumerate = gr2n->add_subcommand("enumerate", "one graph per triangulation");
    int e_n = 5;
    std::string e_out;
    enumerate->add_option("--n", e_n, "polygon size")->required()->check(CLI::Range(3, 12));
    enumerate->add_option("--out", e_out, "output directory");
    auto* realize = gr2n->add_subcommand("realize", "solve for times realizing a flag");
    std::string r_flag, r_kappa, r_matrix, r_out, r_svg;
    int r_n = 4;
    double r_gap = 20;
    realize->add_option("--flag", r_flag, "insertion order, e.g. 1,2,4")->required();
    realize->add_option("--n", r_n, "n")->required()->check(CLI::Range(3, 12));
    realize->add_option("--kappa", r_kappa, "inline list or file")->required();
    realize->add_option("--matrix", r_matrix, "point of TP Gr(2,n) (default: random)");
    realize->add_option("--gap", r_gap, "initial drop between consecutive exponentials")->capture_default_str();
    realize->add_option("--out", r_out, "verification plot JSON");
    realize->add_option("--svg", r_svg, "verification plot SVG");

    // inverse
    auto* inverse = app.add_subcommand("inverse", "recover the point from a contour plot");
    std::string i_plot, i_kappa, i_mode = "limit", i_cell, i_out;
    double i_time = 0;
    inverse->add_option("--plot", i_plot, "plot JSON")->required();
    inverse->add_option("--kappa", i_kappa, "inline list or file")->required();
    auto* o_itime = inverse->add_option("--time", i_time, "t of the plot (default: read from the plot)");
    inverse->add_option("--mode", i_mode, "limit | tp2")->check(CLI::IsMember({"limit", "tp2"}))->capture_default_str();
    inverse->add_option("--cell", i_cell, "cell (default: read from the rays)");
    inverse->add_option("--out", i_out, "result JSON");

    // validate
    auto* validate = app.add_subcommand("validate", "run a validation suite");
    std::string v_suite = "all", v_out;
    int v_nmax = 5;
    validate->add_option("--suite", v_suite, "bijections | plabic | contour | gr2n | inverse | all")
        ->check(CLI::IsMember({"bijections", "plabic", "contour", "gr2n", "inverse", "all"}))
        ->capture_default_str();
    validate->add_option("--nmax", v_nmax, "largest n")->capture_default_str();
    validate->add_option("--out", v_out, "report JSON");

    // render
    auto* render = app.add_subcommand("render", "SVG of a plot or graph JSON");
    std::string rd_in, rd_out;
    render->add_option("input", rd_in, "plot or graph JSON")->required();
    render->add_option("--out", rd_out, "SVG file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        Rng rng(common.seed);

        if (*convert) {
            LeDiagram L;
            if (!perm.empty()) L = cell_from_source(perm);
            else if (!le_file.empty()) L = le_from_json(read_json_file(le_file));
            else if (!necklace_file.empty())
                L = le_from_derangement(derangement_from_necklace(necklace_from_json(read_json_file(necklace_file))));
            else if (!matroid_file.empty())
                L = le_from_derangement(
                    derangement_from_necklace(necklace_from_matroid(matroid_from_json(read_json_file(matroid_file)))));
            else throw Error("ParseError", "give one of --perm, --le, --necklace, --matroid");
            Json j = cell_json(L);
            j["seed"] = common.seed;
            emit(j, convert_out);
            return 0;
        }

        if (*plabic) {
            auto L = cell_from_source(plabic_cell);
            PlabicGraph G = plabic_kind == "gminus" ? build_g_minus(L)
                            : plabic_kind == "gplus" ? build_g_plus(L)
                                                     : build_hook_plabic(L);
            auto T = compute_trips(G);
            auto res = check_resonance(G, T);
            Json j = to_json(G);
            j["kind"] = plabic_kind;
            j["trip_permutation"] = T.derangement() ? to_json(*T.derangement()) : Json(nullptr);
            j["resonance"] = res.ok;
            Json faces = Json::array();
            for (Subset s : T.face_labels) faces.push_back(subset_json(s));
            j["face_labels"] = faces;
            j["seed"] = common.seed;
            emit(j, plabic_out);
            if (!plabic_svg.empty()) write_text_file(plabic_svg, graph_svg(G));
            return 0;
        }

        if (*contour) {
            auto L = cell_from_source(c_cell);
            auto kap = checked_kappa(c_kappa, L.n, c_limit.empty());
            ContourPlot C;
            if (!c_limit.empty()) {
                C = contour_at_infinity(matroid_from_le(L), kap,
                                        c_limit == "plus" ? Frame::PlusInfinity : Frame::MinusInfinity);
            } else {
                GrassmannPoint A = c_matrix.empty() ? GrassmannPoint::from(random_cell_point(L, rng))
                                                    : point_from_json(read_json_file(c_matrix));
                if (A.matroid() != matroid_from_le(L))
                    std::cerr << "warning: the matrix does not lie in the given cell\n";
                C = contour_at_t(A, kap, make_times(c_x, c_y, c_time, c_higher));
            }
            Json j = to_json(C);
            j["kappa"] = to_json(kap)["kappa"];
            j["seed"] = common.seed;
            emit(j, c_out);
            if (!c_svg.empty()) write_text_file(c_svg, plot_svg(C));
            for (const auto& w : C.warnings) std::cerr << "warning: " << w << "\n";
            return 0;
        }

        if (*enumerate) {
            auto Ts = enumerate_triangulations(e_n);
            Json index = Json::array();
            for (size_t i = 0; i < Ts.size(); ++i) {
                auto G = psi_of_triangulation(Ts[i]);
                Json j = to_json(G);
                Json diag = Json::array();
                for (auto d : Ts[i].diagonals) diag.push_back(Json::array({d[0], d[1]}));
                j["triangulation"] = diag;
                j["flag"] = flag_of_triangulation(Ts[i]).order;
                std::string stem = "T" + std::to_string(i + 1);
                if (!e_out.empty()) {
                    write_text_file((std::filesystem::path(e_out) / (stem + ".json")).string(), j.dump(2) + "\n");
                    write_text_file((std::filesystem::path(e_out) / (stem + ".svg")).string(), graph_svg(G));
                }
                index.push_back(Json{{"name", stem}, {"triangulation", diag}});
            }
            std::cout << Json{{"n", e_n}, {"count", Ts.size()}, {"graphs", index}}.dump(2) << "\n";
            return 0;
        }

        if (*realize) {
            auto flag = ExponentFlag::parse(r_flag, r_n);
            auto kap = checked_kappa(r_kappa, r_n);
            GrassmannPoint A = r_matrix.empty() ? GrassmannPoint::from(random_cell_point(top_cell_gr2n(r_n), rng))
                                                : point_from_json(read_json_file(r_matrix));
            auto R = realize_flag(flag, A, kap, r_gap);
            Json tm{{"x", R.times.x}, {"y", R.times.y}, {"t", R.times.t}, {"higher", R.times.higher}};
            Json diag = Json::array();
            for (auto d : triangulation_of_flag(flag).diagonals) diag.push_back(Json::array({d[0], d[1]}));
            std::cout << Json{{"flag", flag.order}, {"triangulation", diag}, {"times", tm},
                              {"gap", R.gap},       {"rounds", R.rounds},      {"matched", R.ok},
                              {"seed", common.seed}}
                             .dump(2)
                      << "\n";
            if (!r_out.empty()) {
                Json j = to_json(R.plot);
                j["kappa"] = to_json(kap)["kappa"];
                j["seed"] = common.seed;
                write_text_file(r_out, j.dump(2) + "\n");
            }
            if (!r_svg.empty()) write_text_file(r_svg, plot_svg(R.plot));
            return 0;
        }

        if (*inverse) {
            auto C = plot_from_json(read_json_file(i_plot));
            if (C.frame != Frame::Finite)
                throw Error("InvalidPlot", "inverse needs a finite-time plot; limit plots carry no offsets");
            auto kap = checked_kappa(i_kappa, C.n);
            Times tm = C.times;
            if (o_itime->count()) tm.t = i_time;
            auto R = read_plot(C, kap, tm);
            Reconstruction Rc;
            if (i_mode == "tp2") {
                Rc = reconstruct_tp_anytime(R);
            } else {
                LeDiagram L;
                if (!i_cell.empty()) L = cell_from_source(i_cell);
                else if (R.pi) L = le_from_derangement(*R.pi);
                else throw Error("ParseError", "the rays do not determine the cell; pass --cell");
                Rc = reconstruct_limit(R, L, tm.t < 0 ? Regime::MinusInfinity : Regime::PlusInfinity);
            }
            Json pl = Json::array();
            for (const auto& [J, v] : Rc.pluckers) pl.push_back(Json{{"label", subset_json(J)}, {"value", v}});
            Json j{{"mode", i_mode},
                   {"point", to_json(Rc.point)},
                   {"plucker", pl},
                   {"weights", Rc.weights},
                   {"residual", Rc.residual},
                   {"max_cycle_error", R.max_cycle_error},
                   {"walls_read", R.walls_read},
                   {"trace", Rc.trace}};
            if (R.pi) j["derangement"] = to_json(*R.pi);
            j["seed"] = common.seed;
            emit(j, i_out);
            return 0;
        }

        if (*validate) {
            Json report = run_validation(v_suite, v_nmax, common.seed);
            emit(report, v_out);
            if (!v_out.empty()) std::cout << (report["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
            return report["pass"].get<bool>() ? 0 : 1;
        }

        if (*render) {
            Json j = read_json_file(rd_in);
            std::string svg = j.contains("rotation") ? graph_svg(graph_from_json(j)) : plot_svg(plot_from_json(j));
            if (rd_out.empty()) std::cout << svg;
            else write_text_file(rd_out, svg);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

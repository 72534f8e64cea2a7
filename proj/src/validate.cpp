#include "kplab/validate.hpp"

#include "kplab/gr2n.hpp"
#include "kplab/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kplab {

void Tally::check(const std::string& property, bool ok, const std::string& detail) {
    auto& c = props_[property];
    ++c.checked;
    if (!ok) {
        ++c.failed;
        if (c.examples.size() < 5) c.examples.push_back(detail);
    }
}

bool Tally::pass() const {
    for (const auto& [k, c] : props_)
        if (c.failed) return false;
    return true;
}

Json Tally::json() const {
    Json p = Json::object();
    for (const auto& [k, c] : props_) {
        Json o{{"checked", c.checked}, {"failed", c.failed}};
        if (!c.examples.empty()) o["failures"] = c.examples;
        p[k] = o;
    }
    Json j{{"pass", pass()}, {"properties", p}};
    if (!notes_.empty()) j["notes"] = notes_;
    return j;
}

// --------------------------------------------------------------- fixtures

PlabicGraph bubble_graph() {
    PlabicGraph G;
    G.n = 2;
    int b1 = G.add_vertex(VKind::Boundary, 1, -2, 0);
    int b2 = G.add_vertex(VKind::Boundary, 2, 2, 0);
    int w = G.add_vertex(VKind::White, 0, -1, 0);
    int b = G.add_vertex(VKind::Black, 0, 1, 0);
    int e1 = G.add_edge(b1, w);
    int up = G.add_edge(w, b);
    int down = G.add_edge(w, b);
    int e2 = G.add_edge(b, b2);
    G.V[w].rot = {down, up, e1};
    G.V[b].rot = {e2, up, down};
    G.V[b1].rot = {e1};
    G.V[b2].rot = {e2};
    G.boundary = {b1, b2};
    G.validate();
    return G;
}

LeDiagram top_cell_gr2n(int n) {
    std::vector<int> im(n);
    for (int i = 1; i <= n; ++i) im[i - 1] = (i - 3 + 2 * n) % n + 1;
    return le_from_derangement(Derangement::from(im));
}

std::vector<Subset> unbounded_labels_by_tau(const GrassmannPoint& A, const KappaParams& kappa, const Times& tm,
                                            const std::array<double, 4>& box, int samples) {
    const double cx = (box[0] + box[1]) / 2, cy = (box[2] + box[3]) / 2;
    const double hx = (box[1] - box[0]) / 2, hy = (box[3] - box[2]) / 2;
    std::vector<Subset> seq;
    for (int s = 0; s < samples; ++s) {
        // Square perimeter parametrized by angle, starting due west.
        double a = M_PI + 2 * M_PI * s / samples;
        double c = std::cos(a), d = std::sin(a);
        double m = std::max(std::abs(c), std::abs(d));
        Times p = tm;
        p.x = cx + hx * c / m;
        p.y = cy + hy * d / m;
        Subset J = tau_eval(A, kappa, p).argmax;
        if (seq.empty() || seq.back() != J) seq.push_back(J);
    }
    while (seq.size() > 1 && seq.back() == seq.front()) seq.pop_back();
    // The first label is the region at x -> -infinity for fixed y, which the
    // box boundary can miss when a wall of small slope passes near the west.
    Times far = tm;
    far.x = cx - 1e6 * std::max({hx, hy, 1.0});
    far.y = cy;
    auto it = std::find(seq.begin(), seq.end(), tau_eval(A, kappa, far).argmax);
    if (it != seq.end()) std::rotate(seq.begin(), it, seq.end());
    return seq;
}

// ----------------------------------------------------------------- suites

namespace {

void suite_bijections(Tally& T, int nmax) {
    nmax = std::min(nmax, 8);
    for (int n = 2; n <= nmax; ++n) {
        auto ds = all_derangements(n);
        long cells = 0;
        for (const auto& pi : ds) {
            auto I = necklace_from_derangement(pi);
            T.check("necklace_roundtrip", derangement_from_necklace(I) == pi, pi.str());
            auto L = le_from_derangement(pi);
            T.check("le_roundtrip", derangement_from_le(L) == pi, pi.str());
            T.check("le_property", L.le_property() && L.irreducible(), pi.str());
            T.check("k_is_excedances", L.k == pi.k() && I.k == pi.k(), pi.str());
            T.check("dual_involution", dualize(dualize(pi)) == pi, pi.str());
            if (n <= 6) {
                auto M = matroid_from_le(L);
                T.check("matroid_necklace", necklace_from_matroid(M) == I, pi.str());
                T.check("dual_matroid", matroid_from_le(dualize(L)) == dualize(M), pi.str());
            }
            ++cells;
        }
        T.check("le_count", long(all_irreducible_le(n).size()) == cells, "n=" + std::to_string(n));
    }
    auto pi = Derangement::from({6, 7, 1, 2, 8, 3, 9, 4, 5});
    std::vector<std::string> want = {"1257", "2357", "3457", "4567", "5678", "6789", "1789", "1289", "1259"};
    auto I = necklace_from_derangement(pi);
    bool ok = true;
    for (int i = 0; i < 9; ++i) ok = ok && subset_string(I.subsets[i], 9) == want[i];
    T.check("example_necklace", ok && derangement_from_necklace(I) == pi, pi.str());
}

void suite_plabic(Tally& T, int nmax, Rng& rng) {
    nmax = std::min(nmax, 6);
    for (int n = 2; n <= nmax; ++n) {
        for (const auto& L : all_irreducible_le(n)) {
            auto pi = derangement_from_le(L);
            auto M = matroid_from_le(L);
            auto trips_ok = [&](const PlabicGraph& G) {
                auto d = compute_trips(G).derangement();
                return d && *d == pi;
            };
            auto Gm = build_g_minus(L), Gp = build_g_plus(L), H = build_hook_plabic(L);
            T.check("g_minus_trips", trips_ok(Gm), pi.str());
            T.check("g_plus_trips", trips_ok(Gp), pi.str());
            T.check("hook_trips", trips_ok(H), pi.str());
            T.check("g_minus_resonance", check_resonance(Gm).ok, pi.str());
            T.check("g_plus_resonance", check_resonance(Gp).ok, pi.str());
            T.check("hook_resonance", check_resonance(H).ok, pi.str());
            bool bases = true;
            for (Subset s : compute_trips(Gm).face_labels) bases = bases && M.has(s);
            T.check("g_minus_faces_are_bases", bases, pi.str());
            auto J = graph_from_json(Json::parse(to_json(Gm).dump()));
            T.check("graph_json_roundtrip", planar_code(J) == planar_code(Gm), pi.str());
        }
    }
    T.check("bubble_not_reduced", !check_resonance(bubble_graph()).ok);
    // Random move sequences from the triangulation graphs.
    for (int n = 4; n <= std::min(nmax, 6); ++n) {
        for (const auto& Tr : enumerate_triangulations(n)) {
            PlabicGraph G = psi_of_triangulation(Tr);
            auto pi0 = compute_trips(G).derangement();
            bool res0 = check_resonance(G).ok;
            int len = rng.uniform_int(1, 20);
            for (int s = 0; s < len; ++s) {
                auto moves = applicable_moves(G);
                std::vector<Move> keep;
                for (const auto& m : moves)
                    if (m.type != MoveType::R1Reduce) keep.push_back(m);
                if (keep.empty()) break;
                G = apply_move(G, keep[rng.uniform_int(0, int(keep.size()) - 1)]);
                T.check("moves_keep_trips", compute_trips(G).derangement() == pi0, Tr.str());
                T.check("moves_keep_resonance", check_resonance(G).ok == res0, Tr.str());
            }
        }
    }
}

void suite_contour(Tally& T, int nmax, Rng& rng) {
    nmax = std::min(nmax, 5);
    {
        auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
        auto kap = KappaParams::parse("-1,-1/2,0,1/2,1,3/2");
        auto M = matroid_from_le(L);
        auto Cm = contour_at_infinity(M, kap, Frame::MinusInfinity);
        auto Cp = contour_at_infinity(M, kap, Frame::PlusInfinity);
        T.check("example_trivalent", Cm.trivalent() == 8 && Cp.trivalent() == 8,
                std::to_string(Cm.trivalent()) + "+" + std::to_string(Cp.trivalent()));
        T.check("example_plus_crossings", Cp.count(VKind::Cross) == 2, std::to_string(Cp.count(VKind::Cross)));
        T.check("example_g_minus", slide_m2_key(extract_soliton_graph(Cm)) == slide_m2_key(build_g_minus(L)));
        T.check("example_g_plus", slide_m2_key(extract_soliton_graph(Cp)) == slide_m2_key(build_g_plus(L)));
    }
    for (int n = 2; n <= nmax; ++n) {
        auto kap = random_generic_kappa(n, rng);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c)
                    T.check("dispersion_balancing", dispersion_resonance_check(kap, a, b, c), kap.str());
        for (const auto& L : all_irreducible_le(n)) {
            auto pi = derangement_from_le(L);
            auto M = matroid_from_le(L);
            auto A = GrassmannPoint::from(random_cell_point(L, rng));
            for (Frame f : {Frame::MinusInfinity, Frame::PlusInfinity}) {
                auto C = contour_at_infinity(M, kap, f);
                auto laws = check_plot_laws(C, kap);
                T.check("limit_plot_laws", laws.empty(), pi.str() + (laws.empty() ? "" : " " + laws[0]));
                bool extracted = true;
                try {
                    extract_soliton_graph(C);
                } catch (const Error& e) {
                    extracted = false;
                }
                T.check("limit_graph_extracts", extracted, pi.str());
                for (const auto& r : verify_xcrossings(C, A, kap, f == Frame::MinusInfinity)) {
                    T.check("xcrossing_relations", r.ok, pi.str());
                    T.check("xcrossing_no_case3", r.kind != XCase::Three, pi.str());
                }
                auto back = plot_from_json(Json::parse(to_json(C).dump()));
                T.check("plot_json_roundtrip", to_json(back).dump() == to_json(C).dump(), pi.str());
            }
            if (n <= 4) {
                Times tm;
                tm.t = -1000;
                auto C = contour_at_t(A, kap, tm);
                bool same = false;
                std::string why = pi.str();
                try {
                    auto G = extract_soliton_graph(C);
                    auto ref = extract_soliton_graph(contour_at_infinity(M, kap, Frame::MinusInfinity));
                    same = slide_m2_key(G) == slide_m2_key(ref);
                } catch (const Error& e) {
                    why += std::string(" ") + e.what();
                }
                T.check("finite_matches_limit", same, why);
                T.check("finite_plot_laws", check_plot_laws(C, kap, &A).empty(), pi.str());
            }
            if (classify_cell(pi).tp_schubert) {
                Times tm;
                auto C = contour_at_t(A, kap, tm);
                auto seq = unbounded_labels_by_tau(A, kap, tm, C.box);
                auto I = necklace_from_derangement(pi);
                T.check("necklace_asymptotics", seq == I.subsets, pi.str());
            }
        }
    }
    {
        auto L = le_from_derangement(Derangement::from({4, 3, 1, 2}));
        auto kap = KappaParams::parse("0,1,1.5,1.75");
        auto A = GrassmannPoint::from(random_cell_point(L, rng));
        Times tm;
        auto C = contour_at_t(A, kap, tm);
        auto seq = unbounded_labels_by_tau(A, kap, tm, C.box);
        std::vector<Subset> want = {subset_from({1, 2}), subset_from({2, 3}), subset_from({3, 4}),
                                    subset_from({1, 3})};
        T.check("necklace_counterexample", seq == want);
    }
}

void suite_gr2n(Tally& T, int nmax, Rng& rng) {
    nmax = std::min(nmax, 7);
    const long catalan[] = {1, 1, 1, 1, 2, 5, 14, 42};
    for (int n = 3; n <= nmax; ++n) {
        auto Ts = enumerate_triangulations(n);
        T.check("catalan_count", long(Ts.size()) == catalan[n], "n=" + std::to_string(n));
        auto L = top_cell_gr2n(n);
        auto pi = derangement_from_le(L);
        std::set<std::string> keys;
        for (const auto& Tr : Ts) {
            auto G = psi_of_triangulation(Tr);
            auto tr = compute_trips(G);
            T.check("psi_trips", tr.derangement() == pi, Tr.str());
            T.check("psi_resonance", check_resonance(G, tr).ok, Tr.str());
            T.check("psi_regions", int(tr.faces.size()) == 2 * n - 3, Tr.str());
            T.check("flag_roundtrip", triangulation_of_flag(flag_of_triangulation(Tr)) == Tr, Tr.str());
            keys.insert(m2_key(G));
        }
        T.check("psi_distinct", keys.size() == Ts.size(), "n=" + std::to_string(n));
        if (n < 4 || n > 6) continue;
        int redraws = 0;
        for (int s = 0; s < 30; ++s) {
            auto kap = random_generic_kappa(n, rng);
            auto A = GrassmannPoint::from(random_cell_point(L, rng));
            ContourPlot C;
            do {
                C = contour_at_t(A, kap, random_times(kap, rng));
                if (C.phase_walls) ++redraws;
            } while (C.phase_walls);
            bool hit = false;
            try {
                hit = keys.count(m2_key(extract_soliton_graph(C))) > 0;
            } catch (const Error&) {
            }
            T.check("samples_match_psi", hit, "n=" + std::to_string(n));
            T.check("samples_region_count", int(C.regions.size()) == 2 * n - 3, "n=" + std::to_string(n));
        }
        T.note("phase_wall_redraws_n" + std::to_string(n), redraws);
        std::set<std::string> hit;
        for (const auto& Tr : Ts) {
            auto kap = random_generic_kappa(n, rng);
            auto A = GrassmannPoint::from(random_cell_point(L, rng));
            try {
                hit.insert(realize_flag(flag_of_triangulation(Tr), A, kap).graph_key);
            } catch (const Error&) {
            }
        }
        T.check("realize_flag_surjective", hit == keys, "n=" + std::to_string(n));
    }
}

void suite_inverse(Tally& T, int nmax, Rng& rng) {
    nmax = std::min(nmax, 4);
    for (int n = 2; n <= nmax; ++n) {
        for (const auto& L : all_irreducible_le(n)) {
            auto pi = derangement_from_le(L);
            for (double t : {-1000.0, 1000.0}) {
                auto kap = random_generic_kappa(n, rng);
                auto A = GrassmannPoint::from(random_cell_point(L, rng));
                Times tm;
                tm.t = t;
                std::string prop = t < 0 ? "limit_roundtrip_minus" : "limit_roundtrip_plus";
                double d = INFINITY;
                std::string why = pi.str();
                try {
                    auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
                    auto Rc = reconstruct_limit(R, L, t < 0 ? Regime::MinusInfinity : Regime::PlusInfinity);
                    d = projective_distance(A.plucker, Rc.pluckers);
                } catch (const Error& e) {
                    why += std::string(" ") + e.what();
                }
                T.check(prop, d < 1e-6, why);
            }
        }
    }
    for (int n = 4; n <= std::max(5, nmax); ++n) {
        auto L = top_cell_gr2n(n);
        for (int s = 0; s < 5; ++s) {
            auto kap = random_generic_kappa(n, rng);
            auto A = GrassmannPoint::from(random_cell_point(L, rng));
            Times tm;
            double d = INFINITY;
            try {
                auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
                d = projective_distance(A.plucker, reconstruct_tp_anytime(R).pluckers);
            } catch (const Error&) {
            }
            T.check("tp_anytime_roundtrip", d < 1e-8, "n=" + std::to_string(n));
        }
    }
    // Three-term relation on Gr(2,4) with hand-picked values.
    std::map<Subset, double> v{{subset_from({1, 2}), 2}, {subset_from({2, 3}), 3}, {subset_from({3, 4}), 5},
                               {subset_from({1, 4}), 7}, {subset_from({1, 3}), 11}};
    plucker_closure(v, 2, 4, all_k_subsets(4, 2));
    double want = (2.0 * 5 + 7.0 * 3) / 11.0;
    T.check("ptolemy_closure", std::abs(v[subset_from({2, 4})] - want) < 1e-12);
}

}  // namespace

Json run_validation(const std::string& suite, int nmax, std::uint64_t seed) {
    static const std::vector<std::string> names = {"bijections", "plabic", "contour", "gr2n", "inverse"};
    std::vector<std::string> run;
    if (suite == "all") run = names;
    else if (std::find(names.begin(), names.end(), suite) != names.end()) run = {suite};
    else throw Error("InvalidSuite", "unknown suite \"" + suite + "\"");
    Json out{{"suite", suite}, {"nmax", nmax}, {"seed", seed}};
    Json parts = Json::object();
    bool pass = true;
    for (const auto& s : run) {
        Rng rng(seed);
        Tally T;
        try {
            if (s == "bijections") suite_bijections(T, nmax);
            if (s == "plabic") suite_plabic(T, nmax, rng);
            if (s == "contour") suite_contour(T, nmax, rng);
            if (s == "gr2n") suite_gr2n(T, nmax, rng);
            if (s == "inverse") suite_inverse(T, nmax, rng);
        } catch (const std::exception& e) {
            T.check("suite_completed", false, e.what());
        }
        parts[s] = T.json();
        pass = pass && T.pass();
    }
    out["suites"] = parts;
    out["pass"] = pass;
    return out;
}

}  // namespace kplab

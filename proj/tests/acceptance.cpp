// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "kplab/gr2n.hpp"
#include "kplab/inverse.hpp"
#include "kplab/validate.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace kplab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Every kappa set used below, for the dispersion criterion.
std::vector<KappaParams> g_kappas;

KappaParams kappa_used(const KappaParams& k) {
    g_kappas.push_back(k);
    return k;
}

struct Outcome {
    bool pass = true;
    std::ostringstream msg;
    void fail_if(bool bad, const std::string& why) {
        if (bad && pass) msg << "first failure: " << why << "; ";
        if (bad) pass = false;
    }
};

// ----------------------------------------------------------------- 1
Outcome criterion1() {
    Outcome o;
    auto t0 = Clock::now();
    long count = 0;
    for (int n = 2; n <= 7; ++n)
        for (const auto& pi : all_derangements(n)) {
            ++count;
            auto I = necklace_from_derangement(pi);
            auto L = le_from_derangement(pi);
            o.fail_if(derangement_from_necklace(I) != pi, "necklace " + pi.str());
            o.fail_if(derangement_from_le(L) != pi, "le " + pi.str());
            o.fail_if(le_from_derangement(derangement_from_le(L)) != L, "le inverse " + pi.str());
        }
    auto pi = Derangement::from({6, 7, 1, 2, 8, 3, 9, 4, 5});
    std::vector<std::string> want = {"1257", "2357", "3457", "4567", "5678", "6789", "1789", "1289", "1259"};
    auto I = necklace_from_derangement(pi);
    for (int i = 0; i < 9; ++i) o.fail_if(subset_string(I.subsets[i], 9) != want[i], "example necklace");
    o.fail_if(derangement_from_necklace(I) != pi, "example inverse");
    double sec = seconds_since(t0);
    o.fail_if(sec >= 60, "runtime");
    o.msg << count << " derangements n<=7, " << sec << " s";
    return o;
}

// ----------------------------------------------------------------- 2
// Pipe tracing written out directly from the definition, used as an oracle.
std::optional<std::vector<int>> trace_pipes_oracle(const std::vector<int>& rows,
                                                   const std::vector<std::vector<bool>>& plus, int n) {
    const int k = int(rows.size());
    std::vector<int> row_label(k), col_label(rows.empty() ? 0 : rows[0]);
    int x = rows[0], r = 0, lab = 1;
    while (lab <= n) {
        if (r < k && rows[r] == x) row_label[r++] = lab++;
        else col_label[--x] = lab++;
    }
    auto col_len = [&](int c) {
        int h = 0;
        while (h < k && rows[h] > c) ++h;
        return h;
    };
    std::vector<int> img(n + 1, 0);
    auto run = [&](int origin, int rr, int cc, bool west) {
        while (true) {
            if (plus[rr][cc]) west = !west;
            if (west) {
                if (cc == 0) return img[row_label[rr]] = origin, void();
                --cc;
            } else {
                if (rr == 0) return img[col_label[cc]] = origin, void();
                --rr;
            }
        }
    };
    for (int i = 0; i < k; ++i)
        if (rows[i] > 0) run(row_label[i], i, rows[i] - 1, true);
        else img[row_label[i]] = row_label[i];
    for (int c = 0; c < int(col_label.size()); ++c) run(col_label[c], col_len(c) - 1, c, false);
    for (int i = 1; i <= n; ++i)
        if (img[i] == i) return std::nullopt;
    return std::vector<int>(img.begin() + 1, img.end());
}

Outcome criterion2() {
    Outcome o;
    const std::vector<int> target = {7, 4, 2, 9, 1, 3, 8, 6, 5};
    // Vertical border steps sit at the excedances 1,2,4,7 of the target.
    const std::vector<int> rows = {5, 5, 4, 2};
    std::vector<std::pair<int, int>> boxes;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < rows[r]; ++c) boxes.push_back({r, c});
    std::vector<std::vector<std::vector<bool>>> hits;
    for (unsigned mask = 0; mask < (1u << boxes.size()); ++mask) {
        std::vector<std::vector<bool>> f(4);
        for (int r = 0; r < 4; ++r) f[r].assign(rows[r], false);
        for (size_t b = 0; b < boxes.size(); ++b) f[boxes[b].first][boxes[b].second] = (mask >> b) & 1;
        bool le = true;
        for (auto [r, c] : boxes) {
            if (f[r][c]) continue;
            bool left = false, up = false;
            for (int cc = 0; cc < c; ++cc) left = left || f[r][cc];
            for (int rr = 0; rr < r; ++rr) up = up || f[rr][c];
            le = le && !(left && up);
        }
        if (!le) continue;
        auto img = trace_pipes_oracle(rows, f, 9);
        if (img && *img == target) hits.push_back(f);
    }
    o.fail_if(hits.size() != 1, "oracle found " + std::to_string(hits.size()) + " diagrams");
    if (hits.size() == 1) {
        LeDiagram L;
        L.k = 4, L.n = 9, L.rows = rows, L.fill = hits[0];
        L.validate();
        auto pi = derangement_from_le(L);
        o.fail_if(pi.images != target, "library gives " + pi.str());
        o.fail_if(le_from_derangement(Derangement::from(target)) != L, "inverse map");
        o.msg << "diagram " << L.str() << " -> " << pi.str();
    }
    return o;
}

// ----------------------------------------------------------------- 3, 4
Outcome criterion3() {
    Outcome o;
    auto t0 = Clock::now();
    long cells = 0;
    for (int n = 2; n <= 6; ++n)
        for (const auto& L : all_irreducible_le(n)) {
            ++cells;
            o.fail_if(!check_resonance(build_hook_plabic(L)).ok, "hook " + derangement_from_le(L).str());
            o.fail_if(!check_resonance(build_g_minus(L)).ok, "G- " + derangement_from_le(L).str());
        }
    o.fail_if(check_resonance(bubble_graph()).ok, "R1 bubble passes");
    double sec = seconds_since(t0);
    o.fail_if(sec >= 120, "runtime");
    o.msg << cells << " diagrams n<=6 plus the R1 bubble, " << sec << " s";
    return o;
}

Outcome criterion4() {
    Outcome o;
    long cells = 0;
    for (int n = 2; n <= 6; ++n)
        for (const auto& L : all_irreducible_le(n)) {
            ++cells;
            auto d = compute_trips(build_g_minus(L)).derangement();
            o.fail_if(!d || *d != derangement_from_le(L), derangement_from_le(L).str());
        }
    o.msg << cells << " diagrams n<=6";
    return o;
}

// ----------------------------------------------------------------- 5
Outcome criterion5() {
    Outcome o;
    auto L = le_from_derangement(Derangement::from({4, 5, 1, 2, 6, 3}));
    auto kap = kappa_used(KappaParams::parse("-1,-1/2,0,1/2,1,3/2"));
    auto M = matroid_from_le(L);
    const auto& q = kap.exact;
    int checked = 0;
    for (Frame f : {Frame::MinusInfinity, Frame::PlusInfinity}) {
        auto C = contour_at_infinity(M, kap, f);
        const char* tag = f == Frame::MinusInfinity ? "minus" : "plus";
        o.fail_if(C.trivalent() != 8, std::string(tag) + " trivalent " + std::to_string(C.trivalent()));
        for (const auto& v : C.vertices) {
            if (v.kind != VKind::Black && v.kind != VKind::White) continue;
            Subset uni = 0, inter = ~Subset(0);
            for (Subset s : v.regions) uni |= s, inter &= s;
            auto idx = elements(uni & ~inter);
            if (idx.size() != 3) {
                o.fail_if(true, std::string(tag) + " vertex without a triple");
                continue;
            }
            const Rational &a = q[idx[0] - 1], &b = q[idx[1] - 1], &c = q[idx[2] - 1];
            Rational vx = a * b + a * c + b * c, vy = -(a + b + c);
            o.fail_if(v.xs.empty() || parse_rational(v.xs) != vx || parse_rational(v.ys) != vy,
                      std::string(tag) + " vertex (" + v.xs + "," + v.ys + ")");
            ++checked;
        }
        if (f == Frame::PlusInfinity)
            o.fail_if(C.count(VKind::Cross) != 2, "plus crossings " + std::to_string(C.count(VKind::Cross)));
    }
    o.msg << checked << " trivalent vertices matched exactly; 2 X-crossings at +inf";
    return o;
}

// ----------------------------------------------------------------- 6
Outcome criterion6(Rng& rng) {
    Outcome o;
    auto t0 = Clock::now();
    long runs = 0;
    for (int n = 2; n <= 5; ++n)
        for (const auto& L : all_irreducible_le(n)) {
            auto M = matroid_from_le(L);
            for (int s = 0; s < 10; ++s) {
                ++runs;
                auto kap = kappa_used(random_generic_kappa(n, rng));
                auto A = GrassmannPoint::from(random_cell_point(L, rng));
                Times tm;
                tm.t = -1000;
                try {
                    auto G = extract_soliton_graph(contour_at_t(A, kap, tm));
                    auto ref = extract_soliton_graph(contour_at_infinity(M, kap, Frame::MinusInfinity));
                    o.fail_if(slide_m2_key(G) != slide_m2_key(ref),
                              derangement_from_le(L).str() + " kappa " + kap.str());
                } catch (const Error& e) {
                    o.fail_if(true, derangement_from_le(L).str() + " " + e.what());
                }
            }
        }
    double sec = seconds_since(t0);
    o.fail_if(sec >= 600, "runtime");
    o.msg << runs << " finite plots at t=-1000, n<=5, " << sec << " s";
    return o;
}

// ----------------------------------------------------------------- 7
Outcome criterion7(Rng& rng) {
    Outcome o;
    for (int n = 4; n <= 6; ++n) {
        auto Ts = enumerate_triangulations(n);
        const size_t want = n == 4 ? 2 : n == 5 ? 5 : 14;
        o.fail_if(Ts.size() != want, "count n=" + std::to_string(n));
        auto L = top_cell_gr2n(n);
        std::set<std::string> keys;
        for (const auto& T : Ts) {
            auto G = psi_of_triangulation(T);
            auto tr = compute_trips(G);
            o.fail_if(!check_resonance(G, tr).ok, "not reduced " + T.str());
            o.fail_if(int(tr.faces.size()) != 2 * n - 3, "regions " + T.str());
            keys.insert(m2_key(G));
        }
        o.fail_if(keys.size() != Ts.size(), "graphs not distinct n=" + std::to_string(n));
        int redraws = 0, matched = 0;
        for (int s = 0; s < 200; ++s) {
            auto kap = kappa_used(random_generic_kappa(n, rng));
            auto A = GrassmannPoint::from(random_cell_point(L, rng));
            ContourPlot C;
            do {
                C = contour_at_t(A, kap, random_times(kap, rng));
                redraws += C.phase_walls > 0;
            } while (C.phase_walls > 0);
            try {
                if (keys.count(m2_key(extract_soliton_graph(C)))) ++matched;
                else o.fail_if(true, "sample outside Psi(T), n=" + std::to_string(n));
            } catch (const Error& e) {
                o.fail_if(true, e.what());
            }
        }
        std::set<std::string> hit;
        for (const auto& T : Ts) {
            auto kap = kappa_used(random_generic_kappa(n, rng));
            auto A = GrassmannPoint::from(random_cell_point(L, rng));
            try {
                hit.insert(realize_flag(flag_of_triangulation(T), A, kap).graph_key);
            } catch (const Error& e) {
                o.fail_if(true, std::string("realize ") + e.what());
            }
        }
        o.fail_if(hit != keys, "realize_flag misses a graph n=" + std::to_string(n));
        o.msg << "n=" << n << ": " << Ts.size() << " graphs, " << matched << "/200 samples matched, " << redraws
              << " redrawn, " << hit.size() << " realized; ";
    }
    return o;
}

// ----------------------------------------------------------------- 8
Outcome criterion8(Rng& rng) {
    Outcome o;
    long cells = 0, runs = 0;
    auto labels_at = [&](const GrassmannPoint& A, const KappaParams& kap) {
        Times tm;
        auto C = contour_at_t(A, kap, tm);
        // Twice the plot box, same centre.
        auto box = C.box;
        double hx = (box[1] - box[0]) / 2, hy = (box[3] - box[2]) / 2;
        box = {box[0] - hx, box[1] + hx, box[2] - hy, box[3] + hy};
        return unbounded_labels_by_tau(A, kap, tm, box, 4000);
    };
    for (int n = 2; n <= 6; ++n)
        for (const auto& pi : all_derangements(n)) {
            if (!classify_cell(pi).tp_schubert) continue;
            ++cells;
            auto L = le_from_derangement(pi);
            auto want = necklace_from_derangement(pi).subsets;
            for (int s = 0; s < 5; ++s) {
                ++runs;
                auto kap = kappa_used(random_generic_kappa(n, rng));
                auto A = GrassmannPoint::from(random_cell_point(L, rng));
                auto got = labels_at(A, kap);
                std::string g;
                for (Subset x : got) g += " " + subset_string(x, n);
                o.fail_if(got != want, pi.str() + " kappa " + kap.str() + " read" + g);
            }
        }
    auto L = le_from_derangement(Derangement::from({4, 3, 1, 2}));
    auto kap = kappa_used(KappaParams::parse("0,1,1.5,1.75"));
    std::vector<Subset> want = {subset_from({1, 2}), subset_from({2, 3}), subset_from({3, 4}), subset_from({1, 3})};
    for (int s = 0; s < 5; ++s) {
        auto A = GrassmannPoint::from(random_cell_point(L, rng));
        auto got = labels_at(A, kap);
        std::string g;
        for (Subset x : got) g += subset_string(x, 4) + " ";
        o.fail_if(got != want, "counterexample gives " + g);
    }
    o.msg << cells << " TP Schubert cells n<=6, " << runs << " runs; (4,3,1,2) gives 12,23,34,13";
    return o;
}

// ----------------------------------------------------------------- 9
Outcome criterion9(Rng& rng) {
    Outcome o;
    long crossings = 0;
    int cases[4] = {0, 0, 0, 0};
    for (int n = 2; n <= 6; ++n) {
        std::vector<KappaParams> ks = {kappa_used(random_generic_kappa(n, rng))};
        if (n == 6) ks.push_back(kappa_used(KappaParams::parse("-1,-1/2,0,1/2,1,3/2")));
        for (const auto& kap : ks)
            for (const auto& L : all_irreducible_le(n)) {
                auto M = matroid_from_le(L);
                auto A = GrassmannPoint::from(random_cell_point(L, rng));
                for (Frame f : {Frame::MinusInfinity, Frame::PlusInfinity}) {
                    auto C = contour_at_infinity(M, kap, f);
                    for (const auto& r : verify_xcrossings(C, A, kap, f == Frame::MinusInfinity)) {
                        ++crossings;
                        ++cases[int(r.kind)];
                        std::string who = derangement_from_le(L).str();
                        o.fail_if(!r.ok, "relation fails " + who);
                        o.fail_if(r.kind == XCase::Three, "case 3 on TNN input " + who);
                        o.fail_if(r.relation_error >= 1e-9, "two-term error " + who);
                        if (r.vanishing) {
                            auto it = A.exact_plucker.find(r.vanishing);
                            o.fail_if(it != A.exact_plucker.end() && it->second != 0, "vanishing nonzero " + who);
                        }
                    }
                }
            }
    }
    o.msg << crossings << " X-crossings n<=6 (cases 1a/1b/2/3: " << cases[0] << "/" << cases[1] << "/" << cases[2]
          << "/" << cases[3] << ")";
    return o;
}

// ----------------------------------------------------------------- 10
Outcome criterion10(Rng& rng) {
    Outcome o;
    double worst = 0, worst_tp = 0;
    long runs = 0;
    for (int n = 2; n <= 5; ++n)
        for (const auto& L : all_irreducible_le(n))
            for (int s = 0; s < 20; ++s) {
                ++runs;
                auto kap = kappa_used(random_generic_kappa(n, rng));
                auto A = GrassmannPoint::from(random_cell_point(L, rng));
                Times tm;
                tm.t = -1000;
                try {
                    auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
                    double d = projective_distance(A.plucker, reconstruct_limit(R, L, Regime::MinusInfinity).pluckers);
                    worst = std::max(worst, d);
                    o.fail_if(d >= 1e-6, derangement_from_le(L).str() + " error " + std::to_string(d));
                } catch (const Error& e) {
                    o.fail_if(true, derangement_from_le(L).str() + " " + e.what());
                }
            }
    auto L5 = top_cell_gr2n(5);
    for (int s = 0; s < 20; ++s) {
        auto kap = kappa_used(random_generic_kappa(5, rng));
        auto A = GrassmannPoint::from(random_cell_point(L5, rng));
        Times tm;
        try {
            auto R = read_plot(contour_at_t(A, kap, tm), kap, tm);
            double d = projective_distance(A.plucker, reconstruct_tp_anytime(R).pluckers);
            worst_tp = std::max(worst_tp, d);
            o.fail_if(d >= 1e-8, "TP Gr(2,5) error " + std::to_string(d));
        } catch (const Error& e) {
            o.fail_if(true, std::string("TP Gr(2,5) ") + e.what());
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld limit reconstructions, worst %.2e; TP Gr(2,5) at t=0 worst %.2e", runs, worst,
                  worst_tp);
    o.msg << buf;
    return o;
}

// ----------------------------------------------------------------- 11
Outcome criterion11() {
    Outcome o;
    long triples = 0;
    for (const auto& kap : g_kappas) {
        const int n = kap.n();
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int l = j + 1; l <= n; ++l) {
                    ++triples;
                    o.fail_if(!dispersion_resonance_check(kap, i, j, l), kap.str());
                }
    }
    o.msg << triples << " triples over " << g_kappas.size() << " kappa sets";
    return o;
}

}  // namespace

int main() {
    Rng rng(20240601);
    std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1},
        {2, criterion2},
        {3, criterion3},
        {4, criterion4},
        {5, criterion5},
        {6, [&] { return criterion6(rng); }},
        {7, [&] { return criterion7(rng); }},
        {8, [&] { return criterion8(rng); }},
        {9, [&] { return criterion9(rng); }},
        {10, [&] { return criterion10(rng); }},
        {11, criterion11},
    };
    bool all = true;
    for (auto& [id, run] : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.msg << "exception: " << e.what();
        }
        all = all && o.pass;
        std::printf("criterion %2d: %s  %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.msg.str().c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}

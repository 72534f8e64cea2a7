#include "kplab/inverse.hpp"

#include "kplab/linalg.hpp"
#include "kplab/plabic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace kplab {

double PlotReading::value(Subset J) const { return std::exp(log_values.at(J)); }

namespace {

struct Wall {
    int minus = -1, plus = -1;  // region indices; minus holds i, plus holds j
    int i = 0, j = 0;
    double px = 0, py = 0;      // a point on the wall
    bool ray = false, up = false;
    bool through = false;  // both ends on the box: a ray in each direction
};

std::string lab(Subset s, int n) { return subset_string(s, n); }

}  // namespace

PlotReading read_plot(const ContourPlot& C, const KappaParams& kappa, const Times& tm) {
    const int n = C.n;
    if (kappa.n() != n) throw Error("InvalidKappa", "kappa length differs from n");
    if (!kappa.distinct_pair_sums())
        throw Error("AmbiguousSlope", "two pairs of parameters have the same sum");

    PlotReading R;
    R.k = C.k, R.n = n;

    // Region identifiers.
    std::vector<Subset> ids;
    auto rid = [&](Subset s) {
        auto it = std::find(ids.begin(), ids.end(), s);
        if (it != ids.end()) return int(it - ids.begin());
        ids.push_back(s);
        return int(ids.size()) - 1;
    };
    std::vector<std::array<double, 2>> sample;

    std::vector<std::pair<double, std::array<int, 2>>> sums;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) sums.push_back({kappa.values[i - 1] + kappa.values[j - 1], {i, j}});

    std::vector<Wall> walls;
    for (const auto& e : C.edges) {
        const auto& a = C.vertices[e.a];
        const auto& b = C.vertices[e.b];
        double dx = e.q[0] - e.p[0], dy = e.q[1] - e.p[1];
        if (dy == 0) throw Error("AmbiguousSlope", "horizontal wall");
        double s = -dx / dy;
        std::vector<std::pair<double, int>> dist;
        for (int q = 0; q < int(sums.size()); ++q) dist.push_back({std::abs(s - sums[q].first), q});
        std::sort(dist.begin(), dist.end());
        double gap = dist.size() > 1 ? std::abs(sums[dist[1].second].first - sums[dist[0].second].first)
                                     : std::numeric_limits<double>::infinity();
        if (dist[0].first > gap / 4)
            throw Error("AmbiguousSlope", "slope " + std::to_string(s) + " not clearly a parameter sum");
        Wall w;
        w.i = sums[dist[0].second].second[0];
        w.j = sums[dist[0].second].second[1];
        // Offsets are read at the inner end of a ray, where the clipping
        // box plays no part; any point of a segment lies on its line.
        w.px = e.p[0], w.py = e.p[1];
        if (a.kind == VKind::Boundary || b.kind == VKind::Boundary) {
            w.ray = true;
            w.through = a.kind == VKind::Boundary && b.kind == VKind::Boundary;
            bool a_out = a.kind == VKind::Boundary;
            const auto& outer = a_out ? e.p : e.q;
            const auto& inner = a_out ? e.q : e.p;
            w.up = outer[1] > inner[1];
            w.px = inner[0], w.py = inner[1];
        }
        // Which side is which: theta_j - theta_i grows along (k_j - k_i, k_j^2 - k_i^2).
        double ki = kappa.values[w.i - 1], kj = kappa.values[w.j - 1];
        double gx = kj - ki, gy = kj * kj - ki * ki;
        int r1 = rid(e.left), r2 = rid(e.right);
        sample.resize(ids.size());
        for (int r : {r1, r2}) {
            const PlotRegion* pr = C.region(ids[r]);
            if (!pr) throw Error("LabelMismatch", "wall next to a region without geometry");
            sample[r] = pr->sample;
        }
        double s1 = (sample[r1][0] - w.px) * gx + (sample[r1][1] - w.py) * gy;
        double s2 = (sample[r2][0] - w.px) * gx + (sample[r2][1] - w.py) * gy;
        bool first_plus = std::abs(s1) >= std::abs(s2) ? s1 > 0 : s2 < 0;
        w.plus = first_plus ? r1 : r2;
        w.minus = first_plus ? r2 : r1;
        walls.push_back(w);
    }
    R.walls_read = int(walls.size());
    if (ids.empty()) throw Error("LabelMismatch", "plot without walls");

    // Labels: flips relative to a root region, then absolute membership from
    // the side information of every wall.
    const int m = int(ids.size());
    std::vector<std::vector<int>> adj(m);
    for (int w = 0; w < int(walls.size()); ++w) {
        adj[walls[w].minus].push_back(w);
        adj[walls[w].plus].push_back(w);
    }
    std::vector<Subset> flip(m, 0);
    std::vector<bool> seen(m, false);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = true;
    while (!bfs.empty()) {
        int r = bfs.front();
        bfs.pop();
        for (int w : adj[r]) {
            int o = walls[w].minus == r ? walls[w].plus : walls[w].minus;
            Subset f = flip[r] ^ bit(walls[w].i) ^ bit(walls[w].j);
            if (!seen[o]) {
                seen[o] = true;
                flip[o] = f;
                bfs.push(o);
            } else if (flip[o] != f) {
                throw Error("LabelMismatch", "wall types inconsistent around a cycle");
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw Error("LabelMismatch", "plot regions are not connected by walls");
    Subset known = 0, root = 0;
    auto fix = [&](int e, bool member) {
        if (contains(known, e) && contains(root, e) != member)
            throw Error("LabelMismatch", "conflicting membership of index " + std::to_string(e));
        known |= bit(e);
        if (member) root |= bit(e);
    };
    for (const auto& w : walls) {
        fix(w.i, !contains(flip[w.minus], w.i));
        fix(w.j, contains(flip[w.minus], w.j));
    }
    if (popcount(known) != n) {
        // Indices never crossed are in every region or in none; the size fixes them.
        int missing = R.k - popcount(root);
        std::vector<int> free;
        for (int e = 1; e <= n; ++e)
            if (!contains(known, e)) free.push_back(e);
        if (missing == 0) {
        } else if (missing == int(free.size())) {
            for (int e : free) root |= bit(e);
        } else {
            throw Error("LabelMismatch", "region labels are not determined by the walls");
        }
    }
    std::vector<Subset> label(m);
    for (int r = 0; r < m; ++r) {
        label[r] = root ^ flip[r];
        if (popcount(label[r]) != R.k) throw Error("LabelMismatch", "region label of the wrong size");
        if (label[r] != ids[r])
            throw Error("LabelMismatch", "recovered label " + lab(label[r], n) + " differs from stored " +
                                             lab(ids[r], n));
    }

    // Derangement from the rays.
    {
        std::vector<int> images(n, 0);
        bool ok = true;
        for (const auto& w : walls) {
            if (!w.ray) continue;
            for (bool up : {w.up, !w.up}) {
                int from = up ? w.i : w.j, to = up ? w.j : w.i;
                if (images[from - 1] && images[from - 1] != to) ok = false;
                images[from - 1] = to;
                if (!w.through) break;
            }
        }
        if (ok && std::find(images.begin(), images.end(), 0) == images.end()) {
            try {
                R.pi = Derangement::from(images);
            } catch (const Error&) {
                R.trace.push_back("rays do not form a derangement");
            }
        } else {
            R.trace.push_back("rays do not determine the derangement");
        }
    }

    // Log ratios across every wall:
    // ln D_J - ln D_I = theta_i(p) - theta_j(p) + ln K_I - ln K_J.
    std::vector<std::vector<std::pair<int, double>>> step(m);  // (neighbour, ln D_nb - ln D_r)
    double scale = 1;
    for (const auto& w : walls) {
        Times at = tm;
        at.x = w.px, at.y = w.py;
        double ti = theta(w.i, kappa, at), tj = theta(w.j, kappa, at);
        scale = std::max({scale, std::abs(ti), std::abs(tj)});
        double d = ti - tj + std::log(k_factor(label[w.minus], kappa)) - std::log(k_factor(label[w.plus], kappa));
        step[w.minus].push_back({w.plus, d});
        step[w.plus].push_back({w.minus, -d});
    }
    const double tol = tolerance() + 1024 * std::numeric_limits<double>::epsilon() * scale;

    Subset pivot = 0;
    if (R.pi) pivot = necklace_from_derangement(*R.pi).subsets[0];
    int start = 0;
    for (int r = 0; r < m; ++r)
        if (label[r] == pivot) start = r, R.pivot_present = true;
    R.pivot = R.pivot_present ? pivot : label[start];
    if (!R.pivot_present) R.trace.push_back("pivot region absent; normalized to " + lab(R.pivot, n));

    std::vector<double> lv(m, 0);
    std::fill(seen.begin(), seen.end(), false);
    seen[start] = true;
    bfs.push(start);
    while (!bfs.empty()) {
        int r = bfs.front();
        bfs.pop();
        for (auto [o, d] : step[r]) {
            double v = lv[r] + d;
            if (!seen[o]) {
                seen[o] = true;
                lv[o] = v;
                bfs.push(o);
            } else {
                double err = std::abs(lv[o] - v);
                R.max_cycle_error = std::max(R.max_cycle_error, err);
                if (err > tol)
                    throw Error("InconsistentRatios",
                                "cycle through " + lab(label[o], n) + " off by " + std::to_string(err));
            }
        }
    }
    for (int r = 0; r < m; ++r) R.log_values[label[r]] = lv[r];
    return R;
}

int plucker_closure(std::map<Subset, double>& values, int k, int n, const std::vector<Subset>& bases,
                    std::vector<std::string>* trace) {
    std::set<Subset> B(bases.begin(), bases.end());
    auto known = [&](Subset s) { return !B.count(s) || values.count(s); };
    auto val = [&](Subset s) { return B.count(s) ? values.at(s) : 0.0; };

    // Three-term relations D_{Sac} D_{Sbd} = D_{Sab} D_{Scd} + D_{Sad} D_{Sbc}.
    struct Rel {
        Subset ac, bd, ab, cd, ad, bc;
    };
    std::vector<Rel> rels;
    for (Subset S : (k >= 2 ? all_k_subsets(n, k - 2) : std::vector<Subset>{}))
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c)
                    for (int d = c + 1; d <= n; ++d) {
                        if (contains(S, a) || contains(S, b) || contains(S, c) || contains(S, d)) continue;
                        rels.push_back({S | bit(a) | bit(c), S | bit(b) | bit(d), S | bit(a) | bit(b),
                                        S | bit(c) | bit(d), S | bit(a) | bit(d), S | bit(b) | bit(c)});
                    }
    int added = 0;
    bool changed = true;
    auto put = [&](Subset s, double v, const char* how) {
        if (!(v > 0) || !std::isfinite(v)) return;
        values[s] = v;
        ++added;
        changed = true;
        if (trace) trace->push_back("D" + subset_string(s, n) + " from " + how);
    };
    while (changed) {
        changed = false;
        for (const auto& r : rels) {
            int unknown = !known(r.ac) + !known(r.bd) + !known(r.ab) + !known(r.cd) + !known(r.ad) + !known(r.bc);
            if (unknown != 1) continue;
            if (!known(r.ac) || !known(r.bd)) {
                Subset u = known(r.ac) ? r.bd : r.ac, other = known(r.ac) ? r.ac : r.bd;
                double rhs = val(r.ab) * val(r.cd) + val(r.ad) * val(r.bc);
                if (val(other) > 0) put(u, rhs / val(other), "a three-term relation");
            } else {
                // Unknown on the right-hand side.
                double lhs = val(r.ac) * val(r.bd);
                Subset u, partner;
                double rest;
                if (!known(r.ab) || !known(r.cd)) {
                    u = known(r.ab) ? r.cd : r.ab;
                    partner = known(r.ab) ? r.ab : r.cd;
                    rest = val(r.ad) * val(r.bc);
                } else {
                    u = known(r.ad) ? r.bc : r.ad;
                    partner = known(r.ad) ? r.ad : r.bc;
                    rest = val(r.ab) * val(r.cd);
                }
                if (val(partner) > 0) put(u, (lhs - rest) / val(partner), "a three-term relation with a vanishing or known term");
            }
        }
    }
    return added;
}

NetworkExponents network_exponents(const LeDiagram& L) {
    auto D = destination_sets(L);
    const int p = L.num_plus();
    auto minor = [&](const std::vector<Rational>& w, Subset J) {
        QMatrix A = le_network_matrix(L, w);
        return det(columns(A, elements(J)));
    };
    NetworkExponents X;
    std::vector<Rational> ones(p, Rational(1));
    for (auto& [rc, J] : D.boxes) {
        X.labels.push_back(J);
        Rational c = minor(ones, J);
        if (c <= 0) throw Error("SolveFailure", "destination minor vanishes at unit weights");
        X.coeff.push_back(c);
        std::vector<int> row(p, 0);
        for (int q = 0; q < p; ++q) {
            auto w = ones;
            w[q] = 2;
            Rational ratio = minor(w, J) / c;
            int e = 0;
            while (ratio > 1 && e < 64) ratio /= 2, ++e;
            if (ratio != 1) throw Error("SolveFailure", "destination minor is not a monomial in the weights");
            row[q] = e;
        }
        X.exponent.push_back(row);
    }
    return X;
}

double projective_distance(const std::map<Subset, double>& a, const std::map<Subset, double>& b) {
    Subset ref = 0;
    double big = 0;
    for (auto& [s, v] : a)
        if (std::abs(v) > big && b.count(s) && std::abs(b.at(s)) > 0) big = std::abs(v), ref = s;
    if (big == 0) return std::numeric_limits<double>::infinity();
    double scale = a.at(ref) / b.at(ref);
    double amax = 0, err = 0;
    for (auto& [s, v] : a) amax = std::max(amax, std::abs(v));
    std::set<Subset> keys;
    for (auto& [s, v] : a) keys.insert(s);
    for (auto& [s, v] : b) keys.insert(s);
    for (Subset s : keys) {
        double x = a.count(s) ? a.at(s) : 0, y = b.count(s) ? b.at(s) * scale : 0;
        err = std::max(err, std::abs(x - y));
    }
    return err / amax;
}

namespace {

Reconstruction finish(const DMatrix& A, const PlotReading& R, Subset pivot, std::vector<std::string> trace) {
    Reconstruction out;
    out.point = GrassmannPoint::from(A);
    double p0 = out.point.plucker.count(pivot) ? out.point.plucker.at(pivot) : 0;
    if (!(p0 > 0)) throw Error("SolveFailure", "pivot minor vanishes");
    for (auto& [s, v] : out.point.plucker) out.pluckers[s] = v / p0;
    // Residual against the reading, whose values are relative to R.pivot.
    double base = out.pluckers.count(R.pivot) ? out.pluckers.at(R.pivot) : 0;
    if (!(base > 0)) throw Error("SolveFailure", "reading pivot has zero value on the result");
    for (auto& [s, lv] : R.log_values) {
        double want = std::exp(lv);
        double got = (out.pluckers.count(s) ? out.pluckers.at(s) : 0) / base;
        out.residual = std::max(out.residual, std::abs(got - want) / want);
    }
    out.trace = std::move(trace);
    return out;
}

// Values on T(L) relative to the pivot, then weights from the monomial system.
Reconstruction solve_on_cell(const std::map<Subset, double>& vals, const PlotReading& R, const LeDiagram& L,
                             std::vector<std::string> trace) {
    auto M = matroid_from_le(L);
    auto D = destination_sets(L);
    std::map<Subset, double> v = vals;
    plucker_closure(v, L.k, L.n, M.bases, &trace);
    for (Subset J : D.all())
        if (!v.count(J))
            throw Error("SlideMismatch", "value of D" + subset_string(J, L.n) +
                                             " not recoverable from the plot; try a more extreme time");
    double p0 = v.at(D.pivot);
    auto X = network_exponents(L);
    const int p = L.num_plus();
    DMatrix E(p, std::vector<double>(p, 0));
    std::vector<double> rhs(p, 0);
    for (int b = 0; b < p; ++b) {
        for (int q = 0; q < p; ++q) E[b][q] = X.exponent[b][q];
        rhs[b] = std::log(v.at(X.labels[b]) / p0) - std::log(X.coeff[b].get_d());
    }
    std::vector<double> logw;
    try {
        logw = p ? solve(E, rhs) : std::vector<double>{};
    } catch (const std::exception& e) {
        throw Error("SolveFailure", std::string("weight system: ") + e.what());
    }
    std::vector<double> w(p);
    for (int q = 0; q < p; ++q) w[q] = std::exp(logw[q]);
    auto out = finish(le_network_matrix(L, w), R, D.pivot, std::move(trace));
    out.weights = w;
    return out;
}

std::map<Subset, double> linear_values(const PlotReading& R) {
    std::map<Subset, double> v;
    for (auto& [s, lv] : R.log_values) v[s] = std::exp(lv);
    return v;
}

// The dual point has D*_{iota([n]\J)} = D_J.
Subset dual_label(Subset J, int n) { return dualize(J, n); }

}  // namespace

Reconstruction reconstruct_limit_direct(const PlotReading& R, const LeDiagram& L, Regime regime) {
    if (R.k != L.k || R.n != L.n) throw Error("SolveFailure", "reading and diagram sizes differ");
    std::vector<std::string> trace = R.trace;
    trace.push_back(regime == Regime::MinusInfinity ? "regime t<<0" : "regime t>>0 (direct)");
    return solve_on_cell(linear_values(R), R, L, std::move(trace));
}

Reconstruction reconstruct_limit(const PlotReading& R, const LeDiagram& L, Regime regime) {
    if (regime == Regime::MinusInfinity) return reconstruct_limit_direct(R, L, regime);
    if (R.k != L.k || R.n != L.n) throw Error("SolveFailure", "reading and diagram sizes differ");
    const int n = L.n;
    LeDiagram Ld = dualize(L);
    PlotReading Rd;
    Rd.k = Ld.k, Rd.n = n;
    Rd.pivot = dual_label(R.pivot, n);
    for (auto& [s, lv] : R.log_values) Rd.log_values[dual_label(s, n)] = lv;
    std::vector<std::string> trace = R.trace;
    trace.push_back("regime t>>0 via the dual diagram " + Ld.str());
    auto dual = solve_on_cell(linear_values(Rd), Rd, Ld, trace);
    // Reversing the columns reflects every label; minors change by a common sign.
    DMatrix A = dual.point.matrix;
    for (auto& row : A) std::reverse(row.begin(), row.end());
    auto out = finish(A, R, destination_sets(L).pivot, std::move(dual.trace));
    return out;
}

Reconstruction reconstruct_tp_anytime(const PlotReading& R) {
    if (R.k != 2) throw Error("NotTriangulationLabels", "only k = 2 is supported");
    const int n = R.n;
    std::vector<std::array<int, 2>> chords;
    for (auto& [s, lv] : R.log_values) {
        auto e = elements(s);
        chords.push_back({e[0], e[1]});
    }
    std::set<std::array<int, 2>> have(chords.begin(), chords.end());
    for (int i = 1; i <= n; ++i) {
        std::array<int, 2> side = i < n ? std::array{i, i + 1} : std::array{1, n};
        if (!have.count(side)) throw Error("NotTriangulationLabels", "a polygon side is missing");
    }
    // A maximal noncrossing set of diagonals is a triangulation. Labels
    // beyond it (both diagonals of a flip in progress) only enter the
    // residual check.
    std::vector<std::array<int, 2>> diags, picked;
    for (auto c : chords)
        if (!(c[1] == c[0] + 1 || (c[0] == 1 && c[1] == n))) diags.push_back(c);
    auto cross = [](std::array<int, 2> c, std::array<int, 2> q) {
        bool share = c[0] == q[0] || c[0] == q[1] || c[1] == q[0] || c[1] == q[1];
        bool in0 = c[0] < q[0] && q[0] < c[1], in1 = c[0] < q[1] && q[1] < c[1];
        return !share && in0 != in1;
    };
    std::function<bool(size_t)> search = [&](size_t from) {
        if (int(picked.size()) == n - 3) return true;
        for (size_t d = from; d < diags.size(); ++d) {
            bool ok = true;
            for (auto q : picked) ok = ok && !cross(diags[d], q);
            if (!ok) continue;
            picked.push_back(diags[d]);
            if (search(d + 1)) return true;
            picked.pop_back();
        }
        return false;
    };
    search(0);
    if (int(picked.size()) != n - 3) throw Error("NotTriangulationLabels", "region labels contain no triangulation");
    std::map<Subset, double> v;
    for (int i = 1; i <= n; ++i) {
        Subset side = bit(i) | bit(i % n + 1);
        v[side] = R.value(side);
    }
    for (auto c : picked) v[bit(c[0]) | bit(c[1])] = R.value(bit(c[0]) | bit(c[1]));
    std::vector<std::string> trace = R.trace;
    auto all = all_k_subsets(n, 2);
    plucker_closure(v, 2, n, all, &trace);
    if (v.size() != all.size()) throw Error("SolveFailure", "exchange relations did not reach every coordinate");
    DMatrix A = matrix_from_pluckers(2, n, v);
    return finish(A, R, bit(1) | bit(2), std::move(trace));
}

}  // namespace kplab

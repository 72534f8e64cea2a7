#include "kplab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace kplab {

// ------------------------------------------------------------------ kappa

KappaParams KappaParams::from(const std::vector<Rational>& q) {
    KappaParams K;
    K.exact = q;
    for (size_t i = 0; i < q.size(); ++i) {
        if (i && !(q[i - 1] < q[i])) throw Error("InvalidKappa", "kappa must be strictly increasing");
        K.values.push_back(q[i].get_d());
    }
    return K;
}

KappaParams KappaParams::parse(const std::string& csv) {
    std::vector<Rational> q;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) q.push_back(parse_rational(item));
    }
    return from(q);
}

bool KappaParams::generic() const {
    const int n = this->n();
    if (n > 20) return false;
    for (int p = 2; p < n; ++p) {
        std::set<Rational> sums;
        for (Subset s : all_k_subsets(n, p)) {
            Rational t = 0;
            for (int j : elements(s)) t += exact[j - 1];
            if (!sums.insert(t).second) return false;
        }
    }
    return true;
}

bool KappaParams::distinct_pair_sums() const {
    std::set<Rational> sums;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (!sums.insert(exact[i] + exact[j]).second) return false;
    return true;
}

std::string KappaParams::str() const {
    std::string s;
    for (size_t i = 0; i < exact.size(); ++i) s += (i ? "," : "") + rational_string(exact[i]);
    return s;
}

KappaParams random_generic_kappa(int n, Rng& rng) {
    while (true) {
        std::set<Rational> vals;
        while (int(vals.size()) < n) {
            Rational r(rng.uniform_int(-12 * n, 12 * n), 4);
            r.canonicalize();
            vals.insert(r);
        }
        auto K = KappaParams::from(std::vector<Rational>(vals.begin(), vals.end()));
        if (K.generic()) return K;
    }
}

// ------------------------------------------------------------------ points

static void fill_from_exact(GrassmannPoint& P) {
    P.exact_plucker = pluckers(P.exact);
    Rational first = 0;
    for (auto& [J, v] : P.exact_plucker)
        if (v != 0) {
            first = v;
            break;
        }
    if (first < 0) {
        for (auto& x : P.exact[0]) x = -x;
        for (auto& [J, v] : P.exact_plucker) v = -v;
    }
    P.matrix = to_double(P.exact);
    P.plucker.clear();
    for (auto& [J, v] : P.exact_plucker) P.plucker[J] = v.get_d();
}

GrassmannPoint GrassmannPoint::from(const QMatrix& a) {
    GrassmannPoint P;
    P.k = int(a.size());
    P.n = P.k ? int(a[0].size()) : 0;
    P.exact = a;
    fill_from_exact(P);
    return P;
}

GrassmannPoint GrassmannPoint::from(const DMatrix& a) {
    GrassmannPoint P;
    P.k = int(a.size());
    P.n = P.k ? int(a[0].size()) : 0;
    P.matrix = a;
    P.plucker = pluckers(a);
    double big = 0, first = 0;
    for (auto& [J, v] : P.plucker) big = std::max(big, std::abs(v));
    for (auto& [J, v] : P.plucker)
        if (std::abs(v) > 1e-12 * big) {
            first = v;
            break;
        }
    if (first < 0) {
        for (auto& x : P.matrix[0]) x = -x;
        for (auto& [J, v] : P.plucker) v = -v;
    }
    return P;
}

bool GrassmannPoint::is_tnn(double tol) const {
    if (!exact.empty()) {
        for (auto& [J, v] : exact_plucker)
            if (v < 0) return false;
        return true;
    }
    double big = 0;
    for (auto& [J, v] : plucker) big = std::max(big, std::abs(v));
    for (auto& [J, v] : plucker)
        if (v < -tol * big) return false;
    return true;
}

std::vector<Subset> GrassmannPoint::support(double tol) const {
    std::vector<Subset> out;
    if (!exact.empty()) {
        for (auto& [J, v] : exact_plucker)
            if (v != 0) out.push_back(J);
        return out;
    }
    double big = 0;
    for (auto& [J, v] : plucker) big = std::max(big, std::abs(v));
    for (auto& [J, v] : plucker)
        if (v > tol * big) out.push_back(J);
    return out;
}

PositroidMatroid GrassmannPoint::matroid(double tol) const {
    PositroidMatroid M{k, n, support(tol)};
    std::sort(M.bases.begin(), M.bases.end());
    return M;
}

// ------------------------------------------------------------------ tau

double k_factor(Subset J, const KappaParams& kappa) { return k_factor_exact(J, kappa).get_d(); }

Rational k_factor_exact(Subset J, const KappaParams& kappa) {
    auto e = elements(J);
    Rational p = 1;
    for (size_t a = 0; a < e.size(); ++a)
        for (size_t b = a + 1; b < e.size(); ++b) p *= kappa.exact[e[b] - 1] - kappa.exact[e[a] - 1];
    return p;
}

double theta(int j, const KappaParams& kappa, const Times& tm) {
    double k = kappa.values[j - 1];
    double v = k * tm.x + k * k * tm.y + k * k * k * tm.t;
    double pw = k * k * k;
    for (double h : tm.higher) {
        pw *= k;
        v += pw * h;
    }
    return v;
}

TauValue tau_eval(const GrassmannPoint& A, const KappaParams& kappa, const Times& tm) {
    if (kappa.n() != A.n) throw Error("InvalidKappa", "kappa length differs from n");
    if (!kappa.distinct_pair_sums()) throw Error("NonGenericKappa", "pairwise sums of kappa coincide");
    std::vector<std::pair<double, Subset>> logs;
    for (auto& [J, d] : A.plucker) {
        if (!(d > 0)) continue;
        double v = std::log(d * k_factor(J, kappa));
        for (int j : elements(J)) v += theta(j, kappa, tm);
        logs.push_back({v, J});
    }
    if (logs.empty()) throw Error("InvalidPoint", "no positive Pluecker coordinate");
    std::sort(logs.begin(), logs.end(), [](auto& a, auto& b) { return a.first > b.first; });
    TauValue r;
    double top = logs[0].first, s = 0;
    for (auto& [v, J] : logs) s += std::exp(v - top);
    r.log_tau = top + std::log(s);
    r.tau = std::exp(r.log_tau);
    r.argmax = logs[0].second;
    r.margin = logs.size() > 1 ? top - logs[1].first : INFINITY;
    return r;
}

bool dispersion_resonance_check(const KappaParams& kappa, int i, int j, int l) {
    const auto& q = kappa.exact;
    auto wave = [&](int a, int b) {
        const Rational &ka = q[a - 1], &kb = q[b - 1];
        return std::array<Rational, 3>{kb - ka, kb * kb - ka * ka, kb * kb * kb - ka * ka * ka};
    };
    auto disp = [](const std::array<Rational, 3>& w) {
        Rational kx2 = w[0] * w[0];
        return Rational(-4 * w[2] * w[0] + kx2 * kx2 + 3 * w[1] * w[1]);
    };
    auto ij = wave(i, j), jl = wave(j, l), il = wave(i, l);
    if (disp(ij) != 0 || disp(jl) != 0 || disp(il) != 0) return false;
    for (int c = 0; c < 3; ++c)
        if (il[c] != ij[c] + jl[c]) return false;
    return true;
}

// ------------------------------------------------------------------ asymptotics

AsymptoticData asymptotic_solitons(const Derangement& pi, const KappaParams& kappa) {
    if (kappa.n() != pi.n) throw Error("InvalidKappa", "kappa length differs from n");
    AsymptoticData D;
    auto sum = [&](const std::array<int, 2>& p) { return kappa.exact[p[0] - 1] + kappa.exact[p[1] - 1]; };
    for (int i : pi.excedances()) D.top.push_back({i, pi(i)});
    for (int j : pi.nonexcedances()) D.bottom.push_back({pi(j), j});
    std::stable_sort(D.top.begin(), D.top.end(), [&](auto& a, auto& b) { return sum(a) > sum(b); });
    std::stable_sort(D.bottom.begin(), D.bottom.end(), [&](auto& a, auto& b) { return sum(a) < sum(b); });
    // Walk counterclockwise from the west: bottom rays left to right, then
    // top rays right to left; each wall swaps its two indices.
    Subset R = subset_from(pi.excedances());
    D.regions.push_back(R);
    auto cross = [&](const std::array<int, 2>& p) {
        R ^= bit(p[0]) | bit(p[1]);
        D.regions.push_back(R);
    };
    for (auto& p : D.bottom) cross(p);
    for (auto it = D.top.rbegin(); it != D.top.rend(); ++it) cross(*it);
    D.regions.pop_back();  // back at the western region
    return D;
}

AsymptoticData unbounded_from_matrix(const GrassmannPoint& A, const KappaParams& kappa) {
    const int n = A.n;
    const bool ex = !A.exact.empty();
    auto rank_of = [&](const std::vector<int>& cols) {
        if (cols.empty()) return 0;
        return ex ? rank(columns(A.exact, cols)) : rank(columns(A.matrix, cols), 1e-9);
    };
    // Circular rank condition: column i lies in the span of i+1..j for the
    // first such j; that j is sent back to i.
    std::vector<int> images(n, 0);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> span;
        int found = 0;
        for (int s = 1; s < n; ++s) {
            int j = (i - 1 + s) % n + 1;
            span.push_back(j);
            auto with = span;
            with.push_back(i);
            if (rank_of(with) == rank_of(span)) {
                found = j;
                break;
            }
        }
        if (!found) throw Error("ReducibleCell", "column " + std::to_string(i) + " is a loop or coloop");
        if (rank_of({i}) == 0) throw Error("ReducibleCell", "column " + std::to_string(i) + " vanishes");
        images[found - 1] = i;
    }
    auto pi = Derangement::from(images);
    auto D = asymptotic_solitons(pi, kappa);
    D.pi = pi;
    return D;
}

// ------------------------------------------------------------------ soliton graph

PlabicGraph extract_soliton_graph(const ContourPlot& C) {
    PlabicGraph G;
    G.n = C.n;
    const bool rotated = C.frame == Frame::MinusInfinity;
    std::vector<int> id(C.vertices.size(), -1);
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        const auto& pv = C.vertices[v];
        if (pv.edges.empty()) continue;
        if (pv.kind != VKind::Boundary && pv.kind != VKind::Cross && pv.edges.size() != 3)
            throw Error("NonGenericPlot", "vertex of degree " + std::to_string(pv.edges.size()) + " at (" + pv.xs +
                                              ", " + pv.ys + ")");
        if (pv.kind == VKind::Boundary && pv.edges.size() != 1)
            throw Error("NonGenericPlot", "two rays leave the box at one point");
        id[v] = G.add_vertex(pv.kind, 0, pv.x, pv.y);
    }
    for (auto& pe : C.edges) {
        int e = G.add_edge(id[pe.a], id[pe.b]);
        G.E[e].tag = pe.type;
    }
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        if (id[v] < 0) continue;
        auto& r = G.V[id[v]].rot;
        const auto& pv = C.vertices[v];
        auto angle = [&](int e) {
            const auto& pe = C.edges[e];
            const auto& o = C.vertices[pe.a == int(v) ? pe.b : pe.a];
            return std::atan2(o.y - pv.y, o.x - pv.x);
        };
        std::vector<int> plot_edges = pv.edges;
        std::sort(plot_edges.begin(), plot_edges.end(), [&](int a, int b) { return angle(a) < angle(b); });
        // Plot edge ids coincide with graph edge ids.
        r = plot_edges;
        if (pv.kind == VKind::Cross) {
            if (r.size() != 4 || C.edges[r[0]].type != C.edges[r[2]].type || C.edges[r[1]].type != C.edges[r[3]].type)
                throw Error("NonGenericPlot", "four-valent vertex is not an X-crossing");
        }
        if (pv.kind == VKind::Boundary) {
            const auto& pe = C.edges[r[0]];
            const auto& o = C.vertices[pe.a == int(v) ? pe.b : pe.a];
            bool up = pv.y > o.y;
            if (rotated) up = !up;
            G.V[id[v]].label = up ? pe.type[1] : pe.type[0];
        }
    }
    // Boundary vertices counterclockwise around the box centre.
    double cx = (C.box[0] + C.box[1]) / 2, cy = (C.box[2] + C.box[3]) / 2;
    std::vector<int> bnd;
    for (size_t v = 0; v < G.V.size(); ++v)
        if (G.V[v].kind == VKind::Boundary) bnd.push_back(int(v));
    std::sort(bnd.begin(), bnd.end(), [&](int a, int b) {
        return std::atan2(G.V[a].y - cy, G.V[a].x - cx) < std::atan2(G.V[b].y - cy, G.V[b].x - cx);
    });
    G.boundary = bnd;
    if (int(bnd.size()) != C.n) throw Error("NonGenericPlot", "expected " + std::to_string(C.n) + " rays, found " +
                                                                  std::to_string(bnd.size()));
    return G;
}

// ------------------------------------------------------------------ laws

std::vector<std::string> check_plot_laws(const ContourPlot& C, const KappaParams& kappa, const GrassmannPoint* A) {
    std::vector<std::string> bad;
    const double tol = 1e-9;
    for (auto& pe : C.edges) {
        const auto &a = C.vertices[pe.a], &b = C.vertices[pe.b];
        if (C.frame == Frame::Finite && (a.kind == VKind::Cross || b.kind == VKind::Cross)) continue;
        double s = kappa.values[pe.type[0] - 1] + kappa.values[pe.type[1] - 1];
        double dx = b.x - a.x, dy = b.y - a.y;
        double len = std::hypot(dx, dy);
        if (std::abs(dx + s * dy) > tol * std::max(1.0, len) * (1 + std::abs(s)))
            bad.push_back("slope law fails on [" + std::to_string(pe.type[0]) + "," + std::to_string(pe.type[1]) + "]");
        if (popcount(pe.left ^ pe.right) != 2 || popcount(pe.left) != C.k || popcount(pe.right) != C.k)
            bad.push_back("adjacency law fails");
    }
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        const auto& pv = C.vertices[v];
        if (pv.kind != VKind::Black && pv.kind != VKind::White) continue;
        if (pv.edges.size() != 3) {
            bad.push_back("non-trivalent vertex");
            continue;
        }
        auto es = pv.edges;
        auto angle = [&](int e) {
            const auto& pe = C.edges[e];
            const auto& o = C.vertices[pe.a == int(v) ? pe.b : pe.a];
            return std::atan2(o.y - pv.y, o.x - pv.x);
        };
        std::sort(es.begin(), es.end(), [&](int a, int b) { return angle(a) < angle(b); });
        std::set<int> idx;
        for (int e : es) idx.insert(C.edges[e].type[0]), idx.insert(C.edges[e].type[1]);
        if (idx.size() != 3) {
            bad.push_back("trivalent vertex does not involve three indices");
            continue;
        }
        std::vector<int> ijl(idx.begin(), idx.end());
        std::array<int, 2> want[3] = {{ijl[0], ijl[1]}, {ijl[1], ijl[2]}, {ijl[0], ijl[2]}};
        bool ok = false;
        for (int s = 0; s < 3 && !ok; ++s) {
            ok = true;
            for (int t = 0; t < 3; ++t) ok &= C.edges[es[(s + t) % 3]].type == want[t];
        }
        // A half turn does not change the cyclic order, so the law reads the
        // same in either frame.
        if (!ok) bad.push_back("trivalent vertex types not in counterclockwise resonant order");
        if (!dispersion_resonance_check(kappa, ijl[0], ijl[1], ijl[2])) bad.push_back("dispersion identity fails");
    }
    // Argmax certification at sample points of every region.
    auto value = [&](Subset J, double x, double y) {
        if (C.frame == Frame::Finite) {
            double v = std::log(A->plucker.at(J) * k_factor(J, kappa));
            Times tm = C.times;
            tm.x = x, tm.y = y;
            for (int j : elements(J)) v += theta(j, kappa, tm);
            return v;
        }
        double v = 0;
        for (int j : elements(J)) {
            double k = kappa.values[j - 1];
            v += k * x + k * k * y + k * k * k;
        }
        return C.frame == Frame::PlusInfinity ? v : -v;
    };
    std::vector<Subset> labels;
    if (C.frame == Frame::Finite) {
        if (A)
            for (auto& [J, d] : A->plucker)
                if (d > 0) labels.push_back(J);
    } else {
        for (auto& R : C.regions) labels.push_back(R.label);
    }
    if (!labels.empty())
        for (auto& R : C.regions) {
            std::vector<std::array<double, 2>> samples{R.sample};
            for (size_t i = 0; i < R.polygon.size() && samples.size() < 5; ++i)
                samples.push_back({(R.sample[0] + R.polygon[i][0]) / 2, (R.sample[1] + R.polygon[i][1]) / 2});
            for (auto& s : samples) {
                double mine = value(R.label, s[0], s[1]);
                for (Subset J : labels)
                    if (J != R.label && !(value(J, s[0], s[1]) < mine)) {
                        bad.push_back("region " + subset_string(R.label, C.n) + " is not the argmax at a sample");
                        break;
                    }
            }
        }
    return bad;
}

// ------------------------------------------------------------------ X-crossings

std::vector<XCrossingReport> verify_xcrossings(const ContourPlot& C, const GrassmannPoint& A,
                                               const KappaParams& kappa, bool t_negative) {
    std::vector<XCrossingReport> out;
    const bool ex = !A.exact.empty();
    auto val = [&](Subset J) -> double {
        auto it = A.plucker.find(J);
        return it == A.plucker.end() ? 0.0 : it->second;
    };
    auto is_zero = [&](Subset J) {
        if (ex) {
            auto it = A.exact_plucker.find(J);
            return it == A.exact_plucker.end() || it->second == 0;
        }
        double big = 0;
        for (auto& [K, v] : A.plucker) big = std::max(big, std::abs(v));
        return std::abs(val(J)) <= 1e-9 * big;
    };
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        const auto& pv = C.vertices[v];
        if (pv.kind != VKind::Cross) continue;
        XCrossingReport r;
        r.vertex = int(v);
        std::set<std::array<int, 2>> types;
        Subset S = ~Subset(0);
        for (int e : pv.edges) {
            types.insert(C.edges[e].type);
            S &= C.edges[e].left & C.edges[e].right;
        }
        if (types.size() != 2) continue;
        r.first = *types.begin();
        r.second = *types.rbegin();
        r.S = S;
        std::vector<int> idx{r.first[0], r.first[1], r.second[0], r.second[1]};
        std::sort(idx.begin(), idx.end());
        const int h = idx[0], i = idx[1], j = idx[2], l = idx[3];
        auto D = [&](int a, int b) { return S | bit(a) | bit(b); };
        auto has = [&](int a, int b) { return types.count({a, b}) > 0; };
        double lhs = 0, rhs = 0;
        if (has(h, l) && has(i, j)) {
            auto& q = kappa.exact;
            bool a = q[h - 1] + q[l - 1] > q[i - 1] + q[j - 1];
            r.kind = a ? XCase::OneA : XCase::OneB;
            bool hl = (a == t_negative);
            r.vanishing = hl ? D(h, l) : D(i, j);
            lhs = val(D(i, l)) * val(D(h, j));
            rhs = val(D(h, i)) * val(D(j, l));
        } else if (has(h, i) && has(j, l)) {
            r.kind = XCase::Two;
            r.vanishing = t_negative ? D(j, l) : D(h, i);
            lhs = val(D(h, l)) * val(D(i, j));
            rhs = val(D(h, j)) * val(D(i, l));
        } else {
            r.kind = XCase::Three;
            out.push_back(r);
            continue;
        }
        r.vanishing_value = val(r.vanishing);
        r.relation_error = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        r.ok = is_zero(r.vanishing) && r.relation_error < 1e-9;
        out.push_back(r);
    }
    return out;
}

}  // namespace kplab

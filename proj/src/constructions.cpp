#include "kplab/plabic.hpp"

#include <algorithm>
#include <cmath>

namespace kplab {

namespace {

// Collects edges together with the direction in which each one leaves its
// endpoints, then orders every rotation by that angle.
struct Builder {
    PlabicGraph G;
    std::vector<std::array<double, 2>> ang;
    std::vector<bool> dead_e;

    int vertex(VKind kind, double x, double y, int label = 0) { return G.add_vertex(kind, label, x, y); }
    int edge(int u, double au, int v, double av) {
        int e = G.add_edge(u, v);
        ang.push_back({au, av});
        dead_e.push_back(false);
        return e;
    }
    double angle_at(int e, int v) const { return G.E[e].u == v ? ang[e][0] : ang[e][1]; }
    void sort_rotations() {
        for (size_t v = 0; v < G.V.size(); ++v) {
            auto& r = G.V[v].rot;
            std::sort(r.begin(), r.end(), [&](int a, int b) { return angle_at(a, int(v)) < angle_at(b, int(v)); });
        }
    }
    void kill_edge(int e) {
        if (dead_e[e]) return;
        dead_e[e] = true;
        for (int end : {G.E[e].u, G.E[e].v}) {
            auto& r = G.V[end].rot;
            r.erase(std::remove(r.begin(), r.end(), e), r.end());
        }
    }
    // Joins the two edges at a degree-2 vertex (or the straight pairs at a
    // crossing that lost one strand) and drops the vertex.
    bool splice(int v, std::vector<bool>& dead_v) {
        auto& r = G.V[v].rot;
        if (r.size() != 2) return false;
        int e1 = r[0], e2 = r[1];
        int b = G.other(e2, v), a = G.other(e1, v);
        if (a == v || b == v || a == b) return false;
        if (G.E[e1].u == v) G.E[e1].u = b;
        else G.E[e1].v = b;
        for (int& x : G.V[b].rot)
            if (x == e2) x = e1;
        dead_e[e2] = true;
        dead_v[v] = true;
        r.clear();
        return true;
    }
};

constexpr double kE = 0, kN = 90, kW = 180, kS = 270;

}  // namespace

// Each plus box becomes an elbow pair: a white vertex on the north-east arc
// and a black vertex on the south-west arc, joined by an edge. Zero boxes are
// crossings. The straight initial stretch of every pipe is then erased.
PlabicGraph build_g_minus(const LeDiagram& L) {
    L.validate();
    if (!L.irreducible()) throw Error("NotIrreducible", "Le-diagram " + L.str() + " is reducible");
    const int k = L.k, m = L.n - L.k;
    Builder B;
    B.G.n = L.n;
    // port[r][c][side] = (vertex, angle) with side 0 E, 1 N, 2 W, 3 S
    struct Port {
        int v;
        double a;
    };
    std::vector<std::vector<std::array<Port, 4>>> port(k);
    for (int r = 0; r < k; ++r) {
        port[r].resize(L.rows[r]);
        for (int c = 0; c < L.rows[r]; ++c) {
            double x = c + 0.5, y = -r - 0.5;
            if (L.plus(r, c)) {
                int a = B.vertex(VKind::White, x + 0.25, y + 0.25);
                int b = B.vertex(VKind::Black, x - 0.25, y - 0.25);
                B.edge(a, 225, b, 45);
                port[r][c] = {Port{a, kE}, Port{a, kN}, Port{b, kW}, Port{b, kS}};
            } else {
                int X = B.vertex(VKind::Cross, x, y);
                port[r][c] = {Port{X, kE}, Port{X, kN}, Port{X, kW}, Port{X, kS}};
            }
        }
    }
    auto ends = trace_pipes(L);
    std::vector<int> top(m), west(k);
    for (int c = 0; c < m; ++c) top[c] = B.vertex(VKind::Boundary, c + 0.5, 0.5, ends.col_north[c]);
    for (int r = 0; r < k; ++r) west[r] = B.vertex(VKind::Boundary, -0.5, -r - 0.5, ends.row_west[r]);
    // Edges on the E side of each box and on the S side.
    std::vector<std::vector<int>> east_edge(k), south_edge(k);
    for (int r = 0; r < k; ++r) {
        east_edge[r].assign(L.rows[r], -1);
        south_edge[r].assign(L.rows[r], -1);
    }
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < L.rows[r]; ++c) {
            auto& P = port[r][c];
            if (r == 0) B.edge(P[1].v, P[1].a, top[c], kS);
            else south_edge[r - 1][c] = B.edge(P[1].v, P[1].a, port[r - 1][c][3].v, port[r - 1][c][3].a);
            if (c == 0) B.edge(P[2].v, P[2].a, west[r], kE);
            else east_edge[r][c - 1] = B.edge(P[2].v, P[2].a, port[r][c - 1][0].v, port[r][c - 1][0].a);
            if (c == L.rows[r] - 1) {
                int t = B.vertex(VKind::Boundary, c + 1.5, -r - 0.5, -1);
                east_edge[r][c] = B.edge(P[0].v, P[0].a, t, kW);
            }
            if (r == L.col_length(c) - 1) {
                int t = B.vertex(VKind::Boundary, c + 0.5, -r - 1.5, -1);
                south_edge[r][c] = B.edge(P[3].v, P[3].a, t, kN);
            }
        }
    B.sort_rotations();
    for (int r = 0; r < k; ++r)
        for (int c = L.rows[r] - 1; c >= 0; --c) {
            B.kill_edge(east_edge[r][c]);
            if (L.plus(r, c)) break;
        }
    for (int c = 0; c < m; ++c)
        for (int r = L.col_length(c) - 1; r >= 0; --r) {
            B.kill_edge(south_edge[r][c]);
            if (L.plus(r, c)) break;
        }
    auto& G = B.G;
    std::vector<bool> dead_v(G.V.size(), false);
    for (size_t v = 0; v < G.V.size(); ++v) {
        auto& pv = G.V[v];
        if (pv.kind == VKind::Boundary && pv.label < 0) dead_v[v] = true;
        if (pv.kind == VKind::Cross) {
            if (pv.rot.empty()) dead_v[v] = true;
            else if (pv.rot.size() == 2) B.splice(int(v), dead_v);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < G.V.size(); ++v)
            if (!dead_v[v] && G.V[v].kind != VKind::Boundary && G.V[v].kind != VKind::Cross &&
                G.V[v].rot.size() == 2 && B.splice(int(v), dead_v))
                changed = true;
    }
    for (int c = m - 1; c >= 0; --c) G.boundary.push_back(top[c]);
    for (int r = 0; r < k; ++r) G.boundary.push_back(west[r]);
    G.compact(dead_v, B.dead_e);
    return G;
}

PlabicGraph build_g_plus(const LeDiagram& L) {
    auto pi = derangement_from_le(L);
    auto G = mirror(build_g_minus(dualize(L)));
    const int n = L.n;
    std::vector<int> relabel(n + 1, 0);
    for (int j = 1; j <= n; ++j) relabel[j] = pi(n + 1 - j);
    relabel_boundary(G, relabel);
    return G;
}

// Hook graph: every plus box sends a hook east to the next plus of its row
// (or the border) and south to the next plus of its column (or the border).
// Built in the orientation of the diagram and mirrored at the end so that the
// border labels increase counterclockwise.
PlabicGraph build_hook_plabic(const LeDiagram& L) {
    L.validate();
    const int k = L.k, m = L.n - L.k;
    // Local rule at plus boxes, chosen so that trips follow the pipes.
    // WES: box with a hook arriving from the west only.
    // NES: box with a hook arriving from the north only.
    const VKind wes = VKind::White, nes = VKind::Black;
    const bool pair_wn = false;           // four-valent box splits as {W,S} | {N,E}
    const VKind first = VKind::White;     // colour of the {W,S} half
    VKind second = first == VKind::Black ? VKind::White : VKind::Black;

    Builder B;
    B.G.n = L.n;
    auto rl = L.row_labels();
    auto cl = L.col_labels();
    std::vector<int> rowb(k), colb(m);
    for (int r = 0; r < k; ++r) rowb[r] = B.vertex(VKind::Boundary, L.rows[r] + 0.5, -r - 0.5, rl[r]);
    for (int c = 0; c < m; ++c) colb[c] = B.vertex(VKind::Boundary, c + 0.5, -L.col_length(c) - 0.5, cl[c]);

    struct Port {
        int v = -1;
        double a = 0;
    };
    std::vector<std::vector<std::array<Port, 4>>> port(k);
    for (int r = 0; r < k; ++r) {
        port[r].resize(L.rows[r]);
        for (int c = 0; c < L.rows[r]; ++c) {
            if (!L.plus(r, c)) continue;
            bool hw = false, hn = false;
            for (int q = 0; q < c; ++q) hw |= L.plus(r, q);
            for (int q = 0; q < r; ++q) hn |= L.plus(q, c);
            double x = c + 0.5, y = -r - 0.5;
            auto& P = port[r][c];
            if (!hw && !hn) {
                int v = B.vertex(VKind::White, x, y);
                P[0] = {v, kE};
                P[3] = {v, kS};
            } else if (hw && !hn) {
                int v = B.vertex(wes, x, y);
                P[0] = {v, kE}, P[2] = {v, kW}, P[3] = {v, kS};
            } else if (!hw && hn) {
                int v = B.vertex(nes, x, y);
                P[0] = {v, kE}, P[1] = {v, kN}, P[3] = {v, kS};
            } else if (pair_wn) {
                int p = B.vertex(first, x - 0.2, y + 0.2), q = B.vertex(second, x + 0.2, y - 0.2);
                B.edge(p, 315, q, 135);
                P[1] = {p, kN}, P[2] = {p, kW}, P[0] = {q, kE}, P[3] = {q, kS};
            } else {
                int p = B.vertex(first, x - 0.2, y - 0.2), q = B.vertex(second, x + 0.2, y + 0.2);
                B.edge(p, 45, q, 225);
                P[2] = {p, kW}, P[3] = {p, kS}, P[0] = {q, kE}, P[1] = {q, kN};
            }
        }
    }
    for (int r = 0; r < k; ++r) {
        int prev = -1;
        for (int c = 0; c <= L.rows[r]; ++c) {
            if (c < L.rows[r] && !L.plus(r, c)) continue;
            if (c == L.rows[r]) {
                if (prev >= 0) B.edge(port[r][prev][0].v, kE, rowb[r], kW);
                else B.edge(rowb[r], kW, B.vertex(VKind::White, L.rows[r], -r - 0.5), kE);
            } else if (prev >= 0) {
                B.edge(port[r][prev][0].v, kE, port[r][c][2].v, kW);
            }
            prev = c;
        }
    }
    for (int c = 0; c < m; ++c) {
        int prev = -1, len = L.col_length(c);
        for (int r = 0; r <= len; ++r) {
            if (r < len && !L.plus(r, c)) continue;
            if (r == len) {
                if (prev >= 0) B.edge(port[prev][c][3].v, kS, colb[c], kN);
                else B.edge(colb[c], kN, B.vertex(VKind::Black, c + 0.5, -len), kS);
            } else if (prev >= 0) {
                B.edge(port[prev][c][3].v, kS, port[r][c][1].v, kN);
            }
            prev = r;
        }
    }
    B.sort_rotations();
    auto& G = B.G;
    std::vector<bool> dead_v(G.V.size(), false);
    for (size_t v = 0; v < G.V.size(); ++v)
        if (G.V[v].kind != VKind::Boundary && G.V[v].rot.size() == 2) B.splice(int(v), dead_v);
    // Counterclockwise in the diagram orientation the south-east border reads n..1.
    std::vector<int> order;
    for (int label = L.n; label >= 1; --label) {
        for (int r = 0; r < k; ++r)
            if (rl[r] == label) order.push_back(rowb[r]);
        for (int c = 0; c < m; ++c)
            if (cl[c] == label) order.push_back(colb[c]);
    }
    G.boundary = order;
    G.compact(dead_v, B.dead_e);
    return mirror(G);
}

Subset g_minus_northwest_label(const LeDiagram& L) {
    auto G = build_g_minus(L);
    auto T = compute_trips(G);
    const int m = L.n - L.k;
    // The north-west region touches the boundary between the top of the first
    // column and the west end of the first row.
    int b1 = G.boundary[m - 1], b2 = G.boundary[m];
    for (size_t f = 0; f < T.faces.size(); ++f) {
        bool t1 = false, t2 = false;
        for (int h : T.faces[f].halfedges) {
            int e = h / 2;
            t1 |= G.E[e].u == b1 || G.E[e].v == b1;
            t2 |= G.E[e].u == b2 || G.E[e].v == b2;
        }
        if (t1 && t2) return T.face_labels[f];
    }
    throw Error("MalformedEmbedding", "north-west region not found");
}

std::vector<Subset> DestinationSets::all() const {
    std::vector<Subset> out{pivot};
    for (auto& [rc, J] : boxes)
        if (std::find(out.begin(), out.end(), J) == out.end()) out.push_back(J);
    return out;
}

DestinationSets destination_sets(const LeDiagram& L) {
    L.validate();
    DestinationSets D;
    D.pivot = subset_from(L.row_labels());
    for (auto [r, c] : plus_boxes(L)) {
        LeDiagram Lb = L;
        for (int q = 0; q < L.k; ++q)
            for (int p = 0; p < L.rows[q]; ++p)
                if (q < r || p < c) Lb.fill[q][p] = false;
        auto M = matroid_from_le(Lb);
        D.boxes.push_back({{r, c}, lex_max(M.bases)});
    }
    return D;
}

}  // namespace kplab

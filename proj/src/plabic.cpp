#include "kplab/plabic.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace kplab {

// ---------------------------------------------------------------- basics

int PlabicGraph::add_vertex(VKind kind, int label, double x, double y) {
    V.push_back(PVertex{kind, label, {}, x, y});
    return int(V.size()) - 1;
}

int PlabicGraph::add_edge(int u, int v) {
    E.push_back(PEdge{u, v, {0, 0}});
    int e = int(E.size()) - 1;
    V[u].rot.push_back(e);
    if (v != u) V[v].rot.push_back(e);
    return e;
}

std::vector<int> PlabicGraph::boundary_labels() const {
    std::vector<int> out;
    for (int b : boundary) out.push_back(V[b].label);
    return out;
}

int PlabicGraph::count(VKind kind) const {
    int c = 0;
    for (auto& v : V) c += v.kind == kind;
    return c;
}

void PlabicGraph::validate() const {
    if (int(boundary.size()) != n) throw Error("MalformedEmbedding", "boundary size differs from n");
    std::vector<int> seen(n + 1, 0);
    for (int b : boundary) {
        if (V[b].kind != VKind::Boundary) throw Error("MalformedEmbedding", "non-boundary vertex on boundary");
        if (V[b].rot.size() > 1) throw Error("MalformedEmbedding", "boundary vertex of degree > 1");
        int l = V[b].label;
        if (l < 1 || l > n || seen[l]++) throw Error("MalformedEmbedding", "boundary labels are not a permutation");
    }
    for (size_t e = 0; e < E.size(); ++e) {
        for (int end : {E[e].u, E[e].v}) {
            auto& r = V[end].rot;
            if (std::find(r.begin(), r.end(), int(e)) == r.end())
                throw Error("MalformedEmbedding", "edge missing from rotation");
        }
    }
    for (size_t v = 0; v < V.size(); ++v) {
        for (int e : V[v].rot)
            if (E[e].u != int(v) && E[e].v != int(v))
                throw Error("MalformedEmbedding", "rotation lists a foreign edge");
        if (V[v].kind == VKind::Cross && V[v].rot.size() != 4)
            throw Error("MalformedEmbedding", "X-crossing must have four edges");
    }
}

void PlabicGraph::compact(const std::vector<bool>& dead_v, const std::vector<bool>& dead_e) {
    std::vector<int> vmap(V.size(), -1), emap(E.size(), -1);
    std::vector<PVertex> nv;
    std::vector<PEdge> ne;
    for (size_t e = 0; e < E.size(); ++e)
        if (!dead_e[e]) {
            emap[e] = int(ne.size());
            ne.push_back(E[e]);
        }
    for (size_t v = 0; v < V.size(); ++v)
        if (!dead_v[v]) {
            vmap[v] = int(nv.size());
            nv.push_back(V[v]);
        }
    for (auto& e : ne) e.u = vmap[e.u], e.v = vmap[e.v];
    for (auto& v : nv) {
        std::vector<int> r;
        for (int e : v.rot)
            if (emap[e] >= 0) r.push_back(emap[e]);
        v.rot = std::move(r);
    }
    for (int& b : boundary) b = vmap[b];
    V = std::move(nv);
    E = std::move(ne);
}

static int index_in(const std::vector<int>& rot, int e) {
    auto it = std::find(rot.begin(), rot.end(), e);
    if (it == rot.end()) throw Error("MalformedEmbedding", "edge not found in rotation");
    return int(it - rot.begin());
}

static void replace_in_rot(std::vector<int>& rot, int old_e, int new_e) {
    for (int& e : rot)
        if (e == old_e) {
            e = new_e;
            return;
        }
}

// ---------------------------------------------------------------- faces

namespace {
// Rotation system with the disk boundary closed up by virtual arcs.
struct Augmented {
    int m = 0;                              // real edge count; arcs are m..m+n-1
    std::vector<std::array<int, 2>> ends;   // per edge (real and arcs)
    std::vector<std::vector<int>> rot;      // per vertex
    int head(int h) const { return ends[h / 2][h % 2 ? 0 : 1]; }
    int tail(int h) const { return ends[h / 2][h % 2 ? 1 : 0]; }
};

Augmented augment(const PlabicGraph& G) {
    Augmented A;
    A.m = int(G.E.size());
    for (auto& e : G.E) A.ends.push_back({e.u, e.v});
    A.rot.resize(G.V.size());
    for (size_t v = 0; v < G.V.size(); ++v) A.rot[v] = G.V[v].rot;
    const int n = int(G.boundary.size());
    for (int p = 0; p < n; ++p) A.ends.push_back({G.boundary[p], G.boundary[(p + 1) % n]});
    for (int p = 0; p < n; ++p) {
        int b = G.boundary[p];
        std::vector<int> r{A.m + p};
        for (int e : G.V[b].rot) r.push_back(e);
        r.push_back(A.m + (p + n - 1) % n);
        A.rot[b] = r;
    }
    return A;
}

// Half-edge following h along the face on its left.
int face_next(const Augmented& A, int h) {
    int v = A.head(h);
    int e = h / 2;
    const auto& r = A.rot[v];
    int idx;
    if (A.ends[e][0] == A.ends[e][1]) {
        // Loop: pick the occurrence matching the direction of travel.
        idx = h % 2 ? int(std::find(r.begin(), r.end(), e) - r.begin())
                    : int(std::find(r.rbegin(), r.rend(), e).base() - r.begin()) - 1;
    } else {
        idx = index_in(r, e);
    }
    int d = int(r.size());
    int f = r[(idx - 1 + d) % d];
    return A.ends[f][0] == v ? 2 * f : 2 * f + 1;
}
}  // namespace

static std::vector<Face> faces_impl(const PlabicGraph& G, std::vector<int>* face_of_he,
                                    int* outer_index, std::vector<int>* arc_faces) {
    auto A = augment(G);
    const int H = int(A.ends.size()) * 2;
    std::vector<int> fo(H, -1);
    std::vector<Face> faces;
    const int n = int(G.boundary.size());
    for (int h0 = 0; h0 < H; ++h0) {
        if (fo[h0] >= 0) continue;
        Face f;
        int h = h0, guard = 0;
        do {
            fo[h] = int(faces.size());
            f.halfedges.push_back(h);
            h = face_next(A, h);
            if (++guard > H + 5) throw Error("MalformedEmbedding", "face traversal does not close");
        } while (h != h0);
        faces.push_back(std::move(f));
    }
    // Outer face: to the left of the arcs traversed clockwise.
    int outer = n ? fo[2 * A.m + 1] : -1;
    if (outer >= 0) faces[outer].outer = true;
    if (arc_faces) {
        arc_faces->clear();
        for (int p = 0; p < n; ++p) arc_faces->push_back(fo[2 * (A.m + p)]);
    }
    if (face_of_he) *face_of_he = fo;
    if (outer_index) *outer_index = outer;
    return faces;
}

std::vector<Face> compute_faces(const PlabicGraph& G, bool include_outer) {
    auto faces = faces_impl(G, nullptr, nullptr, nullptr);
    if (include_outer) return faces;
    std::vector<Face> out;
    for (auto& f : faces)
        if (!f.outer) out.push_back(f);
    return out;
}

// ---------------------------------------------------------------- trips

std::optional<Derangement> TripLabeling::derangement() const {
    try {
        return Derangement::from(perm);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::array<int, 2> TripLabeling::edge_label(int e) const {
    const auto& t = edge_trips[e];
    if (t.size() != 2) return {0, 0};
    return {std::min(t[0], t[1]), std::max(t[0], t[1])};
}

TripLabeling compute_trips(const PlabicGraph& G) {
    G.validate();
    TripLabeling T;
    const int n = G.n;
    T.perm.assign(n, 0);
    T.trips.assign(n + 1, {});
    T.edge_trips.assign(G.E.size(), {});
    const int limit = 4 * int(G.E.size()) + 8;

    for (int b : G.boundary) {
        const int label = G.V[b].label;
        if (G.V[b].rot.empty()) {
            T.perm[label - 1] = label;
            continue;
        }
        int v = b, e = G.V[b].rot[0], steps = 0;
        while (true) {
            int w = G.other(e, v);
            T.trips[label].push_back(G.E[e].u == v ? 2 * e : 2 * e + 1);
            T.edge_trips[e].push_back(label);
            v = w;
            const auto& pv = G.V[v];
            if (pv.kind == VKind::Boundary) {
                T.perm[label - 1] = pv.label;
                break;
            }
            if (++steps > limit) throw Error("NonterminatingTrip", "trip " + std::to_string(label) + " cycles");
            int d = int(pv.rot.size());
            int idx = index_in(pv.rot, e);
            if (pv.kind == VKind::Black) e = pv.rot[(idx + 1) % d];
            else if (pv.kind == VKind::White) e = pv.rot[(idx - 1 + d) % d];
            else e = pv.rot[(idx + 2) % 4];
        }
    }

    std::vector<int> fo;
    int outer = -1;
    auto faces = faces_impl(G, &fo, &outer, nullptr);
    const int F = int(faces.size());
    // Dual adjacency across real edges.
    std::vector<std::vector<std::pair<int, int>>> adj(F);
    for (size_t e = 0; e < G.E.size(); ++e) {
        int a = fo[2 * e], c = fo[2 * e + 1];
        adj[a].push_back({c, int(e)});
        adj[c].push_back({a, int(e)});
    }
    std::vector<Subset> label(F, 0);
    for (int i = 1; i <= n; ++i) {
        std::vector<char> state(F, 0);  // 1 left, 2 right
        std::vector<char> on_trip(G.E.size(), 0);
        std::deque<int> q;
        for (int h : T.trips[i]) on_trip[h / 2] = 1;
        for (int h : T.trips[i]) {
            int l = fo[h], r = fo[h ^ 1];
            if (state[r] == 1) T.consistent = false;
            state[r] = 2;
            if (state[l] == 2) T.consistent = false;
            if (!state[l]) q.push_back(l);
            state[l] = 1;
        }
        while (!q.empty()) {
            int f = q.front();
            q.pop_front();
            for (auto [g, e] : adj[f]) {
                if (on_trip[e] || g == outer) continue;
                if (state[g] == 2) {
                    T.consistent = false;
                    continue;
                }
                if (!state[g]) {
                    state[g] = 1;
                    q.push_back(g);
                }
            }
        }
        for (int f = 0; f < F; ++f)
            if (state[f] == 1) label[f] |= bit(i);
    }
    for (int f = 0; f < F; ++f) {
        if (f == outer) continue;
        T.faces.push_back(faces[f]);
        T.face_labels.push_back(label[f]);
    }
    T.trips.erase(T.trips.begin());
    return T;
}

// ---------------------------------------------------------------- resonance

ResonanceResult check_resonance(const PlabicGraph& G) { return check_resonance(G, compute_trips(G)); }

ResonanceResult check_resonance(const PlabicGraph& G, const TripLabeling& T) {
    ResonanceResult res;
    for (size_t v = 0; v < G.V.size(); ++v) {
        const auto& pv = G.V[v];
        if (pv.kind != VKind::Black && pv.kind != VKind::White) continue;
        const int m = int(pv.rot.size());
        std::vector<std::array<int, 2>> labs;
        bool bad = false;
        for (int e : pv.rot) {
            auto l = T.edge_label(e);
            if (l[0] == 0 || l[0] == l[1]) bad = true;
            labs.push_back(l);
        }
        bool found = false;
        for (int s = 0; s < m && !bad && !found; ++s) {
            std::vector<int> seq{labs[s][0], labs[s][1]};
            bool ok = true;
            for (int t = 1; t + 1 < m && ok; ++t) {
                auto q = labs[(s + t) % m];
                int last = seq.back();
                if (q[0] == last && q[1] > last) seq.push_back(q[1]);
                else ok = false;
            }
            auto closing = labs[(s + m - 1) % m];
            if (ok && closing[0] == seq.front() && closing[1] == seq.back()) found = true;
        }
        if (!found) {
            res.ok = false;
            res.witness = int(v);
            res.reason = bad ? "edge without two distinct trip labels" : "labels not in resonant order";
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------- mutation helpers

namespace {
struct Editor {
    PlabicGraph G;
    std::vector<bool> dead_v, dead_e;
    explicit Editor(const PlabicGraph& g) : G(g), dead_v(g.V.size(), false), dead_e(g.E.size(), false) {}

    int edges_between(int a, int b) const {
        int c = 0;
        for (int e : G.V[a].rot)
            if (G.other(e, a) == b) ++c;
        return c;
    }
    bool has_loop(int v) const {
        for (int e : G.V[v].rot)
            if (G.E[e].u == G.E[e].v) return true;
        return false;
    }
    // Removes an internal degree-2 vertex by joining its two edges.
    bool dissolve(int v) {
        auto& r = G.V[v].rot;
        if (r.size() != 2 || r[0] == r[1]) return false;
        int e1 = r[0], e2 = r[1];
        int a = G.other(e1, v), b = G.other(e2, v);
        if (a == v || b == v || a == b) return false;
        if (G.E[e1].u == v) G.E[e1].u = b;
        else G.E[e1].v = b;
        replace_in_rot(G.V[b].rot, e2, e1);
        dead_v[v] = true;
        dead_e[e2] = true;
        r.clear();
        return true;
    }
    // Contracts edge e into its endpoint u.
    bool contract(int e) {
        int u = G.E[e].u, v = G.E[e].v;
        if (u == v || edges_between(u, v) != 1) return false;
        auto ru = G.V[u].rot, rv = G.V[v].rot;
        std::rotate(ru.begin(), ru.begin() + index_in(ru, e), ru.end());
        std::rotate(rv.begin(), rv.begin() + index_in(rv, e), rv.end());
        std::vector<int> merged(ru.begin() + 1, ru.end());
        merged.insert(merged.end(), rv.begin() + 1, rv.end());
        for (int f : rv)
            if (f != e) {
                if (G.E[f].u == v) G.E[f].u = u;
                if (G.E[f].v == v) G.E[f].v = u;
            }
        G.V[u].rot = merged;
        G.V[v].rot.clear();
        dead_v[v] = true;
        dead_e[e] = true;
        return true;
    }
    PlabicGraph finish() {
        G.compact(dead_v, dead_e);
        return G;
    }
};

bool internal_colored(const PVertex& v) { return v.kind == VKind::Black || v.kind == VKind::White; }
}  // namespace

PlabicGraph apply_move(const PlabicGraph& G0, const Move& m) {
    Editor ed(G0);
    auto& G = ed.G;
    auto mismatch = [](const std::string& why) { return Error("PatternMismatch", why); };
    switch (m.type) {
        case MoveType::M1Square: {
            auto faces = compute_faces(G0);
            if (m.face < 0 || m.face >= int(faces.size())) throw mismatch("no such face");
            const auto& f = faces[m.face];
            if (f.halfedges.size() != 4) throw mismatch("face is not a square");
            std::vector<int> verts;
            for (int h : f.halfedges) {
                int e = h / 2;
                verts.push_back(h % 2 ? G.E[e].u : G.E[e].v);
            }
            std::set<int> distinct(verts.begin(), verts.end());
            if (distinct.size() != 4) throw mismatch("square repeats a vertex");
            for (int i = 0; i < 4; ++i) {
                const auto& pv = G.V[verts[i]];
                if (!internal_colored(pv) || pv.rot.size() != 3) throw mismatch("square vertex not trivalent");
                if (pv.kind == G.V[verts[(i + 1) % 4]].kind) throw mismatch("square colors do not alternate");
            }
            for (int v : verts) G.V[v].kind = G.V[v].kind == VKind::Black ? VKind::White : VKind::Black;
            return ed.finish();
        }
        case MoveType::M2Contract: {
            int e = m.site;
            if (e < 0 || e >= int(G.E.size())) throw mismatch("no such edge");
            const auto &a = G.V[G.E[e].u], &b = G.V[G.E[e].v];
            if (!internal_colored(a) || a.kind != b.kind) throw mismatch("edge is not unicolored");
            if (!ed.contract(e)) throw mismatch("contraction would create a loop");
            return ed.finish();
        }
        case MoveType::M2Uncontract: {
            int v = m.site;
            if (v < 0 || v >= int(G.V.size()) || !internal_colored(G.V[v])) throw mismatch("not an internal vertex");
            auto r = G.V[v].rot;
            int d = int(r.size());
            if (m.split_len < 1 || m.split_len >= d) throw mismatch("bad split");
            std::rotate(r.begin(), r.begin() + (m.split_from % d), r.end());
            std::vector<int> slice(r.begin(), r.begin() + m.split_len), rest(r.begin() + m.split_len, r.end());
            int w = G.add_vertex(G.V[v].kind, 0, G.V[v].x, G.V[v].y);
            G.V[w].rot.clear();
            G.E.push_back(PEdge{v, w, {0, 0}});
            int ne = int(G.E.size()) - 1;
            for (int f : slice) {
                if (G.E[f].u == v) G.E[f].u = w;
                if (G.E[f].v == v) G.E[f].v = w;
            }
            G.V[v].rot = {ne};
            G.V[v].rot.insert(G.V[v].rot.end(), rest.begin(), rest.end());
            G.V[w].rot = {ne};
            G.V[w].rot.insert(G.V[w].rot.end(), slice.begin(), slice.end());
            ed.dead_v.push_back(false);
            ed.dead_e.push_back(false);
            return ed.finish();
        }
        case MoveType::M3Insert: {
            int e = m.site;
            if (e < 0 || e >= int(G.E.size())) throw mismatch("no such edge");
            int b = G.E[e].v;
            int w = G.add_vertex(m.color, 0, (G.V[G.E[e].u].x + G.V[b].x) / 2, (G.V[G.E[e].u].y + G.V[b].y) / 2);
            G.E.push_back(PEdge{w, b, {0, 0}});
            int e2 = int(G.E.size()) - 1;
            G.E[e].v = w;
            replace_in_rot(G.V[b].rot, e, e2);
            G.V[w].rot = {e, e2};
            ed.dead_v.push_back(false);
            ed.dead_e.push_back(false);
            return ed.finish();
        }
        case MoveType::M3Remove: {
            int v = m.site;
            if (v < 0 || v >= int(G.V.size()) || !internal_colored(G.V[v]) || G.V[v].rot.size() != 2)
                throw mismatch("not a degree-2 internal vertex");
            if (!ed.dissolve(v)) throw mismatch("removal would create a loop");
            return ed.finish();
        }
        case MoveType::R1Reduce: {
            int u = m.site;
            if (u < 0 || u >= int(G.V.size()) || !internal_colored(G.V[u]) || G.V[u].rot.size() != 3)
                throw mismatch("not a trivalent vertex");
            int v = -1;
            for (int e : G.V[u].rot)
                if (ed.edges_between(u, G.other(e, u)) == 2) v = G.other(e, u);
            if (v < 0 || !internal_colored(G.V[v]) || G.V[v].rot.size() != 3 || G.V[v].kind == G.V[u].kind)
                throw mismatch("no parallel pair of opposite colors");
            int eu = -1, ev = -1;
            for (int e : G.V[u].rot)
                if (G.other(e, u) != v) eu = e;
            for (int e : G.V[v].rot)
                if (G.other(e, v) != u) ev = e;
            int x = G.other(eu, u), y = G.other(ev, v);
            if (x == u || y == v) throw mismatch("degenerate parallel pair");
            for (int e : G.V[u].rot)
                if (e != eu) ed.dead_e[e] = true;
            if (G.E[eu].u == u) G.E[eu].u = y;
            else G.E[eu].v = y;
            replace_in_rot(G.V[y].rot, ev, eu);
            ed.dead_e[ev] = true;
            ed.dead_v[u] = ed.dead_v[v] = true;
            return ed.finish();
        }
    }
    throw mismatch("unknown move");
}

std::vector<Move> applicable_moves(const PlabicGraph& G) {
    std::vector<Move> out;
    auto faces = compute_faces(G);
    for (size_t f = 0; f < faces.size(); ++f) {
        try {
            apply_move(G, Move{MoveType::M1Square, -1, int(f)});
            out.push_back(Move{MoveType::M1Square, -1, int(f)});
        } catch (const Error&) {
        }
    }
    for (size_t e = 0; e < G.E.size(); ++e) {
        const auto &a = G.V[G.E[e].u], &b = G.V[G.E[e].v];
        if (internal_colored(a) && a.kind == b.kind && G.E[e].u != G.E[e].v) {
            int c = 0;
            for (int x : a.rot)
                if (G.other(x, G.E[e].u) == G.E[e].v) ++c;
            if (c == 1) out.push_back(Move{MoveType::M2Contract, int(e)});
        }
        Move ins{MoveType::M3Insert, int(e)};
        ins.color = VKind::Black;
        out.push_back(ins);
        ins.color = VKind::White;
        out.push_back(ins);
    }
    for (size_t v = 0; v < G.V.size(); ++v) {
        const auto& pv = G.V[v];
        if (!internal_colored(pv)) continue;
        int d = int(pv.rot.size());
        if (d == 2) out.push_back(Move{MoveType::M3Remove, int(v)});
        if (d == 3) {
            try {
                apply_move(G, Move{MoveType::R1Reduce, int(v)});
                out.push_back(Move{MoveType::R1Reduce, int(v)});
            } catch (const Error&) {
            }
        }
        if (d >= 4)
            for (int s = 0; s < d; ++s)
                for (int len = 2; len <= d - 2; ++len) {
                    Move mv{MoveType::M2Uncontract, int(v)};
                    mv.split_from = s;
                    mv.split_len = len;
                    out.push_back(mv);
                }
    }
    return out;
}

// ---------------------------------------------------------------- normal forms

PlabicGraph m2_normal_form(const PlabicGraph& G0) {
    Editor ed(G0);
    auto& G = ed.G;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t e = 0; e < G.E.size(); ++e) {
            if (ed.dead_e[e]) continue;
            const auto &a = G.V[G.E[e].u], &b = G.V[G.E[e].v];
            if (internal_colored(a) && a.kind == b.kind && ed.contract(int(e))) changed = true;
        }
        for (size_t v = 0; v < G.V.size(); ++v) {
            if (ed.dead_v[v] || !internal_colored(G.V[v]) || G.V[v].rot.size() != 2) continue;
            if (ed.dissolve(int(v))) changed = true;
        }
    }
    return ed.finish();
}

PlabicGraph erase_crossings(const PlabicGraph& G0) {
    Editor ed(G0);
    auto& G = ed.G;
    for (size_t c = 0; c < G.V.size(); ++c) {
        if (G.V[c].kind != VKind::Cross) continue;
        auto r = G.V[c].rot;
        for (int pair = 0; pair < 2; ++pair) {
            int e1 = r[pair], e2 = r[pair + 2];
            if (e1 == e2) continue;
            int y = G.other(e2, int(c));
            if (G.E[e1].u == int(c)) G.E[e1].u = y;
            else G.E[e1].v = y;
            replace_in_rot(G.V[y].rot, e2, e1);
            ed.dead_e[e2] = true;
        }
        G.V[c].rot.clear();
        ed.dead_v[c] = true;
    }
    return ed.finish();
}

std::string planar_code(const PlabicGraph& G) {
    const int N = int(G.V.size());
    std::vector<int> id(N, -1), entry(N, -1), order;
    auto bl = G.boundary_labels();
    int start = 0;
    for (int p = 0; p < int(bl.size()); ++p)
        if (bl[p] < bl[start]) start = p;
    std::deque<int> q;
    const int nb = int(G.boundary.size());
    for (int s = 0; s < nb; ++s) {
        int b = G.boundary[(start + s) % nb];
        if (id[b] >= 0) continue;
        id[b] = int(order.size());
        order.push_back(b);
        entry[b] = G.V[b].rot.empty() ? -1 : G.V[b].rot[0];
        q.push_back(b);
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            auto r = G.V[v].rot;
            if (entry[v] >= 0) std::rotate(r.begin(), r.begin() + index_in(r, entry[v]), r.end());
            for (int e : r) {
                int w = G.other(e, v);
                if (id[w] < 0) {
                    id[w] = int(order.size());
                    order.push_back(w);
                    entry[w] = e;
                    q.push_back(w);
                }
            }
        }
    }
    std::ostringstream os;
    os << "n" << G.n << "|";
    for (int s = 0; s < nb; ++s) os << bl[(start + s) % nb] << ",";
    os << "|";
    int unreached = 0;
    for (int v = 0; v < N; ++v) unreached += id[v] < 0;
    for (int v : order) {
        const auto& pv = G.V[v];
        os << "BWbX"[pv.kind == VKind::Black ? 0 : pv.kind == VKind::White ? 1 : pv.kind == VKind::Boundary ? 2 : 3];
        if (pv.kind == VKind::Boundary) os << pv.label;
        auto r = pv.rot;
        if (entry[v] >= 0) std::rotate(r.begin(), r.begin() + index_in(r, entry[v]), r.end());
        os << "(";
        for (int e : r) {
            int w = G.other(e, v);
            auto rw = G.V[w].rot;
            if (entry[w] >= 0) std::rotate(rw.begin(), rw.begin() + index_in(rw, entry[w]), rw.end());
            os << id[w] << ":" << index_in(rw, e) << " ";
        }
        os << ")";
    }
    os << "|u" << unreached;
    return os.str();
}

std::string m2_key(const PlabicGraph& G) { return planar_code(m2_normal_form(G)); }

std::string slide_m2_key(const PlabicGraph& G) { return planar_code(m2_normal_form(erase_crossings(G))); }

PlabicGraph mirror(const PlabicGraph& G0) {
    PlabicGraph G = G0;
    for (auto& v : G.V) {
        std::reverse(v.rot.begin(), v.rot.end());
        v.y = -v.y;
    }
    std::reverse(G.boundary.begin(), G.boundary.end());
    return G;
}

void relabel_boundary(PlabicGraph& G, const std::vector<int>& new_label_of_old) {
    for (int b : G.boundary) G.V[b].label = new_label_of_old[G.V[b].label];
}

// ---------------------------------------------------------------- move search

bool reduced_by_moves(const PlabicGraph& G, int max_states) {
    auto has_bad_local = [](const PlabicGraph& H) {
        for (auto& f : compute_faces(H)) {
            if (f.halfedges.size() != 2) continue;
            int e1 = f.halfedges[0] / 2, e2 = f.halfedges[1] / 2;
            if (e1 >= int(H.E.size()) || e2 >= int(H.E.size())) continue;
            int a = H.E[e1].u, b = H.E[e1].v;
            if (internal_colored(H.V[a]) && internal_colored(H.V[b]) && H.V[a].kind != H.V[b].kind && e1 != e2)
                return true;
        }
        for (auto& v : H.V)
            if (internal_colored(v) && v.rot.size() <= 1) return true;
        return false;
    };
    std::set<std::string> seen;
    std::deque<PlabicGraph> q;
    auto start = m2_normal_form(G);
    seen.insert(planar_code(start));
    q.push_back(start);
    while (!q.empty() && int(seen.size()) <= max_states) {
        auto H = q.front();
        q.pop_front();
        if (has_bad_local(H)) return false;
        auto faces = compute_faces(H);
        for (auto& f : faces) {
            if (f.halfedges.size() != 4) continue;
            // Split off the two face edges at every vertex of degree > 3 so the
            // square becomes trivalent, then apply the square move.
            PlabicGraph K = H;
            std::vector<int> verts;
            bool ok = true;
            for (int h : f.halfedges) {
                int e = h / 2;
                if (e >= int(K.E.size())) {
                    ok = false;
                    break;
                }
                int v = h % 2 ? K.E[e].u : K.E[e].v;
                if (!internal_colored(K.V[v])) ok = false;
                verts.push_back(v);
            }
            if (!ok || std::set<int>(verts.begin(), verts.end()).size() != 4) continue;
            for (int i = 0; i < 4 && ok; ++i) {
                int v = verts[i];
                if (K.V[v].rot.size() <= 3) continue;
                int ein = f.halfedges[i] / 2;
                int idx = index_in(K.V[v].rot, ein);
                int d = int(K.V[v].rot.size());
                Move mv{MoveType::M2Uncontract, v};
                mv.split_from = (idx - 1 + d) % d;
                mv.split_len = 2;
                K = apply_move(K, mv);
                // The new vertex takes the face position of v.
                verts[i] = int(K.V.size()) - 1;
            }
            for (int i = 0; i < 4; ++i) {
                auto& pv = K.V[verts[i]];
                pv.kind = pv.kind == VKind::Black ? VKind::White : VKind::Black;
            }
            auto N = m2_normal_form(K);
            auto code = planar_code(N);
            if (seen.insert(code).second) q.push_back(N);
        }
    }
    return true;
}

}  // namespace kplab

#include "kplab/gr2n.hpp"

#include "kplab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace kplab {

namespace {

std::array<int, 2> sorted_pair(int a, int b) { return a < b ? std::array{a, b} : std::array{b, a}; }

bool polygon_side(std::array<int, 2> c, int n) {
    return c[1] == c[0] + 1 || (c[0] == 1 && c[1] == n);
}

// Sort every rotation counterclockwise by the drawing positions.
void sort_rotations(PlabicGraph& G) {
    for (int v = 0; v < int(G.V.size()); ++v) {
        auto& rot = G.V[v].rot;
        auto ang = [&](int e) {
            const auto& w = G.V[G.other(e, v)];
            return std::atan2(w.y - G.V[v].y, w.x - G.V[v].x);
        };
        std::sort(rot.begin(), rot.end(), [&](int a, int b) { return ang(a) < ang(b); });
    }
}

constexpr double kFirstRatio = 6;

}  // namespace

bool chords_cross(std::array<int, 2> p, std::array<int, 2> q) {
    auto inside = [&](int x) { return p[0] < x && x < p[1]; };
    if (p[0] == q[0] || p[0] == q[1] || p[1] == q[0] || p[1] == q[1]) return false;
    return inside(q[0]) != inside(q[1]);
}

std::array<int, 2> chord_of(Subset s) {
    auto e = elements(s);
    if (e.size() != 2) throw Error("InvalidLabel", "not a 2-subset");
    return {e[0], e[1]};
}

void Triangulation::validate() const {
    if (n < 3) throw Error("InvalidTriangulation", "n < 3");
    if (int(diagonals.size()) != n - 3)
        throw Error("InvalidTriangulation", "expected n-3 diagonals");
    std::set<std::array<int, 2>> seen;
    for (auto d : diagonals) {
        if (d[0] < 1 || d[1] > n || d[0] >= d[1] || polygon_side(d, n))
            throw Error("InvalidTriangulation", "bad diagonal");
        if (!seen.insert(d).second) throw Error("InvalidTriangulation", "repeated diagonal");
    }
    for (size_t a = 0; a < diagonals.size(); ++a)
        for (size_t b = a + 1; b < diagonals.size(); ++b)
            if (chords_cross(diagonals[a], diagonals[b]))
                throw Error("InvalidTriangulation", "crossing diagonals");
}

std::vector<std::array<int, 3>> Triangulation::triangles() const {
    std::set<std::array<int, 2>> chords(diagonals.begin(), diagonals.end());
    for (int i = 1; i <= n; ++i) chords.insert(sorted_pair(i, i % n + 1));
    std::vector<std::array<int, 3>> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                if (chords.count({a, b}) && chords.count({b, c}) && chords.count({a, c}))
                    out.push_back({a, b, c});
    return out;
}

std::string Triangulation::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < diagonals.size(); ++i)
        os << (i ? "," : "") << diagonals[i][0] << diagonals[i][1];
    os << "}";
    return os.str();
}

std::vector<Triangulation> enumerate_triangulations(int n) {
    if (n < 3) throw Error("InvalidTriangulation", "n < 3");
    // Sub-polygon on corners a..b: the side {a,b} lies in exactly one
    // triangle {a,c,b}; recurse on both sides of it.
    std::function<std::vector<std::vector<std::array<int, 2>>>(int, int)> rec =
        [&](int a, int b) -> std::vector<std::vector<std::array<int, 2>>> {
        if (b - a < 2) return {{}};
        std::vector<std::vector<std::array<int, 2>>> out;
        for (int c = a + 1; c < b; ++c) {
            auto left = rec(a, c), right = rec(c, b);
            for (const auto& l : left)
                for (const auto& r : right) {
                    auto d = l;
                    d.insert(d.end(), r.begin(), r.end());
                    if (c - a >= 2) d.push_back({a, c});
                    if (b - c >= 2) d.push_back({c, b});
                    out.push_back(std::move(d));
                }
        }
        return out;
    };
    std::vector<Triangulation> res;
    for (auto& d : rec(1, n)) {
        Triangulation T{n, d};
        std::sort(T.diagonals.begin(), T.diagonals.end());
        res.push_back(std::move(T));
    }
    std::sort(res.begin(), res.end(),
              [](const Triangulation& x, const Triangulation& y) { return x.diagonals < y.diagonals; });
    return res;
}

PlabicGraph psi_of_triangulation(const Triangulation& T) {
    T.validate();
    const int n = T.n;
    PlabicGraph G;
    G.n = n;
    std::vector<double> px(n + 1), py(n + 1);
    for (int i = 1; i <= n; ++i) {
        double a = 2 * std::numbers::pi * (i - 1) / n;
        px[i] = std::cos(a);
        py[i] = std::sin(a);
    }
    std::vector<int> white(n + 1);
    for (int i = 1; i <= n; ++i) {
        // The leg at corner i sits between the faces {i-1,i} and {i,i+1};
        // trip face labels come out as chords when it carries label i-1.
        int b = G.add_vertex(VKind::Boundary, (i + n - 2) % n + 1, 2 * px[i], 2 * py[i]);
        G.boundary.push_back(b);
        white[i] = G.add_vertex(VKind::White, 0, px[i], py[i]);
        G.add_edge(b, white[i]);
    }
    for (auto t : T.triangles()) {
        double cx = (px[t[0]] + px[t[1]] + px[t[2]]) / 3;
        double cy = (py[t[0]] + py[t[1]] + py[t[2]]) / 3;
        int b = G.add_vertex(VKind::Black, 0, cx, cy);
        for (int c : t) G.add_edge(b, white[c]);
    }
    sort_rotations(G);
    G.validate();
    return G;
}

ExponentFlag ExponentFlag::parse(const std::string& csv, int n) {
    ExponentFlag f;
    f.n = n;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            f.order.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw Error("InvalidFlag", "cannot parse '" + tok + "'");
        }
    }
    if (f.order.size() < 3) throw Error("InvalidFlag", "need at least three indices");
    std::vector<bool> used(n + 1, false);
    for (int i : f.order) {
        if (i < 1 || i > n) throw Error("InvalidFlag", "index out of range");
        used[i] = true;
    }
    for (int i = 1; i <= n; ++i)
        if (!used[i]) f.order.push_back(i);
    f.validate();
    return f;
}

void ExponentFlag::validate() const {
    if (n < 3 || int(order.size()) != n) throw Error("InvalidFlag", "order must list all of [n]");
    std::vector<bool> used(n + 1, false);
    for (int i : order) {
        if (i < 1 || i > n || used[i]) throw Error("InvalidFlag", "not a permutation of [n]");
        used[i] = true;
    }
}

std::string ExponentFlag::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < order.size(); ++i) os << (i ? "," : "") << order[i];
    return os.str();
}

FlagBuild graph_from_flag(const ExponentFlag& flag) {
    flag.validate();
    const int n = flag.n;
    FlagBuild out;
    std::set<int> cur(flag.order.begin(), flag.order.begin() + 3);
    std::set<std::array<int, 2>> diag;
    auto add = [&](int a, int b) {
        auto c = sorted_pair(a, b);
        if (!polygon_side(c, n)) diag.insert(c);
    };
    {
        std::vector<int> t(cur.begin(), cur.end());
        add(t[0], t[1]);
        add(t[1], t[2]);
        add(t[0], t[2]);
    }
    for (int l = 3; l < n; ++l) {
        int m = flag.order[l];
        // Cyclic neighbours of m among the current indices.
        auto hi = cur.upper_bound(m);
        int right = hi == cur.end() ? *cur.begin() : *hi;
        int left = hi == cur.begin() ? *cur.rbegin() : *std::prev(hi);
        out.added.push_back(sorted_pair(left, right));
        add(left, m);
        add(m, right);
        cur.insert(m);
    }
    out.triangulation.n = n;
    out.triangulation.diagonals.assign(diag.begin(), diag.end());
    out.graph = psi_of_triangulation(out.triangulation);
    return out;
}

Triangulation triangulation_of_flag(const ExponentFlag& flag) {
    return graph_from_flag(flag).triangulation;
}

ExponentFlag flag_of_triangulation(const Triangulation& T) {
    T.validate();
    const int n = T.n;
    std::set<std::array<int, 2>> diag(T.diagonals.begin(), T.diagonals.end());
    std::vector<int> cur;
    for (int i = 1; i <= n; ++i) cur.push_back(i);
    std::vector<int> removed;
    while (cur.size() > 3) {
        const int s = int(cur.size());
        bool found = false;
        for (int p = 0; p < s && !found; ++p) {
            int a = cur[(p + s - 1) % s], b = cur[(p + 1) % s];
            if (diag.count(sorted_pair(a, b))) {
                removed.push_back(cur[p]);
                cur.erase(cur.begin() + p);
                found = true;
            }
        }
        if (!found) throw Error("InvalidTriangulation", "no ear found");
    }
    ExponentFlag f;
    f.n = n;
    f.order = cur;
    f.order.insert(f.order.end(), removed.rbegin(), removed.rend());
    return f;
}

Times random_times(const KappaParams& kappa, Rng& rng, double scale) {
    double km = 1;
    for (double v : kappa.values) km = std::max(km, std::abs(v));
    Times tm;
    tm.y = rng.uniform(-scale, scale) / km;
    tm.t = rng.uniform(-scale, scale) / (km * km);
    for (int m = 4; m <= kappa.n(); ++m) tm.higher.push_back(rng.uniform(-scale, scale) / std::pow(km, m - 1));
    return tm;
}

Realization realize_flag(const ExponentFlag& flag, const GrassmannPoint& A,
                         const KappaParams& kappa, double gap, int max_rounds) {
    flag.validate();
    const int n = flag.n;
    if (A.k != 2 || A.n != n || kappa.n() != n)
        throw Error("InvalidInput", "realize_flag needs a point of Gr(2,n) and n parameters");
    const std::string target = m2_key(graph_from_flag(flag).graph);
    const auto& o = flag.order;

    Realization best;
    best.target_key = target;
    double ratio = kFirstRatio;
    for (int round = 1; round <= max_rounds; ++round, gap *= 2, ratio *= 2) {
        // Unknowns: y, t3, ..., tn; theta_j(0, y, ...) = sum_{m>=2} kappa_j^m c_m.
        const int u = n - 1;
        DMatrix M(u, std::vector<double>(u, 0));
        std::vector<double> rhs(u, 0);
        auto row = [&](int r, int a, int b, double val) {
            for (int m = 2; m <= n; ++m)
                M[r][m - 2] = std::pow(kappa.values[a - 1], m) - std::pow(kappa.values[b - 1], m);
            rhs[r] = val;
        };
        row(0, o[0], o[1], 0);
        row(1, o[0], o[2], 0);
        // Each later index must first show up far outside the structure
        // already built, so the drops grow geometrically.
        double drop = gap;
        for (int l = 2; l + 1 < n; ++l, drop *= ratio) row(l, o[l], o[l + 1], drop);

        Realization R;
        R.target_key = target;
        R.gap = gap;
        R.rounds = round;
        auto sol = solve(M, rhs);
        R.times.x = 0;
        R.times.y = sol[0];
        R.times.t = n >= 3 ? sol[1] : 0;
        R.times.higher.assign(sol.begin() + 2, sol.end());
        try {
            R.plot = contour_at_t(A, kappa, R.times);
            R.graph_key = m2_key(extract_soliton_graph(R.plot));
            R.ok = R.graph_key == target;
        } catch (const Error&) {
            R.ok = false;
        }
        if (R.ok) return R;
        best = std::move(R);
    }
    throw Error("RealizationFailed", "flag " + flag.str() + " not realized; last gap " +
                                         std::to_string(best.gap));
}

}  // namespace kplab

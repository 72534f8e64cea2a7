// Maximization diagrams of finitely many affine functions on a box, and the
// conversion of such a diagram into a contour plot.
#include "kplab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace kplab {

namespace {

double to_d(double v) { return v; }
double to_d(const Rational& v) { return v.get_d(); }
std::string to_s(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
std::string to_s(const Rational& v) { return rational_string(v); }
double absd(double v) { return std::abs(v); }
Rational absd(const Rational& v) { return abs(v); }

template <class T>
struct Term {
    Subset label;
    T a, b, c;  // a x + b y + c
    T at(const T& x, const T& y) const { return a * x + b * y + c; }
};

template <class T>
struct Pt {
    T x, y;
};

template <class T>
struct Poly {
    std::vector<Pt<T>> p;
    std::vector<int> tag;  // tag[i]: edge p[i] -> p[i+1]; neighbor term index, or -1 for the box
};

template <class T>
bool same_point(const Pt<T>& a, const Pt<T>& b, const T& eps) {
    return absd(T(a.x - b.x)) <= eps && absd(T(a.y - b.y)) <= eps;
}

// Keeps the part of the polygon where g = f_self - f_other >= 0.
template <class T>
Poly<T> clip(const Poly<T>& P, const Term<T>& self, const Term<T>& other, int other_index, const T& eps,
             const T& peps) {
    const T da = self.a - other.a, db = self.b - other.b, dc = self.c - other.c;
    const size_t m = P.p.size();
    std::vector<T> s(m);
    bool any_out = false, any_in = false;
    for (size_t i = 0; i < m; ++i) {
        s[i] = da * P.p[i].x + db * P.p[i].y + dc;
        if (s[i] < -eps) any_out = true;
        else any_in = true;
    }
    if (!any_out) return P;
    if (!any_in) return {};
    Poly<T> out;
    auto emit = [&](const Pt<T>& q, int t) {
        if (!out.p.empty() && same_point(out.p.back(), q, peps)) {
            out.p.back() = q;
            out.tag.back() = t;
            return;
        }
        out.p.push_back(q);
        out.tag.push_back(t);
    };
    for (size_t i = 0; i < m; ++i) {
        size_t j = (i + 1) % m;
        const auto &A = P.p[i], &B = P.p[j];
        bool inA = s[i] >= -eps, inB = s[j] >= -eps;
        auto cross = [&]() {
            T u = s[i] / (s[i] - s[j]);
            return Pt<T>{A.x + u * (B.x - A.x), A.y + u * (B.y - A.y)};
        };
        if (inA && inB) emit(A, P.tag[i]);
        else if (inA && !inB) {
            if (s[i] > eps) {
                emit(A, P.tag[i]);
                emit(cross(), other_index);
            } else {
                emit(A, other_index);
            }
        } else if (!inA && inB) {
            if (s[j] > eps) emit(cross(), P.tag[i]);
        }
    }
    while (out.p.size() > 1 && same_point(out.p.front(), out.p.back(), peps)) {
        out.p.pop_back();
        out.tag.pop_back();
    }
    if (out.p.size() < 3) return {};
    return out;
}

template <class T>
T area2(const Poly<T>& P) {
    T a = 0;
    for (size_t i = 0; i < P.p.size(); ++i) {
        const auto &A = P.p[i], &B = P.p[(i + 1) % P.p.size()];
        a += A.x * B.y - A.y * B.x;
    }
    return a;
}

template <class T>
struct Diagram {
    std::vector<Term<T>> terms;
    std::vector<Poly<T>> cells;  // parallel to terms; empty when the term never wins
    T x0, x1, y0, y1;
};

template <class T>
Diagram<T> max_diagram(const std::vector<Term<T>>& terms, T x0, T x1, T y0, T y1, const T& eps, const T& peps) {
    Diagram<T> D{terms, std::vector<Poly<T>>(terms.size()), x0, x1, y0, y1};
    const T min_area = peps * peps;
    for (size_t J = 0; J < terms.size(); ++J) {
        Poly<T> P;
        P.p = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        P.tag = {-1, -1, -1, -1};
        // Clip first against the terms that beat J at the box center.
        std::vector<size_t> order(terms.size());
        std::iota(order.begin(), order.end(), 0);
        T cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
        std::vector<T> val(terms.size());
        for (size_t i = 0; i < terms.size(); ++i) val[i] = terms[i].at(cx, cy);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return val[a] > val[b]; });
        for (size_t K : order) {
            if (K == J) continue;
            P = clip(P, terms[J], terms[K], int(K), eps, peps);
            if (P.p.empty()) break;
        }
        if (P.p.empty() || area2(P) <= min_area) continue;
        D.cells[J] = std::move(P);
    }
    return D;
}

struct Cluster {
    double x = 0, y = 0;
    std::string xs, ys;
    bool on_box = false;
};

struct RawEdge {
    int u, v;
    int J, K;  // term indices on either side
};

// Converts the diagram into plot cells of every dimension.
template <class T>
void assemble(const Diagram<T>& D, const T& peps, ContourPlot& C, bool upward_black) {
    // Cluster polygon vertices.
    std::vector<Pt<T>> reps;
    std::vector<Cluster> cl;
    auto find_or_add = [&](const Pt<T>& q) {
        for (size_t i = 0; i < reps.size(); ++i)
            if (same_point(reps[i], q, peps)) return int(i);
        reps.push_back(q);
        Cluster c;
        c.x = to_d(q.x), c.y = to_d(q.y);
        c.xs = to_s(q.x), c.ys = to_s(q.y);
        c.on_box = absd(T(q.x - D.x0)) <= peps || absd(T(q.x - D.x1)) <= peps ||
                   absd(T(q.y - D.y0)) <= peps || absd(T(q.y - D.y1)) <= peps;
        cl.push_back(c);
        return int(reps.size()) - 1;
    };
    std::vector<std::vector<int>> ids(D.cells.size());
    for (size_t J = 0; J < D.cells.size(); ++J)
        for (auto& q : D.cells[J].p) ids[J].push_back(find_or_add(q));

    // Interior edges, split at any cluster lying on them.
    std::set<std::array<int, 4>> seen;
    std::vector<RawEdge> raw;
    for (size_t J = 0; J < D.cells.size(); ++J) {
        const auto& P = D.cells[J];
        for (size_t i = 0; i < P.p.size(); ++i) {
            int K = P.tag[i];
            if (K < 0) continue;
            int u = ids[J][i], v = ids[J][(i + 1) % P.p.size()];
            if (u == v) continue;
            const auto &A = reps[u], &B = reps[v];
            T dx = B.x - A.x, dy = B.y - A.y;
            T len2 = dx * dx + dy * dy;
            std::vector<std::pair<T, int>> on;
            for (size_t w = 0; w < reps.size(); ++w) {
                if (int(w) == u || int(w) == v) continue;
                T qx = reps[w].x - A.x, qy = reps[w].y - A.y;
                T crs = dx * qy - dy * qx;
                T dot = dx * qx + dy * qy;
                if (absd(crs) <= peps * (absd(dx) + absd(dy)) && dot > 0 && dot < len2) on.push_back({dot, int(w)});
            }
            std::sort(on.begin(), on.end(), [](auto& a, auto& b) { return a.first < b.first; });
            std::vector<int> chain{u};
            for (auto& [d, w] : on) chain.push_back(w);
            chain.push_back(v);
            for (size_t s = 0; s + 1 < chain.size(); ++s) {
                int a = chain[s], b = chain[s + 1];
                std::array<int, 4> key{std::min(int(J), K), std::max(int(J), K), std::min(a, b), std::max(a, b)};
                if (seen.insert(key).second) raw.push_back({a, b, int(J), K});
            }
        }
    }

    // Contract phase-shift edges (regions differing in two elements) into crossings.
    std::vector<int> parent(cl.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    const std::vector<Cluster> before = cl;
    std::vector<bool> phase(raw.size(), false);
    std::vector<bool> crossing(cl.size(), false);
    std::vector<Pt<T>> mid(cl.size());
    for (size_t e = 0; e < raw.size(); ++e) {
        Subset d = D.terms[raw[e].J].label ^ D.terms[raw[e].K].label;
        if (popcount(d) != 4) continue;
        phase[e] = true;
        ++C.phase_walls;
        int a = root(raw[e].u), b = root(raw[e].v);
        if (cl[a].on_box || cl[b].on_box) {
            C.warnings.push_back("phase-shift edge reaches the box boundary");
            continue;
        }
        Pt<T> m{(reps[a].x + reps[b].x) / 2, (reps[a].y + reps[b].y) / 2};
        parent[b] = a;
        reps[a] = m;
        cl[a].x = to_d(m.x), cl[a].y = to_d(m.y), cl[a].xs = to_s(m.x), cl[a].ys = to_s(m.y);
        crossing[a] = true;
    }

    // Emit vertices that carry at least one surviving edge.
    std::vector<int> vid(cl.size(), -1);
    auto vertex_of = [&](int c) {
        c = root(c);
        if (vid[c] < 0) {
            PlotVertex pv;
            pv.x = cl[c].x, pv.y = cl[c].y, pv.xs = cl[c].xs, pv.ys = cl[c].ys;
            pv.kind = cl[c].on_box ? VKind::Boundary : crossing[c] ? VKind::Cross : VKind::Black;
            vid[c] = int(C.vertices.size());
            C.vertices.push_back(pv);
        }
        return vid[c];
    };
    for (size_t e = 0; e < raw.size(); ++e) {
        if (phase[e]) continue;
        PlotEdge pe;
        pe.a = vertex_of(raw[e].u);
        pe.b = vertex_of(raw[e].v);
        Subset L1 = D.terms[raw[e].J].label, L2 = D.terms[raw[e].K].label;
        auto d = elements(L1 ^ L2);
        if (d.size() != 2) {
            C.warnings.push_back("wall between regions that are not adjacent in the exchange sense");
            continue;
        }
        pe.type = {d[0], d[1]};
        pe.p = {before[raw[e].u].x, before[raw[e].u].y};
        pe.q = {before[raw[e].v].x, before[raw[e].v].y};
        pe.left = L1, pe.right = L2;
        pe.ray = C.vertices[pe.a].kind == VKind::Boundary || C.vertices[pe.b].kind == VKind::Boundary;
        int id = int(C.edges.size());
        C.edges.push_back(pe);
        C.vertices[pe.a].edges.push_back(id);
        C.vertices[pe.b].edges.push_back(id);
    }
    // Regions meeting at each vertex.
    for (auto& v : C.vertices) {
        std::set<Subset> labs;
        for (int e : v.edges) labs.insert(C.edges[e].left), labs.insert(C.edges[e].right);
        v.regions.assign(labs.begin(), labs.end());
    }
    // Colours from the direction of the edges.
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        auto& pv = C.vertices[v];
        if (pv.kind == VKind::Boundary) continue;
        const int deg = int(pv.edges.size());
        if (pv.kind == VKind::Cross) {
            if (deg != 4) C.warnings.push_back("crossing with " + std::to_string(deg) + " edges");
            continue;
        }
        if (deg == 4) {
            // An exact limit plot has its X-crossings as genuine four-valent points.
            std::set<std::array<int, 2>> types;
            for (int e : pv.edges) types.insert(C.edges[e].type);
            if (types.size() == 2) {
                pv.kind = VKind::Cross;
                continue;
            }
        }
        if (deg != 3) {
            C.warnings.push_back("vertex of degree " + std::to_string(deg) + " at (" + pv.xs + ", " + pv.ys + ")");
            pv.kind = VKind::Black;
            continue;
        }
        int down = 0;
        for (int e : pv.edges) {
            const auto& pe = C.edges[e];
            const auto& o = C.vertices[pe.a == int(v) ? pe.b : pe.a];
            down += o.y < pv.y;
        }
        bool unique_down = down == 1, unique_up = down == 2;
        if (upward_black) pv.kind = unique_up ? VKind::Black : VKind::White;
        else pv.kind = unique_down ? VKind::Black : VKind::White;
        if (!unique_down && !unique_up) C.warnings.push_back("trivalent vertex with all edges on one side");
    }
    // Regions.
    for (size_t J = 0; J < D.cells.size(); ++J) {
        const auto& P = D.cells[J];
        if (P.p.empty()) continue;
        PlotRegion R;
        R.label = D.terms[J].label;
        double sx = 0, sy = 0;
        for (auto& q : P.p) {
            R.polygon.push_back({to_d(q.x), to_d(q.y)});
            sx += to_d(q.x), sy += to_d(q.y);
        }
        R.sample = {sx / P.p.size(), sy / P.p.size()};
        R.bounded = std::none_of(P.tag.begin(), P.tag.end(), [](int t) { return t < 0; });
        C.regions.push_back(R);
    }
    C.box = {to_d(D.x0), to_d(D.x1), to_d(D.y0), to_d(D.y1)};
}

// Points where three terms tie and nobody beats them.
std::vector<std::array<double, 2>> envelope_vertices(const std::vector<Term<double>>& terms, double eps) {
    std::vector<std::array<double, 2>> out;
    const size_t m = terms.size();
    std::vector<std::vector<size_t>> nb(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (i != j && popcount(terms[i].label ^ terms[j].label) == 2) nb[i].push_back(j);
    for (size_t i = 0; i < m; ++i)
        for (size_t p = 0; p < nb[i].size(); ++p)
            for (size_t q = p + 1; q < nb[i].size(); ++q) {
                size_t j = nb[i][p], l = nb[i][q];
                double a1 = terms[i].a - terms[j].a, b1 = terms[i].b - terms[j].b, c1 = terms[j].c - terms[i].c;
                double a2 = terms[i].a - terms[l].a, b2 = terms[i].b - terms[l].b, c2 = terms[l].c - terms[i].c;
                double det = a1 * b2 - a2 * b1;
                if (std::abs(det) < 1e-14 * (std::abs(a1 * b2) + std::abs(a2 * b1) + 1e-300)) continue;
                double x = (c1 * b2 - c2 * b1) / det, y = (a1 * c2 - a2 * c1) / det;
                double fi = terms[i].at(x, y);
                double scale = eps * (1 + std::abs(fi));
                bool top = true;
                for (size_t r = 0; r < m && top; ++r)
                    if (terms[r].at(x, y) > fi + scale) top = false;
                if (top) out.push_back({x, y});
            }
    return out;
}

}  // namespace

int ContourPlot::count(VKind kind) const {
    int c = 0;
    for (auto& v : vertices) c += v.kind == kind;
    return c;
}

const PlotRegion* ContourPlot::region(Subset label) const {
    for (auto& r : regions)
        if (r.label == label) return &r;
    return nullptr;
}

ContourPlot contour_at_t(const GrassmannPoint& A, const KappaParams& kappa, const Times& tm, const PlotOptions& opt) {
    if (kappa.n() != A.n) throw Error("InvalidKappa", "kappa length differs from n");
    const double tol = opt.tol > 0 ? opt.tol : tolerance();
    std::vector<Term<double>> terms;
    for (auto& [J, d] : A.plucker) {
        if (!(d > 0)) continue;
        Term<double> T{J, 0, 0, std::log(d * k_factor(J, kappa))};
        for (int j : elements(J)) {
            double kj = kappa.values[j - 1];
            T.a += kj;
            T.b += kj * kj;
            T.c += kj * kj * kj * tm.t;
            double pw = kj * kj * kj;
            for (double h : tm.higher) {
                pw *= kj;
                T.c += pw * h;
            }
        }
        terms.push_back(T);
    }
    if (terms.empty()) throw Error("InvalidPoint", "no positive Pluecker coordinate");
    ContourPlot C;
    C.k = A.k, C.n = A.n, C.frame = Frame::Finite, C.times = tm;

    double cmax = 1, amax = 1;
    for (auto& T : terms) {
        cmax = std::max(cmax, std::abs(T.c));
        amax = std::max({amax, std::abs(T.a), std::abs(T.b)});
    }
    std::array<double, 4> box;
    if (opt.box) {
        box = *opt.box;
    } else {
        auto pts = envelope_vertices(terms, tol);
        if (pts.empty()) {
            // No vertex: centre on the walls crossing y = 0.
            double lo = 1e300, hi = -1e300;
            for (auto& T1 : terms)
                for (auto& T2 : terms)
                    if (popcount(T1.label ^ T2.label) == 2 && T1.a != T2.a) {
                        double x = (T2.c - T1.c) / (T1.a - T2.a);
                        lo = std::min(lo, x), hi = std::max(hi, x);
                    }
            if (lo > hi) lo = hi = 0;
            box = {lo - 5, hi + 5, -5, 5};
        } else {
            double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
            for (auto& p : pts) {
                x0 = std::min(x0, p[0]), x1 = std::max(x1, p[0]);
                y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
            }
            double ext = std::max({x1 - x0, y1 - y0, 1.0});
            double mg = 0.25 * ext + 1;
            box = {x0 - mg, x1 + mg, y0 - mg, y1 + mg};
        }
    }
    double span = std::max({std::abs(box[0]), std::abs(box[1]), std::abs(box[2]), std::abs(box[3]), 1.0});
    // Ties are decided in log space with the user tolerance, but never below
    // what double rounding of the affine values can resolve.
    const double ulp = std::numeric_limits<double>::epsilon();
    double eps = std::max(tol, 256 * ulp * (cmax + 4 * amax * span));
    double peps = std::max(tol, 4096 * ulp * span);
    auto D = max_diagram(terms, box[0], box[1], box[2], box[3], eps, peps);
    assemble(D, peps, C, false);
    return C;
}

namespace {
template <class F>
void for_limit_points(const KappaParams& kappa, F&& visit) {
    const int n = kappa.n();
    const auto& q = kappa.exact;
    for (int i = 0; i < n; ++i)
        for (int l = i + 1; l < n; ++l)
            for (int m = l + 1; m < n; ++m)
                visit(q[i] * q[l] + q[i] * q[m] + q[l] * q[m], Rational(-(q[i] + q[l] + q[m])));
    // Pairwise intersections of the lines x + s y + p = 0.
    std::vector<std::pair<Rational, Rational>> lines;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            lines.push_back({q[i] + q[j], q[i] * q[i] + q[i] * q[j] + q[j] * q[j]});
    for (auto& [sl, off] : lines) visit(Rational(-off), Rational(0));
    for (size_t a = 0; a < lines.size(); ++a)
        for (size_t b = a + 1; b < lines.size(); ++b) {
            if (lines[a].first == lines[b].first) continue;
            Rational y = -(lines[a].second - lines[b].second) / (lines[a].first - lines[b].first);
            Rational x = -lines[a].second - lines[a].first * y;
            visit(x, y);
        }
}
}  // namespace

ContourPlot contour_at_infinity(const PositroidMatroid& M, const KappaParams& kappa, Frame sign,
                                const PlotOptions& opt) {
    if (kappa.n() != M.n) throw Error("InvalidKappa", "kappa length differs from n");
    if (sign == Frame::Finite) throw Error("InvalidFrame", "limit plot needs a sign");
    const Rational s = sign == Frame::PlusInfinity ? 1 : -1;
    std::vector<Term<Rational>> terms;
    for (Subset J : M.bases) {
        Term<Rational> T{J, 0, 0, 0};
        for (int j : elements(J)) {
            const Rational& kj = kappa.exact[j - 1];
            T.a += kj;
            T.b += kj * kj;
            T.c += kj * kj * kj;
        }
        T.a *= s, T.b *= s, T.c *= s;
        terms.push_back(T);
    }
    ContourPlot C;
    C.k = M.k, C.n = M.n, C.frame = sign;
    Rational x0, x1, y0, y1;
    if (opt.box) {
        x0 = (*opt.box)[0], x1 = (*opt.box)[1], y0 = (*opt.box)[2], y1 = (*opt.box)[3];
    } else {
        bool first = true;
        for_limit_points(kappa, [&](const Rational& x, const Rational& y) {
            if (first) x0 = x1 = x, y0 = y1 = y, first = false;
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, y), y1 = std::max(y1, y);
        });
        if (first) x0 = x1 = y0 = y1 = 0;
        Rational ext = std::max({Rational(x1 - x0), Rational(y1 - y0), Rational(1)});
        Rational mg = ext / 4 + 1;
        x0 -= mg, x1 += mg, y0 -= mg, y1 += mg;
    }
    auto D = max_diagram<Rational>(terms, x0, x1, y0, y1, Rational(0), Rational(0));
    // In the (x/t, y/t) frame of t -> -infinity the picture is the actual one
    // turned by a half turn, so "down" in the real plane is "up" here.
    assemble<Rational>(D, Rational(0), C, sign == Frame::MinusInfinity);
    return C;
}

}  // namespace kplab

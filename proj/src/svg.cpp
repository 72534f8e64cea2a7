#include "kplab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace kplab {

namespace {

constexpr double kCanvas = 800, kPad = 40;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

struct View {
    double x0, x1, y0, y1, scale;
    View(double xmin, double xmax, double ymin, double ymax) : x0(xmin), x1(xmax), y0(ymin), y1(ymax) {
        double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
        scale = (kCanvas - 2 * kPad) / std::max(w, h);
    }
    double X(double x) const { return kPad + (x - x0) * scale; }
    double Y(double y) const { return kCanvas - kPad - (y - y0) * scale; }
};

std::string header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kCanvas) + "\" height=\"" + num(kCanvas) +
           "\" viewBox=\"0 0 " + num(kCanvas) + " " + num(kCanvas) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string line(double ax, double ay, double bx, double by, const char* stroke, double width) {
    return "<line x1=\"" + num(ax) + "\" y1=\"" + num(ay) + "\" x2=\"" + num(bx) + "\" y2=\"" + num(by) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

std::string text(double x, double y, const std::string& s, int size, const char* fill) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
           "\" font-family=\"sans-serif\" text-anchor=\"middle\" fill=\"" + fill + "\">" + s + "</text>\n";
}

std::string dot(double x, double y, VKind k) {
    if (k == VKind::Cross) return "";
    const char* fill = k == VKind::White ? "white" : "black";
    double r = k == VKind::Boundary ? 2 : 5;
    return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
}

std::string pair_label(std::array<int, 2> t) {
    return "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "]";
}

}  // namespace

std::string plot_svg(const ContourPlot& C) {
    View v(C.box[0], C.box[1], C.box[2], C.box[3]);
    std::string s = header();
    s += "<rect x=\"" + num(v.X(C.box[0])) + "\" y=\"" + num(v.Y(C.box[3])) + "\" width=\"" +
         num((C.box[1] - C.box[0]) * v.scale) + "\" height=\"" + num((C.box[3] - C.box[2]) * v.scale) +
         "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
    for (const auto& E : C.edges) {
        const auto& A = C.vertices[E.a];
        const auto& B = C.vertices[E.b];
        s += line(v.X(A.x), v.Y(A.y), v.X(B.x), v.Y(B.y), "#1f4e9c", 2);
    }
    for (const auto& E : C.edges) {
        const auto& A = C.vertices[E.a];
        const auto& B = C.vertices[E.b];
        s += text(v.X((A.x + B.x) / 2), v.Y((A.y + B.y) / 2) - 4, pair_label(E.type), 11, "#1f4e9c");
    }
    for (const auto& P : C.vertices) s += dot(v.X(P.x), v.Y(P.y), P.kind);
    for (const auto& R : C.regions)
        s += text(v.X(R.sample[0]), v.Y(R.sample[1]), subset_string(R.label, C.n), 14, "#9c1f1f");
    s += "</svg>\n";
    return s;
}

std::string graph_svg(const PlabicGraph& G) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& P : G.V) {
        if (first) {
            xmin = xmax = P.x;
            ymin = ymax = P.y;
            first = false;
        }
        xmin = std::min(xmin, P.x), xmax = std::max(xmax, P.x);
        ymin = std::min(ymin, P.y), ymax = std::max(ymax, P.y);
    }
    View v(xmin, xmax, ymin, ymax);
    std::string s = header();
    TripLabeling T = compute_trips(G);
    for (size_t e = 0; e < G.E.size(); ++e) {
        const auto& A = G.V[G.E[e].u];
        const auto& B = G.V[G.E[e].v];
        s += line(v.X(A.x), v.Y(A.y), v.X(B.x), v.Y(B.y), "black", 1.5);
    }
    for (size_t e = 0; e < G.E.size(); ++e) {
        auto lab = T.edge_label(int(e));
        if (!lab[0]) continue;
        const auto& A = G.V[G.E[e].u];
        const auto& B = G.V[G.E[e].v];
        s += text(v.X((A.x + B.x) / 2), v.Y((A.y + B.y) / 2) - 3, pair_label(lab), 10, "#1f4e9c");
    }
    for (const auto& P : G.V) {
        s += dot(v.X(P.x), v.Y(P.y), P.kind);
        if (P.kind == VKind::Boundary) s += text(v.X(P.x), v.Y(P.y) - 8, std::to_string(P.label), 13, "black");
    }
    for (size_t f = 0; f < T.faces.size(); ++f) {
        // Half-edges past the real edges are boundary arcs; they add no corners.
        double cx = 0, cy = 0, m = 0;
        for (int h : T.faces[f].halfedges) {
            if (h / 2 >= int(G.E.size())) continue;
            const auto& E = G.E[h / 2];
            const auto& P = G.V[h % 2 ? E.v : E.u];
            cx += P.x, cy += P.y, m += 1;
        }
        if (m == 0) continue;
        s += text(v.X(cx / m), v.Y(cy / m), subset_string(T.face_labels[f], G.n), 13, "#9c1f1f");
    }
    s += "</svg>\n";
    return s;
}

}  // namespace kplab

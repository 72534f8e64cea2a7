#include "kplab/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kplab {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error("SchemaError", what); }

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        schema(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

std::string color_name(VKind k) {
    switch (k) {
        case VKind::Black: return "B";
        case VKind::White: return "W";
        case VKind::Cross: return "X";
        case VKind::Boundary: return "boundary";
    }
    return "?";
}

VKind color_of(const std::string& s) {
    if (s == "B" || s == "BLACK") return VKind::Black;
    if (s == "W" || s == "WHITE") return VKind::White;
    if (s == "X") return VKind::Cross;
    if (s == "boundary") return VKind::Boundary;
    schema("unknown vertex color \"" + s + "\"");
}

std::string frame_name(Frame f) {
    switch (f) {
        case Frame::Finite: return "finite";
        case Frame::PlusInfinity: return "plus";
        case Frame::MinusInfinity: return "minus";
    }
    return "?";
}

Frame frame_of(const std::string& s) {
    if (s == "finite") return Frame::Finite;
    if (s == "plus") return Frame::PlusInfinity;
    if (s == "minus") return Frame::MinusInfinity;
    schema("unknown frame \"" + s + "\"");
}

Json pair_json(std::array<double, 2> p) { return Json::array({p[0], p[1]}); }

std::array<double, 2> pair_of(const Json& j) {
    if (!j.is_array() || j.size() != 2) schema("expected a coordinate pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json rational_json(const Rational& q) { return rational_string(q); }

Rational rational_of(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    schema("expected a rational as string or integer");
}

}  // namespace

Json subset_json(Subset s) { return elements(s); }

Subset subset_from_json(const Json& j) {
    if (!j.is_array()) schema("subset must be an array of indices");
    std::vector<int> e;
    for (const auto& x : j) {
        int i = x.get<int>();
        if (i < 1 || i > 32) schema("subset index out of range");
        e.push_back(i);
    }
    return subset_from(e);
}

// ------------------------------------------------------------- positroid

Json to_json(const Derangement& pi) { return Json{{"n", pi.n}, {"images", pi.images}}; }

Json to_json(const LeDiagram& L) {
    Json fill = Json::array();
    for (const auto& row : L.fill) {
        Json r = Json::array();
        for (bool b : row) r.push_back(b ? "+" : "0");
        fill.push_back(r);
    }
    return Json{{"k", L.k}, {"n", L.n}, {"rows", L.rows}, {"fill", fill}};
}

Json to_json(const GrassmannNecklace& I) {
    Json s = Json::array();
    for (Subset x : I.subsets) s.push_back(subset_json(x));
    return Json{{"k", I.k}, {"n", I.n}, {"subsets", s}};
}

Json to_json(const PositroidMatroid& M) {
    Json s = Json::array();
    for (Subset x : M.bases) s.push_back(subset_json(x));
    return Json{{"k", M.k}, {"n", M.n}, {"bases", s}};
}

Derangement derangement_from_json(const Json& j) {
    auto pi = Derangement::from(get<std::vector<int>>(j, "images"));
    if (j.contains("n") && j.at("n").get<int>() != pi.n) schema("n does not match images");
    return pi;
}

LeDiagram le_from_json(const Json& j) {
    LeDiagram L;
    L.k = get<int>(j, "k");
    L.n = get<int>(j, "n");
    L.rows = get<std::vector<int>>(j, "rows");
    const Json& f = need(j, "fill");
    if (!f.is_array() || f.size() != L.rows.size()) schema("fill must have one row per row length");
    for (size_t r = 0; r < f.size(); ++r) {
        if (!f[r].is_array() || int(f[r].size()) != L.rows[r]) schema("fill row length mismatch");
        std::vector<bool> row;
        for (const auto& c : f[r]) {
            std::string s = c.is_string() ? c.get<std::string>() : c.dump();
            if (s == "+" || s == "1") row.push_back(true);
            else if (s == "0") row.push_back(false);
            else schema("fill entries must be \"0\" or \"+\"");
        }
        L.fill.push_back(row);
    }
    L.validate();
    return L;
}

GrassmannNecklace necklace_from_json(const Json& j) {
    GrassmannNecklace I;
    I.k = get<int>(j, "k");
    I.n = get<int>(j, "n");
    for (const auto& s : need(j, "subsets")) I.subsets.push_back(subset_from_json(s));
    if (int(I.subsets.size()) != I.n) schema("necklace must list n subsets");
    for (Subset s : I.subsets)
        if (popcount(s) != I.k) schema("necklace subsets must have size k");
    return I;
}

PositroidMatroid matroid_from_json(const Json& j) {
    PositroidMatroid M;
    M.k = get<int>(j, "k");
    M.n = get<int>(j, "n");
    for (const auto& s : need(j, "bases")) M.bases.push_back(subset_from_json(s));
    std::sort(M.bases.begin(), M.bases.end());
    return M;
}

// ---------------------------------------------------------------- graphs

Json to_json(const PlabicGraph& G) {
    Json boundary = Json::array(), bverts = Json::array();
    for (int b : G.boundary) {
        boundary.push_back(G.V[b].label);
        bverts.push_back(b);
    }
    Json verts = Json::array(), rotation = Json::object(), xcross = Json::array();
    for (size_t v = 0; v < G.V.size(); ++v) {
        const auto& P = G.V[v];
        Json o{{"id", int(v)}, {"color", color_name(P.kind)}};
        if (P.kind == VKind::Boundary) o["label"] = P.label;
        o["xy"] = Json::array({P.x, P.y});
        verts.push_back(o);
        rotation[std::to_string(v)] = P.rot;
        if (P.kind == VKind::Cross && P.rot.size() == 4) {
            xcross.push_back(Json::array({P.rot[0], P.rot[2]}));
            xcross.push_back(Json::array({P.rot[1], P.rot[3]}));
        }
    }
    Json edges = Json::array(), tags = Json::array();
    bool any_tag = false;
    for (const auto& e : G.E) {
        edges.push_back(Json::array({e.u, e.v}));
        tags.push_back(Json::array({e.tag[0], e.tag[1]}));
        any_tag = any_tag || e.tag[0] || e.tag[1];
    }
    Json j{{"n", G.n},          {"boundary", boundary}, {"boundary_vertices", bverts},
           {"vertices", verts}, {"edges", edges},       {"rotation", rotation},
           {"xcrossings", xcross}};
    if (any_tag) j["edge_types"] = tags;
    return j;
}

PlabicGraph graph_from_json(const Json& j) {
    PlabicGraph G;
    G.n = get<int>(j, "n");
    const Json& verts = need(j, "vertices");
    G.V.resize(verts.size());
    for (const auto& o : verts) {
        int id = get<int>(o, "id");
        if (id < 0 || id >= int(G.V.size())) schema("vertex id out of range");
        auto& P = G.V[id];
        P.kind = color_of(get<std::string>(o, "color"));
        if (o.contains("label")) P.label = o.at("label").get<int>();
        if (o.contains("xy")) {
            auto xy = pair_of(o.at("xy"));
            P.x = xy[0];
            P.y = xy[1];
        }
    }
    for (const auto& e : need(j, "edges")) {
        if (!e.is_array() || e.size() != 2) schema("edges must be vertex pairs");
        PEdge E;
        E.u = e[0].get<int>();
        E.v = e[1].get<int>();
        if (E.u < 0 || E.v < 0 || E.u >= int(G.V.size()) || E.v >= int(G.V.size()))
            schema("edge endpoint out of range");
        G.E.push_back(E);
    }
    if (j.contains("edge_types")) {
        const Json& t = j.at("edge_types");
        if (t.size() != G.E.size()) schema("edge_types length mismatch");
        for (size_t e = 0; e < G.E.size(); ++e) G.E[e].tag = {t[e][0].get<int>(), t[e][1].get<int>()};
    }
    const Json& rot = need(j, "rotation");
    for (size_t v = 0; v < G.V.size(); ++v) {
        auto key = std::to_string(v);
        if (!rot.contains(key)) schema("rotation missing for vertex " + key);
        G.V[v].rot = rot.at(key).get<std::vector<int>>();
        for (int e : G.V[v].rot)
            if (e < 0 || e >= int(G.E.size()) || (G.E[e].u != int(v) && G.E[e].v != int(v)))
                throw Error("MalformedEmbedding", "rotation of vertex " + key + " lists a foreign edge");
    }
    if (j.contains("boundary_vertices")) {
        G.boundary = j.at("boundary_vertices").get<std::vector<int>>();
    } else {
        // Plain format: boundary vertices carry labels; order follows "boundary".
        auto labels = get<std::vector<int>>(j, "boundary");
        for (int l : labels)
            for (size_t v = 0; v < G.V.size(); ++v)
                if (G.V[v].kind == VKind::Boundary && G.V[v].label == l) G.boundary.push_back(int(v));
    }
    if (int(G.boundary.size()) != G.n) schema("boundary must list n vertices");
    G.validate();
    return G;
}

// ----------------------------------------------------------------- plots

Json to_json(const ContourPlot& C) {
    Json verts = Json::array();
    for (size_t v = 0; v < C.vertices.size(); ++v) {
        const auto& P = C.vertices[v];
        Json o{{"id", int(v)}, {"xy", Json::array({P.x, P.y})}, {"color", color_name(P.kind)}};
        if (!P.xs.empty()) o["exact"] = Json::array({P.xs, P.ys});
        o["edges"] = P.edges;
        Json regs = Json::array();
        for (Subset s : P.regions) regs.push_back(subset_json(s));
        o["regions"] = regs;
        verts.push_back(o);
    }
    Json segs = Json::array(), rays = Json::array();
    for (size_t e = 0; e < C.edges.size(); ++e) {
        const auto& E = C.edges[e];
        Json o{{"id", int(e)},
               {"type", Json::array({E.type[0], E.type[1]})},
               {"p", pair_json(E.p)},
               {"q", pair_json(E.q)},
               {"a", E.a},
               {"b", E.b},
               {"regions", Json::array({subset_json(E.left), subset_json(E.right)})}};
        (E.ray ? rays : segs).push_back(o);
    }
    Json regions = Json::array();
    for (const auto& R : C.regions) {
        Json poly = Json::array();
        for (const auto& p : R.polygon) poly.push_back(pair_json(p));
        regions.push_back(Json{{"label", subset_json(R.label)},
                               {"sample", pair_json(R.sample)},
                               {"bounded", R.bounded},
                               {"polygon", poly}});
    }
    Json times{{"x", C.times.x}, {"y", C.times.y}, {"t", C.times.t}, {"higher", C.times.higher}};
    return Json{{"frame", frame_name(C.frame)},
                {"k", C.k},
                {"n", C.n},
                {"times", times},
                {"box", C.box},
                {"vertices", verts},
                {"segments", segs},
                {"rays", rays},
                {"regions", regions},
                {"warnings", C.warnings},
                {"phase_walls", C.phase_walls}};
}

ContourPlot plot_from_json(const Json& j) {
    ContourPlot C;
    C.frame = frame_of(get<std::string>(j, "frame"));
    C.k = get<int>(j, "k");
    C.n = get<int>(j, "n");
    if (j.contains("times")) {
        const Json& t = j.at("times");
        C.times.x = get<double>(t, "x");
        C.times.y = get<double>(t, "y");
        C.times.t = get<double>(t, "t");
        if (t.contains("higher")) C.times.higher = t.at("higher").get<std::vector<double>>();
    }
    if (j.contains("box")) C.box = j.at("box").get<std::array<double, 4>>();
    const Json& verts = need(j, "vertices");
    C.vertices.resize(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        const Json& o = verts[i];
        int id = o.contains("id") ? o.at("id").get<int>() : int(i);
        if (id < 0 || id >= int(C.vertices.size())) schema("plot vertex id out of range");
        auto& P = C.vertices[id];
        auto xy = pair_of(need(o, "xy"));
        P.x = xy[0];
        P.y = xy[1];
        P.kind = color_of(get<std::string>(o, "color"));
        if (o.contains("exact")) {
            P.xs = o.at("exact")[0].get<std::string>();
            P.ys = o.at("exact")[1].get<std::string>();
        }
        if (o.contains("edges")) P.edges = o.at("edges").get<std::vector<int>>();
        if (o.contains("regions"))
            for (const auto& s : o.at("regions")) P.regions.push_back(subset_from_json(s));
    }
    std::vector<std::pair<int, PlotEdge>> edges;
    auto read_edges = [&](const char* key, bool ray) {
        if (!j.contains(key)) return;
        for (const Json& o : j.at(key)) {
            PlotEdge E;
            E.ray = ray;
            auto ty = need(o, "type");
            E.type = {ty[0].get<int>(), ty[1].get<int>()};
            E.p = pair_of(need(o, "p"));
            E.q = pair_of(need(o, "q"));
            E.a = o.value("a", -1);
            E.b = o.value("b", -1);
            if (o.contains("regions")) {
                E.left = subset_from_json(o.at("regions")[0]);
                E.right = subset_from_json(o.at("regions")[1]);
            }
            int id = o.contains("id") ? o.at("id").get<int>() : int(edges.size());
            edges.emplace_back(id, E);
        }
    };
    read_edges("segments", false);
    read_edges("rays", true);
    C.edges.resize(edges.size());
    std::vector<bool> seen(edges.size(), false);
    for (auto& [id, E] : edges) {
        if (id < 0 || id >= int(edges.size()) || seen[id]) schema("plot edge ids must be a permutation");
        seen[id] = true;
        C.edges[id] = E;
    }
    for (const auto& E : C.edges)
        if (E.a >= int(C.vertices.size()) || E.b >= int(C.vertices.size())) schema("edge endpoint out of range");
    for (const Json& o : need(j, "regions")) {
        PlotRegion R;
        R.label = subset_from_json(need(o, "label"));
        if (o.contains("sample")) R.sample = pair_of(o.at("sample"));
        R.bounded = o.value("bounded", true);
        if (o.contains("polygon"))
            for (const auto& p : o.at("polygon")) R.polygon.push_back(pair_of(p));
        C.regions.push_back(R);
    }
    if (j.contains("warnings")) C.warnings = j.at("warnings").get<std::vector<std::string>>();
    C.phase_walls = j.value("phase_walls", 0);
    return C;
}

// ---------------------------------------------------------------- points

Json to_json(const GrassmannPoint& A) {
    Json m = Json::array();
    if (!A.exact.empty()) {
        for (const auto& row : A.exact) {
            Json r = Json::array();
            for (const auto& q : row) r.push_back(rational_json(q));
            m.push_back(r);
        }
    } else {
        m = A.matrix;
    }
    Json pl = Json::array();
    for (const auto& [J, v] : A.plucker) {
        Json o{{"label", subset_json(J)}, {"value", v}};
        auto it = A.exact_plucker.find(J);
        if (it != A.exact_plucker.end()) o["exact"] = rational_string(it->second);
        pl.push_back(o);
    }
    return Json{{"k", A.k}, {"n", A.n}, {"exact", !A.exact.empty()}, {"matrix", m}, {"plucker", pl}};
}

GrassmannPoint point_from_json(const Json& j) {
    const Json& m = need(j, "matrix");
    if (!m.is_array() || m.empty()) schema("matrix must be a non-empty array of rows");
    bool exact = true;
    for (const auto& row : m)
        for (const auto& x : row) exact = exact && (x.is_string() || x.is_number_integer());
    GrassmannPoint A;
    if (exact) {
        QMatrix q;
        for (const auto& row : m) {
            std::vector<Rational> r;
            for (const auto& x : row) r.push_back(rational_of(x));
            q.push_back(r);
        }
        A = GrassmannPoint::from(q);
    } else {
        A = GrassmannPoint::from(m.get<DMatrix>());
    }
    if (j.contains("k") && j.at("k").get<int>() != A.k) schema("k does not match matrix");
    if (j.contains("n") && j.at("n").get<int>() != A.n) schema("n does not match matrix");
    return A;
}

Json to_json(const KappaParams& kappa) {
    Json e = Json::array();
    for (const auto& q : kappa.exact) e.push_back(rational_json(q));
    return Json{{"kappa", e}};
}

KappaParams kappa_from_json(const Json& j) {
    const Json& arr = j.is_array() ? j : need(j, "kappa");
    std::vector<Rational> q;
    for (const auto& x : arr) {
        if (x.is_number_float()) {
            q.push_back(parse_rational(x.dump()));
        } else {
            q.push_back(rational_of(x));
        }
    }
    return KappaParams::from(q);
}

// ----------------------------------------------------------------- files

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IOError", "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IOError", "cannot write " + path);
    out << text;
}

Json read_json_file(const std::string& path) {
    try {
        return Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        schema(path + ": " + e.what());
    }
}

LeDiagram cell_from_source(const std::string& source) {
    if (std::filesystem::exists(source)) {
        Json j = read_json_file(source);
        if (j.contains("fill")) return le_from_json(j);
        if (j.contains("images")) return le_from_derangement(derangement_from_json(j));
        if (j.contains("subsets")) return le_from_derangement(derangement_from_necklace(necklace_from_json(j)));
        schema(source + ": not a derangement, Le-diagram or necklace");
    }
    std::vector<int> images;
    std::stringstream ss(source);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            images.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error("ParseError", "cell source \"" + source + "\" is neither a file nor a permutation");
        }
    }
    return le_from_derangement(Derangement::from(images));
}

KappaParams kappa_from_source(const std::string& source) {
    if (!std::filesystem::exists(source)) return KappaParams::parse(source);
    std::string text = read_text_file(source);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        try {
            return kappa_from_json(Json::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            schema(source + ": " + e.what());
        }
    }
    for (char& c : text)
        if (c == '\n' || c == '\r' || c == ';') c = ',';
    return KappaParams::parse(text);
}

}  // namespace kplab

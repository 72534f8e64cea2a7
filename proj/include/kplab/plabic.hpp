#pragma once
// Generalized plabic graphs stored as rotation systems. X-crossings are
// 4-valent vertices of kind Cross whose opposite edges continue straight.

#include "kplab/common.hpp"
#include "kplab/positroid.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kplab {

enum class VKind { Boundary, Black, White, Cross };

struct PVertex {
    VKind kind = VKind::Black;
    int label = 0;         // boundary label, 0 for internal vertices
    std::vector<int> rot;  // incident edge ids, counterclockwise
    double x = 0, y = 0;   // drawing position (cosmetic)
};

struct PEdge {
    int u = -1, v = -1;
    std::array<int, 2> tag{0, 0};  // optional [i,j] type carried from a plot
};

struct PlabicGraph {
    int n = 0;
    std::vector<PVertex> V;
    std::vector<PEdge> E;
    std::vector<int> boundary;  // boundary vertex ids, counterclockwise

    int add_vertex(VKind kind, int label = 0, double x = 0, double y = 0);
    int add_edge(int u, int v);  // appends to both rotations (caller orders them)
    int other(int e, int v) const { return E[e].u == v ? E[e].v : E[e].u; }
    std::vector<int> boundary_labels() const;
    void validate() const;
    int count(VKind kind) const;
    // Removes vertices and edges flagged dead and renumbers everything.
    void compact(const std::vector<bool>& dead_v, const std::vector<bool>& dead_e);
};

struct Face {
    std::vector<int> halfedges;  // half-edge h = 2e (u->v) or 2e+1 (v->u)
    bool outer = false;
};

struct TripLabeling {
    std::vector<int> perm;                    // perm[i-1] = end label of T_i
    std::vector<std::vector<int>> trips;      // half-edges along each trip
    std::vector<std::vector<int>> edge_trips; // trip labels through each edge
    std::vector<Face> faces;                  // inner faces (outer excluded)
    std::vector<Subset> face_labels;          // parallel to faces
    bool consistent = true;                   // false if some trip is self-crossing
    std::optional<Derangement> derangement() const;
    std::array<int, 2> edge_label(int e) const;  // sorted pair, {0,0} if none
};

std::vector<Face> compute_faces(const PlabicGraph& G, bool include_outer = false);
TripLabeling compute_trips(const PlabicGraph& G);

struct ResonanceResult {
    bool ok = true;
    int witness = -1;  // failing vertex
    std::string reason;
};
ResonanceResult check_resonance(const PlabicGraph& G);
ResonanceResult check_resonance(const PlabicGraph& G, const TripLabeling& T);

// Local moves.
enum class MoveType { M1Square, M2Contract, M2Uncontract, M3Insert, M3Remove, R1Reduce };
struct Move {
    MoveType type;
    int site = -1;     // M1: any vertex of the square face (with face below); M2c/M3i: edge;
                       // M2u/M3r: vertex; R1: one of the two vertices
    int face = -1;     // M1: face index into compute_faces(G)
    int split_from = 0, split_len = 0;  // M2 uncontract: rotation slice moved to the new vertex
    VKind color = VKind::Black;          // M3 insert color
};
PlabicGraph apply_move(const PlabicGraph& G, const Move& m);
// Sites where a move applies (used for randomized move sequences).
std::vector<Move> applicable_moves(const PlabicGraph& G);

// Contract unicolored edges and drop internal degree-2 vertices until stable.
PlabicGraph m2_normal_form(const PlabicGraph& G);
// Replace each X-crossing by two straight-through edges.
PlabicGraph erase_crossings(const PlabicGraph& G);
// Deterministic code of the embedded graph with its boundary labels.
std::string planar_code(const PlabicGraph& G);
// Code after M2 normalization: equality means (M2)-equivalence.
std::string m2_key(const PlabicGraph& G);
// Code after erasing crossings and M2 normalization: equality is the
// slide-and-(M2) equivalence used for limit comparisons.
std::string slide_m2_key(const PlabicGraph& G);

// Mirror image: reverses every rotation and the boundary order.
PlabicGraph mirror(const PlabicGraph& G);
void relabel_boundary(PlabicGraph& G, const std::vector<int>& new_label_of_old);

// Constructions from a Le-diagram.
PlabicGraph build_g_minus(const LeDiagram& L);
PlabicGraph build_g_plus(const LeDiagram& L);
PlabicGraph build_hook_plabic(const LeDiagram& L);

// Label of the region of G_-(L) coming from the north-west corner of L.
Subset g_minus_northwest_label(const LeDiagram& L);

struct DestinationSets {
    Subset pivot = 0;
    std::vector<std::pair<std::pair<int, int>, Subset>> boxes;  // (row, col) -> J(b)
    std::vector<Subset> all() const;  // T(L), pivot first, duplicates removed
};
DestinationSets destination_sets(const LeDiagram& L);

// Brute-force reducedness: BFS over M1-M3 move classes looking for an R1 site.
// Only meant as a cross-check at small size.
bool reduced_by_moves(const PlabicGraph& G, int max_states = 4000);

}  // namespace kplab

#pragma once
// Soliton graphs of the totally positive part of Gr(2,n): polygon
// triangulations, the graph attached to a triangulation, flags of
// exponentials and their realization by higher times.

#include "kplab/contour.hpp"
#include "kplab/plabic.hpp"

#include <array>
#include <string>
#include <vector>

namespace kplab {

struct Triangulation {
    int n = 0;
    std::vector<std::array<int, 2>> diagonals;  // sorted pairs, sorted list

    void validate() const;  // throws InvalidTriangulation
    std::vector<std::array<int, 3>> triangles() const;
    std::string str() const;
    bool operator==(const Triangulation&) const = default;
};

// Chords {a,c} and {b,d} cross iff a<b<c<d up to relabeling.
bool chords_cross(std::array<int, 2> p, std::array<int, 2> q);

std::vector<Triangulation> enumerate_triangulations(int n);

// Black vertex per triangle, white vertex per polygon corner, one boundary
// leg per corner. Faces correspond to diagonals and polygon sides.
PlabicGraph psi_of_triangulation(const Triangulation& T);

// Insertion order i_1, ..., i_n: I_l = {i_1, ..., i_l}.
struct ExponentFlag {
    int n = 0;
    std::vector<int> order;

    // "1,2,4" or "1,2,4,3,..." ; missing indices are appended in increasing order.
    static ExponentFlag parse(const std::string& csv, int n);
    void validate() const;  // throws InvalidFlag
    std::string str() const;
};

struct FlagBuild {
    PlabicGraph graph;
    Triangulation triangulation;
    std::vector<std::array<int, 2>> added;  // bounded region label added per step
};
FlagBuild graph_from_flag(const ExponentFlag& flag);
Triangulation triangulation_of_flag(const ExponentFlag& flag);

// Every triangulation comes from some flag; this returns one (an ear
// removal order read backwards).
ExponentFlag flag_of_triangulation(const Triangulation& T);

struct Realization {
    Times times;             // x = 0, y and t3.. solved
    double gap = 0;          // gap used in the last round
    int rounds = 0;
    bool ok = false;
    ContourPlot plot;
    std::string graph_key;   // m2_key of the extracted graph
    std::string target_key;  // m2_key of graph_from_flag
};
// Solves for y, t, t4, ..., tn so that at x = 0 the first three exponents tie
// and each later one drops below its predecessor, the drops growing
// geometrically from `gap`. Gap and growth ratio double each round until the
// plot matches.
// Throws RealizationFailed when all rounds fail.
Realization realize_flag(const ExponentFlag& flag, const GrassmannPoint& A,
                         const KappaParams& kappa, double gap = 20, int max_rounds = 6);

// Random times at spatial scale about `scale`: y, t, t4, ... are drawn
// uniformly and divided by powers of max|kappa| so that every term of
// theta contributes comparably.
Times random_times(const KappaParams& kappa, Rng& rng, double scale = 1e4);

// Label of a Gr(2,n) region as a chord.
std::array<int, 2> chord_of(Subset s);

}  // namespace kplab

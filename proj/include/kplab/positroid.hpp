#pragma once
// Positroid cells and their four indexing objects: derangements, Grassmann
// necklaces, Le-diagrams and positroid matroids, with the maps among them.

#include "kplab/common.hpp"
#include "kplab/linalg.hpp"

#include <vector>

namespace kplab {

struct Derangement {
    int n = 0;
    std::vector<int> images;  // images[i-1] = pi(i)

    static Derangement from(std::vector<int> images);  // validates
    int operator()(int i) const { return images[i - 1]; }
    int k() const;  // number of excedances
    std::vector<int> excedances() const;
    std::vector<int> nonexcedances() const;
    Derangement inverse() const;
    std::string str() const;
    bool operator==(const Derangement&) const = default;
    auto operator<=>(const Derangement&) const = default;
};

struct GrassmannNecklace {
    int k = 0, n = 0;
    std::vector<Subset> subsets;  // I_1 .. I_n
    bool operator==(const GrassmannNecklace&) const = default;
};

// Le-diagram in English notation: row 0 is the top row, column 0 the left one.
struct LeDiagram {
    int k = 0, n = 0;
    std::vector<int> rows;                // weakly decreasing row lengths
    std::vector<std::vector<bool>> fill;  // fill[r][c] true for a plus

    bool plus(int r, int c) const { return fill[r][c]; }
    int col_length(int c) const;
    int num_plus() const;
    bool le_property() const;
    bool irreducible() const;
    void validate() const;
    // Border labels read from the north-east corner along the south-east border.
    std::vector<int> row_labels() const;  // label of the vertical step of each row
    std::vector<int> col_labels() const;  // label of the horizontal step of each column
    std::string str() const;
    bool operator==(const LeDiagram&) const = default;
};

struct PositroidMatroid {
    int k = 0, n = 0;
    std::vector<Subset> bases;  // sorted ascending as integers
    bool has(Subset s) const;
    bool operator==(const PositroidMatroid&) const = default;
};

struct CellClass {
    bool irreducible = false;
    bool tp_schubert = false;
    bool top_cell = false;
};

GrassmannNecklace necklace_from_matroid(const PositroidMatroid& m);
Derangement derangement_from_necklace(const GrassmannNecklace& I);
GrassmannNecklace necklace_from_derangement(const Derangement& pi);
Derangement derangement_from_le(const LeDiagram& L);
LeDiagram le_from_derangement(const Derangement& pi);
PositroidMatroid matroid_from_le(const LeDiagram& L);

// Dual objects under the relabeling j -> n+1-j.
Derangement dualize(const Derangement& pi);
PositroidMatroid dualize(const PositroidMatroid& m);
LeDiagram dualize(const LeDiagram& L);
Subset dualize(Subset s, int n);

CellClass classify_cell(const Derangement& pi);
CellClass classify_cell(const LeDiagram& L);

// Exhaustive listings used by the validation suites.
std::vector<Derangement> all_derangements(int n);
std::vector<LeDiagram> all_irreducible_le(int n);

// Largest subset when both are read as decreasing sequences.
bool lex_greater(Subset a, Subset b);
Subset lex_max(const std::vector<Subset>& family);

// Point of the cell from the Le network: one positive weight per plus box
// (row-major order) placed on the horizontal edge entering the box from the
// east. The result has an identity in the source columns and nonnegative
// maximal minors.
QMatrix le_network_matrix(const LeDiagram& L, const std::vector<Rational>& weights);
DMatrix le_network_matrix(const LeDiagram& L, const std::vector<double>& weights);
QMatrix random_cell_point(const LeDiagram& L, Rng& rng);
std::vector<std::pair<int, int>> plus_boxes(const LeDiagram& L);  // row-major

// Pipe tracing shared by the derangement map and the graph constructions.
// For each row (resp. column) the origin label of the pipe that leaves the
// diagram across its west (resp. north) side.
struct PipeEnds {
    std::vector<int> row_west;
    std::vector<int> col_north;
};
PipeEnds trace_pipes(const LeDiagram& L);

}  // namespace kplab

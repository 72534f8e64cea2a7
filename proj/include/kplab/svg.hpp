#pragma once
// Deterministic SVG drawings of contour plots and plabic graphs. Numbers are
// printed with fixed precision so equal inputs give byte-identical files.

#include "kplab/contour.hpp"
#include "kplab/plabic.hpp"

#include <string>

namespace kplab {

// x to the right, y upward; region labels at the region samples and "[i,j]"
// at the middle of every wall.
std::string plot_svg(const ContourPlot& C);

// Uses the stored vertex positions; edge and face labels come from the trips.
std::string graph_svg(const PlabicGraph& G);

}  // namespace kplab

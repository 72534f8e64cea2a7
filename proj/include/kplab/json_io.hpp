#pragma once
// JSON schemas for every object that crosses a file boundary, and readers
// for the cell and parameter sources accepted on the command line.

#include "kplab/contour.hpp"
#include "kplab/plabic.hpp"
#include "kplab/positroid.hpp"

#include <json.hpp>

#include <string>

namespace kplab {

using Json = nlohmann::ordered_json;

Json to_json(const Derangement& pi);
Json to_json(const LeDiagram& L);
Json to_json(const GrassmannNecklace& I);
Json to_json(const PositroidMatroid& M);
Json to_json(const PlabicGraph& G);
Json to_json(const ContourPlot& C);
Json to_json(const GrassmannPoint& A);
Json to_json(const KappaParams& kappa);
Json subset_json(Subset s);

Derangement derangement_from_json(const Json& j);
LeDiagram le_from_json(const Json& j);
GrassmannNecklace necklace_from_json(const Json& j);
PositroidMatroid matroid_from_json(const Json& j);
PlabicGraph graph_from_json(const Json& j);
ContourPlot plot_from_json(const Json& j);
GrassmannPoint point_from_json(const Json& j);
KappaParams kappa_from_json(const Json& j);
Subset subset_from_json(const Json& j);

// Files: throw SchemaError on malformed input.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// A cell given as "6,7,1,2,8,3,9,4,5", or a JSON file holding a derangement,
// a Le-diagram or a necklace (detected from its keys).
LeDiagram cell_from_source(const std::string& source);
// Inline "-1,-1/2,0" or a file with either that text or {"kappa": [...]}.
KappaParams kappa_from_source(const std::string& source);

}  // namespace kplab

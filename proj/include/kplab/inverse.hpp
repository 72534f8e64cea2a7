#pragma once
// Recovering the point of the Grassmannian from a labelled contour plot:
// wall types from slopes, region labels, Pluecker ratios from wall offsets,
// and full reconstruction in the time limits and for TP Gr(2,n).

#include "kplab/contour.hpp"
#include "kplab/positroid.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kplab {

struct PlotReading {
    int k = 0, n = 0;
    std::optional<Derangement> pi;        // from the rays, when they determine it
    Subset pivot = 0;                     // normalizing label (value 1)
    bool pivot_present = false;           // false: normalized to another region
    std::map<Subset, double> log_values;  // ln Delta_J - ln Delta_pivot
    std::vector<std::string> trace;       // slide repairs and other notes
    double max_cycle_error = 0;           // worst disagreement around a cycle (log space)
    int walls_read = 0;

    double value(Subset J) const;  // exp(log_values.at(J))
};

// Reads a finite-time plot. The stored edge types and region labels are
// only used as region identifiers; types are recomputed from slopes and
// labels from the wall geometry, then compared with the stored ones.
// Throws AmbiguousSlope, InconsistentRatios, LabelMismatch.
PlotReading read_plot(const ContourPlot& C, const KappaParams& kappa, const Times& tm);

// Fills in Pluecker values from three-term relations with exactly one
// unknown; coordinates outside `bases` are zero. Returns the number added.
// Notes for every derived value are appended to `trace` when given.
int plucker_closure(std::map<Subset, double>& values, int k, int n, const std::vector<Subset>& bases,
                    std::vector<std::string>* trace = nullptr);

enum class Regime { MinusInfinity, PlusInfinity };

struct Reconstruction {
    GrassmannPoint point;
    std::map<Subset, double> pluckers;  // normalized, pivot = 1
    std::vector<double> weights;        // network weights (limit route)
    double residual = 0;                // worst relative error on the input regions
    std::vector<std::string> trace;
};

// Plus-infinity is handled on the dual diagram and mapped back.
// Throws SlideMismatch, SolveFailure.
Reconstruction reconstruct_limit(const PlotReading& R, const LeDiagram& L, Regime regime);
// Plus-infinity solved directly on L, for comparison with the dual route.
Reconstruction reconstruct_limit_direct(const PlotReading& R, const LeDiagram& L, Regime regime);

// k = 2 only; region labels must be the sides and diagonals of a triangulation.
// Throws NotTriangulationLabels.
Reconstruction reconstruct_tp_anytime(const PlotReading& R);

// Monomial structure of the network minors: Delta_{J(b)} = c_b * prod_p w_p^{E[b][p]}
// with boxes and weights both in row-major plus-box order.
struct NetworkExponents {
    std::vector<Subset> labels;              // J(b)
    std::vector<Rational> coeff;             // c_b
    std::vector<std::vector<int>> exponent;  // E[b][p]
};
NetworkExponents network_exponents(const LeDiagram& L);

// Relative distance between projective Pluecker vectors after scaling the
// second to the first on their largest common coordinate.
double projective_distance(const std::map<Subset, double>& a, const std::map<Subset, double>& b);

}  // namespace kplab

#pragma once
// Tau functions of line-soliton solutions, their tropical contour plots at a
// finite time and in the two time limits, and the graphs read off from them.

#include "kplab/common.hpp"
#include "kplab/linalg.hpp"
#include "kplab/plabic.hpp"
#include "kplab/positroid.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kplab {

struct KappaParams {
    std::vector<Rational> exact;
    std::vector<double> values;

    static KappaParams from(const std::vector<Rational>& q);  // throws InvalidKappa unless increasing
    static KappaParams parse(const std::string& csv);           // "-1,-1/2,0.5"
    int n() const { return int(values.size()); }
    // All sums of p distinct parameters are distinct for 1 < p < n.
    bool generic() const;
    // Pairwise sums distinct, which is what slope reading needs.
    bool distinct_pair_sums() const;
    std::string str() const;
};

// Deterministic generic parameters for tests: sorted random rationals whose
// subset sums are all distinct.
KappaParams random_generic_kappa(int n, Rng& rng);

struct GrassmannPoint {
    int k = 0, n = 0;
    QMatrix exact;            // empty when only a floating matrix is known
    DMatrix matrix;
    std::map<Subset, double> plucker;
    std::map<Subset, Rational> exact_plucker;  // filled when exact is set

    static GrassmannPoint from(const QMatrix& a);
    static GrassmannPoint from(const DMatrix& a);
    bool is_tnn(double tol = 1e-12) const;
    std::vector<Subset> support(double tol = 1e-12) const;  // J with Delta_J > 0
    PositroidMatroid matroid(double tol = 1e-12) const;
};

// Times (x, y, t, t4, t5, ...); t4 and later default to zero.
struct Times {
    double x = 0, y = 0, t = 0;
    std::vector<double> higher;
};

// K_J = prod over l<m of (kappa_{j_m} - kappa_{j_l}).
double k_factor(Subset J, const KappaParams& kappa);
Rational k_factor_exact(Subset J, const KappaParams& kappa);
// theta_j at the given times.
double theta(int j, const KappaParams& kappa, const Times& tm);

struct TauValue {
    double tau = 0;        // may overflow to inf for extreme arguments
    double log_tau = 0;    // f_A
    Subset argmax = 0;
    double margin = 0;     // gap to the second best term
};
TauValue tau_eval(const GrassmannPoint& A, const KappaParams& kappa, const Times& tm);

// Dispersion relation and balancing for the three walls of a trivalent vertex,
// evaluated exactly.
bool dispersion_resonance_check(const KappaParams& kappa, int i, int j, int l);

struct AsymptoticData {
    std::vector<std::array<int, 2>> top;     // left to right
    std::vector<std::array<int, 2>> bottom;  // left to right
    std::vector<Subset> regions;             // counterclockwise from x << 0
    std::optional<Derangement> pi;           // set by unbounded_from_matrix
};
AsymptoticData asymptotic_solitons(const Derangement& pi, const KappaParams& kappa);
AsymptoticData unbounded_from_matrix(const GrassmannPoint& A, const KappaParams& kappa);

// ------------------------------------------------------------------ plots

enum class Frame { Finite, PlusInfinity, MinusInfinity };

struct PlotVertex {
    double x = 0, y = 0;
    std::string xs, ys;             // exact coordinates when available
    VKind kind = VKind::Black;      // Boundary marks a ray end on the box
    std::vector<int> edges;
    std::vector<Subset> regions;    // labels of the regions meeting here
};

struct PlotEdge {
    int a = -1, b = -1;
    std::array<int, 2> type{0, 0};  // [i,j] with i<j
    Subset left = 0, right = 0;     // regions on either side (unordered)
    bool ray = false;
    // Segment of the wall itself; differs from the vertex positions only
    // where a phase-shift wall was contracted into a crossing.
    std::array<double, 2> p{0, 0}, q{0, 0};
};

struct PlotRegion {
    Subset label = 0;
    std::vector<std::array<double, 2>> polygon;  // clipped to the box, ccw
    std::array<double, 2> sample{0, 0};
    bool bounded = true;
};

struct ContourPlot {
    int k = 0, n = 0;
    Frame frame = Frame::Finite;
    Times times;
    std::array<double, 4> box{0, 0, 0, 0};  // xmin, xmax, ymin, ymax
    std::vector<PlotVertex> vertices;
    std::vector<PlotEdge> edges;
    std::vector<PlotRegion> regions;
    std::vector<std::string> warnings;
    int phase_walls = 0;  // short walls between regions differing in two indices, contracted

    int count(VKind kind) const;
    int trivalent() const { return count(VKind::Black) + count(VKind::White); }
    const PlotRegion* region(Subset label) const;
};

struct PlotOptions {
    std::optional<std::array<double, 4>> box;  // otherwise chosen automatically
    double tol = -1;                           // negative: use tolerance()
};

ContourPlot contour_at_t(const GrassmannPoint& A, const KappaParams& kappa, const Times& tm,
                         const PlotOptions& opt = {});
ContourPlot contour_at_infinity(const PositroidMatroid& M, const KappaParams& kappa, Frame sign,
                                const PlotOptions& opt = {});

// Metric forgotten, topology and labels kept. Throws NonGenericPlot on a
// vertex of degree > 3 that is not an X-crossing.
PlabicGraph extract_soliton_graph(const ContourPlot& C);

// Geometric checks on a plot: slope law, adjacency law, trivalent ordering,
// argmax certification at sample points. Returns a list of problems.
std::vector<std::string> check_plot_laws(const ContourPlot& C, const KappaParams& kappa,
                                         const GrassmannPoint* A = nullptr);

enum class XCase { OneA, OneB, Two, Three };
struct XCrossingReport {
    int vertex = -1;
    std::array<int, 2> first{0, 0}, second{0, 0};
    Subset S = 0;
    XCase kind = XCase::OneA;
    Subset vanishing = 0;      // predicted zero Pluecker coordinate
    double vanishing_value = 0;
    double relation_error = 0; // relative error of the two-term identity
    bool ok = false;
};
// Requires exact Pluecker data when available (A.exact_plucker); otherwise
// uses the floating values.
std::vector<XCrossingReport> verify_xcrossings(const ContourPlot& C, const GrassmannPoint& A,
                                               const KappaParams& kappa, bool t_negative);

}  // namespace kplab

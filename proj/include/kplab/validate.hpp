#pragma once
// Batch validation: each suite runs one family of properties over many cells
// and counts checks and failures per property. Also holds a few fixtures that
// the tests share with the suites.

#include "kplab/contour.hpp"
#include "kplab/json_io.hpp"
#include "kplab/plabic.hpp"
#include "kplab/positroid.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kplab {

class Tally {
public:
    void check(const std::string& property, bool ok, const std::string& detail = "");
    void note(const std::string& key, double value) { notes_[key] = value; }
    bool pass() const;
    Json json() const;

private:
    struct Count {
        long checked = 0, failed = 0;
        std::vector<std::string> examples;  // first few failures
    };
    std::map<std::string, Count> props_;
    std::map<std::string, double> notes_;
};

// Suites: bijections, plabic, contour, gr2n, inverse, all.
// Each suite clamps nmax to what it can afford. Throws InvalidSuite.
Json run_validation(const std::string& suite, int nmax, std::uint64_t seed);

// --------------------------------------------------------------- fixtures

// Two trivalent vertices of opposite colours joined by a double edge, each
// with one boundary leg. Not reduced.
PlabicGraph bubble_graph();

// The top cell of Gr(2,n): pi(i) = i - 2 mod n.
LeDiagram top_cell_gr2n(int n);

// Labels of the unbounded regions, read by evaluating the tau function at
// `samples` points on the boundary of `box`, counterclockwise, starting from
// the region reached by going far west from the centre of the box.
std::vector<Subset> unbounded_labels_by_tau(const GrassmannPoint& A, const KappaParams& kappa,
                                            const Times& tm, const std::array<double, 4>& box,
                                            int samples = 20000);

}  // namespace kplab

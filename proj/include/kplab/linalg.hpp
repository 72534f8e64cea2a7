#pragma once
// Small dense linear algebra over exact rationals and doubles: determinants,
// ranks, Pluecker vectors and the reduced row-echelon matrix of a point.

#include "kplab/common.hpp"

#include <map>
#include <vector>

namespace kplab {

using QMatrix = std::vector<std::vector<Rational>>;
using DMatrix = std::vector<std::vector<double>>;

Rational det(QMatrix m);
double det(DMatrix m);
int rank(QMatrix m);
int rank(DMatrix m, double tol);

// Columns (1-based) of a matrix, in the order given.
QMatrix columns(const QMatrix& a, const std::vector<int>& cols);
DMatrix columns(const DMatrix& a, const std::vector<int>& cols);

// All maximal minors, keyed by column set.
std::map<Subset, Rational> pluckers(const QMatrix& a);
std::map<Subset, double> pluckers(const DMatrix& a);

DMatrix to_double(const QMatrix& a);

// Solve a square system in place by partial pivoting; throws on singularity.
std::vector<double> solve(DMatrix a, std::vector<double> b);

// Matrix with an identity in the columns of `pivot` whose maximal minors are
// proportional to the given Pluecker values (missing entries count as zero).
DMatrix matrix_from_pluckers(int k, int n, const std::map<Subset, double>& p);

}  // namespace kplab

#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "pwexp/density.hpp"
#include "pwexp/grid.hpp"
#include "pwexp/maps.hpp"

namespace pwexp {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Entry (i, j) is the fraction of cell i's Lebesgue measure mapped into cell j.
struct UlamOperator {
    UlamGrid grid;
    SparseMatrix matrix;
};

/// Exact polygon clipping per (cell, branch). Throws ResolutionTooLow when
/// a cell loses more than kEpsArea of mass outside the region.
UlamOperator build_ulam(const PiecewiseMap& m, int resolution);

struct StationaryResult {
    std::vector<double> density;  ///< per cell, integrates to 1 against `measures`
    int iterations = 0;
    double residual = 0.0;  ///< L1 change of the last step
    bool converged = false;
    bool averaged = false;  ///< switched to the lazy (averaged) chain after a plateau
};

/// Power iteration of the adjoint action on densities, starting from the
/// uniform density and renormalized to unit mass each step. If the residual
/// stalls, iterates continue with the averaged chain (I + P^T) / 2, which
/// has the same fixed vector. Shared by the 1D and 2D Ulam pipelines.
StationaryResult stationary_density(const SparseMatrix& matrix, std::span<const double> measures, double tol,
                                    int max_iter);

StationaryResult ulam_fixed(const UlamOperator& op, double tol, int max_iter);

/// Fraction of mass leaving cell i through row i; should be 1.
std::vector<double> row_sums(const SparseMatrix& matrix);

}  // namespace pwexp

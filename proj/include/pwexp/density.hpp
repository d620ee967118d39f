#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "pwexp/geom2d.hpp"
#include "pwexp/grid.hpp"
#include "pwexp/maps.hpp"

namespace pwexp {

struct DensityCell {
    geom::ConvexPolygon polygon;
    double value = 0.0;
};

/// Piecewise-constant function on a convex partition of a convex region.
/// Values are nonnegative unless the density was built as signed.
class PiecewisePolyDensity {
public:
    static PiecewisePolyDensity constant(const geom::ConvexPolygon& region, double value);
    /// value on region ∩ q, zero elsewhere.
    static PiecewisePolyDensity indicator(const geom::ConvexPolygon& region, const geom::ConvexPolygon& q,
                                          double value = 1.0);
    /// Throws InvalidInput for negative or non-finite values (unless allow_signed)
    /// and for cells whose areas do not add up to the region's.
    static PiecewisePolyDensity from_cells(const geom::ConvexPolygon& region, std::vector<DensityCell> cells,
                                           bool allow_signed = false);
    /// Same as from_cells without the area check.
    static PiecewisePolyDensity from_partition(const geom::ConvexPolygon& region, std::vector<DensityCell> cells,
                                               bool allow_signed = false);

    const geom::ConvexPolygon& region() const { return region_; }
    const std::vector<DensityCell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool is_signed() const { return signed_; }

    /// Integral of the density (signed).
    double mass() const;
    PiecewisePolyDensity scaled(double factor) const;

private:
    geom::ConvexPolygon region_;
    std::vector<DensityCell> cells_;
    bool signed_ = false;
};

/// Transfer operator applied exactly: every branch image of every cell is
/// overlaid into one convex partition of the region. Throws RegionMismatch.
PiecewisePolyDensity push_forward(const PiecewiseMap& m, const PiecewisePolyDensity& f);

/// Sum over the cell arrangement of |jump| x edge length, with zero outside
/// the region.
double variation(const PiecewisePolyDensity& f);

double lp_norm(const PiecewisePolyDensity& f, double p);

/// Throws RegionMismatch.
double l1_distance(const PiecewisePolyDensity& f, const PiecewisePolyDensity& g);

/// a*f + b*g on the common refinement; signed when any value is negative.
PiecewisePolyDensity linear_combination(double a, const PiecewisePolyDensity& f, double b,
                                        const PiecewisePolyDensity& g);

/// Sharp planar isoperimetric constant 1/(2 sqrt(pi)).
inline constexpr double kSobolevConstant = 0.5 * std::numbers::inv_sqrtpi;

/// ||f||_2 / V(f). Throws ZeroVariation.
double sobolev_ratio(const PiecewisePolyDensity& f);

/// Cell averages of f on the resolution-N grid over f's region.
std::vector<double> project_to_grid(const PiecewisePolyDensity& f, const UlamGrid& grid);
PiecewisePolyDensity grid_density(const UlamGrid& grid, std::span<const double> values);

struct CoarsenPolicy {
    enum class Kind { None, ProjectToGrid };
    Kind kind = Kind::None;
    int resolution = 0;

    static CoarsenPolicy none() { return {}; }
    static CoarsenPolicy project_to_grid(int n) { return {Kind::ProjectToGrid, n}; }
};

struct CesaroResult {
    PiecewisePolyDensity density;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Cesàro averages A_n = (1/n) sum_{j<n} P^j f0 until ||P A_n - A_n||_1 < tol.
/// With ProjectToGrid every iterate is replaced by its grid averages and the
/// residual is measured after projection. Returns the last average with
/// converged = false when n_max is reached.
CesaroResult cesaro_fixed_density(const PiecewiseMap& m, const PiecewisePolyDensity& f0, int n_max, double tol,
                                  CoarsenPolicy coarsen);

}  // namespace pwexp

#pragma once

#include <vector>

#include "pwexp/geom2d.hpp"

namespace pwexp {

/// Axis-aligned squares of side 1/resolution, anchored at the region's lower
/// left bounding-box corner and clipped to the region. Empty clips are dropped.
struct UlamGrid {
    geom::ConvexPolygon region;
    int resolution = 0;
    double side = 0.0;
    geom::Point2 origin;
    int nx = 0;
    int ny = 0;
    std::vector<geom::ConvexPolygon> cells;
    /// Square (ix, iy) -> cell index, or -1 when the square misses the region.
    std::vector<int> lookup;

    /// Cells whose squares meet the box, ascending.
    std::vector<int> candidates(const geom::Box& box) const;
    std::vector<double> areas() const;
};

/// Throws InvalidInput for resolution < 1.
UlamGrid make_grid(const geom::ConvexPolygon& region, int resolution);

}  // namespace pwexp

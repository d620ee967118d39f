#include "pwexp/grid.hpp"

#include <algorithm>
#include <cmath>

#include "pwexp/error.hpp"

namespace pwexp {

std::vector<int> UlamGrid::candidates(const geom::Box& box) const {
    std::vector<int> out;
    const double pad = geom::kEpsGeom;
    const int x0 = std::max(0, static_cast<int>(std::floor((box.xmin - pad - origin.x) / side)));
    const int x1 = std::min(nx - 1, static_cast<int>(std::floor((box.xmax + pad - origin.x) / side)));
    const int y0 = std::max(0, static_cast<int>(std::floor((box.ymin - pad - origin.y) / side)));
    const int y1 = std::min(ny - 1, static_cast<int>(std::floor((box.ymax + pad - origin.y) / side)));
    for (int iy = y0; iy <= y1; ++iy) {
        for (int ix = x0; ix <= x1; ++ix) {
            const int c = lookup[static_cast<std::size_t>(iy * nx + ix)];
            if (c >= 0) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> UlamGrid::areas() const {
    std::vector<double> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(c.area());
    return out;
}

UlamGrid make_grid(const geom::ConvexPolygon& region, int resolution) {
    if (resolution < 1) throw Error(ErrorKind::InvalidInput, "grid resolution must be >= 1");
    if (region.empty()) throw Error(ErrorKind::DegeneratePolygon, "grid over an empty region");
    UlamGrid g;
    g.region = region;
    g.resolution = resolution;
    g.side = 1.0 / resolution;
    const geom::Box b = region.bounds();
    g.origin = {b.xmin, b.ymin};
    g.nx = std::max(1, static_cast<int>(std::ceil((b.xmax - b.xmin) * resolution - 1e-9)));
    g.ny = std::max(1, static_cast<int>(std::ceil((b.ymax - b.ymin) * resolution - 1e-9)));
    g.lookup.assign(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny), -1);
    // Row-major over (iy, ix), so cell order is deterministic.
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const double x0 = g.origin.x + ix * g.side;
            const double y0 = g.origin.y + iy * g.side;
            geom::ConvexPolygon sq = geom::ConvexPolygon::rectangle(x0, y0, x0 + g.side, y0 + g.side);
            geom::ConvexPolygon cell = geom::intersect(sq, region);
            if (cell.empty()) continue;
            g.lookup[static_cast<std::size_t>(iy * g.nx + ix)] = static_cast<int>(g.cells.size());
            g.cells.push_back(std::move(cell));
        }
    }
    return g;
}

}  // namespace pwexp

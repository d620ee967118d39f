#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pwexp/density.hpp"
#include "pwexp/experiments.hpp"
#include "pwexp/geom2d.hpp"

namespace pwexp::testing {

/// Shoelace area computed directly from the vertex list.
inline double shoelace(const std::vector<geom::Point2>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(s);
}

/// Random convex polygon: k points at sorted random angles on an ellipse.
inline geom::ConvexPolygon random_convex(Rng& rng, geom::Point2 center, double rx, double ry, int k_min = 3,
                                         int k_max = 8) {
    const int k = k_min + static_cast<int>(rng.uniform() * (k_max - k_min + 1));
    std::vector<double> angles(static_cast<std::size_t>(k));
    for (double& a : angles) a = 2.0 * std::numbers::pi * rng.uniform();
    std::sort(angles.begin(), angles.end());
    std::vector<geom::Point2> v;
    for (double a : angles) v.push_back({center.x + rx * std::cos(a), center.y + ry * std::sin(a)});
    return geom::ConvexPolygon::assume_convex(v);
}

/// Random convex polygon inside the tent triangle (x in (0,2), 0 <= y <= min(x, 2-x)).
inline geom::ConvexPolygon random_convex_in_tent(Rng& rng) {
    for (;;) {
        const geom::Point2 c{0.4 + 1.2 * rng.uniform(), 0.05 + 0.3 * rng.uniform()};
        const double room = std::min({c.y, (c.x - c.y) / std::numbers::sqrt2, (2.0 - c.x - c.y) / std::numbers::sqrt2});
        if (room < 0.02) continue;
        const double r = room * (0.3 + 0.65 * rng.uniform());
        geom::ConvexPolygon p = random_convex(rng, c, r, r * (0.4 + 0.6 * rng.uniform()));
        if (p.area() > 1e-4) return p;
    }
}

/// Random nonnegative piecewise-constant density on the tent triangle:
/// a handful of random convex patches overlaid on a constant background.
inline PiecewisePolyDensity random_density(Rng& rng, int patches = 3) {
    const geom::ConvexPolygon region = tent_region();
    PiecewisePolyDensity f = PiecewisePolyDensity::constant(region, rng.uniform());
    for (int k = 0; k < patches; ++k) {
        const auto patch =
            PiecewisePolyDensity::indicator(region, random_convex_in_tent(rng), 0.5 + 2.0 * rng.uniform());
        f = linear_combination(1.0, f, 1.0, patch);
    }
    return f;
}

/// Value of f at p; 0 outside every cell.
inline double value_at(const PiecewisePolyDensity& f, geom::Point2 p) {
    for (const DensityCell& c : f.cells()) {
        if (c.polygon.contains(p, 0.0)) return c.value;
    }
    return 0.0;
}

}  // namespace pwexp::testing

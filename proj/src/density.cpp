#include "pwexp/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "box_index.hpp"
#include "pwexp/error.hpp"

namespace pwexp {

using geom::ConvexPolygon;
using geom::Point2;

namespace {

constexpr double kTilingTol = 1e-8;

bool same_region(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.size() != b.size()) return false;
    if (std::abs(a.area() - b.area()) > geom::kEpsArea) return false;
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    // Same vertex cycle up to rotation.
    for (std::size_t shift = 0; shift < vb.size(); ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < va.size() && ok; ++i) {
            ok = geom::distance(va[i], vb[(i + shift) % vb.size()]) <= geom::kEpsGeom;
        }
        if (ok) return true;
    }
    return false;
}

void require_same_region(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (!same_region(a, b)) throw Error(ErrorKind::RegionMismatch, "densities live on different regions");
}

std::vector<geom::Box> boxes_of(const std::vector<DensityCell>& cells) {
    std::vector<geom::Box> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(c.polygon.bounds());
    return out;
}

bool centroid_less(const DensityCell& a, const DensityCell& b) {
    const Point2 ca = a.polygon.centroid();
    const Point2 cb = b.polygon.centroid();
    if (ca.x != cb.x) return ca.x < cb.x;
    if (ca.y != cb.y) return ca.y < cb.y;
    return a.value < b.value;
}

// Splits every cell by a set of pieces tiling the convex `cover`, adding the
// piece value on each overlap. Parts of a cell outside `cover` keep their value.
std::vector<DensityCell> refine(const std::vector<DensityCell>& cells, const ConvexPolygon& cover,
                                const std::vector<DensityCell>& pieces) {
    const std::vector<geom::Box> boxes = boxes_of(pieces);
    const detail::BoxIndex index(boxes);
    std::vector<DensityCell> out;
    out.reserve(cells.size() + pieces.size());
    for (const DensityCell& c : cells) {
        ConvexPolygon inside;
        for (ConvexPolygon& rest : geom::subtract(c.polygon, cover, &inside)) {
            out.push_back({std::move(rest), c.value});
        }
        if (inside.empty()) continue;
        for (std::size_t k : index.query(inside.bounds())) {
            ConvexPolygon x = geom::intersect(inside, pieces[k].polygon);
            if (!x.empty()) out.push_back({std::move(x), c.value + pieces[k].value});
        }
    }
    return out;
}

// Common refinement of two partitions of one region: (polygon, f value, g value).
struct OverlayCell {
    ConvexPolygon polygon;
    double vf;
    double vg;
};

std::vector<OverlayCell> overlay(const PiecewisePolyDensity& f, const PiecewisePolyDensity& g) {
    require_same_region(f.region(), g.region());
    const std::vector<geom::Box> boxes = boxes_of(g.cells());
    const detail::BoxIndex index(boxes);
    std::vector<OverlayCell> out;
    for (const DensityCell& a : f.cells()) {
        for (std::size_t k : index.query(a.polygon.bounds())) {
            ConvexPolygon x = geom::intersect(a.polygon, g.cells()[k].polygon);
            if (!x.empty()) out.push_back({std::move(x), a.value, g.cells()[k].value});
        }
    }
    return out;
}

}  // namespace

PiecewisePolyDensity PiecewisePolyDensity::constant(const ConvexPolygon& region, double value) {
    return from_partition(region, {{region, value}}, value < 0.0);
}

PiecewisePolyDensity PiecewisePolyDensity::indicator(const ConvexPolygon& region, const ConvexPolygon& q,
                                                     double value) {
    std::vector<DensityCell> cells;
    ConvexPolygon inside;
    for (ConvexPolygon& rest : geom::subtract(region, q, &inside)) cells.push_back({std::move(rest), 0.0});
    if (!inside.empty()) cells.push_back({std::move(inside), value});
    return from_partition(region, std::move(cells), value < 0.0);
}

PiecewisePolyDensity PiecewisePolyDensity::from_partition(const ConvexPolygon& region, std::vector<DensityCell> cells,
                                                          bool allow_signed) {
    for (const DensityCell& c : cells) {
        if (!std::isfinite(c.value)) throw Error(ErrorKind::InvalidInput, "non-finite density value");
        if (!allow_signed && c.value < 0.0) throw Error(ErrorKind::InvalidInput, "negative density value");
    }
    PiecewisePolyDensity f;
    f.region_ = region;
    f.signed_ = allow_signed;
    f.cells_.reserve(cells.size());
    for (DensityCell& c : cells) {
        if (!c.polygon.empty()) f.cells_.push_back(std::move(c));
    }
    return f;
}

PiecewisePolyDensity PiecewisePolyDensity::from_cells(const ConvexPolygon& region, std::vector<DensityCell> cells,
                                                      bool allow_signed) {
    double total = 0.0;
    for (const DensityCell& c : cells) total += c.polygon.area();
    if (std::abs(total - region.area()) > kTilingTol) {
        throw Error(ErrorKind::InvalidInput, "cells do not tile the region");
    }
    return from_partition(region, std::move(cells), allow_signed);
}

double PiecewisePolyDensity::mass() const {
    double s = 0.0;
    for (const DensityCell& c : cells_) s += c.value * c.polygon.area();
    return s;
}

PiecewisePolyDensity PiecewisePolyDensity::scaled(double factor) const {
    PiecewisePolyDensity out = *this;
    for (DensityCell& c : out.cells_) c.value *= factor;
    out.signed_ = signed_ || factor < 0.0;
    return out;
}

PiecewisePolyDensity push_forward(const PiecewiseMap& m, const PiecewisePolyDensity& f) {
    require_same_region(m.region(), f.region());
    std::vector<DensityCell> cells{{m.region(), 0.0}};
    for (const Branch& b : m.branches()) {
        std::vector<DensityCell> pieces;
        for (const DensityCell& c : f.cells()) {
            ConvexPolygon x = geom::intersect(c.polygon, b.domain);
            if (x.empty()) continue;
            pieces.push_back({geom::affine_image(b.map, x), c.value / b.jacobian_abs});
        }
        cells = refine(cells, b.image(), pieces);
    }
    std::sort(cells.begin(), cells.end(), centroid_less);
    return PiecewisePolyDensity::from_partition(m.region(), std::move(cells), f.is_signed());
}

namespace {

// One cell edge lying on a canonical line. `low` is true when the cell lies on
// the side where normal . p < offset.
struct EdgeRecord {
    double angle;
    double offset;
    double u0;
    double u1;
    double value;
    bool low;
};

}  // namespace

double variation(const PiecewisePolyDensity& f) {
    // Canonical line directions live in [-pi/2 + delta, pi/2 + delta); the
    // shift keeps axis-aligned and diagonal normals away from the wrap.
    constexpr double kDelta = 1e-6;
    std::vector<EdgeRecord> edges;
    for (const DensityCell& c : f.cells()) {
        if (c.value == 0.0) continue;
        const auto& v = c.polygon.vertices();
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 a = v[i];
            const Point2 b = v[(i + 1) % n];
            const geom::HalfPlane h = geom::HalfPlane::left_of(a, b);
            Point2 nrm = h.normal;
            double off = h.offset;
            bool low = true;
            double ang = std::atan2(nrm.y, nrm.x);
            if (ang < -std::numbers::pi / 2 + kDelta || ang >= std::numbers::pi / 2 + kDelta) {
                nrm = {-nrm.x, -nrm.y};
                off = -off;
                low = false;
                ang = std::atan2(nrm.y, nrm.x);
            }
            const Point2 tangent{-nrm.y, nrm.x};
            double u0 = geom::dot(tangent, a);
            double u1 = geom::dot(tangent, b);
            if (u0 > u1) std::swap(u0, u1);
            edges.push_back({ang, off, u0, u1, c.value, low});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
        if (x.angle != y.angle) return x.angle < y.angle;
        return x.offset < y.offset;
    });

    double total = 0.0;
    std::vector<EdgeRecord> line;
    auto flush_line = [&]() {
        // Sweep along the line, tracking the value on each side.
        struct Event {
            double u;
            double dlow;
            double dhigh;
        };
        std::vector<Event> events;
        events.reserve(2 * line.size());
        for (const EdgeRecord& e : line) {
            const double dl = e.low ? e.value : 0.0;
            const double dh = e.low ? 0.0 : e.value;
            events.push_back({e.u0, dl, dh});
            events.push_back({e.u1, -dl, -dh});
        }
        std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.u < y.u; });
        double low = 0.0;
        double high = 0.0;
        for (std::size_t i = 0; i < events.size(); ++i) {
            low += events[i].dlow;
            high += events[i].dhigh;
            if (i + 1 < events.size()) {
                const double len = events[i + 1].u - events[i].u;
                if (len > geom::kEpsGeom) total += std::abs(low - high) * len;
            }
        }
        line.clear();
    };

    // Group edges into lines: first by direction, then by offset.
    std::size_t i = 0;
    while (i < edges.size()) {
        std::size_t j = i + 1;
        while (j < edges.size() && edges[j].angle - edges[j - 1].angle <= geom::kEpsGeom) ++j;
        std::vector<EdgeRecord> group(edges.begin() + static_cast<std::ptrdiff_t>(i),
                                      edges.begin() + static_cast<std::ptrdiff_t>(j));
        std::sort(group.begin(), group.end(),
                  [](const EdgeRecord& x, const EdgeRecord& y) { return x.offset < y.offset; });
        for (std::size_t k = 0; k < group.size(); ++k) {
            if (k > 0 && group[k].offset - group[k - 1].offset > geom::kEpsGeom) flush_line();
            line.push_back(group[k]);
        }
        flush_line();
        i = j;
    }
    return total;
}

double lp_norm(const PiecewisePolyDensity& f, double p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "lp_norm requires p >= 1");
    double s = 0.0;
    for (const DensityCell& c : f.cells()) s += std::pow(std::abs(c.value), p) * c.polygon.area();
    return std::pow(s, 1.0 / p);
}

double l1_distance(const PiecewisePolyDensity& f, const PiecewisePolyDensity& g) {
    double s = 0.0;
    for (const OverlayCell& c : overlay(f, g)) s += std::abs(c.vf - c.vg) * c.polygon.area();
    return s;
}

PiecewisePolyDensity linear_combination(double a, const PiecewisePolyDensity& f, double b,
                                        const PiecewisePolyDensity& g) {
    std::vector<DensityCell> cells;
    bool any_negative = false;
    for (OverlayCell& c : overlay(f, g)) {
        const double v = a * c.vf + b * c.vg;
        any_negative = any_negative || v < 0.0;
        cells.push_back({std::move(c.polygon), v});
    }
    std::sort(cells.begin(), cells.end(), centroid_less);
    return PiecewisePolyDensity::from_partition(f.region(), std::move(cells),
                                                any_negative || f.is_signed() || g.is_signed());
}

double sobolev_ratio(const PiecewisePolyDensity& f) {
    const double v = variation(f);
    if (!(v > 0.0)) throw Error(ErrorKind::ZeroVariation, "Sobolev ratio of a function with zero variation");
    return lp_norm(f, 2.0) / v;
}

std::vector<double> project_to_grid(const PiecewisePolyDensity& f, const UlamGrid& grid) {
    require_same_region(f.region(), grid.region);
    std::vector<double> mass(grid.cells.size(), 0.0);
    for (const DensityCell& c : f.cells()) {
        if (c.value == 0.0) continue;
        for (int j : grid.candidates(c.polygon.bounds())) {
            const double a = geom::intersect(c.polygon, grid.cells[static_cast<std::size_t>(j)]).area();
            mass[static_cast<std::size_t>(j)] += c.value * a;
        }
    }
    for (std::size_t j = 0; j < mass.size(); ++j) mass[j] /= grid.cells[j].area();
    return mass;
}

PiecewisePolyDensity grid_density(const UlamGrid& grid, std::span<const double> values) {
    if (values.size() != grid.cells.size()) throw Error(ErrorKind::InvalidInput, "grid value count mismatch");
    std::vector<DensityCell> cells;
    cells.reserve(values.size());
    bool any_negative = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        cells.push_back({grid.cells[i], values[i]});
        any_negative = any_negative || values[i] < 0.0;
    }
    return PiecewisePolyDensity::from_partition(grid.region, std::move(cells), any_negative);
}

CesaroResult cesaro_fixed_density(const PiecewiseMap& m, const PiecewisePolyDensity& f0, int n_max, double tol,
                                  CoarsenPolicy coarsen) {
    if (n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be >= 1");
    const double mass0 = f0.mass();
    if (std::abs(mass0 - 1.0) > 1e-9) throw Error(ErrorKind::InvalidInput, "initial density must have unit mass");

    if (coarsen.kind == CoarsenPolicy::Kind::ProjectToGrid) {
        const UlamGrid grid = make_grid(m.region(), coarsen.resolution);
        auto step = [&](const std::vector<double>& v) {
            return project_to_grid(push_forward(m, grid_density(grid, v)), grid);
        };
        std::vector<double> iterate = project_to_grid(f0, grid);
        std::vector<double> sum = iterate;
        const std::vector<double> areas = grid.areas();
        CesaroResult out{grid_density(grid, sum), 0, 0.0, false};
        for (int n = 1; n <= n_max; ++n) {
            std::vector<double> avg(sum.size());
            for (std::size_t i = 0; i < sum.size(); ++i) avg[i] = sum[i] / n;
            const std::vector<double> pushed = step(avg);
            double residual = 0.0;
            for (std::size_t i = 0; i < avg.size(); ++i) residual += std::abs(pushed[i] - avg[i]) * areas[i];
            out = {grid_density(grid, avg), n, residual, residual < tol};
            if (out.converged || n == n_max) return out;
            iterate = step(iterate);
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += iterate[i];
        }
        return out;
    }

    PiecewisePolyDensity iterate = f0;
    PiecewisePolyDensity sum = f0;
    CesaroResult out{f0, 0, 0.0, false};
    for (int n = 1; n <= n_max; ++n) {
        PiecewisePolyDensity avg = sum.scaled(1.0 / n);
        const double residual = l1_distance(push_forward(m, avg), avg);
        out = {std::move(avg), n, residual, residual < tol};
        if (out.converged || n == n_max) return out;
        iterate = push_forward(m, iterate);
        sum = linear_combination(1.0, sum, 1.0, iterate);
    }
    return out;
}

}  // namespace pwexp

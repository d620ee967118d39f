#include "pwexp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pwexp/error.hpp"

namespace pwexp {

using geom::ConvexPolygon;
using geom::Point2;

const char* name(TestFunction f) {
    switch (f) {
        case TestFunction::One: return "1";
        case TestFunction::X: return "x";
        case TestFunction::Y: return "y";
        case TestFunction::X2: return "x2";
        case TestFunction::XY: return "xy";
        case TestFunction::Y2: return "y2";
    }
    return "?";
}

TestFunction parse_test_function(const std::string& s) {
    for (TestFunction f : kTestFunctions) {
        if (s == name(f)) return f;
    }
    throw Error(ErrorKind::InvalidInput, "unknown test function '" + s + "'");
}

double evaluate(TestFunction f, Point2 p) {
    switch (f) {
        case TestFunction::One: return 1.0;
        case TestFunction::X: return p.x;
        case TestFunction::Y: return p.y;
        case TestFunction::X2: return p.x * p.x;
        case TestFunction::XY: return p.x * p.y;
        case TestFunction::Y2: return p.y * p.y;
    }
    return 0.0;
}

namespace {

double triangle_moment(TestFunction f, Point2 a, Point2 b, Point2 c) {
    const double area = 0.5 * geom::cross(b - a, c - a);
    const double sx = a.x + b.x + c.x;
    const double sy = a.y + b.y + c.y;
    switch (f) {
        case TestFunction::One: return area;
        case TestFunction::X: return area * sx / 3.0;
        case TestFunction::Y: return area * sy / 3.0;
        case TestFunction::X2: return area / 12.0 * (sx * sx + a.x * a.x + b.x * b.x + c.x * c.x);
        case TestFunction::XY: return area / 12.0 * (sx * sy + a.x * a.y + b.x * b.y + c.x * c.y);
        case TestFunction::Y2: return area / 12.0 * (sy * sy + a.y * a.y + b.y * b.y + c.y * c.y);
    }
    return 0.0;
}

void check_sweep_parameter(double t) {
    if (!(t >= tau() - 1e-12 && t <= 1.0)) {
        throw Error(ErrorKind::ParameterOutOfRange, "sweep parameter " + std::to_string(t) + " outside [tau, 1]");
    }
}

}  // namespace

double integrate(TestFunction f, const ConvexPolygon& p) {
    if (p.empty()) return 0.0;
    const auto& v = p.vertices();
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += triangle_moment(f, v[0], v[i], v[i + 1]);
    return s;
}

Point2 Rng::unit_vector() {
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {std::cos(theta), std::sin(theta)};
}

Point2 sample_point(const ConvexPolygon& p, Rng& rng) {
    if (p.empty()) throw Error(ErrorKind::DegeneratePolygon, "sampling from an empty polygon");
    const geom::Box b = p.bounds();
    for (;;) {
        const Point2 q{b.xmin + (b.xmax - b.xmin) * rng.uniform(), b.ymin + (b.ymax - b.ymin) * rng.uniform()};
        if (p.contains(q, 0.0)) return q;
    }
}

UlamDensity tent_ulam_density(double t, int resolution, int power_n, double tol, int max_iter) {
    UlamOperator op = build_ulam(power(make_tent2d(t), power_n), resolution);
    StationaryResult fixed = ulam_fixed(op, tol, max_iter);
    return {std::move(op), std::move(fixed)};
}

std::vector<SweepRow> stability_sweep(double t0, std::vector<double> ts, int resolution, const SweepOptions& options) {
    if (resolution < 16) throw Error(ErrorKind::InvalidInput, "sweep resolution must be >= 16");
    if (options.power < 1) throw Error(ErrorKind::InvalidInput, "power must be >= 1");
    check_sweep_parameter(t0);
    for (double t : ts) check_sweep_parameter(t);
    std::sort(ts.begin(), ts.end());

    const UlamDensity ref = tent_ulam_density(t0, resolution, options.power, options.tol, options.max_iter);
    const auto& cells = ref.op.grid.cells;
    // Per-cell moments are shared by every row.
    std::vector<std::array<double, 6>> moments(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t k = 0; k < kTestFunctions.size(); ++k) moments[i][k] = integrate(kTestFunctions[k], cells[i]);
    }

    std::vector<SweepRow> rows;
    rows.reserve(ts.size());
    for (double t : ts) {
        const UlamDensity cur = tent_ulam_density(t, resolution, options.power, options.tol, options.max_iter);
        SweepRow row;
        row.t = t;
        row.t0 = t0;
        row.power = options.power;
        row.resolution = resolution;
        row.iterations = cur.fixed.iterations;
        row.residual = cur.fixed.residual;
        row.converged = cur.fixed.converged;
        std::array<double, 6> signed_gaps{};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const double diff = cur.fixed.density[i] - ref.fixed.density[i];
            row.l1_dist += std::abs(diff) * moments[i][0];
            for (std::size_t k = 0; k < signed_gaps.size(); ++k) signed_gaps[k] += diff * moments[i][k];
        }
        for (std::size_t k = 0; k < signed_gaps.size(); ++k) row.weakstar_gaps[k] = std::abs(signed_gaps[k]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<LYRow> ly_check(double t, const PiecewisePolyDensity& f0, int j_max, const ConditionCertificate& cert) {
    if (j_max < 0) throw Error(ErrorKind::InvalidInput, "j_max must be >= 0");
    const PiecewiseMap m = power(make_tent2d(t), cert.power);
    const double v0 = variation(f0);
    const double mass = lp_norm(f0, 1.0);
    std::vector<LYRow> rows;
    PiecewisePolyDensity f = f0;
    for (int j = 0; j <= j_max; ++j) {
        if (j > 0) {
            f = push_forward(m, f);
            if (f.size() > kMaxArrangementCells) {
                throw Error(ErrorKind::CellExplosion, "arrangement grew to " + std::to_string(f.size()) + " cells");
            }
        }
        LYRow row;
        row.t = t;
        row.convention = cert.norm_convention;
        row.j = j;
        row.variation_j = variation(f);
        row.bound = std::isfinite(cert.K1) ? std::pow(cert.lambda, j) * v0 + cert.K1 * mass
                                           : std::numeric_limits<double>::infinity();
        row.ratio = row.variation_j / row.bound;
        rows.push_back(row);
    }
    return rows;
}

TentOrbit::TentOrbit(double t, Point2 x0, std::uint64_t seed) : map_(make_tent2d(t)), rng_(seed), p_(x0) {
    if (!map_.region().contains(x0)) throw Error(ErrorKind::OutsideRegion, "orbit start outside the region");
    // Domain edges whose midpoint is interior to the region separate branches.
    for (const Branch& b : map_.branches()) {
        const auto& v = b.domain.vertices();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point2 a = v[i];
            const Point2 c = v[(i + 1) % v.size()];
            const Point2 mid = 0.5 * (a + c);
            if (map_.region().contains(mid, -geom::kEpsGeom)) critical_.emplace_back(a, c);
        }
    }
}

Point2 TentOrbit::keep_inside(Point2 q) const {
    // Specific to the triangle (0,0), (2,0), (1,1).
    q.x = std::clamp(q.x, 0.0, 2.0);
    q.y = std::clamp(q.y, 0.0, std::min(q.x, 2.0 - q.x));
    return q;
}

std::size_t TentOrbit::pick_branch() {
    for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
        bool near = false;
        for (const auto& [a, b] : critical_) {
            if (geom::segment_distance(p_, a, b) < kBoundaryTol) {
                near = true;
                break;
            }
        }
        if (!near) {
            if (auto idx = map_.locate(p_)) return *idx;
        }
        if (attempt == kMaxRetries) break;
        p_ = keep_inside(p_ + kKick * rng_.unit_vector());
    }
    throw Error(ErrorKind::OrbitHitsCriticalSet, "orbit stayed on a branch boundary after retries");
}

const Branch& TentOrbit::step() {
    const Branch& b = map_.branches()[pick_branch()];
    const Point2 jitter{kJitter * (2.0 * rng_.uniform() - 1.0), kJitter * (2.0 * rng_.uniform() - 1.0)};
    p_ = keep_inside(b.map(p_) + jitter);
    return b;
}

double lyapunov_exponent(double t, Point2 x0, long n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "orbit length must be >= 1");
    TentOrbit orbit(t, x0, seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Point2 v = rng.unit_vector();
    double log_sum = 0.0;
    for (long k = 0; k < n; ++k) {
        const Branch& b = orbit.step();
        v = b.map.linear * v;
        const double r = geom::norm(v);
        log_sum += std::log(r);
        v = (1.0 / r) * v;
    }
    return log_sum / static_cast<double>(n);
}

double birkhoff_average(double t, TestFunction f, Point2 x0, long n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "orbit length must be >= 1");
    if (f == TestFunction::One) return 1.0;
    TentOrbit orbit(t, x0, seed);
    double s = 0.0;
    for (long k = 0; k < n; ++k) {
        s += evaluate(f, orbit.position());
        if (k + 1 < n) orbit.step();
    }
    return s / static_cast<double>(n);
}

OrbitStats orbit_stats(double t, long n, std::uint64_t seed, std::optional<Point2> x0) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "orbit length must be >= 1");
    OrbitStats out;
    out.t = t;
    out.seed = seed;
    out.n = n;
    if (x0) {
        out.x0 = *x0;
    } else {
        Rng rng(seed);
        out.x0 = sample_point(tent_region(), rng);
    }
    out.lyapunov = lyapunov_exponent(t, out.x0, n, seed);
    for (std::size_t k = 0; k < kTestFunctions.size(); ++k) {
        out.birkhoff[k] = birkhoff_average(t, kTestFunctions[k], out.x0, n, seed);
    }
    return out;
}

Tent1dUlam tent1d_ulam(double a, int n_cells, double tol, int max_iter) {
    if (!(a > 1.0 && a <= 2.0)) throw Error(ErrorKind::ParameterOutOfRange, "tent slope must lie in (1, 2]");
    if (n_cells < 2 || n_cells % 2 != 0) throw Error(ErrorKind::InvalidInput, "cell count must be even and >= 2");
    Tent1dUlam out;
    out.a = a;
    const double w = 2.0 / n_cells;
    out.edges.resize(static_cast<std::size_t>(n_cells) + 1);
    for (int i = 0; i <= n_cells; ++i) out.edges[static_cast<std::size_t>(i)] = -1.0 + i * w;
    out.edges.back() = 1.0;

    auto overlap = [](double lo, double hi, double c0, double c1) {
        return std::max(0.0, std::min(hi, c1) - std::max(lo, c0));
    };
    std::vector<Eigen::Triplet<double>> triplets;
    for (int i = 0; i < n_cells; ++i) {
        const double l = out.edges[static_cast<std::size_t>(i)];
        const double r = out.edges[static_cast<std::size_t>(i) + 1];
        // Images of the pieces on either side of the fold at 0.
        std::vector<std::pair<double, double>> images;
        if (l < 0.0) images.emplace_back(1.0 + a * l, 1.0 + a * std::min(r, 0.0));
        if (r > 0.0) images.emplace_back(1.0 - a * r, 1.0 - a * std::max(l, 0.0));
        const double scale = 1.0 / (a * (r - l));
        for (const auto& [lo, hi] : images) {
            for (int j = 0; j < n_cells; ++j) {
                const double len =
                    overlap(lo, hi, out.edges[static_cast<std::size_t>(j)], out.edges[static_cast<std::size_t>(j) + 1]);
                if (len > 0.0) triplets.emplace_back(i, j, len * scale);
            }
        }
    }
    out.matrix.resize(n_cells, n_cells);
    out.matrix.setFromTriplets(triplets.begin(), triplets.end());
    out.matrix.makeCompressed();
    std::vector<double> lengths(static_cast<std::size_t>(n_cells));
    for (std::size_t i = 0; i < lengths.size(); ++i) lengths[i] = out.edges[i + 1] - out.edges[i];
    out.fixed = stationary_density(out.matrix, lengths, tol, max_iter);
    return out;
}

}  // namespace pwexp

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pwexp/density.hpp"
#include "pwexp/maps.hpp"
#include "pwexp/ulam.hpp"

namespace pwexp {

/// Monomials of degree <= 2 used for weak-* comparisons and Birkhoff sums.
enum class TestFunction { One, X, Y, X2, XY, Y2 };

inline constexpr std::array<TestFunction, 6> kTestFunctions{TestFunction::One, TestFunction::X,  TestFunction::Y,
                                                            TestFunction::X2,  TestFunction::XY, TestFunction::Y2};

/// "1", "x", "y", "x2", "xy", "y2".
const char* name(TestFunction f);
TestFunction parse_test_function(const std::string& name);
double evaluate(TestFunction f, geom::Point2 p);
/// Exact integral over a convex polygon (fan triangulation + closed-form
/// monomial moments of triangles).
double integrate(TestFunction f, const geom::ConvexPolygon& p);

/// mt19937_64 with platform-independent uniform doubles.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    geom::Point2 unit_vector();

private:
    std::mt19937_64 engine_;
};

/// Uniform sample from a convex polygon by rejection from its bounding box.
geom::Point2 sample_point(const geom::ConvexPolygon& p, Rng& rng);

struct SweepOptions {
    int power = 1;
    double tol = 1e-12;
    int max_iter = 200000;
};

struct SweepRow {
    double t = 0.0;
    double t0 = 0.0;
    int power = 1;
    int resolution = 0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    double l1_dist = 0.0;
    /// |∫f dμ_t - ∫f dμ_t0| in kTestFunctions order.
    std::array<double, 6> weakstar_gaps{};
};

struct UlamDensity {
    UlamOperator op;
    StationaryResult fixed;
};

/// Ulam density of the power-th iterate of the tent map.
UlamDensity tent_ulam_density(double t, int resolution, int power, double tol, int max_iter);

/// Rows ordered by t. Requires resolution >= 16 and every parameter in
/// [tau - 1e-12, 1]; throws ParameterOutOfRange / InvalidInput otherwise.
std::vector<SweepRow> stability_sweep(double t0, std::vector<double> ts, int resolution,
                                      const SweepOptions& options = {});

struct LYRow {
    double t = 0.0;
    NormConvention convention = NormConvention::Spectral;
    int j = 0;
    double variation_j = 0.0;
    double bound = 0.0;  ///< lambda^j V(f0) + K1 ||f0||_1, +inf when K1 is infinite
    double ratio = 0.0;
};

inline constexpr std::size_t kMaxArrangementCells = 1'000'000;

/// Exact pushforward under the certified power of the tent map for j = 0..j_max.
/// Throws CellExplosion when an iterate needs more than kMaxArrangementCells.
std::vector<LYRow> ly_check(double t, const PiecewisePolyDensity& f0, int j_max, const ConditionCertificate& cert);

/// Orbit of the tent map with a small seeded jitter after every step. The
/// jitter stops floating-point orbits from collapsing onto dyadic periodic
/// points; points close to a branch boundary are pushed off it.
class TentOrbit {
public:
    /// Orbit points closer than this to an interior branch boundary are perturbed.
    static constexpr double kBoundaryTol = geom::kEpsGeom;
    static constexpr double kKick = 4e-9;
    static constexpr double kJitter = 1e-12;
    static constexpr int kMaxRetries = 5;

    TentOrbit(double t, geom::Point2 x0, std::uint64_t seed);

    geom::Point2 position() const { return p_; }
    /// Advances one step; returns the branch used. Throws OrbitHitsCriticalSet.
    const Branch& step();

private:
    std::size_t pick_branch();
    geom::Point2 keep_inside(geom::Point2 q) const;

    PiecewiseMap map_;
    std::vector<std::pair<geom::Point2, geom::Point2>> critical_;
    Rng rng_;
    geom::Point2 p_;
};

/// (1/n) log |D(Λ_t^n)(x0) v| for a seeded random unit v, renormalized each step.
double lyapunov_exponent(double t, geom::Point2 x0, long n, std::uint64_t seed);

/// (1/n) sum_{j<n} f(Λ_t^j x0).
double birkhoff_average(double t, TestFunction f, geom::Point2 x0, long n, std::uint64_t seed = 20240101);

struct OrbitStats {
    double t = 0.0;
    std::uint64_t seed = 0;
    long n = 0;
    geom::Point2 x0;
    double lyapunov = 0.0;
    std::array<double, 6> birkhoff{};  ///< kTestFunctions order
};

/// One orbit, all statistics. x0 defaults to a seeded uniform point of the triangle.
OrbitStats orbit_stats(double t, long n, std::uint64_t seed, std::optional<geom::Point2> x0 = std::nullopt);

struct Tent1dUlam {
    double a = 2.0;
    std::vector<double> edges;  ///< n_cells + 1 cell boundaries on [-1, 1]
    SparseMatrix matrix;
    StationaryResult fixed;
};

/// Ulam matrix of x -> 1 - a|x| on [-1, 1] with equal cells, entries from
/// exact interval preimages. Requires a in (1, 2] and an even n_cells >= 2.
Tent1dUlam tent1d_ulam(double a, int n_cells, double tol = 1e-13, int max_iter = 200000);

}  // namespace pwexp

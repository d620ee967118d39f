#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwexp/error.hpp"
#include "pwexp/maps.hpp"
#include "support.hpp"

using namespace pwexp;
using geom::Point2;

namespace {

const double kTau = std::pow(std::sqrt(2.0) + 1.0, 0.25) / std::sqrt(2.0);
const double kTs[] = {kTau, 0.9, 0.95, 1.0};

// Direct evaluation of the tent map, left branch on ties.
Point2 tent(double t, Point2 p) {
    if (p.x <= 1.0) return {t * (p.x + p.y), t * (p.x - p.y)};
    return {t * (2.0 - p.x + p.y), t * (2.0 - p.x - p.y)};
}

}  // namespace

TEST_CASE("tau") { CHECK(tau() == doctest::Approx(kTau).epsilon(1e-15)); }

TEST_CASE("make_tent2d branches") {
    const PiecewiseMap m = make_tent2d(1.0);
    REQUIRE(m.branches().size() == 2);
    for (const Branch& b : m.branches()) CHECK(b.jacobian_abs == doctest::Approx(2.0));
    const PiecewiseMap mt = make_tent2d(tau());
    for (const Branch& b : mt.branches()) CHECK(b.jacobian_abs == doctest::Approx(2.0 * kTau * kTau).epsilon(1e-14));
    CHECK(mt.label().rfind("tent2d t=", 0) == 0);
    CHECK_THROWS_AS(make_tent2d(0.0), Error);
    CHECK_THROWS_AS(make_tent2d(1.01), Error);
}

TEST_CASE("apply") {
    const PiecewiseMap m1 = make_tent2d(1.0);
    const Point2 a = apply(m1, {1, 0});
    CHECK(a.x == doctest::Approx(1.0));
    CHECK(a.y == doctest::Approx(1.0));
    const Point2 b = apply(m1, {1.5, 0.5});
    CHECK(b.x == doctest::Approx(1.0));
    CHECK(b.y == doctest::Approx(0.0));
    for (double t : kTs) {
        const Point2 o = apply(make_tent2d(t), {0, 0});
        CHECK(o.x == 0.0);
        CHECK(o.y == 0.0);
        const Point2 c = apply(make_tent2d(t), {2, 0});
        CHECK(std::abs(c.x) < 1e-15);
        CHECK(std::abs(c.y) < 1e-15);
    }
    CHECK_THROWS_AS(apply(m1, {1, 2}), Error);
}

TEST_CASE("power: branch counts, tiling, boundary slopes") {
    for (double t : kTs) {
        for (int n = 1; n <= 5; ++n) {
            const PiecewiseMap p = power(make_tent2d(t), n);
            if (n <= 3) CHECK(p.branches().size() == (std::size_t{1} << n));
            double total = 0.0;
            for (const Branch& b : p.branches()) total += b.domain.area();
            CHECK(std::abs(total - 1.0) <= 1e-8);
            for (std::size_t i = 0; i < p.branches().size(); ++i) {
                for (std::size_t j = i + 1; j < p.branches().size(); ++j) {
                    CHECK(geom::intersect(p.branches()[i].domain, p.branches()[j].domain).area() <= geom::kEpsArea);
                }
            }
            CHECK(p.tag()->power == n);
        }
    }
}

TEST_CASE("power: conjugated application") {
    pwexp::Rng rng(99);
    for (double t : kTs) {
        for (int n : {2, 3}) {
            const PiecewiseMap p = power(make_tent2d(t), n);
            int checked = 0;
            while (checked < 2000) {
                const Point2 x = sample_point(tent_region(), rng);
                // Stay off the critical set of every intermediate step.
                Point2 y = x;
                bool near_boundary = false;
                for (int k = 0; k < n; ++k) {
                    near_boundary = near_boundary || std::abs(y.x - 1.0) < 1e-6;
                    y = tent(t, y);
                }
                if (near_boundary) continue;
                const Point2 z = apply(p, x);
                CHECK(geom::distance(y, z) <= 1e-7);
                ++checked;
            }
        }
    }
}

TEST_CASE("power: every branch is conformal with factor (sqrt2 t)^n") {
    for (double t : kTs) {
        for (int n = 1; n <= 4; ++n) {
            const double s = std::pow(std::sqrt(2.0) * t, n);
            const PiecewiseMap p = power(make_tent2d(t), n);
            for (const Branch& b : p.branches()) {
                const geom::Matrix2& L = b.map.linear;
                const double smax = geom::matrix_norms(L).spectral;
                const double smin = std::abs(L.det()) / smax;
                CHECK(smax == doctest::Approx(s).epsilon(1e-12));
                CHECK(smin == doctest::Approx(s).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("expansion bounds of the cube") {
    const ExpansionBounds e1 = verify_expansion(power(make_tent2d(1.0), 3));
    CHECK(e1.sigma_spectral == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
    CHECK(e1.sigma_chained == doctest::Approx(0.125));
    // Explicit products of the two t = 1 linear parts over all 8 itineraries.
    const geom::Matrix2 L[2] = {{1, 1, 1, -1}, {-1, 1, -1, -1}};
    double max_entry = 0.0;
    for (int w = 0; w < 8; ++w) {
        const geom::Matrix2 inv = (L[(w >> 2) & 1] * L[(w >> 1) & 1] * L[w & 1]).inverse();
        max_entry = std::max({max_entry, std::abs(inv.a), std::abs(inv.b), std::abs(inv.c), std::abs(inv.d)});
    }
    CHECK(max_entry == doctest::Approx(0.25));
    CHECK(e1.sigma_max_entry == doctest::Approx(max_entry).epsilon(1e-14));
    const ExpansionBounds et = verify_expansion(power(make_tent2d(tau()), 3));
    CHECK(et.sigma_chained == doctest::Approx(1.0 / (8.0 * std::pow(kTau, 3))).epsilon(1e-12));
    CHECK(et.sigma_spectral == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0) * std::pow(kTau, 3))).epsilon(1e-12));
}

TEST_CASE("distortion vanishes for affine branches") {
    for (double t : kTs) {
        CHECK(verify_distortion(make_tent2d(t)) == 0.0);
        CHECK(verify_distortion(power(make_tent2d(t), 3)) == 0.0);
    }
}

TEST_CASE("long-branch estimate") {
    const auto sq = geom::ConvexPolygon::rectangle(0, 0, 1, 1);
    Branch b;
    b.domain = sq;
    b.jacobian_abs = 1.0;
    const PiecewiseMap id(sq, {b}, "identity");
    const LongBranchEstimate e = estimate_long_branches(id);
    CHECK(e.beta == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(e.rho == doctest::Approx(0.25));

    const LongBranchEstimate one = estimate_long_branches(make_tent2d(1.0));
    CHECK(one.beta == doctest::Approx(std::sin(std::numbers::pi / 8)));
    for (double t : kTs) {
        const LongBranchEstimate c = estimate_long_branches(power(make_tent2d(t), 3));
        CHECK(c.per_branch.size() == 8);
        for (const BranchGeometry& g : c.per_branch) CHECK(g.theta_min >= std::numbers::pi / 4 - 1e-9);
        CHECK(c.beta >= std::sin(std::numbers::pi / 8) - 1e-9);
        CHECK(c.rho > 0.0);
    }
}

TEST_CASE("certify") {
    const double beta = std::sin(std::numbers::pi / 8);
    const ConditionCertificate p1 = certify(power(make_tent2d(1.0), 3), NormConvention::PaperFormula);
    CHECK(p1.lambda == doctest::Approx(0.125 * (1.0 + 1.0 / beta)).epsilon(1e-12));
    CHECK(p1.satisfied);
    CHECK(p1.K1 == doctest::Approx(p1.K / (1.0 - p1.lambda)));
    CHECK(p1.K == doctest::Approx(1.0 / (p1.beta * p1.rho)));

    const ConditionCertificate s = certify(power(make_tent2d(tau()), 3), NormConvention::Spectral);
    CHECK(s.lambda == doctest::Approx(s.sigma_spectral * (1.0 + 1.0 / beta)).epsilon(1e-9));
    CHECK(s.lambda >= 1.0);
    CHECK_FALSE(s.satisfied);
    CHECK(std::isinf(s.K1));
}

TEST_CASE("property: lambda is non-increasing in t") {
    for (NormConvention c : {NormConvention::MaxEntry, NormConvention::PaperFormula}) {
        double previous = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 10; ++k) {
            const double t = kTau + (1.0 - kTau) * k / 10.0;
            const double lambda = certify(power(make_tent2d(std::min(t, 1.0)), 3), c).lambda;
            CHECK(lambda <= previous + 1e-12);
            previous = lambda;
        }
    }
}

TEST_CASE("parse_convention") {
    CHECK(parse_convention("spectral") == NormConvention::Spectral);
    CHECK(parse_convention("Max-Entry") == NormConvention::MaxEntry);
    CHECK(parse_convention("paper") == NormConvention::PaperFormula);
    CHECK_THROWS_AS(parse_convention("frobenius"), Error);
}

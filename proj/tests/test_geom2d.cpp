#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwexp/error.hpp"
#include "pwexp/geom2d.hpp"
#include "support.hpp"

using namespace pwexp;
using namespace pwexp::geom;
using pwexp::testing::random_convex;
using pwexp::testing::shoelace;

namespace {

const ConvexPolygon kT = ConvexPolygon::triangle({0, 0}, {2, 0}, {1, 1});
const ConvexPolygon kT0 = ConvexPolygon::triangle({0, 0}, {1, 0}, {1, 1});
const ConvexPolygon kT1 = ConvexPolygon::triangle({1, 0}, {2, 0}, {1, 1});

bool same_vertex_set(const ConvexPolygon& a, const std::vector<Point2>& pts) {
    if (a.size() != pts.size()) return false;
    for (const Point2& p : pts) {
        bool found = false;
        for (const Point2& q : a.vertices()) found = found || distance(p, q) < 1e-12;
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("area of reference triangles") {
    CHECK(area(kT) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(area(kT0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}}).empty());
    CHECK(area(ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}})) == 0.0);
}

TEST_CASE("from_vertices normalizes orientation and rejects non-convex input") {
    const ConvexPolygon cw = ConvexPolygon::from_vertices({{0, 0}, {1, 1}, {1, 0}});
    CHECK(cw.area() == doctest::Approx(0.5));
    CHECK(cross(cw.vertices()[1] - cw.vertices()[0], cw.vertices()[2] - cw.vertices()[1]) > 0.0);
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}), Error);
    // Collinear midpoint is dropped.
    CHECK(ConvexPolygon::from_vertices({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}}).size() == 3);
}

TEST_CASE("clip against half-planes") {
    // {x <= 0.5}
    const ConvexPolygon half = clip(kT0, HalfPlane{{1, 0}, 0.5});
    CHECK(half.area() == doctest::Approx(0.125));
    CHECK(same_vertex_set(half, {{0, 0}, {0.5, 0}, {0.5, 0.5}}));
    CHECK(same_vertex_set(clip(kT0, HalfPlane{{1, 0}, 5.0}), kT0.vertices()));
    CHECK(clip(kT0, HalfPlane{{1, 0}, 5.0}.complement()).empty());
}

TEST_CASE("intersect") {
    CHECK(same_vertex_set(intersect(kT, kT), kT.vertices()));
    CHECK(intersect(kT0, kT1).empty());
    const auto sq = ConvexPolygon::rectangle(0, 0, 1, 1);
    const auto shifted = ConvexPolygon::rectangle(0.5, 0, 1.5, 1);
    CHECK(intersect(sq, shifted).area() == doctest::Approx(0.5));
}

TEST_CASE("subtract returns convex pieces covering the difference") {
    const auto sq = ConvexPolygon::rectangle(0, 0, 1, 1);
    const auto hole = ConvexPolygon::rectangle(0.25, 0.25, 0.75, 0.75);
    ConvexPolygon common;
    const auto pieces = subtract(sq, hole, &common);
    double total = 0.0;
    for (const auto& p : pieces) total += p.area();
    CHECK(total == doctest::Approx(0.75));
    CHECK(common.area() == doctest::Approx(0.25));
    CHECK(subtract(sq, ConvexPolygon::rectangle(2, 2, 3, 3)).size() == 1);
    CHECK(subtract(hole, sq).empty());
}

TEST_CASE("affine images of the tent branches") {
    const AffineMap2 left{{1, 1, 1, -1}, {0, 0}};
    const AffineMap2 right{{-1, 1, -1, -1}, {2, 2}};
    CHECK(same_vertex_set(affine_image(left, kT0), kT.vertices()));
    CHECK(same_vertex_set(affine_image(right, kT1), kT.vertices()));
    CHECK(same_vertex_set(affine_image(AffineMap2{}, kT0), kT0.vertices()));
}

TEST_CASE("matrix norms") {
    const MatrixNorms id = matrix_norms(Matrix2::identity());
    CHECK(id.spectral == doctest::Approx(1.0));
    CHECK(id.max_entry == 1.0);
    const MatrixNorms d = matrix_norms({2, 0, 0, 3});
    CHECK(d.spectral == doctest::Approx(3.0));
    CHECK(d.max_entry == 3.0);
    CHECK(d.det == 6.0);
    CHECK_THROWS_AS(Matrix2({1, 2, 2, 4}).inverse(), Error);
}

TEST_CASE("minimum interior angle") {
    CHECK(min_interior_angle(ConvexPolygon::rectangle(0, 0, 1, 1)) == doctest::Approx(std::numbers::pi / 2));
    CHECK(min_interior_angle(kT0) == doctest::Approx(std::numbers::pi / 4));
    const auto eq = ConvexPolygon::triangle({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2});
    CHECK(min_interior_angle(eq) == doctest::Approx(std::numbers::pi / 3));
}

TEST_CASE("inradius") {
    CHECK(inradius(ConvexPolygon::rectangle(0, 0, 1, 1)) == doctest::Approx(0.5));
    // Right triangle: r = (a + b - c) / 2.
    CHECK(inradius(kT0) == doctest::Approx((1.0 + 1.0 - std::sqrt(2.0)) / 2.0));
    CHECK(inradius(ConvexPolygon::rectangle(0, 0, 2, 1)) == doctest::Approx(0.5));
    // Any triangle: r = 2A / perimeter.
    Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        const auto tri = random_convex(rng, {0, 0}, 1.0, 0.6, 3, 3);
        CHECK(inradius(tri) == doctest::Approx(2.0 * tri.area() / tri.perimeter()).epsilon(1e-9));
    }
}

TEST_CASE("property: area additivity under clipping") {
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_convex(rng, {rng.uniform(), rng.uniform()}, 0.2 + rng.uniform(), 0.2 + rng.uniform());
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        const HalfPlane h{{std::cos(a), std::sin(a)}, rng.uniform()};
        CHECK(std::abs(clip(p, h).area() + clip(p, h.complement()).area() - p.area()) <= kEpsArea);
        CHECK(p.area() == doctest::Approx(shoelace(p.vertices())).epsilon(1e-14));
    }
}

TEST_CASE("property: affine area scaling") {
    Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_convex(rng, {0, 0}, 0.2 + rng.uniform(), 0.2 + rng.uniform());
        const Matrix2 m{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1, rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
        if (std::abs(m.det()) < 1e-3) continue;
        const ConvexPolygon img = affine_image(AffineMap2{m, {rng.uniform(), rng.uniform()}}, p);
        CHECK(std::abs(img.area() - std::abs(m.det()) * p.area()) <= kEpsArea);
    }
}

TEST_CASE("property: intersection area is bounded by both operands") {
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_convex(rng, {rng.uniform(), rng.uniform()}, 0.5, 0.5);
        const auto b = random_convex(rng, {rng.uniform(), rng.uniform()}, 0.5, 0.5);
        CHECK(intersect(a, b).area() <= std::min(a.area(), b.area()) + kEpsArea);
        // Monte Carlo oracle for the intersection area.
        if (k % 20 == 0) {
            const Box box = a.bounds();
            const int n = 40000;
            int hits = 0;
            for (int s = 0; s < n; ++s) {
                const Point2 q{box.xmin + (box.xmax - box.xmin) * rng.uniform(),
                               box.ymin + (box.ymax - box.ymin) * rng.uniform()};
                hits += a.contains(q, 0.0) && b.contains(q, 0.0);
            }
            const double est = hits * (box.xmax - box.xmin) * (box.ymax - box.ymin) / n;
            CHECK(intersect(a, b).area() == doctest::Approx(est).epsilon(0.02).scale(1.0));
        }
    }
}

TEST_CASE("property: spectral norms of inverses") {
    Rng rng(14);
    for (int k = 0; k < 500; ++k) {
        const Matrix2 m{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2, rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
        if (std::abs(m.det()) < 1e-3) continue;
        const double s = matrix_norms(m).spectral;
        const double si = matrix_norms(m.inverse()).spectral;
        CHECK(s * si >= 1.0 - 1e-12);
        CHECK(si >= 1.0 / s - 1e-12);
    }
    for (int k = 0; k < 100; ++k) {
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        const double s = 4.0 * rng.uniform() - 2.0;
        const Matrix2 rot{s * std::cos(a), -s * std::sin(a), s * std::sin(a), s * std::cos(a)};
        const Matrix2 refl{s * std::cos(a), s * std::sin(a), s * std::sin(a), -s * std::cos(a)};
        CHECK(matrix_norms(rot).spectral == doctest::Approx(std::abs(s)).epsilon(1e-12));
        CHECK(matrix_norms(refl).spectral == doctest::Approx(std::abs(s)).epsilon(1e-12));
    }
}

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pwexp::geom {

/// Vertex and distance tolerance.
inline constexpr double kEpsGeom = 1e-9;
/// Polygons with smaller area are treated as empty.
inline constexpr double kEpsArea = 1e-12;
/// Side-of-line tolerance used by half-plane clipping.
inline constexpr double kEpsSide = 1e-12;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

struct Box {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    bool overlaps(const Box& o, double pad = kEpsGeom) const {
        return xmin <= o.xmax + pad && o.xmin <= xmax + pad && ymin <= o.ymax + pad && o.ymin <= ymax + pad;
    }
};

/// The closed half-plane {p : normal . p <= offset}, normal of unit length.
struct HalfPlane {
    Point2 normal;
    double offset = 0.0;

    /// Half-plane to the left of the directed segment a -> b.
    static HalfPlane left_of(Point2 a, Point2 b);

    double signed_distance(Point2 p) const { return dot(normal, p) - offset; }
    HalfPlane complement() const { return {{-normal.x, -normal.y}, -offset}; }
};

/// Convex polygon with counter-clockwise vertices. A default-constructed
/// polygon is Empty. Construction normalizes orientation, drops repeated and
/// collinear vertices, and collapses anything thinner than kEpsArea to Empty.
class ConvexPolygon {
public:
    ConvexPolygon() = default;

    /// Validating constructor; throws NonConvex for reflex corners.
    static ConvexPolygon from_vertices(std::vector<Point2> vertices);
    /// Skips the convexity check. Used for results of clipping and affine maps.
    static ConvexPolygon assume_convex(std::vector<Point2> vertices);

    static ConvexPolygon triangle(Point2 a, Point2 b, Point2 c);
    static ConvexPolygon rectangle(double x0, double y0, double x1, double y1);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    double area() const { return area_; }
    double perimeter() const;
    Point2 centroid() const;
    Box bounds() const { return box_; }
    bool contains(Point2 p, double tol = kEpsGeom) const;

    /// Interior-side half-planes of every edge.
    std::vector<HalfPlane> edge_halfplanes() const;

private:
    explicit ConvexPolygon(std::vector<Point2> normalized);

    std::vector<Point2> vertices_;
    double area_ = 0.0;
    Box box_;
};

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Matrix2 {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    static Matrix2 identity() { return {}; }

    double det() const { return a * d - b * c; }
    Matrix2 transpose() const { return {a, c, b, d}; }
    /// Throws SingularMatrix when |det| <= kEpsGeom.
    Matrix2 inverse() const;
    Point2 operator*(Point2 p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
    Matrix2 operator*(const Matrix2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

/// p -> linear * p + shift.
struct AffineMap2 {
    Matrix2 linear;
    Point2 shift;

    Point2 operator()(Point2 p) const { return linear * p + shift; }
    AffineMap2 inverse() const;
};

/// outer o inner.
AffineMap2 compose(const AffineMap2& outer, const AffineMap2& inner);

struct MatrixNorms {
    double spectral = 0.0;
    double max_entry = 0.0;
    double det = 0.0;
};

/// Largest singular value via the closed-form 2x2 SVD, plus max |entry| and det.
MatrixNorms matrix_norms(const Matrix2& m);

double area(const ConvexPolygon& p);
ConvexPolygon clip(const ConvexPolygon& p, const HalfPlane& h);
ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);

/// Convex pieces covering a \ b (up to boundaries). Optionally returns a ∩ b.
std::vector<ConvexPolygon> subtract(const ConvexPolygon& a, const ConvexPolygon& b, ConvexPolygon* common = nullptr);

/// Throws SingularMatrix if |det| <= kEpsGeom.
ConvexPolygon affine_image(const AffineMap2& m, const ConvexPolygon& p);

/// {p : m(p) in h}.
HalfPlane preimage(const AffineMap2& m, const HalfPlane& h);

/// Radians. Throws DegeneratePolygon for Empty input.
double min_interior_angle(const ConvexPolygon& p);

/// Radius of the largest inscribed disk. Throws DegeneratePolygon for Empty input.
double inradius(const ConvexPolygon& p);

/// Distance from p to the segment [a, b].
double segment_distance(Point2 p, Point2 a, Point2 b);

}  // namespace pwexp::geom

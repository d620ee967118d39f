#include "pwexp/geom2d.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "pwexp/error.hpp"

namespace pwexp::geom {

namespace {

double signed_area(const std::vector<Point2>& v) {
    double s = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = v[i];
        const Point2& q = v[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

void drop_repeated(std::vector<Point2>& v) {
    bool changed = true;
    while (changed && v.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() > 1; ++i) {
            const std::size_t j = (i + 1) % v.size();
            if (distance(v[i], v[j]) < kEpsGeom) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
                break;
            }
        }
    }
}

void drop_collinear(std::vector<Point2>& v) {
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& a = v[(i + n - 1) % n];
            const Point2& b = v[i];
            const Point2& c = v[(i + 1) % n];
            const double base = distance(a, c);
            if (base < kEpsGeom || std::abs(cross(c - a, b - a)) <= kEpsSide * base) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
}

// Shared normalization; returns an empty list for degenerate input.
std::vector<Point2> normalize(std::vector<Point2> v) {
    drop_repeated(v);
    if (v.size() < 3) return {};
    const double a = signed_area(v);
    if (std::abs(a) < kEpsArea) return {};
    if (a < 0.0) std::reverse(v.begin(), v.end());
    drop_collinear(v);
    if (v.size() < 3 || signed_area(v) < kEpsArea) return {};
    return v;
}

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

HalfPlane HalfPlane::left_of(Point2 a, Point2 b) {
    const Point2 e = b - a;
    const double len = norm(e);
    if (len < kEpsGeom) throw Error(ErrorKind::DegeneratePolygon, "half-plane from a zero-length edge");
    const Point2 n{e.y / len, -e.x / len};
    return {n, dot(n, a)};
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> normalized) : vertices_(std::move(normalized)) {
    if (vertices_.empty()) return;
    area_ = signed_area(vertices_);
    box_ = {vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
    for (const Point2& p : vertices_) {
        box_.xmin = std::min(box_.xmin, p.x);
        box_.xmax = std::max(box_.xmax, p.x);
        box_.ymin = std::min(box_.ymin, p.y);
        box_.ymax = std::max(box_.ymax, p.y);
    }
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point2> vertices) {
    for (const Point2& p : vertices) {
        if (!finite(p)) throw Error(ErrorKind::InvalidInput, "non-finite polygon vertex");
    }
    drop_repeated(vertices);
    if (vertices.size() >= 3 && signed_area(vertices) < 0.0) {
        std::reverse(vertices.begin(), vertices.end());
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; n >= 3 && i < n; ++i) {
        const Point2 e1 = vertices[(i + 1) % n] - vertices[i];
        const Point2 e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        if (cross(e1, e2) < -kEpsGeom * norm(e1) * norm(e2)) {
            throw Error(ErrorKind::NonConvex, "polygon has a reflex vertex");
        }
    }
    return ConvexPolygon(normalize(std::move(vertices)));
}

ConvexPolygon ConvexPolygon::assume_convex(std::vector<Point2> vertices) {
    return ConvexPolygon(normalize(std::move(vertices)));
}

ConvexPolygon ConvexPolygon::triangle(Point2 a, Point2 b, Point2 c) { return from_vertices({a, b, c}); }

ConvexPolygon ConvexPolygon::rectangle(double x0, double y0, double x1, double y1) {
    return from_vertices({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double ConvexPolygon::perimeter() const {
    double s = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) s += distance(vertices_[i], vertices_[(i + 1) % n]);
    return s;
}

Point2 ConvexPolygon::centroid() const {
    if (empty()) return {};
    double cx = 0.0;
    double cy = 0.0;
    const std::size_t n = vertices_.size();
    // Relative to the first vertex for accuracy on small cells.
    const Point2 o = vertices_[0];
    double a2 = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Point2 p = vertices_[i] - o;
        const Point2 q = vertices_[i + 1] - o;
        const double w = cross(p, q);
        a2 += w;
        cx += w * (p.x + q.x);
        cy += w * (p.y + q.y);
    }
    return {o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2)};
}

bool ConvexPolygon::contains(Point2 p, double tol) const {
    if (empty()) return false;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (HalfPlane::left_of(vertices_[i], vertices_[(i + 1) % n]).signed_distance(p) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<HalfPlane> ConvexPolygon::edge_halfplanes() const {
    std::vector<HalfPlane> out;
    const std::size_t n = vertices_.size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(HalfPlane::left_of(vertices_[i], vertices_[(i + 1) % n]));
    return out;
}

Matrix2 Matrix2::inverse() const {
    const double dt = det();
    if (std::abs(dt) <= kEpsGeom) throw Error(ErrorKind::SingularMatrix, "matrix is not invertible");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

AffineMap2 AffineMap2::inverse() const {
    const Matrix2 li = linear.inverse();
    const Point2 s = li * shift;
    return {li, {-s.x, -s.y}};
}

AffineMap2 compose(const AffineMap2& outer, const AffineMap2& inner) {
    return {outer.linear * inner.linear, outer.linear * inner.shift + outer.shift};
}

MatrixNorms matrix_norms(const Matrix2& m) {
    // Largest singular value from the conformal and anticonformal parts;
    // no cancellation when the two singular values are close.
    const double dt = m.det();
    MatrixNorms out;
    out.spectral = 0.5 * (std::hypot(m.a + m.d, m.c - m.b) + std::hypot(m.a - m.d, m.b + m.c));
    out.max_entry = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
    out.det = dt;
    return out;
}

double area(const ConvexPolygon& p) { return p.area(); }

ConvexPolygon clip(const ConvexPolygon& p, const HalfPlane& h) {
    if (p.empty()) return {};
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    std::vector<double> d(n);
    bool any_out = false;
    bool any_in = false;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = h.signed_distance(v[i]);
        if (d[i] > kEpsSide) {
            any_out = true;
        } else {
            any_in = true;
        }
    }
    if (!any_out) return p;
    if (!any_in) return {};

    std::vector<Point2> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const bool cur_in = d[i] <= kEpsSide;
        const bool nxt_in = d[j] <= kEpsSide;
        if (cur_in) out.push_back(v[i]);
        const bool crosses = (cur_in && d[i] < -kEpsSide && !nxt_in) || (!cur_in && nxt_in && d[j] < -kEpsSide);
        if (crosses) {
            const double s = d[i] / (d[i] - d[j]);
            out.push_back(v[i] + s * (v[j] - v[i]));
        }
    }
    return ConvexPolygon::assume_convex(std::move(out));
}

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.empty() || b.empty() || !a.bounds().overlaps(b.bounds())) return {};
    ConvexPolygon out = a;
    const auto& v = b.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n && !out.empty(); ++i) {
        out = clip(out, HalfPlane::left_of(v[i], v[(i + 1) % n]));
    }
    return out;
}

std::vector<ConvexPolygon> subtract(const ConvexPolygon& a, const ConvexPolygon& b, ConvexPolygon* common) {
    std::vector<ConvexPolygon> pieces;
    if (a.empty()) {
        if (common) *common = {};
        return pieces;
    }
    if (b.empty() || !a.bounds().overlaps(b.bounds())) {
        if (common) *common = {};
        pieces.push_back(a);
        return pieces;
    }
    ConvexPolygon rest = a;
    const auto& v = b.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n && !rest.empty(); ++i) {
        const HalfPlane h = HalfPlane::left_of(v[i], v[(i + 1) % n]);
        ConvexPolygon outside = clip(rest, h.complement());
        if (!outside.empty()) pieces.push_back(std::move(outside));
        rest = clip(rest, h);
    }
    if (common) *common = std::move(rest);
    return pieces;
}

ConvexPolygon affine_image(const AffineMap2& m, const ConvexPolygon& p) {
    if (std::abs(m.linear.det()) <= kEpsGeom) {
        throw Error(ErrorKind::SingularMatrix, "affine map is not invertible");
    }
    if (p.empty()) return {};
    std::vector<Point2> out;
    out.reserve(p.size());
    for (const Point2& q : p.vertices()) out.push_back(m(q));
    // assume_convex restores CCW order for orientation-reversing maps.
    return ConvexPolygon::assume_convex(std::move(out));
}

HalfPlane preimage(const AffineMap2& m, const HalfPlane& h) {
    const Point2 n = m.linear.transpose() * h.normal;
    const double len = norm(n);
    if (len <= kEpsGeom) throw Error(ErrorKind::SingularMatrix, "affine map is not invertible");
    const double off = h.offset - dot(h.normal, m.shift);
    return {{n.x / len, n.y / len}, off / len};
}

double min_interior_angle(const ConvexPolygon& p) {
    if (p.size() < 3) throw Error(ErrorKind::DegeneratePolygon, "angle of an empty polygon");
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = v[(i + n - 1) % n] - v[i];
        const Point2 next = v[(i + 1) % n] - v[i];
        best = std::min(best, std::atan2(cross(next, prev), dot(next, prev)));
    }
    return best;
}

double inradius(const ConvexPolygon& p) {
    if (p.size() < 3) throw Error(ErrorKind::DegeneratePolygon, "inradius of an empty polygon");
    // LP: maximize r subject to n_k . c + r <= o_k. The optimum sits on a basic
    // solution with three tight constraints, so enumerate them.
    const std::vector<HalfPlane> hs = p.edge_halfplanes();
    const std::size_t n = hs.size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const std::array<const HalfPlane*, 3> rows{&hs[i], &hs[j], &hs[k]};
                auto det3 = [&](int col) {
                    auto e = [&](int r, int c) {
                        if (c == col) return rows[static_cast<std::size_t>(r)]->offset;
                        if (c == 0) return rows[static_cast<std::size_t>(r)]->normal.x;
                        if (c == 1) return rows[static_cast<std::size_t>(r)]->normal.y;
                        return 1.0;
                    };
                    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
                };
                const double dt = det3(-1);
                if (std::abs(dt) < 1e-14) continue;
                const Point2 c{det3(0) / dt, det3(1) / dt};
                const double r = det3(2) / dt;
                if (r <= best) continue;
                bool feasible = true;
                for (const HalfPlane& h : hs) {
                    if (h.signed_distance(c) + r > kEpsGeom) {
                        feasible = false;
                        break;
                    }
                }
                if (feasible) best = r;
            }
        }
    }
    return best;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 e = b - a;
    const double len2 = dot(e, e);
    if (len2 == 0.0) return distance(p, a);
    const double s = std::clamp(dot(p - a, e) / len2, 0.0, 1.0);
    return distance(p, a + s * e);
}

}  // namespace pwexp::geom

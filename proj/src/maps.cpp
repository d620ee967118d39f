#include "pwexp/maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "pwexp/error.hpp"

namespace pwexp {

using geom::AffineMap2;
using geom::ConvexPolygon;
using geom::Matrix2;
using geom::Point2;

double tau() { return std::pow(std::numbers::sqrt2 + 1.0, 0.25) / std::numbers::sqrt2; }

PiecewiseMap::PiecewiseMap(ConvexPolygon region, std::vector<Branch> branches, std::string label,
                           std::optional<TentTag> tag)
    : region_(std::move(region)), branches_(std::move(branches)), label_(std::move(label)), tag_(tag) {}

std::optional<std::size_t> PiecewiseMap::locate(Point2 p, double tol) const {
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        if (branches_[i].domain.contains(p, tol)) return i;
    }
    return std::nullopt;
}

ConvexPolygon tent_region() { return ConvexPolygon::triangle({0.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}); }

PiecewiseMap make_tent2d(double t) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw Error(ErrorKind::ParameterOutOfRange, "tent parameter must lie in (0, 1], got " + std::to_string(t));
    }
    const ConvexPolygon left = ConvexPolygon::triangle({0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0});
    const ConvexPolygon right = ConvexPolygon::triangle({1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0});
    // (x, y) -> (t(x+y), t(x-y)) on the left, (t(2-x+y), t(2-x-y)) on the right.
    const AffineMap2 fold_left{{t, t, t, -t}, {0.0, 0.0}};
    const AffineMap2 fold_right{{-t, t, -t, -t}, {2.0 * t, 2.0 * t}};

    std::vector<Branch> branches;
    int index = 0;
    for (const auto& [dom, map] : {std::pair{left, fold_left}, std::pair{right, fold_right}}) {
        Branch b;
        b.domain = dom;
        b.map = map;
        b.jacobian_abs = std::abs(map.linear.det());
        b.itinerary = {index++};
        b.chained_inverse_bound = geom::matrix_norms(map.linear.inverse()).max_entry;
        branches.push_back(std::move(b));
    }
    char label[64];
    std::snprintf(label, sizeof label, "tent2d t=%.17g power=1", t);
    return PiecewiseMap(tent_region(), std::move(branches), label, TentTag{t, 1});
}

Point2 apply(const PiecewiseMap& m, Point2 p) {
    const auto idx = m.locate(p);
    if (!idx) throw Error(ErrorKind::OutsideRegion, "point lies outside every branch domain");
    return m.branches()[*idx].map(p);
}

PiecewiseMap power(const PiecewiseMap& m, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "power must be >= 1");
    std::vector<Branch> current = m.branches();
    for (int step = 1; step < n; ++step) {
        std::vector<Branch> next;
        for (const Branch& b : current) {
            for (const Branch& base : m.branches()) {
                // Points of b.domain whose image under b lands in base.domain.
                ConvexPolygon dom = b.domain;
                for (const geom::HalfPlane& h : base.domain.edge_halfplanes()) {
                    dom = geom::clip(dom, geom::preimage(b.map, h));
                    if (dom.empty()) break;
                }
                if (dom.empty()) continue;
                Branch c;
                c.domain = std::move(dom);
                c.map = geom::compose(base.map, b.map);
                c.jacobian_abs = std::abs(c.map.linear.det());
                c.itinerary = b.itinerary;
                c.itinerary.insert(c.itinerary.end(), base.itinerary.begin(), base.itinerary.end());
                c.chained_inverse_bound = b.chained_inverse_bound * base.chained_inverse_bound;
                next.push_back(std::move(c));
            }
        }
        current = std::move(next);
    }
    std::optional<TentTag> tag = m.tag();
    if (tag) tag->power *= n;
    std::string label = m.label();
    if (tag) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "tent2d t=%.17g power=%d", tag->t, tag->power);
        label = buf;
    } else if (n > 1) {
        label += " ^" + std::to_string(n);
    }
    return PiecewiseMap(m.region(), std::move(current), std::move(label), tag);
}

ExpansionBounds verify_expansion(const PiecewiseMap& m) {
    ExpansionBounds out;
    for (const Branch& b : m.branches()) {
        const geom::MatrixNorms inv = geom::matrix_norms(b.map.linear.inverse());
        out.sigma_spectral = std::max(out.sigma_spectral, inv.spectral);
        out.sigma_max_entry = std::max(out.sigma_max_entry, inv.max_entry);
        out.sigma_chained = std::max(out.sigma_chained, b.chained_inverse_bound);
    }
    return out;
}

double verify_distortion(const PiecewiseMap&) { return 0.0; }

LongBranchEstimate estimate_long_branches(const PiecewiseMap& m) {
    LongBranchEstimate out;
    out.beta = std::numeric_limits<double>::infinity();
    out.rho = std::numeric_limits<double>::infinity();
    for (const Branch& b : m.branches()) {
        BranchGeometry g;
        g.itinerary = b.itinerary;
        g.theta_min = std::numeric_limits<double>::infinity();
        g.rho = std::numeric_limits<double>::infinity();
        for (const ConvexPolygon& s : {b.domain, b.image()}) {
            if (s.size() < 3) throw Error(ErrorKind::DegeneratePolygon, "degenerate branch polygon");
            g.theta_min = std::min(g.theta_min, geom::min_interior_angle(s));
            g.rho = std::min(g.rho, 0.5 * geom::inradius(s));
        }
        g.beta = std::sin(0.5 * g.theta_min);
        out.beta = std::min(out.beta, g.beta);
        out.rho = std::min(out.rho, g.rho);
        out.per_branch.push_back(std::move(g));
    }
    return out;
}

const char* to_string(NormConvention c) {
    switch (c) {
        case NormConvention::Spectral: return "Spectral";
        case NormConvention::MaxEntry: return "MaxEntry";
        case NormConvention::PaperFormula: return "PaperFormula";
    }
    return "?";
}

NormConvention parse_convention(const std::string& name) {
    std::string s;
    for (char ch : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (s == "spectral") return NormConvention::Spectral;
    if (s == "max-entry" || s == "maxentry" || s == "max_entry") return NormConvention::MaxEntry;
    if (s == "paper" || s == "paperformula" || s == "paper-formula") return NormConvention::PaperFormula;
    throw Error(ErrorKind::InvalidInput, "unknown norm convention '" + name + "'");
}

ConditionCertificate certify(const PiecewiseMap& m, NormConvention convention) {
    const ExpansionBounds sigma = verify_expansion(m);
    const LongBranchEstimate lb = estimate_long_branches(m);
    ConditionCertificate c;
    c.t = m.tag() ? m.tag()->t : std::numeric_limits<double>::quiet_NaN();
    c.power = m.tag() ? m.tag()->power : 1;
    c.sigma_spectral = sigma.sigma_spectral;
    c.sigma_max_entry = sigma.sigma_max_entry;
    c.sigma_paper = sigma.sigma_chained;
    c.D = verify_distortion(m);
    c.beta = lb.beta;
    c.rho = lb.rho;
    c.norm_convention = convention;

    const double inv_beta = 1.0 + 1.0 / c.beta;
    c.lambda_spectral = c.sigma_spectral * inv_beta;
    c.lambda_paper = c.sigma_paper * inv_beta;
    double sigma_sel = c.sigma_spectral;
    if (convention == NormConvention::MaxEntry) sigma_sel = c.sigma_max_entry;
    if (convention == NormConvention::PaperFormula) sigma_sel = c.sigma_paper;
    c.lambda = sigma_sel * inv_beta;
    c.K = c.D + 1.0 / (c.beta * c.rho) + c.D / c.beta;
    c.K1 = c.lambda < 1.0 ? c.K / (1.0 - c.lambda) : std::numeric_limits<double>::infinity();

    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    c.satisfied = c.lambda < 1.0 && positive(sigma_sel) && positive(c.beta) && positive(c.rho);
    return c;
}

}  // namespace pwexp

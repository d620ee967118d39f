#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwexp/geom2d.hpp"

namespace pwexp {

/// Lower end of the tent-family parameter interval, (sqrt(2)+1)^(1/4) / sqrt(2).
double tau();

/// One affine piece of a piecewise map.
struct Branch {
    geom::ConvexPolygon domain;
    geom::AffineMap2 map;
    double jacobian_abs = 0.0;
    /// Indices of the base branches, in application order.
    std::vector<int> itinerary;
    /// Product over the itinerary of the max-entry norms of the inverse
    /// single-step linear parts.
    double chained_inverse_bound = 0.0;

    geom::ConvexPolygon image() const { return geom::affine_image(map, domain); }
};

/// Parameter record for maps built from the tent family.
struct TentTag {
    double t = 1.0;
    int power = 1;
};

class PiecewiseMap {
public:
    PiecewiseMap(geom::ConvexPolygon region, std::vector<Branch> branches, std::string label,
                 std::optional<TentTag> tag = std::nullopt);

    const geom::ConvexPolygon& region() const { return region_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const std::string& label() const { return label_; }
    const std::optional<TentTag>& tag() const { return tag_; }

    /// Lowest-index branch whose domain contains p, if any.
    std::optional<std::size_t> locate(geom::Point2 p, double tol = geom::kEpsGeom) const;

private:
    geom::ConvexPolygon region_;
    std::vector<Branch> branches_;
    std::string label_;
    std::optional<TentTag> tag_;
};

/// The triangle (0,0), (2,0), (1,1).
geom::ConvexPolygon tent_region();

/// Two-branch tent map on the triangle; requires 0 < t <= 1.
PiecewiseMap make_tent2d(double t);

/// Image of p; points on shared boundaries use the lowest-index branch.
/// Throws OutsideRegion.
geom::Point2 apply(const PiecewiseMap& m, geom::Point2 p);

/// n-fold composition built by pulling back the base partition along every
/// itinerary. Branches are ordered lexicographically by itinerary.
PiecewiseMap power(const PiecewiseMap& m, int n);

struct ExpansionBounds {
    double sigma_spectral = 0.0;
    double sigma_max_entry = 0.0;
    double sigma_chained = 0.0;
};

ExpansionBounds verify_expansion(const PiecewiseMap& m);

/// Always zero: affine branches have constant Jacobian.
double verify_distortion(const PiecewiseMap& m);

struct BranchGeometry {
    std::vector<int> itinerary;
    double theta_min = 0.0;
    double beta = 0.0;
    double rho = 0.0;
};

struct LongBranchEstimate {
    double beta = 0.0;
    double rho = 0.0;
    std::vector<BranchGeometry> per_branch;
};

/// beta = sin(theta_min / 2), rho = inradius / 2, minimized over branch
/// domains and images.
LongBranchEstimate estimate_long_branches(const PiecewiseMap& m);

enum class NormConvention { Spectral, MaxEntry, PaperFormula };

const char* to_string(NormConvention c);
/// Accepts "spectral", "max-entry"/"maxentry", "paper"/"paperformula". Throws InvalidInput.
NormConvention parse_convention(const std::string& name);

struct ConditionCertificate {
    double t = 0.0;
    int power = 1;
    double sigma_spectral = 0.0;
    double sigma_max_entry = 0.0;
    double sigma_paper = 0.0;
    double D = 0.0;
    double beta = 0.0;
    double rho = 0.0;
    double lambda = 0.0;  ///< for the selected convention
    double lambda_spectral = 0.0;
    double lambda_paper = 0.0;
    double K = 0.0;
    double K1 = 0.0;  ///< +inf when lambda >= 1
    NormConvention norm_convention = NormConvention::Spectral;
    bool satisfied = false;
};

ConditionCertificate certify(const PiecewiseMap& m, NormConvention convention);

}  // namespace pwexp

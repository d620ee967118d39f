#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pwexp/geom2d.hpp"

namespace pwexp::detail {

// Uniform bucket grid over bounding boxes.
class BoxIndex {
public:
    explicit BoxIndex(std::span<const geom::Box> boxes) {
        if (boxes.empty()) return;
        extent_ = boxes[0];
        for (const geom::Box& b : boxes) {
            extent_.xmin = std::min(extent_.xmin, b.xmin);
            extent_.ymin = std::min(extent_.ymin, b.ymin);
            extent_.xmax = std::max(extent_.xmax, b.xmax);
            extent_.ymax = std::max(extent_.ymax, b.ymax);
        }
        const int side = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(boxes.size()))), 1, 512);
        nx_ = ny_ = side;
        cw_ = std::max((extent_.xmax - extent_.xmin) / nx_, 1e-12);
        ch_ = std::max((extent_.ymax - extent_.ymin) / ny_, 1e-12);
        buckets_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            const auto [x0, x1, y0, y1] = span_of(boxes[i]);
            for (int iy = y0; iy <= y1; ++iy) {
                for (int ix = x0; ix <= x1; ++ix) buckets_[bucket(ix, iy)].push_back(i);
            }
        }
    }

    // Sorted indices of boxes that may overlap b.
    std::vector<std::size_t> query(const geom::Box& b) const {
        std::vector<std::size_t> out;
        if (buckets_.empty() || !b.overlaps(extent_)) return out;
        const auto [x0, x1, y0, y1] = span_of(b);
        for (int iy = y0; iy <= y1; ++iy) {
            for (int ix = x0; ix <= x1; ++ix) {
                const auto& v = buckets_[bucket(ix, iy)];
                out.insert(out.end(), v.begin(), v.end());
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    struct Span {
        int x0, x1, y0, y1;
    };

    Span span_of(const geom::Box& b) const {
        const double pad = geom::kEpsGeom;
        auto cx = [&](double x) {
            return std::clamp(static_cast<int>(std::floor((x - extent_.xmin) / cw_)), 0, nx_ - 1);
        };
        auto cy = [&](double y) {
            return std::clamp(static_cast<int>(std::floor((y - extent_.ymin) / ch_)), 0, ny_ - 1);
        };
        return {cx(b.xmin - pad), cx(b.xmax + pad), cy(b.ymin - pad), cy(b.ymax + pad)};
    }

    std::size_t bucket(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
    }

    geom::Box extent_;
    int nx_ = 0;
    int ny_ = 0;
    double cw_ = 1.0;
    double ch_ = 1.0;
    std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace pwexp::detail

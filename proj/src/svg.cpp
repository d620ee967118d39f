#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pwexp/error.hpp"
#include "pwexp/io.hpp"

namespace pwexp::io {

SvgHeatmap make_heatmap(const PiecewisePolyDensity& f, std::string title) {
    SvgHeatmap h;
    h.cells = f.cells();
    h.title = std::move(title);
    if (!h.cells.empty()) {
        h.vmin = h.vmax = h.cells.front().value;
        for (const DensityCell& c : h.cells) {
            h.vmin = std::min(h.vmin, c.value);
            h.vmax = std::max(h.vmax, c.value);
        }
    }
    return h;
}

std::string ramp_color(double s) {
    s = std::clamp(std::isfinite(s) ? s : 0.0, 0.0, 1.0);
    // Every channel is nondecreasing, so lightness is monotone.
    constexpr int lo[3] = {20, 25, 70};
    constexpr int hi[3] = {255, 245, 200};
    char buf[8];
    int rgb[3];
    for (int k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(lo[k] + s * (hi[k] - lo[k])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::string render_svg(const SvgHeatmap& h) {
    if (h.cells.empty()) throw Error(ErrorKind::InvalidInput, "heatmap has no cells");
    geom::Box box = h.cells.front().polygon.bounds();
    for (const DensityCell& c : h.cells) {
        const geom::Box b = c.polygon.bounds();
        box.xmin = std::min(box.xmin, b.xmin);
        box.ymin = std::min(box.ymin, b.ymin);
        box.xmax = std::max(box.xmax, b.xmax);
        box.ymax = std::max(box.ymax, b.ymax);
    }
    const double w = std::max(box.xmax - box.xmin, 1e-12);
    const double ht = std::max(box.ymax - box.ymin, 1e-12);
    const double scale = std::min(0.9 * kSvgWidth / w, 0.9 * kSvgHeight / ht);
    const double ox = 0.5 * (kSvgWidth - scale * w);
    const double oy = 0.5 * (kSvgHeight - scale * ht);
    auto sx = [&](double x) { return ox + scale * (x - box.xmin); };
    auto sy = [&](double y) { return kSvgHeight - (oy + scale * (y - box.ymin)); };
    const double range = h.vmax - h.vmin;

    std::ostringstream os;
    char buf[96];
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\"" << kSvgHeight
       << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!h.title.empty()) os << "<title>" << h.title << "</title>\n";
    os << "<g stroke=\"none\">\n";
    for (const DensityCell& c : h.cells) {
        const double s = range > 0.0 ? (c.value - h.vmin) / range : 0.0;
        os << "<path d=\"";
        const auto& v = c.polygon.vertices();
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%.3f %.3f ", i == 0 ? "M" : "L", sx(v[i].x), sy(v[i].y));
            os << buf;
        }
        os << "Z\" fill=\"" << ramp_color(s) << "\"/>\n";
    }
    os << "</g>\n";
    std::snprintf(buf, sizeof buf, "%.6f \xE2\x80\x93 %.6f", h.vmin, h.vmax);
    os << "<rect x=\"12\" y=\"12\" width=\"18\" height=\"18\" fill=\"" << ramp_color(0.0) << "\"/>\n";
    os << "<rect x=\"30\" y=\"12\" width=\"18\" height=\"18\" fill=\"" << ramp_color(1.0) << "\"/>\n";
    os << "<text x=\"56\" y=\"26\" font-family=\"monospace\" font-size=\"14\">" << buf << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

void emit_svg(const SvgHeatmap& h, const std::filesystem::path& path) { write_atomic(path, render_svg(h)); }

}  // namespace pwexp::io

#include "pwexp/io.hpp"

#include <unistd.h>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pwexp/error.hpp"

namespace pwexp::io {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) throw Error(ErrorKind::Io, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot move output into " + path.string());
    }
}

std::string density_csv(const PiecewisePolyDensity& f) {
    std::size_t max_vertices = 0;
    for (const DensityCell& c : f.cells()) max_vertices = std::max(max_vertices, c.polygon.size());
    std::ostringstream os;
    os << "cell_id,area,centroid_x,centroid_y,value,n_vertices";
    for (std::size_t k = 0; k < max_vertices; ++k) os << ",v" << k << "x,v" << k << "y";
    os << '\n';
    std::size_t id = 0;
    for (const DensityCell& c : f.cells()) {
        const geom::Point2 g = c.polygon.centroid();
        os << id++ << ',' << fmt17(c.polygon.area()) << ',' << fmt17(g.x) << ',' << fmt17(g.y) << ',' << fmt17(c.value)
           << ',' << c.polygon.size();
        for (const geom::Point2& p : c.polygon.vertices()) os << ',' << fmt17(p.x) << ',' << fmt17(p.y);
        for (std::size_t k = c.polygon.size(); k < max_vertices; ++k) os << ",,";
        os << '\n';
    }
    return os.str();
}

std::string matrix_csv(const SparseMatrix& m) {
    std::ostringstream os;
    os << "i,j,weight\n";
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
            os << it.row() << ',' << it.col() << ',' << fmt17(it.value()) << '\n';
        }
    }
    return os.str();
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream os;
    os << "t,t0,power,resolution,iterations,residual,l1_dist";
    for (TestFunction f : kTestFunctions) os << ",gap_" << name(f);
    os << '\n';
    for (const SweepRow& r : rows) {
        os << fmt17(r.t) << ',' << fmt17(r.t0) << ',' << r.power << ',' << r.resolution << ',' << r.iterations << ','
           << fmt17(r.residual) << ',' << fmt17(r.l1_dist);
        for (double g : r.weakstar_gaps) os << ',' << fmt17(g);
        os << '\n';
    }
    return os.str();
}

std::string ly_csv(std::span<const LYRow> rows) {
    std::ostringstream os;
    os << "t,convention,j,variation_j,bound,ratio\n";
    for (const LYRow& r : rows) {
        os << fmt17(r.t) << ',' << to_string(r.convention) << ',' << r.j << ',' << fmt17(r.variation_j) << ','
           << fmt17(r.bound) << ',' << fmt17(r.ratio) << '\n';
    }
    return os.str();
}

std::string orbit_csv(std::span<const OrbitStats> rows) {
    std::ostringstream os;
    os << "t,seed,n,lyapunov";
    for (TestFunction f : kTestFunctions) os << ",birkhoff_" << name(f);
    os << '\n';
    for (const OrbitStats& r : rows) {
        os << fmt17(r.t) << ',' << r.seed << ',' << r.n << ',' << fmt17(r.lyapunov);
        for (double b : r.birkhoff) os << ',' << fmt17(b);
        os << '\n';
    }
    return os.str();
}

namespace {

std::string json_number(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

}  // namespace

std::string certificate_json(const ConditionCertificate& c) {
    std::ostringstream os;
    os << "{\"t\": " << json_number(c.t) << ", \"power\": " << c.power
       << ", \"sigma_spectral\": " << json_number(c.sigma_spectral)
       << ", \"sigma_max_entry\": " << json_number(c.sigma_max_entry)
       << ", \"sigma_paper\": " << json_number(c.sigma_paper) << ", \"D\": " << json_number(c.D)
       << ", \"beta\": " << json_number(c.beta) << ", \"rho\": " << json_number(c.rho)
       << ", \"lambda\": " << json_number(c.lambda) << ", \"K\": " << json_number(c.K)
       << ", \"K1\": " << json_number(c.K1) << ", \"norm_convention\": \"" << to_string(c.norm_convention)
       << "\", \"satisfied\": " << (c.satisfied ? "true" : "false") << '}';
    return os.str();
}

std::string certificates_json(std::span<const ConditionCertificate> cs) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        out += "  " + certificate_json(cs[i]);
        out += i + 1 < cs.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

}  // namespace pwexp::io

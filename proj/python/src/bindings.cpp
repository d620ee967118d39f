#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pwexp/cli.hpp"
#include "pwexp/error.hpp"
#include "pwexp/experiments.hpp"
#include "pwexp/io.hpp"

namespace py = pybind11;
using namespace pwexp;

namespace {

py::dict certificate_dict(const ConditionCertificate& c) {
    py::dict d;
    d["t"] = c.t;
    d["power"] = c.power;
    d["sigma_spectral"] = c.sigma_spectral;
    d["sigma_max_entry"] = c.sigma_max_entry;
    d["sigma_paper"] = c.sigma_paper;
    d["D"] = c.D;
    d["beta"] = c.beta;
    d["rho"] = c.rho;
    d["lambda"] = c.lambda;
    d["K"] = c.K;
    d["K1"] = c.K1;
    d["norm_convention"] = to_string(c.norm_convention);
    d["satisfied"] = c.satisfied;
    return d;
}

py::dict gaps_dict(const std::array<double, 6>& values) {
    py::dict d;
    for (std::size_t k = 0; k < kTestFunctions.size(); ++k) d[name(kTestFunctions[k])] = values[k];
    return d;
}

PiecewisePolyDensity initial_density(const std::string& f0) {
    const geom::ConvexPolygon region = tent_region();
    if (f0 == "one") return PiecewisePolyDensity::constant(region, 1.0);
    if (f0 == "chi0") {
        return PiecewisePolyDensity::indicator(region, geom::ConvexPolygon::triangle({0, 0}, {1, 0}, {1, 1}), 2.0);
    }
    throw Error(ErrorKind::InvalidInput, "f0 must be 'one' or 'chi0'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Invariant densities of the two-dimensional tent map family";

    py::register_exception<Error>(m, "PwexpError", PyExc_ValueError);

    m.def("tau", &tau, "Lower end of the parameter interval.");

    m.def(
        "branches",
        [](double t, int n) {
            py::list out;
            const PiecewiseMap map = power(make_tent2d(t), n);
            for (const Branch& b : map.branches()) {
                py::dict d;
                py::list verts;
                for (const geom::Point2& p : b.domain.vertices()) verts.append(py::make_tuple(p.x, p.y));
                d["domain"] = verts;
                d["itinerary"] = b.itinerary;
                d["jacobian_abs"] = b.jacobian_abs;
                const geom::Matrix2& L = b.map.linear;
                d["linear"] = py::make_tuple(L.a, L.b, L.c, L.d);
                d["shift"] = py::make_tuple(b.map.shift.x, b.map.shift.y);
                out.append(d);
            }
            return out;
        },
        py::arg("t"), py::arg("power") = 1, "Smoothness domains and affine pieces of the n-th iterate.");

    m.def(
        "apply",
        [](double t, double x, double y, int n) {
            const geom::Point2 p = apply(power(make_tent2d(t), n), {x, y});
            return py::make_tuple(p.x, p.y);
        },
        py::arg("t"), py::arg("x"), py::arg("y"), py::arg("power") = 1);

    m.def(
        "certify",
        [](double t, int n, const std::string& convention) {
            return certificate_dict(certify(power(make_tent2d(t), n), parse_convention(convention)));
        },
        py::arg("t"), py::arg("power") = 3, py::arg("convention") = "paper");

    m.def(
        "ulam_density",
        [](double t, int resolution, int n, double tol, int max_iter) {
            const UlamDensity u = tent_ulam_density(t, resolution, n, tol, max_iter);
            py::dict d;
            d["values"] = u.fixed.density;
            d["areas"] = u.op.grid.areas();
            py::list centroids;
            for (const auto& c : u.op.grid.cells) {
                const geom::Point2 g = c.centroid();
                centroids.append(py::make_tuple(g.x, g.y));
            }
            d["centroids"] = centroids;
            d["iterations"] = u.fixed.iterations;
            d["residual"] = u.fixed.residual;
            d["converged"] = u.fixed.converged;
            return d;
        },
        py::arg("t"), py::arg("resolution") = 64, py::arg("power") = 1, py::arg("tol") = 1e-8,
        py::arg("max_iter") = 200000);

    m.def(
        "stability_sweep",
        [](double t0, std::vector<double> ts, int resolution, int n, double tol) {
            SweepOptions options;
            options.power = n;
            options.tol = tol;
            py::list out;
            for (const SweepRow& r : stability_sweep(t0, std::move(ts), resolution, options)) {
                py::dict d;
                d["t"] = r.t;
                d["t0"] = r.t0;
                d["resolution"] = r.resolution;
                d["iterations"] = r.iterations;
                d["residual"] = r.residual;
                d["converged"] = r.converged;
                d["l1_dist"] = r.l1_dist;
                d["weakstar_gaps"] = gaps_dict(r.weakstar_gaps);
                out.append(d);
            }
            return out;
        },
        py::arg("t0"), py::arg("ts"), py::arg("resolution") = 64, py::arg("power") = 1, py::arg("tol") = 1e-12);

    m.def(
        "ly_check",
        [](double t, const std::string& f0, int j_max, int n, const std::string& convention) {
            const ConditionCertificate cert = certify(power(make_tent2d(t), n), parse_convention(convention));
            py::list out;
            for (const LYRow& r : ly_check(t, initial_density(f0), j_max, cert)) {
                py::dict d;
                d["j"] = r.j;
                d["variation"] = r.variation_j;
                d["bound"] = r.bound;
                d["ratio"] = r.ratio;
                out.append(d);
            }
            return out;
        },
        py::arg("t"), py::arg("f0") = "one", py::arg("j_max") = 4, py::arg("power") = 3,
        py::arg("convention") = "paper");

    m.def(
        "lyapunov_exponent",
        [](double t, double x, double y, long n, std::uint64_t seed) { return lyapunov_exponent(t, {x, y}, n, seed); },
        py::arg("t"), py::arg("x"), py::arg("y"), py::arg("n"), py::arg("seed") = 20240101);

    m.def(
        "birkhoff_average",
        [](double t, const std::string& f, double x, double y, long n, std::uint64_t seed) {
            return birkhoff_average(t, parse_test_function(f), {x, y}, n, seed);
        },
        py::arg("t"), py::arg("f"), py::arg("x"), py::arg("y"), py::arg("n"), py::arg("seed") = 20240101);

    m.def(
        "orbit_stats",
        [](double t, long n, std::uint64_t seed) {
            const OrbitStats s = orbit_stats(t, n, seed);
            py::dict d;
            d["t"] = s.t;
            d["seed"] = s.seed;
            d["n"] = s.n;
            d["x0"] = py::make_tuple(s.x0.x, s.x0.y);
            d["lyapunov"] = s.lyapunov;
            d["birkhoff"] = gaps_dict(s.birkhoff);
            return d;
        },
        py::arg("t"), py::arg("n"), py::arg("seed") = 20240101);

    m.def(
        "tent1d_ulam",
        [](double a, int n_cells, double tol) {
            const Tent1dUlam u = tent1d_ulam(a, n_cells, tol);
            std::vector<std::vector<double>> dense(static_cast<std::size_t>(n_cells),
                                                   std::vector<double>(static_cast<std::size_t>(n_cells), 0.0));
            for (int i = 0; i < u.matrix.outerSize(); ++i) {
                for (SparseMatrix::InnerIterator it(u.matrix, i); it; ++it) {
                    dense[static_cast<std::size_t>(it.row())][static_cast<std::size_t>(it.col())] = it.value();
                }
            }
            py::dict d;
            d["edges"] = u.edges;
            d["matrix"] = dense;
            d["density"] = u.fixed.density;
            d["converged"] = u.fixed.converged;
            return d;
        },
        py::arg("a"), py::arg("n_cells"), py::arg("tol") = 1e-13);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::main_entry(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line driver in-process; returns (exit_code, stdout, stderr).");
}

#include "pwexp/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "pwexp/error.hpp"
#include "pwexp/experiments.hpp"
#include "pwexp/io.hpp"

namespace pwexp::cli {

namespace {

struct CommandInfo {
    Command command;
    const char* name;
    const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::Verify, "verify",
     "Certify the expansion / long-branch / distortion conditions for a power of the tent map (JSON)"},
    {Command::Density, "density",
     "Ulam approximation of the absolutely continuous invariant density (CSV cells or SVG heatmap)"},
    {Command::Sweep, "sweep",
     "Statistical stability: L1 distance and weak-* gaps between invariant densities across t (CSV)"},
    {Command::LyCheck, "lycheck",
     "Lasota-Yorke inequality: variation of exact pushforwards against the certified bound (CSV)"},
    {Command::Orbit, "orbit", "Lyapunov exponent and Birkhoff averages along one jittered orbit (CSV)"},
    {Command::Oracle1d, "oracle1d", "Ulam matrix and invariant density of the 1D tent map x -> 1 - a|x| (CSV)"},
};

void add_options(CLI::App& sub, Command c, RunConfig& cfg, std::string& format) {
    const bool tent = c != Command::Oracle1d;
    if (tent && c != Command::Sweep) sub.add_option("--t", cfg.t, "Tent parameter in (0, 1]")->capture_default_str();
    if (c == Command::Sweep) {
        sub.add_option("--t0", cfg.t0, "Reference parameter")->capture_default_str();
        sub.add_option("--tmin", cfg.tmin, "Smallest swept parameter")->capture_default_str();
        sub.add_option("--tmax", cfg.tmax, "Largest swept parameter")->capture_default_str();
        sub.add_option("--steps", cfg.steps, "Number of equally spaced parameters")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    }
    if (c == Command::Verify || c == Command::Density || c == Command::Sweep || c == Command::LyCheck) {
        sub.add_option("--power", cfg.power, "Iterate of the map to analyse")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    }
    if (c == Command::Density || c == Command::Sweep || c == Command::Oracle1d) {
        sub.add_option("--resolution", cfg.resolution, "Grid cells per unit length (cell count for oracle1d)")
            ->capture_default_str();
        sub.add_option("--tol", cfg.tol, "L1 tolerance of the stationary iteration")->capture_default_str();
        sub.add_option("--max-iter", cfg.max_iter, "Iteration cap of the stationary iteration")->capture_default_str();
    }
    if (c == Command::Density || c == Command::Oracle1d) {
        sub.add_option("--matrix-out", cfg.matrix_out, "Also write the Ulam matrix as i,j,weight CSV");
    }
    if (c == Command::Verify || c == Command::LyCheck) {
        sub.add_option("--convention", cfg.convention,
                       "Inverse-derivative norm: all, spectral, max-entry, or paper (product of per-step "
                       "max-entry bounds)")
            ->capture_default_str();
    }
    if (c == Command::LyCheck) {
        sub.add_option("--jmax", cfg.jmax, "Largest iterate j")->capture_default_str()->check(CLI::NonNegativeNumber);
        sub.add_option("--f0", cfg.f0, "Initial density: one or chi0")->capture_default_str();
    }
    if (c == Command::Orbit) {
        sub.add_option("--n", cfg.n, "Orbit length")->capture_default_str()->check(CLI::PositiveNumber);
        sub.add_option("--seed", cfg.seed, "Seed for the start point, jitter and tangent vector")
            ->capture_default_str();
        sub.add_option("--x0", cfg.x0x, "Start point x coordinate (default: seeded uniform)");
        sub.add_option("--y0", cfg.x0y, "Start point y coordinate");
    }
    if (c == Command::Oracle1d) sub.add_option("--a", cfg.a, "Slope in (1, 2]")->capture_default_str();

    sub.add_option("--format", format, "Output format: csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}, CLI::ignore_case));
    sub.add_option("--out", cfg.out, "Output file (default: stdout)");
}

std::vector<NormConvention> conventions(const std::string& name) {
    if (name == "all") return {NormConvention::Spectral, NormConvention::MaxEntry, NormConvention::PaperFormula};
    try {
        return {parse_convention(name)};
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, "--convention: unknown value '" + name + "'");
    }
}

Format resolve_format(const RunConfig& cfg, Format fallback, std::initializer_list<Format> allowed) {
    const Format f = cfg.format == Format::Default ? fallback : cfg.format;
    for (Format a : allowed) {
        if (a == f) return f;
    }
    throw Error(ErrorKind::Config, "--format: not supported by this command");
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.out.empty()) {
        out << content;
    } else {
        io::write_atomic(cfg.out, content);
    }
}

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps == 1) return {lo};
    std::vector<double> ts(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    ts.back() = hi;
    return ts;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    resolve_format(cfg, Format::Json, {Format::Json});
    const PiecewiseMap m = power(make_tent2d(cfg.t), cfg.power);
    std::vector<ConditionCertificate> certs;
    for (NormConvention c : conventions(cfg.convention)) certs.push_back(certify(m, c));
    emit(cfg, cfg.convention == "all" ? io::certificates_json(certs) : io::certificate_json(certs.front()) + "\n", out);
    err << "verify: " << m.label();
    for (const ConditionCertificate& c : certs) {
        err << ' ' << to_string(c.norm_convention) << "(lambda=" << io::fmt17(c.lambda)
            << (c.satisfied ? ", satisfied)" : ", not satisfied)");
    }
    err << '\n';
    return kExitOk;
}

int run_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Format f = resolve_format(cfg, Format::Csv, {Format::Csv, Format::Svg});
    const UlamDensity u = tent_ulam_density(cfg.t, cfg.resolution, cfg.power, cfg.tol, cfg.max_iter);
    const PiecewisePolyDensity density = grid_density(u.op.grid, u.fixed.density);
    if (f == Format::Svg) {
        char title[96];
        std::snprintf(title, sizeof title, "invariant density t=%.17g power=%d resolution=%d", cfg.t, cfg.power,
                      cfg.resolution);
        emit(cfg, io::render_svg(io::make_heatmap(density, title)), out);
    } else {
        emit(cfg, io::density_csv(density), out);
    }
    if (!cfg.matrix_out.empty()) io::write_atomic(cfg.matrix_out, io::matrix_csv(u.op.matrix));
    err << "density: " << u.op.grid.cells.size() << " cells, " << u.fixed.iterations << " iterations, residual "
        << io::fmt17(u.fixed.residual) << ", V(h)=" << io::fmt17(variation(density));
    // Variation bound 4 K1 from the certificate of the cube, per convention; reported, not enforced.
    const PiecewiseMap cube = power(make_tent2d(cfg.t), 3);
    for (NormConvention c : conventions("all")) {
        err << ", 4K1[" << to_string(c) << "]=" << io::fmt17(4.0 * certify(cube, c).K1);
    }
    err << '\n';
    if (!u.fixed.converged) {
        err << "NoConvergence: residual " << io::fmt17(u.fixed.residual) << " after " << u.fixed.iterations
            << " iterations\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    resolve_format(cfg, Format::Csv, {Format::Csv});
    if (cfg.tmin > cfg.tmax) throw Error(ErrorKind::Config, "--tmin must not exceed --tmax");
    if (cfg.tmin < tau() - 1e-12) throw Error(ErrorKind::Config, "--tmin must be at least tau = " + io::fmt17(tau()));
    if (cfg.tmax > 1.0) throw Error(ErrorKind::Config, "--tmax must not exceed 1");
    if (cfg.resolution < 16) throw Error(ErrorKind::Config, "--resolution must be at least 16 for sweep");
    SweepOptions options;
    options.power = cfg.power;
    options.tol = cfg.tol;
    options.max_iter = cfg.max_iter;
    const std::vector<SweepRow> rows =
        stability_sweep(cfg.t0, linspace(cfg.tmin, cfg.tmax, cfg.steps), cfg.resolution, options);
    emit(cfg, io::sweep_csv(rows), out);
    err << "sweep: " << rows.size() << " rows, t0=" << io::fmt17(cfg.t0) << ", resolution " << cfg.resolution << '\n';
    int code = kExitOk;
    for (const SweepRow& r : rows) {
        if (!r.converged) {
            err << "NoConvergence: t=" << io::fmt17(r.t) << " residual " << io::fmt17(r.residual) << '\n';
            code = kExitNoConvergence;
        }
    }
    return code;
}

int run_lycheck(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    resolve_format(cfg, Format::Csv, {Format::Csv});
    const geom::ConvexPolygon region = tent_region();
    PiecewisePolyDensity f0 = PiecewisePolyDensity::constant(region, 1.0);
    if (cfg.f0 == "chi0") {
        f0 = PiecewisePolyDensity::indicator(region, geom::ConvexPolygon::triangle({0, 0}, {1, 0}, {1, 1}), 2.0);
    } else if (cfg.f0 != "one") {
        throw Error(ErrorKind::Config, "--f0 must be one or chi0");
    }
    const PiecewiseMap m = power(make_tent2d(cfg.t), cfg.power);
    std::vector<LYRow> rows;
    for (NormConvention c : conventions(cfg.convention)) {
        const std::vector<LYRow> part = ly_check(cfg.t, f0, cfg.jmax, certify(m, c));
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(cfg, io::ly_csv(rows), out);
    err << "lycheck: " << rows.size() << " rows, V(f0)=" << io::fmt17(rows.front().variation_j) << '\n';
    return kExitOk;
}

int run_orbit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    resolve_format(cfg, Format::Csv, {Format::Csv});
    if (cfg.x0x.has_value() != cfg.x0y.has_value()) throw Error(ErrorKind::Config, "--x0 and --y0 go together");
    std::optional<geom::Point2> x0;
    if (cfg.x0x) x0 = geom::Point2{*cfg.x0x, *cfg.x0y};
    const OrbitStats s = orbit_stats(cfg.t, cfg.n, cfg.seed, x0);
    emit(cfg, io::orbit_csv(std::span(&s, 1)), out);
    err << "orbit: n=" << s.n << ", lyapunov " << io::fmt17(s.lyapunov) << '\n';
    return kExitOk;
}

int run_oracle1d(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    resolve_format(cfg, Format::Csv, {Format::Csv});
    const Tent1dUlam u = tent1d_ulam(cfg.a, cfg.resolution, cfg.tol, cfg.max_iter);
    std::string csv = "cell_id,left,right,value\n";
    for (std::size_t i = 0; i < u.fixed.density.size(); ++i) {
        csv += std::to_string(i) + ',' + io::fmt17(u.edges[i]) + ',' + io::fmt17(u.edges[i + 1]) + ',' +
               io::fmt17(u.fixed.density[i]) + '\n';
    }
    emit(cfg, csv, out);
    if (!cfg.matrix_out.empty()) io::write_atomic(cfg.matrix_out, io::matrix_csv(u.matrix));
    err << "oracle1d: a=" << io::fmt17(cfg.a) << ", " << u.fixed.iterations << " iterations, residual "
        << io::fmt17(u.fixed.residual) << '\n';
    if (!u.fixed.converged) {
        err << "NoConvergence: residual " << io::fmt17(u.fixed.residual) << '\n';
        return kExitNoConvergence;
    }
    return kExitOk;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
    RunConfig cfg;
    std::string format;
    CLI::App app{"Invariant densities of the two-dimensional tent map family"};
    app.name("pwexp");
    app.require_subcommand(1);
    std::optional<Command> chosen;
    for (const CommandInfo& info : kCommands) {
        CLI::App* sub = app.add_subcommand(info.name, info.help);
        add_options(*sub, info.command, cfg, format);
        sub->callback([&chosen, c = info.command] { chosen = c; });
    }

    std::vector<const char*> argv{"pwexp"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        exit_code = app.exit(e, out, err);
        if (exit_code != 0) exit_code = kExitError;
        return std::nullopt;
    }
    cfg.command = *chosen;
    for (char& ch : format) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (format == "csv") cfg.format = Format::Csv;
    if (format == "json") cfg.format = Format::Json;
    if (format == "svg") cfg.format = Format::Svg;
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::Verify: return run_verify(cfg, out, err);
        case Command::Density: return run_density(cfg, out, err);
        case Command::Sweep: return run_sweep(cfg, out, err);
        case Command::LyCheck: return run_lycheck(cfg, out, err);
        case Command::Orbit: return run_orbit(cfg, out, err);
        case Command::Oracle1d: return run_oracle1d(cfg, out, err);
    }
    return kExitError;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    try {
        const std::optional<RunConfig> cfg = parse_args(args, out, err, code);
        if (!cfg) return code;
        return run(*cfg, out, err);
    } catch (const Error& e) {
        err << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

}  // namespace pwexp::cli

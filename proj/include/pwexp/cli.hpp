#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pwexp::cli {

enum class Command { Verify, Density, Sweep, LyCheck, Orbit, Oracle1d };
enum class Format { Default, Csv, Json, Svg };

struct RunConfig {
    Command command = Command::Verify;
    double t = 1.0;
    double t0 = 1.0;
    double tmin = 0.9;
    double tmax = 0.99;
    int steps = 5;
    int power = 1;
    int resolution = 64;
    long n = 100000;
    std::uint64_t seed = 20240101;
    int jmax = 4;
    double tol = 1e-8;
    int max_iter = 200000;
    double a = 2.0;
    /// "all" or one of spectral, max-entry, paper.
    std::string convention = "all";
    /// "one" or "chi0" (twice the indicator of the left half).
    std::string f0 = "one";
    std::optional<double> x0x;
    std::optional<double> x0y;
    Format format = Format::Default;
    /// Empty means stdout.
    std::string out;
    std::string matrix_out;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoConvergence = 2;

/// Throws pwexp::Error(Config) on bad arguments. Returns nullopt after
/// printing --help (or a parse error) to `out`/`err`; `exit_code` is set then.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                                    int& exit_code);

/// Runs one command, writing results to cfg.out (atomically) or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with errors reported on `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwexp::cli

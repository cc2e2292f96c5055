#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "smb/coefficients.hpp"
#include "smb/grid.hpp"
#include "smb/noise.hpp"
#include "smb/solver.hpp"

namespace smb {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };
enum class RunMode { single, ensemble, validate, benchmark };

/// Full run description.  Loading resolves every default, so the canonical
/// echo of a config is self-contained and reproducible.
struct RunConfig {
    // [model]
    std::string model_preset = "stefan(1.0)";
    double eta_plus = 1.0;
    double eta_minus = 1.0;
    double c = 1.0;
    std::string mu_plus_expr = "0";
    std::string mu_minus_expr = "0";
    std::string sigma_plus_expr = "0";
    std::string sigma_minus_expr = "0";
    std::string rho_expr = "g2 - g1";
    bool sigma_affine = false;
    std::string sigma1_plus_expr = "0";
    std::string sigma2_plus_expr = "0";
    std::string sigma1_minus_expr = "0";
    std::string sigma2_minus_expr = "0";
    bool rho_bounded = false;

    // [kernel]
    std::string kernel_preset = "gaussian(0.25)";
    std::optional<double> y_min;  ///< resolved at load when absent
    std::optional<double> y_max;
    int m_y = 128;

    // [grid]
    int grid_n = 200;
    double grid_L = 4.0;

    // [solver]
    double dt = 1e-3;
    double t_end = 1.0;
    std::optional<double> truncation_N;
    double blowup_threshold = 1e6;
    double boundary_threshold = 1e3;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::exponential_euler;

    // [initial]
    std::string initial_preset = "zero";
    std::string u1_expr = "0";
    std::string u2_expr = "0";
    double xstar0 = 0.0;

    // [output]
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::csv;
    int profile_stride = 0;
    bool fail_on_blowup = false;

    // [run]
    RunMode mode = RunMode::single;
    int n_paths = 100;
    int workers = 1;

    // [validate]
    ProbeBox probe_box;

    /// lenient skips the construction-time invariants so that validate mode
    /// can analyze deliberately broken coefficients.
    ModelCoefficients make_coefficients(bool lenient = false) const;
    NoiseKernel make_kernel() const;
    Grid1D make_grid() const;
    SolverConfig make_solver() const;
    SystemState make_initial(const Grid1D& grid) const;

    /// Canonical text with every key present; parsing it reproduces *this.
    std::string canonical_text() const;
    /// FNV-1a hash of the canonical text.
    std::uint64_t hash() const;

    bool operator==(const RunConfig&) const;
};

/// Parses config text.  Unknown sections or keys are hard errors carrying the
/// line; malformed values name the field path.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

std::string to_string(OutputFormat f);
std::string to_string(RunMode m);
std::string to_string(Scheme s);

}  // namespace smb

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smb/coefficients.hpp"
#include "smb/grid.hpp"
#include "smb/noise.hpp"
#include "smb/rng.hpp"
#include "smb/semigroup.hpp"

namespace smb {

enum class Scheme { exponential_euler, semi_implicit_euler };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    std::optional<double> truncation_N;  ///< run the cutoff dynamics when set
    double blowup_threshold = 1e6;       ///< graph-norm cap standing in for infinity
    double boundary_threshold = 1e3;     ///< |I(u)| cap tracked for the boundary stopping time
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::exponential_euler;
    int state_stride = 0;      ///< 0: keep first/last states only; k > 0: every k-th step
    bool record_noise = false; ///< keep the per-step increments for replay

    void check() const;
    int n_steps() const;
};

/// Per-step scalar diagnostics of a trajectory.
struct TraceRow {
    double time = 0;
    double xstar = 0;
    double g1 = 0;
    double g2 = 0;
    double l2_norm = 0;
    double graph_norm = 0;
    double rho = 0;  ///< recorded front velocity rho(I(u))
};

struct TrajectoryStatus {
    enum class Outcome { completed, blowup };
    Outcome outcome = Outcome::completed;
    double t_blow = 0;
    double norm_at_blow = 0;
    bool boundary_flag = false;  ///< |I| crossed its threshold at or before t_blow
    double t_circ = 0;           ///< first |I| crossing time (valid when flagged)
    std::string message;
};

/// Solution record on [0, tau): per-step scalars always, full states at the
/// configured stride (first and last recorded steps are always kept).
/// Nothing is recorded past a blow-up.
struct FixedFrameTrajectory {
    std::vector<double> times;
    std::vector<TraceRow> rows;
    std::vector<std::size_t> state_steps;  ///< row indices of the stored states
    std::vector<SystemState> states;
    TrajectoryStatus status;

    const SystemState& final_state() const { return states.back(); }
};

struct NoiseRecord {
    std::vector<NoiseIncrement> increments;  ///< one per executed step
};

/// One mild (exponential-Euler) step with a supplied noise increment:
///   u_i+ = S_dt(u_i + dt B_i(s) + C_i(s) dW),   x*+ = x* + dt rho(I(s)).
/// The c x* parts of A and B cancel exactly, so the front sees rho only.
/// With a truncation level, drift and diffusion are scaled by h_N(|s|_A) and
/// the front blends toward the pure decay e^{-c dt} x* beyond the plateau.
SystemState step_with_increment(const SpectralLaplacian& sl_plus,
                                const SpectralLaplacian& sl_minus,
                                const ModelCoefficients& mc, const NoiseKernel& k,
                                const SystemState& s, double dt, const NoiseIncrement& w,
                                Scheme scheme = Scheme::exponential_euler,
                                const std::optional<TruncationLevel>& trunc = {});

/// Draws the increment from the stream, then steps.
SystemState step(const SpectralLaplacian& sl_plus, const SpectralLaplacian& sl_minus,
                 const ModelCoefficients& mc, const NoiseKernel& k, const SystemState& s,
                 double dt, GaussianStream& rng, Scheme scheme = Scheme::exponential_euler);

/// Iterates the scheme, recording traces and watching the blow-up and
/// boundary thresholds.  Never throws on coefficient explosions; those end
/// the path with a blow-up status.
FixedFrameTrajectory run_trajectory(const SolverConfig& cfg, const ModelCoefficients& mc,
                                    const NoiseKernel& k, const SystemState& s0,
                                    NoiseRecord* record = nullptr);

/// Same dynamics with coefficients passed through the h_N cutoff at
/// norm = graph_norm(state).  cfg.truncation_N must be set.
FixedFrameTrajectory run_truncated(const SolverConfig& cfg, const ModelCoefficients& mc,
                                   const NoiseKernel& k, const SystemState& s0,
                                   NoiseRecord* record = nullptr);

/// Ensemble aggregates on the common step grid.  Blown-up paths count toward
/// the frequency and drop out of the means from their blow-up time on.
struct EnsembleStats {
    std::vector<double> times;
    std::vector<double> front_mean;
    std::vector<double> front_var;
    std::vector<double> g1_mean;
    std::vector<double> g2_mean;
    std::vector<int> alive;  ///< paths contributing at each time
    int n_paths = 0;
    int blowup_count = 0;
    std::vector<double> blowup_times;  ///< ordered by path index
    double blowup_frequency() const {
        return n_paths ? static_cast<double>(blowup_count) / n_paths : 0.0;
    }
};

/// Runs n_paths independent trajectories with per-path derived seeds
/// (counter scheme over cfg.seed); the result is identical for any worker
/// count.
EnsembleStats run_ensemble(const SolverConfig& cfg, const ModelCoefficients& mc,
                           const NoiseKernel& k, const SystemState& s0, int n_paths,
                           int workers);

}  // namespace smb

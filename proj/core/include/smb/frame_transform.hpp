#pragma once

#include <stdexcept>
#include <vector>

#include "smb/grid.hpp"
#include "smb/noise.hpp"
#include "smb/solver.hpp"

namespace smb {

struct OutOfWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform full-line window [x_min, x_max] with a margin reserve at each end
/// for front excursions and shifts.
struct FullLineGrid {
    double x_min = -1;
    double h = 1;
    int count = 0;      ///< node count; x_max = x_min + (count-1)*h
    double margin = 0;  ///< admissible shift magnitude

    static FullLineGrid make(double x_min, double x_max, double h, double margin);

    double node(int i) const { return x_min + h * static_cast<double>(i); }
    double x_max() const { return node(count - 1); }

    bool operator==(const FullLineGrid&) const = default;
};

struct FullLineProfile {
    FullLineGrid grid;
    std::vector<double> values;

    static FullLineProfile zero(const FullLineGrid& g);
    static FullLineProfile sample(const FullLineGrid& g,
                                  const std::function<double(double)>& f);

    /// Cubic interpolation; 0 outside the window.
    double interpolate(double x) const;
};

/// Discrete L2 norm h * sum v_i^2, square-rooted.
double l2_norm(const FullLineProfile& p);

/// Shift f(.) -> f(x + .).  Grid-aligned x is an exact index shift; otherwise
/// cubic interpolation.  |x| beyond the margin reserve raises OutOfWindowError.
FullLineProfile shift(const FullLineProfile& p, double x);

/// Paste the two phases into the moving frame: v(y) = u1(y - x*) for y > x*,
/// u2(x* - y) for y < x*, 0 at the front.  The target window must cover
/// [x* - L, x* + L].
FullLineProfile to_moving_frame(const SystemState& s, const FullLineGrid& target);

/// Read the phases back out of a moving-frame profile: u1(x) = v(x* + x),
/// u2(x) = v(x* - x).  Interpolation stencils never straddle the front, so a
/// kink at x* is preserved in the one-sided gradients.
SystemState to_fixed_frame(const FullLineProfile& v, double xstar, const Grid1D& grid);

/// Moving-frame reconstruction of a stored trajectory (at its state stride).
struct MovingFrameTrajectory {
    std::vector<double> times;
    std::vector<FullLineProfile> profiles;
    std::vector<double> fronts;
};

MovingFrameTrajectory reconstruct_moving_frame(const FixedFrameTrajectory& fixed,
                                               const FullLineGrid& target);

/// Discrete residual of the transformation identity over the whole horizon:
/// the moving-frame increment v_T - v_0 minus the telescoped shifted drift,
/// the transport term (with the recorded rho(I) as the front velocity), and
/// the shifted noise increments; returns its discrete L2 norm.
///
/// Requires a trajectory recorded with state_stride = 1 and its noise record;
/// throws std::invalid_argument otherwise.
double chain_rule_residual(const FixedFrameTrajectory& fixed, const ModelCoefficients& mc,
                           const NoiseKernel& k, const NoiseRecord& replayed_noise);

}  // namespace smb

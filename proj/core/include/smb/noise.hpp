#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "smb/grid.hpp"
#include "smb/rng.hpp"

namespace smb {

/// Integral kernel of the noise-smoothing operator (T w)(x) = int k(x,y) w(y) dy,
/// together with its first three x-derivatives, and the y-quadrature window.
///
/// The y integral is a midpoint rule on m_y equal cells of [y_min, y_max];
/// cell centers carry the discrete white-noise increments.
struct NoiseKernel {
    /// zeta and d^k/dx^k zeta for k = 0..3.
    std::array<std::function<double(double, double)>, 4> zeta;
    double y_min = -1.0;
    double y_max = 1.0;
    int m_y = 64;

    double dy() const { return (y_max - y_min) / static_cast<double>(m_y); }
    double y_node(int j) const { return y_min + (static_cast<double>(j) + 0.5) * dy(); }

    /// Convolution kernel with a centered Gaussian density of the given width.
    static NoiseKernel gaussian(double width, double y_min, double y_max, int m_y);
    /// x-independent indicator slice 1_{[a,b]}(y).
    static NoiseKernel indicator(double a, double b, double y_min, double y_max, int m_y);

    /// L2 norm of the y-slice of the deriv-th x-derivative at x (quadrature).
    double slice_l2(double x, int deriv) const;
};

/// Square-integrability probe of the kernel slices, derivative orders 0..3.
struct KernelCheck {
    std::array<double, 4> sup_slice_l2{};  // sup over probed x, per order
    bool finite = true;
};

KernelCheck check_kernel(const NoiseKernel& k, std::span<const double> probe_x);

/// Scaled white-noise increments on the y-cells over one time step:
/// w_j ~ N(0, dt/dy), so the discrete cylindrical increment has covariance
/// dt * Id / dy per cell.
struct NoiseIncrement {
    std::vector<double> w;  // length m_y
    double dt = 0;
};

/// Draw one increment from an owned Gaussian stream.
NoiseIncrement draw_increment(const NoiseKernel& k, double dt, GaussianStream& rng);

/// Discrete L2(R) norm of the increment viewed as a cell-wise constant
/// function: sqrt(sum w_j^2 * dy).
double increment_l2(const NoiseKernel& k, const NoiseIncrement& w);

/// Midpoint quadrature of zeta(x,.) * w at each evaluation point; linear in w.
std::vector<double> apply_kernel(const NoiseKernel& k, const NoiseIncrement& w,
                                 std::span<const double> eval_points);

/// Componentwise diffusion increment: phase 1 gets sigma+_j * (T w)(x* + x_j),
/// phase 2 gets sigma-_j * (T w)(x* - x_j); the front receives no direct noise.
/// sigma_vals are the Nemytskii factors already evaluated on the grid.
std::pair<PhaseProfile, PhaseProfile> sample_diffusion_increment(
    const NoiseKernel& k, const SystemState& s, const PhaseProfile& sigma_plus_vals,
    const PhaseProfile& sigma_minus_vals, const NoiseIncrement& w);

/// Stationary covariance kernel int zeta(x,z) zeta(y,z) dz by quadrature.
double covariance(const NoiseKernel& k, double x, double y);

/// Hilbert-Schmidt norm of the diffusion operator computed directly: sum of
/// squared graph norms of the operator columns over the discrete y-basis
/// (unit cells scaled 1/sqrt(dy)), square-rooted.
double hs_norm_direct(const NoiseKernel& k, const PhaseProfile& sigma_plus_vals,
                      const PhaseProfile& sigma_minus_vals, double xstar,
                      const OperatorParams& op);

/// Analytic-style majorant K * |N_sigma(u)|_A * sup_x sum_{i=0..2} |zeta^(i)(x,.)|_L2
/// with the Leibniz constant K = 2; the sup is discrete over probe_x.
double hs_norm_bound(const NoiseKernel& k, const PhaseProfile& sigma_plus_vals,
                     const PhaseProfile& sigma_minus_vals, const OperatorParams& op,
                     std::span<const double> probe_x);

}  // namespace smb

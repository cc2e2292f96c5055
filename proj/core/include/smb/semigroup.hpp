#pragma once

#include <memory>
#include <span>
#include <vector>

#include "smb/grid.hpp"

namespace smb {

/// Exact discrete Dirichlet heat semigroup in the sine eigenbasis.
///
/// The generator is eta * Lap_h - c with the 3-point Dirichlet Laplacian, so
/// its eigenpairs are sin(k pi j / (n+1)) with
///   lambda_k = -eta * (2/h^2) (1 - cos(k pi h / L)) - c,   k = 1..n,
/// all strictly negative.  Transforms go through FFTW's DST-I; instances are
/// immutable and safe to share between threads.
class SpectralLaplacian {
public:
    SpectralLaplacian(const Grid1D& grid, double eta, double c);

    const Grid1D& grid() const { return grid_; }
    double eta() const { return eta_; }
    double shift() const { return c_; }
    /// lambda_k for k = 1..n (index 0 is k = 1).
    std::span<const double> eigenvalues() const { return eigenvalues_; }

    /// Sine coefficients c_k with p_j = sum_k c_k sin(k pi j/(n+1)).
    std::vector<double> to_modes(const PhaseProfile& p) const;
    PhaseProfile from_modes(std::span<const double> modes) const;

    /// S_t p: scale mode k by exp(t lambda_k).  S_0 is the identity (exact).
    PhaseProfile apply_semigroup(const PhaseProfile& p, double t) const;

    /// One backward-Euler resolvent application (I - dt A)^{-1} p.
    PhaseProfile apply_semi_implicit(const PhaseProfile& p, double dt) const;

    /// |(-A)^alpha p| in the discrete L2 norm; alpha in [0,1].  alpha = 0
    /// recovers the L2 norm, alpha = 1 the |A .| norm.
    double fractional_norm(const PhaseProfile& p, double alpha) const;

private:
    Grid1D grid_;
    double eta_ = 1;
    double c_ = 1;
    std::vector<double> eigenvalues_;
    struct Plan;
    std::shared_ptr<const Plan> plan_;
};

/// Empirical constant of the smoothing estimate
///   |S_t h|_alpha <= K t^{-(alpha-beta)} e^{-delta t} |h|_beta,  delta = c.
struct ProbeReport {
    double alpha = 0;
    double beta = 0;
    double k_hat = 0;   ///< sup over samples and t of t^(a-b) e^(delta t) |S_t h|_a / |h|_b
    int samples = 0;
};

/// Probes the smoothing constant over random profiles.  Requires beta < alpha,
/// both in [0,1] and t_grid positive.
ProbeReport smoothing_probe(const SpectralLaplacian& sl, double alpha, double beta,
                            std::span<const double> t_grid, int samples,
                            std::uint64_t seed = 0x5eed);

}  // namespace smb

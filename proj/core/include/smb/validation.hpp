#pragma once

#include "smb/grid.hpp"

namespace smb {

/// Similarity root of the one-phase problem with front law
/// dx*/dt = -varrho * g1 (one-sided gradient at the front) and far-field
/// level -amplitude:
///
///   profile  v(t, x* + d) = A (erfc(lambda + d / (2 sqrt(eta t))) / erfc(lambda) - 1)
///   front    x*(t) = x0 + 2 lambda sqrt(eta t)
///
/// Plugging the profile gradient into the front law forces
///
///   sqrt(pi) lambda exp(lambda^2) erfc(lambda) = St,   St = varrho * A / eta,
///
/// solved by bisection on [1e-8, 10].  The left side increases from 0 to 1,
/// so a root exists only for St < 1; otherwise a root-not-found error.
double stefan_lambda(double eta, double varrho, double amplitude);

struct StefanSimilarity {
    double eta = 1;
    double varrho = 1;
    double amplitude = 0.5;
    double lambda = 0;  ///< similarity root
    double t0 = 0.1;    ///< time offset so the profile is smooth at t = 0
    double x0 = 0;      ///< front position at physical time 0

    static StefanSimilarity make(double eta, double varrho, double amplitude, double t0,
                                 double x0 = 0.0);

    /// Front position after running for time t (physical time t0 + t).
    double front(double t) const;
    /// Front velocity lambda sqrt(eta / (t0 + t)).
    double front_velocity(double t) const;
    /// One-sided gradient of phase 1 at the front.
    double gradient_at_front(double t) const;
};

/// Fixed-frame sample of the similarity solution at run time t: phase 1 holds
/// erfc profile values (0 at the front exactly), phase 2 is zero.
SystemState stefan_profile(const StefanSimilarity& ss, double t, const Grid1D& grid);

/// Dirichlet heat solution on [0, L] by sine series with the continuum
/// eigenvalues -eta (k pi / L)^2.  The transform is a direct summation,
/// independent of the solver's spectral path.
PhaseProfile heat_series_solution(const PhaseProfile& p0, double eta, double t);

}  // namespace smb

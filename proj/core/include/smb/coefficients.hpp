#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smb/grid.hpp"

namespace smb {

struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Drift, diffusion and front-velocity coefficients of the model.
///
/// mu(x, y, z) takes (signed distance to the front, value, first derivative);
/// sigma(x, y) takes (signed distance, value); rho(g1, g2) maps the one-sided
/// boundary gradients to the front velocity.  eta are the phase diffusivities
/// and c the spectral shift of the linear part.
struct ModelCoefficients {
    double eta_plus = 1.0;
    double eta_minus = 1.0;
    double c = 1.0;

    std::function<double(double, double, double)> mu_plus;
    std::function<double(double, double, double)> mu_minus;
    std::function<double(double, double)> sigma_plus;
    std::function<double(double, double)> sigma_minus;
    std::function<double(double, double)> rho;

    /// Affine diffusion decomposition sigma(x,y) = s1(x) + s2(x) y, declared
    /// when the global-existence regime is claimed.  Checked on construction.
    struct AffineSigma {
        std::function<double(double)> s1_plus, s2_plus;
        std::function<double(double)> s1_minus, s2_minus;
    };
    std::optional<AffineSigma> affine_sigma;

    bool rho_bounded = false;  ///< declared bound on rho (global-existence regime)
    std::string preset_name = "custom";

    /// Classical Stefan coupling: mu = 0, sigma = 0, rho = varrho * (g2 - g1).
    static ModelCoefficients stefan(double varrho);
    /// Stefan coupling with multiplicative noise sigma(x,y) = noise * y.
    static ModelCoefficients stefan_multiplicative(double varrho, double noise);
    /// Two-phase viscous Burgers drift mu(x,y,z) = y*z with Stefan coupling.
    static ModelCoefficients burgers(double varrho);
    /// Reaction drift mu(x,y,z) = f(y) with f(0) = 0 and Stefan coupling.
    static ModelCoefficients reaction(std::function<double(double)> f, double varrho);

    /// Construction-time invariants: eta > 0, c >= 0, sigma(0,0) = 0 to 1e-12,
    /// affine decomposition residual <= 1e-10 on a probe lattice when claimed.
    void check() const;
};

/// Smooth cutoff h_N: 1 on [0, N], 0 on [N+1, inf), quintic in between with
/// vanishing first derivatives at both ends.  The interpolant is a single
/// fixed bump translated by N, so sup_N |h_N'| is N-independent.
struct TruncationLevel {
    double N = 1.0;

    double operator()(double x) const;
};

/// value scaled by h_N(norm).  Identity (bitwise) on the plateau norm <= N.
std::vector<double> truncate_coefficient(const TruncationLevel& t, double norm,
                                         std::span<const double> value);

/// Nodewise evaluation of the drift B(u): phase profiles including transport
/// and spectral-shift terms, plus the scalar front component.
struct DriftEval {
    PhaseProfile b1;            ///< mu+(x, u1, u1') + u1' rho + c u1
    PhaseProfile b2;            ///< mu-(-x, u2, u2') - u2' rho + c u2
    double front = 0;           ///< rho(I(u)) + c x*
    double rho_value = 0;       ///< rho(I(u))
};

/// Throws InvalidStateError naming the node on non-finite output.
DriftEval eval_drift(const ModelCoefficients& mc, const SystemState& s,
                     const BoundaryTrace& tr);

/// Nodewise Nemytskii diffusion factors sigma+(x_j, u1_j), sigma-(-x_j, u2_j).
std::pair<PhaseProfile, PhaseProfile> eval_sigma(const ModelCoefficients& mc,
                                                 const SystemState& s);

/// Finite-difference probe box for the assumption validator.
struct ProbeBox {
    double x_max = 2.0;  ///< x in [0, x_max]
    double y_max = 2.0;  ///< y in [-y_max, y_max]
    double z_max = 2.0;  ///< z in [-z_max, z_max]
    int points_per_axis = 9;
};

struct CoefficientReport {
    double lipschitz_y = 0;        ///< sup of |d/dy| over the lattice
    double lipschitz_z = 0;        ///< sup of |d/dz| (zero for sigma)
    double lipschitz_x_spread = 0; ///< relative spread of per-x-slice constants
    double envelope_a = 0;         ///< fitted a-part of a(|x|) + b(y,z)(|y|+|z|)
    double envelope_b = 0;         ///< fitted sup of b(y,z)
};

/// Advisory report: flags violations on the probe box, never proves compliance.
struct ValidationReport {
    CoefficientReport mu_plus, mu_minus;
    CoefficientReport sigma_plus, sigma_minus;
    double rho_lipschitz = 0;          ///< max component of the rho gradient
    double sigma_bc_residual_plus = 0; ///< |sigma+(0,0)|
    double sigma_bc_residual_minus = 0;
    std::optional<double> affine_residual;  ///< when the decomposition is claimed
    std::vector<std::string> warnings;

    bool flagged() const { return !warnings.empty(); }
};

ValidationReport validate_assumptions(const ModelCoefficients& mc, const ProbeBox& box);

}  // namespace smb

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace smb {

/// Uniform discretization of the half-line, truncated to [0, L].
///
/// Interior nodes are x_j = j*h for j = 1..n.  The boundary nodes x = 0 and
/// x = L carry the value 0 (homogeneous Dirichlet) and are never stored.
struct Grid1D {
    int n = 0;      ///< interior node count (>= 2)
    double h = 0;   ///< node spacing
    double L = 0;   ///< truncation length, L = (n+1)*h exactly

    /// Grid with n interior nodes on [0, length]; h = length/(n+1).
    static Grid1D with_length(int n, double length);
    /// Grid with n interior nodes and spacing h; L = (n+1)*h.
    static Grid1D with_spacing(int n, double h);

    /// Coordinate of interior node j (0-based storage index), x = (j+1)*h.
    double node(int j) const { return h * static_cast<double>(j + 1); }

    bool operator==(const Grid1D&) const = default;
};

/// Interior node values of one phase on a Grid1D.  Extends by 0 at both ends.
struct PhaseProfile {
    Grid1D grid;
    std::vector<double> values;  // length grid.n

    static PhaseProfile zero(const Grid1D& g);
    /// Sample f at the interior nodes.
    static PhaseProfile sample(const Grid1D& g, const std::function<double(double)>& f);

    bool finite() const;

    /// Value at node index j, with Dirichlet ghosts: j = -1 and j = n give 0.
    double at(int j) const {
        if (j < 0 || j >= grid.n) return 0.0;
        return values[static_cast<std::size_t>(j)];
    }

    /// Cubic interpolation of the profile at x in [0, L], using the Dirichlet
    /// boundary values.  Clamps to 0 outside [0, L].
    double interpolate(double x) const;
};

/// Fixed-frame state X = (u1, u2, x*): two half-line phases plus the front.
/// Phase 2 is stored on the reflected coordinate (u2(x) lives at x* - x).
struct SystemState {
    PhaseProfile u1;  ///< right/seller phase
    PhaseProfile u2;  ///< left/buyer phase, reflected coordinate
    double xstar = 0;

    static SystemState zero(const Grid1D& g);
    bool valid() const;
};

/// One-sided boundary gradients (d/dx u1(0+), d/dx u2(0+)).
struct BoundaryTrace {
    double g1 = 0;
    double g2 = 0;
};

/// Parameters of the linear operator: diag(eta+ Lap, eta- Lap, 0) - c*id.
struct OperatorParams {
    double eta_plus = 1.0;
    double eta_minus = 1.0;
    double c = 1.0;
};

/// Central first derivative at the interior nodes (Dirichlet ghosts 0).
/// Exact on affine and quadratic data.
PhaseProfile first_derivative(const PhaseProfile& p);

/// Three-point Dirichlet Laplacian (p_{j-1} - 2 p_j + p_{j+1}) / h^2.
/// This single stencil defines the discrete Laplacian everywhere.
PhaseProfile second_derivative(const PhaseProfile& p);

/// One-sided second-order gradients at x = 0: g = (4 p_1 - p_2) / (2h).
BoundaryTrace boundary_trace(const SystemState& s);

/// Discrete L2 inner product (trapezoid with zero boundary): h * sum p_j q_j.
double inner_product(const PhaseProfile& p, const PhaseProfile& q);

/// Discrete Sobolev norm by trapezoid quadrature of p and its stencil
/// derivatives; order 0 = L2, 1 = H1, 2 = H2.  Throws on other orders.
double norm_sobolev(const PhaseProfile& p, int order);

/// L2 norm of the product space L2 + L2 + R: sqrt(|u1|^2 + |u2|^2 + x*^2).
double state_l2_norm(const SystemState& s);

/// Image of the state under A = diag(eta+ Lap, eta- Lap, 0) - c*id.
SystemState apply_operator(const SystemState& s, const OperatorParams& op);

/// Graph norm |s| + |A s| in the product L2 norm.
double graph_norm(const SystemState& s, const OperatorParams& op);

}  // namespace smb

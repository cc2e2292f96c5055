#include "smb/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace smb {

Grid1D Grid1D::with_length(int n, double length) {
    if (n < 2) throw std::invalid_argument("Grid1D: need at least 2 interior nodes");
    if (!(length > 0)) throw std::invalid_argument("Grid1D: length must be positive");
    Grid1D g;
    g.n = n;
    g.h = length / static_cast<double>(n + 1);
    g.L = length;
    return g;
}

Grid1D Grid1D::with_spacing(int n, double h) {
    if (n < 2) throw std::invalid_argument("Grid1D: need at least 2 interior nodes");
    if (!(h > 0)) throw std::invalid_argument("Grid1D: spacing must be positive");
    Grid1D g;
    g.n = n;
    g.h = h;
    g.L = h * static_cast<double>(n + 1);
    return g;
}

PhaseProfile PhaseProfile::zero(const Grid1D& g) {
    return PhaseProfile{g, std::vector<double>(static_cast<std::size_t>(g.n), 0.0)};
}

PhaseProfile PhaseProfile::sample(const Grid1D& g, const std::function<double(double)>& f) {
    PhaseProfile p = zero(g);
    for (int j = 0; j < g.n; ++j) p.values[static_cast<std::size_t>(j)] = f(g.node(j));
    return p;
}

bool PhaseProfile::finite() const {
    if (static_cast<int>(values.size()) != grid.n) return false;
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

double PhaseProfile::interpolate(double x) const {
    const int n = grid.n;
    const double h = grid.h;
    if (x <= 0.0 || x >= grid.L) return 0.0;
    // Extended node index: node i sits at i*h, i = 0..n+1, with values 0 at
    // the ends.  Cubic Lagrange on the 4-point stencil around x.
    auto ext = [&](int i) -> double {
        if (i <= 0 || i >= n + 1) return 0.0;
        return values[static_cast<std::size_t>(i - 1)];
    };
    int i1 = static_cast<int>(std::floor(x / h));  // x in [i1*h, (i1+1)*h)
    if (i1 < 0) i1 = 0;
    if (i1 > n) i1 = n;
    int i0 = i1 - 1;
    if (i0 < 0) i0 = 0;
    if (i0 + 3 > n + 1) i0 = n - 2;  // keep 4 points inside 0..n+1
    const double t = x / h - static_cast<double>(i0);
    // Lagrange basis at offsets 0,1,2,3
    const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    const double l1 = t * (t - 2) * (t - 3) / 2.0;
    const double l2 = -t * (t - 1) * (t - 3) / 2.0;
    const double l3 = t * (t - 1) * (t - 2) / 6.0;
    return l0 * ext(i0) + l1 * ext(i0 + 1) + l2 * ext(i0 + 2) + l3 * ext(i0 + 3);
}

SystemState SystemState::zero(const Grid1D& g) {
    return SystemState{PhaseProfile::zero(g), PhaseProfile::zero(g), 0.0};
}

bool SystemState::valid() const {
    return u1.finite() && u2.finite() && std::isfinite(xstar) && u1.grid == u2.grid;
}

PhaseProfile first_derivative(const PhaseProfile& p) {
    const int n = p.grid.n;
    const double inv2h = 1.0 / (2.0 * p.grid.h);
    PhaseProfile d = PhaseProfile::zero(p.grid);
    for (int j = 0; j < n; ++j)
        d.values[static_cast<std::size_t>(j)] = (p.at(j + 1) - p.at(j - 1)) * inv2h;
    return d;
}

PhaseProfile second_derivative(const PhaseProfile& p) {
    const int n = p.grid.n;
    const double invh2 = 1.0 / (p.grid.h * p.grid.h);
    PhaseProfile d = PhaseProfile::zero(p.grid);
    for (int j = 0; j < n; ++j)
        d.values[static_cast<std::size_t>(j)] =
            (p.at(j - 1) - 2.0 * p.at(j) + p.at(j + 1)) * invh2;
    return d;
}

BoundaryTrace boundary_trace(const SystemState& s) {
    const double inv2h = 1.0 / (2.0 * s.u1.grid.h);
    BoundaryTrace t;
    t.g1 = (4.0 * s.u1.at(0) - s.u1.at(1)) * inv2h;
    t.g2 = (4.0 * s.u2.at(0) - s.u2.at(1)) * inv2h;
    return t;
}

double inner_product(const PhaseProfile& p, const PhaseProfile& q) {
    double acc = 0.0;
    const int n = p.grid.n;
    for (int j = 0; j < n; ++j)
        acc += p.values[static_cast<std::size_t>(j)] * q.values[static_cast<std::size_t>(j)];
    return acc * p.grid.h;
}

double norm_sobolev(const PhaseProfile& p, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("norm_sobolev: order must be 0, 1 or 2");
    double sq = inner_product(p, p);
    if (order >= 1) {
        const PhaseProfile d1 = first_derivative(p);
        sq += inner_product(d1, d1);
    }
    if (order == 2) {
        const PhaseProfile d2 = second_derivative(p);
        sq += inner_product(d2, d2);
    }
    return std::sqrt(sq);
}

double state_l2_norm(const SystemState& s) {
    return std::sqrt(inner_product(s.u1, s.u1) + inner_product(s.u2, s.u2) +
                     s.xstar * s.xstar);
}

SystemState apply_operator(const SystemState& s, const OperatorParams& op) {
    SystemState out;
    out.u1 = second_derivative(s.u1);
    out.u2 = second_derivative(s.u2);
    for (int j = 0; j < s.u1.grid.n; ++j) {
        auto k = static_cast<std::size_t>(j);
        out.u1.values[k] = op.eta_plus * out.u1.values[k] - op.c * s.u1.values[k];
        out.u2.values[k] = op.eta_minus * out.u2.values[k] - op.c * s.u2.values[k];
    }
    out.xstar = -op.c * s.xstar;
    return out;
}

double graph_norm(const SystemState& s, const OperatorParams& op) {
    return state_l2_norm(s) + state_l2_norm(apply_operator(s, op));
}

}  // namespace smb

#include "smb/frame_transform.hpp"

#include <algorithm>
#include <cmath>

namespace smb {

namespace {

// Cubic Lagrange weights at offset t from the stencil start.
struct Cubic {
    double l0, l1, l2, l3;
    explicit Cubic(double t)
        : l0(-(t - 1) * (t - 2) * (t - 3) / 6.0),
          l1(t * (t - 2) * (t - 3) / 2.0),
          l2(-t * (t - 1) * (t - 3) / 2.0),
          l3(t * (t - 1) * (t - 2) / 6.0) {}
};

// Interpolate a half-line profile without assuming boundary values: stencils
// are clamped to the interior nodes, one-sided near the ends.  Used for
// derived quantities (drift, gradients) that do not vanish at the front.
double interp_interior(const PhaseProfile& p, double x) {
    const int n = p.grid.n;
    const double h = p.grid.h;
    if (n < 4) return p.interpolate(x);
    double s = x / h - 1.0;  // node j sits at (j+1) h
    int i0 = static_cast<int>(std::floor(s)) - 1;
    i0 = std::clamp(i0, 0, n - 4);
    const Cubic w(s - static_cast<double>(i0));
    return w.l0 * p.values[static_cast<std::size_t>(i0)] +
           w.l1 * p.values[static_cast<std::size_t>(i0 + 1)] +
           w.l2 * p.values[static_cast<std::size_t>(i0 + 2)] +
           w.l3 * p.values[static_cast<std::size_t>(i0 + 3)];
}

}  // namespace

FullLineGrid FullLineGrid::make(double x_min, double x_max, double h, double margin) {
    if (!(h > 0) || !(x_max > x_min))
        throw std::invalid_argument("FullLineGrid: need h > 0 and x_max > x_min");
    FullLineGrid g;
    g.x_min = x_min;
    g.h = h;
    g.count = static_cast<int>(std::llround((x_max - x_min) / h)) + 1;
    if (g.count < 4) throw std::invalid_argument("FullLineGrid: window too small");
    g.margin = margin;
    return g;
}

FullLineProfile FullLineProfile::zero(const FullLineGrid& g) {
    return FullLineProfile{g, std::vector<double>(static_cast<std::size_t>(g.count), 0.0)};
}

FullLineProfile FullLineProfile::sample(const FullLineGrid& g,
                                        const std::function<double(double)>& f) {
    FullLineProfile p = zero(g);
    for (int i = 0; i < g.count; ++i) p.values[static_cast<std::size_t>(i)] = f(g.node(i));
    return p;
}

double FullLineProfile::interpolate(double x) const {
    const int m = grid.count;
    if (x <= grid.x_min || x >= grid.x_max()) return 0.0;
    double s = (x - grid.x_min) / grid.h;
    int i0 = static_cast<int>(std::floor(s)) - 1;
    i0 = std::clamp(i0, 0, m - 4);
    const Cubic w(s - static_cast<double>(i0));
    return w.l0 * values[static_cast<std::size_t>(i0)] +
           w.l1 * values[static_cast<std::size_t>(i0 + 1)] +
           w.l2 * values[static_cast<std::size_t>(i0 + 2)] +
           w.l3 * values[static_cast<std::size_t>(i0 + 3)];
}

double l2_norm(const FullLineProfile& p) {
    double acc = 0.0;
    for (double v : p.values) acc += v * v;
    return std::sqrt(acc * p.grid.h);
}

FullLineProfile shift(const FullLineProfile& p, double x) {
    if (std::fabs(x) > p.grid.margin + 1e-12 * std::max(1.0, std::fabs(x)))
        throw OutOfWindowError("shift: |" + std::to_string(x) + "| exceeds the margin reserve " +
                               std::to_string(p.grid.margin));
    FullLineProfile out = FullLineProfile::zero(p.grid);
    const double ratio = x / p.grid.h;
    const auto k = static_cast<long long>(std::llround(ratio));
    if (x == static_cast<double>(k) * p.grid.h) {
        // exact index shift
        for (int i = 0; i < p.grid.count; ++i) {
            const long long src = static_cast<long long>(i) + k;
            out.values[static_cast<std::size_t>(i)] =
                (src >= 0 && src < p.grid.count) ? p.values[static_cast<std::size_t>(src)] : 0.0;
        }
        return out;
    }
    for (int i = 0; i < p.grid.count; ++i)
        out.values[static_cast<std::size_t>(i)] = p.interpolate(p.grid.node(i) + x);
    return out;
}

FullLineProfile to_moving_frame(const SystemState& s, const FullLineGrid& target) {
    const double L = s.u1.grid.L;
    if (target.x_min > s.xstar - L || target.x_max() < s.xstar + L)
        throw OutOfWindowError("to_moving_frame: target window does not cover the state support");
    FullLineProfile v = FullLineProfile::zero(target);
    for (int i = 0; i < target.count; ++i) {
        const double d = target.node(i) - s.xstar;
        double val = 0.0;
        if (d > 0)
            val = s.u1.interpolate(d);
        else if (d < 0)
            val = s.u2.interpolate(-d);
        v.values[static_cast<std::size_t>(i)] = val;
    }
    return v;
}

SystemState to_fixed_frame(const FullLineProfile& v, double xstar, const Grid1D& grid) {
    if (v.grid.x_min > xstar - grid.L || v.grid.x_max() < xstar + grid.L)
        throw OutOfWindowError("to_fixed_frame: profile window does not cover [x*-L, x*+L]");
    SystemState s = SystemState::zero(grid);
    s.xstar = xstar;

    const double h = v.grid.h;
    const int m = v.grid.count;
    // First node strictly right of the front (the kink may sit between nodes).
    const int right0 = static_cast<int>(std::ceil((xstar - v.grid.x_min) / h - 1e-12));
    const int left0 = static_cast<int>(std::floor((xstar - v.grid.x_min) / h + 1e-12));

    auto one_sided = [&](double x, bool right_side) -> double {
        double sloc = (x - v.grid.x_min) / h;
        int i0 = static_cast<int>(std::floor(sloc)) - 1;
        if (right_side)
            i0 = std::clamp(i0, right0, m - 4);
        else
            i0 = std::clamp(i0, 0, std::min(left0, m - 1) - 3);
        const Cubic w(sloc - static_cast<double>(i0));
        return w.l0 * v.values[static_cast<std::size_t>(i0)] +
               w.l1 * v.values[static_cast<std::size_t>(i0 + 1)] +
               w.l2 * v.values[static_cast<std::size_t>(i0 + 2)] +
               w.l3 * v.values[static_cast<std::size_t>(i0 + 3)];
    };

    for (int j = 0; j < grid.n; ++j) {
        const double d = grid.node(j);
        s.u1.values[static_cast<std::size_t>(j)] = one_sided(xstar + d, true);
        s.u2.values[static_cast<std::size_t>(j)] = one_sided(xstar - d, false);
    }
    return s;
}

MovingFrameTrajectory reconstruct_moving_frame(const FixedFrameTrajectory& fixed,
                                               const FullLineGrid& target) {
    MovingFrameTrajectory out;
    out.times.reserve(fixed.states.size());
    out.profiles.reserve(fixed.states.size());
    out.fronts.reserve(fixed.states.size());
    for (std::size_t i = 0; i < fixed.states.size(); ++i) {
        out.times.push_back(fixed.times[fixed.state_steps[i]]);
        out.profiles.push_back(to_moving_frame(fixed.states[i], target));
        out.fronts.push_back(fixed.states[i].xstar);
    }
    return out;
}

double chain_rule_residual(const FixedFrameTrajectory& fixed, const ModelCoefficients& mc,
                           const NoiseKernel& k, const NoiseRecord& replayed_noise) {
    const std::size_t n_times = fixed.times.size();
    if (fixed.states.size() != n_times)
        throw std::invalid_argument(
            "chain_rule_residual: trajectory must be recorded with state_stride = 1");
    if (replayed_noise.increments.size() + 1 != n_times)
        throw std::invalid_argument("chain_rule_residual: noise record does not match the horizon");
    if (n_times < 2) throw std::invalid_argument("chain_rule_residual: empty horizon");

    const Grid1D& g = fixed.states.front().u1.grid;
    double max_front = 0.0;
    for (const auto& st : fixed.states) max_front = std::max(max_front, std::fabs(st.xstar));
    const double reach = g.L + max_front + 4.0 * g.h;
    const FullLineGrid target = FullLineGrid::make(-reach, reach, g.h, max_front + 4.0 * g.h);

    const FullLineProfile v0 = to_moving_frame(fixed.states.front(), target);
    const FullLineProfile vT = to_moving_frame(fixed.states.back(), target);

    std::vector<double> acc(static_cast<std::size_t>(target.count), 0.0);
    const std::size_t steps = n_times - 1;
    for (std::size_t s = 0; s < steps; ++s) {
        const SystemState& st = fixed.states[s];
        const double rho_s = fixed.rows[s].rho;
        const double dt = fixed.times[s + 1] - fixed.times[s];

        // strong-form drift of the pasted process (the c id parts of A and B cancel)
        const PhaseProfile d1 = first_derivative(st.u1);
        const PhaseProfile d2 = first_derivative(st.u2);
        const PhaseProfile lap1 = second_derivative(st.u1);
        const PhaseProfile lap2 = second_derivative(st.u2);
        PhaseProfile m1 = PhaseProfile::zero(g);
        PhaseProfile m2 = PhaseProfile::zero(g);
        for (int j = 0; j < g.n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            const double x = g.node(j);
            m1.values[jj] = mc.eta_plus * lap1.values[jj] +
                            mc.mu_plus(x, st.u1.values[jj], d1.values[jj]) +
                            rho_s * d1.values[jj];
            m2.values[jj] = mc.eta_minus * lap2.values[jj] +
                            mc.mu_minus(-x, st.u2.values[jj], d2.values[jj]) -
                            rho_s * d2.values[jj];
        }

        const auto sig = eval_sigma(mc, st);
        const auto noise = sample_diffusion_increment(k, st, sig.first, sig.second,
                                                      replayed_noise.increments[s]);

        for (int i = 0; i < target.count; ++i) {
            const double d = target.node(i) - st.xstar;
            // the discrete state is supported on distance < L from the front;
            // beyond it the profile and all its coefficients vanish
            if (std::fabs(d) >= g.L) continue;
            double drift_val = 0.0, transport_val = 0.0, noise_val = 0.0;
            if (d > 0) {
                drift_val = interp_interior(m1, d);
                transport_val = interp_interior(d1, d);
                noise_val = noise.first.interpolate(d);
            } else if (d < 0) {
                drift_val = interp_interior(m2, -d);
                transport_val = -interp_interior(d2, -d);  // d/dx u2(-x)
                noise_val = noise.second.interpolate(-d);
            } else {
                drift_val = 0.5 * (interp_interior(m1, 0.0) + interp_interior(m2, 0.0));
                transport_val = 0.5 * (interp_interior(d1, 0.0) - interp_interior(d2, 0.0));
            }
            // theta_{-x*}(drift) - rho * theta_{-x*}(U') integrated left-point,
            // plus the shifted noise increment
            acc[static_cast<std::size_t>(i)] +=
                dt * (drift_val - rho_s * transport_val) + noise_val;
        }
    }

    double res_sq = 0.0;
    for (int i = 0; i < target.count; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double r = vT.values[ii] - v0.values[ii] - acc[ii];
        res_sq += r * r;
    }
    return std::sqrt(res_sq * target.h);
}

}  // namespace smb

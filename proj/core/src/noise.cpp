#include "smb/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace smb {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
}

NoiseKernel NoiseKernel::gaussian(double width, double y_min, double y_max, int m_y) {
    if (!(width > 0)) throw std::invalid_argument("gaussian kernel: width must be positive");
    if (!(y_max > y_min) || m_y < 1) throw std::invalid_argument("gaussian kernel: bad window");
    const double w2 = width * width;
    const double norm = 1.0 / (width * kSqrt2Pi);
    auto g = [norm, w2](double t) { return norm * std::exp(-0.5 * t * t / w2); };
    NoiseKernel k;
    k.zeta[0] = [g](double x, double y) { return g(x - y); };
    k.zeta[1] = [g, w2](double x, double y) {
        const double t = x - y;
        return -t / w2 * g(t);
    };
    k.zeta[2] = [g, w2](double x, double y) {
        const double t = x - y;
        return (t * t / (w2 * w2) - 1.0 / w2) * g(t);
    };
    k.zeta[3] = [g, w2](double x, double y) {
        const double t = x - y;
        return (3.0 * t / (w2 * w2) - t * t * t / (w2 * w2 * w2)) * g(t);
    };
    k.y_min = y_min;
    k.y_max = y_max;
    k.m_y = m_y;
    return k;
}

NoiseKernel NoiseKernel::indicator(double a, double b, double y_min, double y_max, int m_y) {
    if (!(b > a)) throw std::invalid_argument("indicator kernel: need a < b");
    if (!(y_max > y_min) || m_y < 1) throw std::invalid_argument("indicator kernel: bad window");
    NoiseKernel k;
    k.zeta[0] = [a, b](double, double y) { return (y >= a && y <= b) ? 1.0 : 0.0; };
    for (int i = 1; i < 4; ++i) k.zeta[i] = [](double, double) { return 0.0; };
    k.y_min = y_min;
    k.y_max = y_max;
    k.m_y = m_y;
    return k;
}

double NoiseKernel::slice_l2(double x, int deriv) const {
    const double d = dy();
    double acc = 0.0;
    for (int j = 0; j < m_y; ++j) {
        const double v = zeta[static_cast<std::size_t>(deriv)](x, y_node(j));
        acc += v * v;
    }
    return std::sqrt(acc * d);
}

KernelCheck check_kernel(const NoiseKernel& k, std::span<const double> probe_x) {
    KernelCheck out;
    for (int i = 0; i < 4; ++i) {
        double sup = 0.0;
        for (double x : probe_x) {
            const double s = k.slice_l2(x, i);
            if (!std::isfinite(s)) out.finite = false;
            sup = std::max(sup, s);
        }
        out.sup_slice_l2[static_cast<std::size_t>(i)] = sup;
    }
    return out;
}

NoiseIncrement draw_increment(const NoiseKernel& k, double dt, GaussianStream& rng) {
    NoiseIncrement inc;
    inc.dt = dt;
    inc.w.resize(static_cast<std::size_t>(k.m_y));
    const double scale = std::sqrt(dt / k.dy());
    for (auto& v : inc.w) v = scale * rng.next();
    return inc;
}

double increment_l2(const NoiseKernel& k, const NoiseIncrement& w) {
    double acc = 0.0;
    for (double v : w.w) acc += v * v;
    return std::sqrt(acc * k.dy());
}

std::vector<double> apply_kernel(const NoiseKernel& k, const NoiseIncrement& w,
                                 std::span<const double> eval_points) {
    const double d = k.dy();
    const auto& zeta0 = k.zeta[0];
    std::vector<double> out(eval_points.size(), 0.0);
    for (std::size_t p = 0; p < eval_points.size(); ++p) {
        const double x = eval_points[p];
        double acc = 0.0;
        for (int j = 0; j < k.m_y; ++j)
            acc += zeta0(x, k.y_node(j)) * w.w[static_cast<std::size_t>(j)];
        out[p] = acc * d;
    }
    return out;
}

std::pair<PhaseProfile, PhaseProfile> sample_diffusion_increment(
    const NoiseKernel& k, const SystemState& s, const PhaseProfile& sigma_plus_vals,
    const PhaseProfile& sigma_minus_vals, const NoiseIncrement& w) {
    const Grid1D& g = s.u1.grid;
    PhaseProfile inc1 = PhaseProfile::zero(g);
    PhaseProfile inc2 = PhaseProfile::zero(g);

    bool all_zero = true;
    for (int j = 0; j < g.n && all_zero; ++j)
        all_zero = sigma_plus_vals.at(j) == 0.0 && sigma_minus_vals.at(j) == 0.0;
    if (all_zero) return {inc1, inc2};  // zero Nemytskii factor, no smoothing needed

    std::vector<double> pts(2 * static_cast<std::size_t>(g.n));
    for (int j = 0; j < g.n; ++j) {
        pts[static_cast<std::size_t>(j)] = s.xstar + g.node(j);
        pts[static_cast<std::size_t>(g.n + j)] = s.xstar - g.node(j);
    }
    const std::vector<double> smooth = apply_kernel(k, w, pts);
    for (int j = 0; j < g.n; ++j) {
        inc1.values[static_cast<std::size_t>(j)] =
            sigma_plus_vals.at(j) * smooth[static_cast<std::size_t>(j)];
        inc2.values[static_cast<std::size_t>(j)] =
            sigma_minus_vals.at(j) * smooth[static_cast<std::size_t>(g.n + j)];
    }
    return {inc1, inc2};
}

double covariance(const NoiseKernel& k, double x, double y) {
    const double d = k.dy();
    const auto& zeta0 = k.zeta[0];
    double acc = 0.0;
    for (int j = 0; j < k.m_y; ++j) {
        const double z = k.y_node(j);
        acc += zeta0(x, z) * zeta0(y, z);
    }
    return acc * d;
}

double hs_norm_direct(const NoiseKernel& k, const PhaseProfile& sigma_plus_vals,
                      const PhaseProfile& sigma_minus_vals, double xstar,
                      const OperatorParams& op) {
    const Grid1D& g = sigma_plus_vals.grid;
    const double sqrt_dy = std::sqrt(k.dy());
    SystemState column;
    column.u1 = PhaseProfile::zero(g);
    column.u2 = PhaseProfile::zero(g);
    column.xstar = 0.0;

    double acc = 0.0;
    for (int basis = 0; basis < k.m_y; ++basis) {
        const double yb = k.y_node(basis);
        for (int j = 0; j < g.n; ++j) {
            // (T e_b)(x) = zeta(x, y_b) * sqrt(dy) for the normalized cell basis
            const double t_plus = k.zeta[0](xstar + g.node(j), yb) * sqrt_dy;
            const double t_minus = k.zeta[0](xstar - g.node(j), yb) * sqrt_dy;
            column.u1.values[static_cast<std::size_t>(j)] = sigma_plus_vals.at(j) * t_plus;
            column.u2.values[static_cast<std::size_t>(j)] = sigma_minus_vals.at(j) * t_minus;
        }
        const double gn = graph_norm(column, op);
        acc += gn * gn;
    }
    return std::sqrt(acc);
}

double hs_norm_bound(const NoiseKernel& k, const PhaseProfile& sigma_plus_vals,
                     const PhaseProfile& sigma_minus_vals, const OperatorParams& op,
                     std::span<const double> probe_x) {
    constexpr double kLeibniz = 2.0;
    double sup = 0.0;
    for (double x : probe_x) {
        double sum = 0.0;
        for (int i = 0; i <= 2; ++i) sum += k.slice_l2(x, i);
        sup = std::max(sup, sum);
    }
    SystemState nsig{sigma_plus_vals, sigma_minus_vals, 0.0};
    return kLeibniz * graph_norm(nsig, op) * sup;
}

}  // namespace smb

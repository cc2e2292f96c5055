#include "smb/coefficients.hpp"

#include <cmath>

namespace smb {

namespace {

ModelCoefficients base_stefan(double varrho) {
    ModelCoefficients mc;
    mc.mu_plus = [](double, double, double) { return 0.0; };
    mc.mu_minus = [](double, double, double) { return 0.0; };
    mc.sigma_plus = [](double, double) { return 0.0; };
    mc.sigma_minus = [](double, double) { return 0.0; };
    mc.rho = [varrho](double g1, double g2) { return varrho * (g2 - g1); };
    return mc;
}

}  // namespace

ModelCoefficients ModelCoefficients::stefan(double varrho) {
    ModelCoefficients mc = base_stefan(varrho);
    mc.preset_name = "stefan";
    mc.check();
    return mc;
}

ModelCoefficients ModelCoefficients::stefan_multiplicative(double varrho, double noise) {
    ModelCoefficients mc = base_stefan(varrho);
    mc.sigma_plus = [noise](double, double y) { return noise * y; };
    mc.sigma_minus = [noise](double, double y) { return noise * y; };
    AffineSigma aff;
    aff.s1_plus = [](double) { return 0.0; };
    aff.s1_minus = [](double) { return 0.0; };
    aff.s2_plus = [noise](double) { return noise; };
    aff.s2_minus = [noise](double) { return noise; };
    mc.affine_sigma = aff;
    mc.preset_name = "stefan_mult";
    mc.check();
    return mc;
}

ModelCoefficients ModelCoefficients::burgers(double varrho) {
    ModelCoefficients mc = base_stefan(varrho);
    mc.mu_plus = [](double, double y, double z) { return y * z; };
    mc.mu_minus = [](double, double y, double z) { return y * z; };
    mc.preset_name = "burgers";
    mc.check();
    return mc;
}

ModelCoefficients ModelCoefficients::reaction(std::function<double(double)> f, double varrho) {
    if (std::fabs(f(0.0)) > 1e-12)
        throw std::invalid_argument("reaction preset: f(0) must vanish");
    ModelCoefficients mc = base_stefan(varrho);
    mc.mu_plus = [f](double, double y, double) { return f(y); };
    mc.mu_minus = [f](double, double y, double) { return f(y); };
    mc.preset_name = "reaction";
    mc.check();
    return mc;
}

void ModelCoefficients::check() const {
    if (!(eta_plus > 0) || !(eta_minus > 0))
        throw std::invalid_argument("ModelCoefficients: diffusivities must be positive");
    if (!(c >= 0)) throw std::invalid_argument("ModelCoefficients: c must be non-negative");
    if (!mu_plus || !mu_minus || !sigma_plus || !sigma_minus || !rho)
        throw std::invalid_argument("ModelCoefficients: all coefficient functions must be set");
    if (std::fabs(sigma_plus(0.0, 0.0)) > 1e-12 || std::fabs(sigma_minus(0.0, 0.0)) > 1e-12)
        throw std::invalid_argument("ModelCoefficients: sigma(0,0) must vanish");
    if (affine_sigma) {
        const auto& a = *affine_sigma;
        double worst = 0.0;
        for (int i = 0; i <= 8; ++i) {
            const double x = 0.25 * i;
            for (int j = -4; j <= 4; ++j) {
                const double y = 0.5 * j;
                worst = std::max(worst,
                                 std::fabs(sigma_plus(x, y) - (a.s1_plus(x) + a.s2_plus(x) * y)));
                worst = std::max(
                    worst, std::fabs(sigma_minus(-x, y) - (a.s1_minus(x) + a.s2_minus(x) * y)));
            }
        }
        if (worst > 1e-10)
            throw std::invalid_argument(
                "ModelCoefficients: affine sigma decomposition residual " + std::to_string(worst));
    }
}

double TruncationLevel::operator()(double x) const {
    if (x <= N) return 1.0;
    if (x >= N + 1.0) return 0.0;
    const double s = x - N;
    // complementary smoothstep: C^2, h(N)=1, h(N+1)=0, h'(N)=h'(N+1)=0
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

std::vector<double> truncate_coefficient(const TruncationLevel& t, double norm,
                                         std::span<const double> value) {
    const double factor = t(norm);
    std::vector<double> out(value.begin(), value.end());
    if (factor == 1.0) return out;
    for (auto& v : out) v *= factor;
    return out;
}

DriftEval eval_drift(const ModelCoefficients& mc, const SystemState& s,
                     const BoundaryTrace& tr) {
    const Grid1D& g = s.u1.grid;
    const PhaseProfile d1 = first_derivative(s.u1);
    const PhaseProfile d2 = first_derivative(s.u2);
    const double rho_val = mc.rho(tr.g1, tr.g2);
    if (!std::isfinite(rho_val)) throw InvalidStateError("eval_drift: rho is not finite");

    DriftEval out;
    out.b1 = PhaseProfile::zero(g);
    out.b2 = PhaseProfile::zero(g);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        const auto jj = static_cast<std::size_t>(j);
        const double v1 = mc.mu_plus(x, s.u1.values[jj], d1.values[jj]) +
                          d1.values[jj] * rho_val + mc.c * s.u1.values[jj];
        const double v2 = mc.mu_minus(-x, s.u2.values[jj], d2.values[jj]) -
                          d2.values[jj] * rho_val + mc.c * s.u2.values[jj];
        if (!std::isfinite(v1))
            throw InvalidStateError("eval_drift: non-finite phase-1 drift at node " +
                                    std::to_string(j + 1));
        if (!std::isfinite(v2))
            throw InvalidStateError("eval_drift: non-finite phase-2 drift at node " +
                                    std::to_string(j + 1));
        out.b1.values[jj] = v1;
        out.b2.values[jj] = v2;
    }
    out.rho_value = rho_val;
    out.front = rho_val + mc.c * s.xstar;
    return out;
}

std::pair<PhaseProfile, PhaseProfile> eval_sigma(const ModelCoefficients& mc,
                                                 const SystemState& s) {
    const Grid1D& g = s.u1.grid;
    PhaseProfile s1 = PhaseProfile::zero(g);
    PhaseProfile s2 = PhaseProfile::zero(g);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        const auto jj = static_cast<std::size_t>(j);
        s1.values[jj] = mc.sigma_plus(x, s.u1.values[jj]);
        s2.values[jj] = mc.sigma_minus(-x, s.u2.values[jj]);
        if (!std::isfinite(s1.values[jj]) || !std::isfinite(s2.values[jj]))
            throw InvalidStateError("eval_sigma: non-finite diffusion at node " +
                                    std::to_string(j + 1));
    }
    return {std::move(s1), std::move(s2)};
}

namespace {

// Central-difference partial of f in the k-th argument.
template <typename F>
double partial3(const F& f, double x, double y, double z, int k, double eps) {
    switch (k) {
        case 0: return (f(x + eps, y, z) - f(x - eps, y, z)) / (2 * eps);
        case 1: return (f(x, y + eps, z) - f(x, y - eps, z)) / (2 * eps);
        default: return (f(x, y, z + eps) - f(x, y, z - eps)) / (2 * eps);
    }
}

struct MuProbe {
    CoefficientReport report;
    bool finite = true;
};

MuProbe probe_mu(const std::function<double(double, double, double)>& mu, const ProbeBox& box) {
    MuProbe out;
    const int m = box.points_per_axis;
    const double eps = 1e-5;
    double lip_min_slice = 0, lip_max_slice = 0;
    bool first_slice = true;
    double env_b = 0, env_a = 0;

    for (int ix = 0; ix < m; ++ix) {
        const double x = box.x_max * ix / (m - 1);
        double slice_lip = 0;
        const double g0 = std::fabs(mu(x, 0, 0)) + std::fabs(partial3(mu, x, 0, 0, 0, eps));
        env_a = std::max(env_a, g0);
        for (int iy = 0; iy < m; ++iy) {
            const double y = -box.y_max + 2 * box.y_max * iy / (m - 1);
            for (int iz = 0; iz < m; ++iz) {
                const double z = -box.z_max + 2 * box.z_max * iz / (m - 1);
                const double py = std::fabs(partial3(mu, x, y, z, 1, eps));
                const double pz = std::fabs(partial3(mu, x, y, z, 2, eps));
                if (!std::isfinite(py) || !std::isfinite(pz)) out.finite = false;
                out.report.lipschitz_y = std::max(out.report.lipschitz_y, py);
                out.report.lipschitz_z = std::max(out.report.lipschitz_z, pz);
                slice_lip = std::max(slice_lip, std::max(py, pz));
                const double gz = std::fabs(mu(x, y, z)) + std::fabs(partial3(mu, x, y, z, 0, eps));
                const double denom = std::fabs(y) + std::fabs(z);
                if (denom > 1e-9) env_b = std::max(env_b, std::max(0.0, gz - g0) / denom);
            }
        }
        if (first_slice) {
            lip_min_slice = lip_max_slice = slice_lip;
            first_slice = false;
        } else {
            lip_min_slice = std::min(lip_min_slice, slice_lip);
            lip_max_slice = std::max(lip_max_slice, slice_lip);
        }
    }
    out.report.envelope_a = env_a;
    out.report.envelope_b = env_b;
    out.report.lipschitz_x_spread =
        lip_max_slice > 0 ? (lip_max_slice - lip_min_slice) / lip_max_slice : 0.0;
    return out;
}

MuProbe probe_sigma(const std::function<double(double, double)>& sigma, const ProbeBox& box,
                    bool reflected) {
    auto as3 = [&sigma, reflected](double x, double y, double) {
        return sigma(reflected ? -x : x, y);
    };
    MuProbe out;
    const int m = box.points_per_axis;
    const double eps = 1e-5;
    double lip_min_slice = 0, lip_max_slice = 0;
    bool first_slice = true;
    for (int ix = 0; ix < m; ++ix) {
        const double x = box.x_max * ix / (m - 1);
        double slice_lip = 0;
        const double g0 = std::fabs(as3(x, 0, 0)) + std::fabs(partial3(as3, x, 0, 0, 0, eps));
        out.report.envelope_a = std::max(out.report.envelope_a, g0);
        for (int iy = 0; iy < m; ++iy) {
            const double y = -box.y_max + 2 * box.y_max * iy / (m - 1);
            const double py = std::fabs(partial3(as3, x, y, 0, 1, eps));
            if (!std::isfinite(py)) out.finite = false;
            out.report.lipschitz_y = std::max(out.report.lipschitz_y, py);
            slice_lip = std::max(slice_lip, py);
            const double gz = std::fabs(as3(x, y, 0)) + std::fabs(partial3(as3, x, y, 0, 0, eps));
            if (std::fabs(y) > 1e-9)
                out.report.envelope_b =
                    std::max(out.report.envelope_b, std::max(0.0, gz - g0) / std::fabs(y));
        }
        if (first_slice) {
            lip_min_slice = lip_max_slice = slice_lip;
            first_slice = false;
        } else {
            lip_min_slice = std::min(lip_min_slice, slice_lip);
            lip_max_slice = std::max(lip_max_slice, slice_lip);
        }
    }
    out.report.lipschitz_x_spread =
        lip_max_slice > 0 ? (lip_max_slice - lip_min_slice) / lip_max_slice : 0.0;
    return out;
}

}  // namespace

ValidationReport validate_assumptions(const ModelCoefficients& mc, const ProbeBox& box) {
    ValidationReport rep;

    const MuProbe mp = probe_mu(mc.mu_plus, box);
    const MuProbe mm = probe_mu(mc.mu_minus, box);
    rep.mu_plus = mp.report;
    rep.mu_minus = mm.report;
    if (!mp.finite || !mm.finite) rep.warnings.push_back("mu: non-finite values on probe box");

    const MuProbe sp = probe_sigma(mc.sigma_plus, box, false);
    const MuProbe sm = probe_sigma(mc.sigma_minus, box, true);
    rep.sigma_plus = sp.report;
    rep.sigma_minus = sm.report;
    if (!sp.finite || !sm.finite) rep.warnings.push_back("sigma: non-finite values on probe box");

    // rho Lipschitz: componentwise sup of the gradient over the lattice
    {
        const double eps = 1e-6;
        const int m = box.points_per_axis;
        double lip = 0;
        bool finite = true;
        for (int i = 0; i < m; ++i) {
            const double g1 = -box.y_max + 2 * box.y_max * i / (m - 1);
            for (int j = 0; j < m; ++j) {
                const double g2 = -box.y_max + 2 * box.y_max * j / (m - 1);
                const double p1 = std::fabs((mc.rho(g1 + eps, g2) - mc.rho(g1 - eps, g2)) / (2 * eps));
                const double p2 = std::fabs((mc.rho(g1, g2 + eps) - mc.rho(g1, g2 - eps)) / (2 * eps));
                if (!std::isfinite(p1) || !std::isfinite(p2)) finite = false;
                lip = std::max(lip, std::max(p1, p2));
            }
        }
        if (!finite) rep.warnings.push_back("rho: non-finite derivative on probe box");
        rep.rho_lipschitz = lip;
    }

    rep.sigma_bc_residual_plus = std::fabs(mc.sigma_plus(0.0, 0.0));
    rep.sigma_bc_residual_minus = std::fabs(mc.sigma_minus(0.0, 0.0));
    if (rep.sigma_bc_residual_plus > 1e-9)
        rep.warnings.push_back("sigma+(0,0) != 0, residual " +
                               std::to_string(rep.sigma_bc_residual_plus));
    if (rep.sigma_bc_residual_minus > 1e-9)
        rep.warnings.push_back("sigma-(0,0) != 0, residual " +
                               std::to_string(rep.sigma_bc_residual_minus));

    if (mc.affine_sigma) {
        const auto& a = *mc.affine_sigma;
        double worst = 0.0;
        const int m = box.points_per_axis;
        for (int ix = 0; ix < m; ++ix) {
            const double x = box.x_max * ix / (m - 1);
            for (int iy = 0; iy < m; ++iy) {
                const double y = -box.y_max + 2 * box.y_max * iy / (m - 1);
                worst = std::max(
                    worst, std::fabs(mc.sigma_plus(x, y) - (a.s1_plus(x) + a.s2_plus(x) * y)));
                worst = std::max(
                    worst, std::fabs(mc.sigma_minus(-x, y) - (a.s1_minus(x) + a.s2_minus(x) * y)));
            }
        }
        rep.affine_residual = worst;
        if (worst > 1e-10)
            rep.warnings.push_back("claimed affine sigma decomposition fails, residual " +
                                   std::to_string(worst));
    }

    return rep;
}

}  // namespace smb

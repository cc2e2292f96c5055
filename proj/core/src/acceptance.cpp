#include "smb/acceptance.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>
#include <thread>

#include "smb/frame_transform.hpp"
#include "smb/solver.hpp"
#include "smb/validation.hpp"

namespace smb::accept {

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, const std::string& name,
                      const std::function<std::pair<bool, std::string>()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = Clock::now();
    try {
        auto [ok, detail] = body();
        r.passed = ok;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::string fmtg(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

ModelCoefficients zero_coefficients(double c) {
    ModelCoefficients mc;
    mc.mu_plus = [](double, double, double) { return 0.0; };
    mc.mu_minus = [](double, double, double) { return 0.0; };
    mc.sigma_plus = [](double, double) { return 0.0; };
    mc.sigma_minus = [](double, double) { return 0.0; };
    mc.rho = [](double, double) { return 0.0; };
    mc.c = c;
    mc.preset_name = "zero";
    return mc;
}

NoiseKernel tiny_kernel() { return NoiseKernel::indicator(0.0, 1.0, 0.0, 1.0, 4); }

PhaseProfile random_smooth_profile(const Grid1D& g, GaussianStream& rng, int modes = 12,
                                   double decay = 2.0) {
    PhaseProfile p = PhaseProfile::zero(g);
    const double pi = 3.14159265358979323846;
    for (int k = 1; k <= modes; ++k) {
        const double amp = rng.next() / std::pow(static_cast<double>(k), decay);
        for (int j = 0; j < g.n; ++j)
            p.values[static_cast<std::size_t>(j)] +=
                amp * std::sin(pi * static_cast<double>(k * (j + 1)) / static_cast<double>(g.n + 1));
    }
    return p;
}

// ---- 1. classical Stefan front benchmark --------------------------------

std::pair<bool, std::string> stefan_front() {
    const double eta = 1.0, varrho = 1.0, amplitude = 0.5, t0 = 0.1;
    StefanSimilarity ref = StefanSimilarity::make(eta, varrho, amplitude, t0);
    // anchor so x*(t) = 2 lambda sqrt(eta (t0 + t)) literally
    ref.x0 = 2.0 * ref.lambda * std::sqrt(eta * t0);

    const Grid1D grid = Grid1D::with_length(400, 8.0);
    ModelCoefficients mc = ModelCoefficients::stefan(varrho);
    mc.eta_plus = eta;
    mc.eta_minus = eta;

    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 0.5;
    cfg.seed = 7;

    const SystemState s0 = stefan_profile(ref, 0.0, grid);
    const auto t_start = Clock::now();
    const FixedFrameTrajectory traj = run_trajectory(cfg, mc, tiny_kernel(), s0);
    const double wall = std::chrono::duration<double>(Clock::now() - t_start).count();

    if (traj.status.outcome != TrajectoryStatus::Outcome::completed)
        return {false, "unexpected blow-up"};
    const double x_sim = traj.rows.back().xstar;
    const double x_ref = ref.front(cfg.t_end);
    const double rel = std::fabs(x_sim - x_ref) / std::fabs(x_ref);
    const bool ok = rel <= 0.01 && wall <= 60.0;
    return {ok, "front rel err " + fmtg(rel) + " (cap 0.01), wall " + fmtg(wall) + " s (cap 60)"};
}

// ---- 2. deterministic heat vs sine-series oracle -------------------------

std::pair<bool, std::string> heat_cross_check() {
    const double eta = 1.0, t = 0.01, dt = 1e-5, L = 1.0;
    const double pi = 3.14159265358979323846;
    const ModelCoefficients mc = [] {
        ModelCoefficients m = zero_coefficients(0.0);
        return m;
    }();

    std::vector<double> errors, hs;
    for (int n : {99, 199, 399}) {
        const Grid1D grid = Grid1D::with_length(n, L);
        const PhaseProfile p0 = PhaseProfile::sample(grid, [&](double x) {
            return std::sin(pi * x / L) + 0.3 * std::sin(2 * pi * x / L) +
                   0.1 * std::sin(5 * pi * x / L);
        });
        SystemState s0 = SystemState::zero(grid);
        s0.u1 = p0;
        s0.u2 = p0;

        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t;
        cfg.seed = 3;
        const FixedFrameTrajectory traj = run_trajectory(cfg, mc, tiny_kernel(), s0);
        const PhaseProfile oracle = heat_series_solution(p0, eta, t);

        PhaseProfile diff = traj.final_state().u1;
        for (int j = 0; j < grid.n; ++j)
            diff.values[static_cast<std::size_t>(j)] -= oracle.values[static_cast<std::size_t>(j)];
        const double err = norm_sobolev(diff, 0);
        const double tol = 5.0 * (grid.h * grid.h + dt);
        if (err > tol)
            return {false, "n=" + std::to_string(n) + " err " + fmtg(err) + " > tol " + fmtg(tol)};
        errors.push_back(err);
        hs.push_back(grid.h);
    }
    const double order1 = std::log2(errors[0] / errors[1]);
    const double order2 = std::log2(errors[1] / errors[2]);
    const double order = std::min(order1, order2);
    return {order >= 1.9, "errors " + fmtg(errors[0]) + "/" + fmtg(errors[1]) + "/" +
                              fmtg(errors[2]) + ", observed spatial order " + fmtg(order) +
                              " (need >= 1.9)"};
}

// ---- 3. noise covariance Monte Carlo -------------------------------------

std::pair<bool, std::string> noise_covariance() {
    const NoiseKernel k = NoiseKernel::gaussian(0.5, -6.0, 6.0, 256);
    const double dt = 0.025;
    const int steps = 4;
    const double t = dt * steps;
    const int n_samples = 10000;
    const std::pair<double, double> probes[] = {
        {0.0, 0.0}, {0.25, 0.25}, {0.0, 0.5}, {-0.5, 0.5}, {1.0, -1.0}};
    constexpr int n_probes = 5;

    std::vector<double> xs, ys;
    for (const auto& [a, b] : probes) {
        xs.push_back(a);
        ys.push_back(b);
    }
    std::vector<double> pts;
    for (const auto& [a, b] : probes) {
        pts.push_back(a);
        pts.push_back(b);
    }

    const auto t_start = Clock::now();
    GaussianStream rng(2024);
    std::vector<double> sum_x(n_probes, 0.0), sum_y(n_probes, 0.0), sum_xy(n_probes, 0.0);
    for (int s = 0; s < n_samples; ++s) {
        std::vector<double> xi(2 * n_probes, 0.0);
        for (int i = 0; i < steps; ++i) {
            const NoiseIncrement w = draw_increment(k, dt, rng);
            const std::vector<double> v = apply_kernel(k, w, pts);
            for (std::size_t q = 0; q < xi.size(); ++q) xi[q] += v[q];
        }
        for (int q = 0; q < n_probes; ++q) {
            sum_x[q] += xi[2 * q];
            sum_y[q] += xi[2 * q + 1];
            sum_xy[q] += xi[2 * q] * xi[2 * q + 1];
        }
    }
    const double wall = std::chrono::duration<double>(Clock::now() - t_start).count();

    double worst_z = 0.0;
    for (int q = 0; q < n_probes; ++q) {
        const double mean_x = sum_x[q] / n_samples;
        const double mean_y = sum_y[q] / n_samples;
        const double emp = sum_xy[q] / n_samples - mean_x * mean_y;
        const double ref = t * covariance(k, xs[q], ys[q]);
        const double cxx = t * covariance(k, xs[q], xs[q]);
        const double cyy = t * covariance(k, ys[q], ys[q]);
        const double se = std::sqrt((cxx * cyy + ref * ref) / n_samples);
        worst_z = std::max(worst_z, std::fabs(emp - ref) / se);
    }
    const bool ok = worst_z <= 3.0 && wall <= 30.0;
    return {ok, "worst |z| " + fmtg(worst_z) + " (cap 3), wall " + fmtg(wall) + " s (cap 30)"};
}

// ---- 4. Hilbert-Schmidt inequality ----------------------------------------

std::pair<bool, std::string> hs_inequality() {
    const Grid1D grid = Grid1D::with_length(60, 4.0);
    const OperatorParams op{1.0, 1.0, 1.0};
    const NoiseKernel kernels[] = {NoiseKernel::gaussian(0.4, -7.0, 7.0, 128),
                                   NoiseKernel::indicator(0.0, 1.0, 0.0, 1.0, 64)};
    std::vector<double> probe_x;
    for (int i = 0; i <= 20; ++i) probe_x.push_back(-5.0 + 0.5 * i);

    GaussianStream rng(99);
    int violations = 0;
    double worst_margin = 1e300;
    for (const auto& k : kernels) {
        for (int trial = 0; trial < 50; ++trial) {
            const PhaseProfile sig1 = random_smooth_profile(grid, rng);
            const PhaseProfile sig2 = random_smooth_profile(grid, rng);
            const double xstar = rng.next();
            const double direct = hs_norm_direct(k, sig1, sig2, xstar, op);
            const double bound = hs_norm_bound(k, sig1, sig2, op, probe_x);
            if (direct > bound) ++violations;
            if (direct > 0) worst_margin = std::min(worst_margin, bound / direct);
        }
    }
    return {violations == 0, "violations " + std::to_string(violations) +
                                 "/100, min bound/direct ratio " + fmtg(worst_margin)};
}

// ---- 5. semigroup smoothing constants -------------------------------------

std::pair<bool, std::string> smoothing_constants() {
    std::vector<double> t_grid;
    for (int i = 0; i < 16; ++i) t_grid.push_back(1e-3 * std::pow(10.0, 3.0 * i / 15.0));
    const std::pair<double, double> pairs[] = {{1.0, 0.0}, {1.0, 0.5}, {0.5, 0.0}};

    std::ostringstream detail;
    bool ok = true;
    for (const auto& [alpha, beta] : pairs) {
        double kmin = 1e300, kmax = 0.0;
        for (int n : {100, 200, 400}) {
            const SpectralLaplacian sl(Grid1D::with_length(n, 4.0), 1.0, 1.0);
            const ProbeReport rep = smoothing_probe(sl, alpha, beta, t_grid, 20, 0xABCD);
            if (!std::isfinite(rep.k_hat)) ok = false;
            kmin = std::min(kmin, rep.k_hat);
            kmax = std::max(kmax, rep.k_hat);
        }
        if (!(kmax <= 2.0 * kmin)) ok = false;
        detail << "(" << alpha << "," << beta << "): K in [" << fmtg(kmin) << "," << fmtg(kmax)
               << "] ";
    }
    return {ok, detail.str() + "(stability cap 2x)"};
}

// ---- 6. truncation coincidence --------------------------------------------

std::pair<bool, std::string> truncation_coincidence() {
    const Grid1D grid = Grid1D::with_length(80, 4.0);
    const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.5);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -7.5, 7.5, 64);
    const OperatorParams op{mc.eta_plus, mc.eta_minus, mc.c};

    SystemState s0 = SystemState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        s0.u1.values[static_cast<std::size_t>(j)] = 1.2 * x * std::exp(-x * x);
        s0.u2.values[static_cast<std::size_t>(j)] = -0.8 * x * std::exp(-x * x / 1.5);
    }
    const double N = graph_norm(s0, op) * 1.02;

    int crossings = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 0.3;
        cfg.seed = seed;
        const FixedFrameTrajectory plain = run_trajectory(cfg, mc, k, s0);
        cfg.truncation_N = N;
        const FixedFrameTrajectory trunc = run_truncated(cfg, mc, k, s0);

        // first index whose graph norm reaches N
        std::size_t cross = plain.rows.size();
        for (std::size_t i = 0; i < plain.rows.size(); ++i) {
            if (plain.rows[i].graph_norm >= N) {
                cross = i;
                break;
            }
        }
        if (cross < plain.rows.size()) ++crossings;
        const std::size_t upto = std::min(cross + 1, trunc.rows.size());
        for (std::size_t i = 0; i < upto; ++i) {
            const TraceRow& a = plain.rows[i];
            const TraceRow& b = trunc.rows[i];
            if (std::memcmp(&a, &b, sizeof(TraceRow)) != 0)
                return {false, "seed " + std::to_string(seed) + ": rows diverge at step " +
                                   std::to_string(i) + " before the crossing at " +
                                   std::to_string(cross)};
        }
        if (cross == plain.rows.size()) {
            // no crossing: full-horizon coincidence including the final state
            const SystemState& sa = plain.final_state();
            const SystemState& sb = trunc.final_state();
            if (sa.u1.values != sb.u1.values || sa.u2.values != sb.u2.values ||
                sa.xstar != sb.xstar)
                return {false, "seed " + std::to_string(seed) +
                                   ": final states differ without a norm crossing"};
        }
    }
    return {true, "20 paired seeds bitwise-coincident up to the crossing (" +
                      std::to_string(crossings) + " seeds crossed N)"};
}

// ---- 7. global-existence regime -------------------------------------------

ModelCoefficients affine_bounded_model(const std::function<double(double, double)>& rho) {
    ModelCoefficients mc;
    mc.mu_plus = [](double, double, double) { return 0.0; };
    mc.mu_minus = [](double, double, double) { return 0.0; };
    mc.sigma_plus = [](double x, double y) { return 0.3 * x * std::exp(-x) + 0.15 * y; };
    mc.sigma_minus = [](double x, double y) { return -0.3 * x * std::exp(x) + 0.15 * y; };
    ModelCoefficients::AffineSigma aff;
    aff.s1_plus = [](double x) { return 0.3 * x * std::exp(-x); };
    aff.s2_plus = [](double) { return 0.15; };
    aff.s1_minus = [](double x) { return 0.3 * x * std::exp(-x); };
    aff.s2_minus = [](double) { return 0.15; };
    mc.affine_sigma = aff;
    mc.rho = rho;
    mc.preset_name = "affine";
    mc.check();
    return mc;
}

std::pair<bool, std::string> global_existence(int workers) {
    ModelCoefficients mc =
        affine_bounded_model([](double g1, double g2) { return std::tanh(g2 - g1); });
    mc.rho_bounded = true;
    const Grid1D grid = Grid1D::with_length(100, 4.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -7.5, 7.5, 64);

    SystemState s0 = SystemState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        s0.u1.values[static_cast<std::size_t>(j)] = x * std::exp(-x * x);
        s0.u2.values[static_cast<std::size_t>(j)] = 0.5 * x * std::exp(-x * x / 0.64);
    }

    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 1.0;
    cfg.seed = 42;
    cfg.blowup_threshold = 1e6;

    const EnsembleStats stats = run_ensemble(cfg, mc, k, s0, 100, workers);
    return {stats.blowup_count == 0,
            std::to_string(stats.blowup_count) + " blow-ups in 100 paths at threshold 1e6"};
}

// ---- 8. blow-up / boundary coincidence -------------------------------------

std::pair<bool, std::string> blowup_boundary(int workers) {
    const ModelCoefficients mc = affine_bounded_model([](double g1, double g2) {
        const double d = g2 - g1;
        return 5.0 * d * d * d;
    });
    const Grid1D grid = Grid1D::with_length(80, 4.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -7.5, 7.5, 64);

    SystemState s0 = SystemState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        s0.u1.values[static_cast<std::size_t>(j)] = 2.0 * x * std::exp(-2.0 * x * x);
        s0.u2.values[static_cast<std::size_t>(j)] = -1.5 * x * std::exp(-2.0 * x * x);
    }

    SolverConfig base;
    base.dt = 5e-4;
    base.t_end = 0.5;
    base.seed = 4242;
    base.blowup_threshold = 1e6;
    base.boundary_threshold = 100.0;

    const int n_paths = 100;
    std::vector<TrajectoryStatus> statuses(n_paths);
    std::atomic<int> next{0};
    auto worker_fn = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= n_paths) return;
            SolverConfig cfg = base;
            cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(idx));
            statuses[static_cast<std::size_t>(idx)] = run_trajectory(cfg, mc, k, s0).status;
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::max(1, workers); ++i) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();

    int blowups = 0, ordered = 0;
    for (const auto& st : statuses) {
        if (st.outcome != TrajectoryStatus::Outcome::blowup) continue;
        ++blowups;
        if (st.boundary_flag && st.t_circ <= st.t_blow) ++ordered;
    }
    const bool ok = blowups >= 20 && ordered == blowups;
    return {ok, std::to_string(blowups) + " blow-ups in 100 paths (need >= 20), " +
                    std::to_string(ordered) + " with boundary crossing at or before the norm"};
}

// ---- 9. chain-rule residual ------------------------------------------------

double residual_for_level(const ModelCoefficients& mc, const NoiseKernel& k, int level,
                          std::uint64_t seed, double u2_amp) {
    // base: n=49, dt=1.6e-3, T=0.064; each level halves h and dt
    const int n = 50 * (1 << level) - 1;
    const Grid1D grid = Grid1D::with_length(n, 2.0);
    SolverConfig cfg;
    cfg.dt = 1.6e-3 / (1 << level);
    cfg.t_end = 0.064;
    cfg.seed = seed;
    cfg.state_stride = 1;
    cfg.record_noise = true;

    SystemState s0 = SystemState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        // decay fast enough that the truncation tail at L stays below the
        // residual resolution on every refinement level
        s0.u1.values[static_cast<std::size_t>(j)] = x * std::exp(-4.0 * x * x);
        s0.u2.values[static_cast<std::size_t>(j)] = u2_amp * x * std::exp(-4.0 * x * x);
    }

    NoiseRecord rec;
    const FixedFrameTrajectory traj = run_trajectory(cfg, mc, k, s0, &rec);
    return chain_rule_residual(traj, mc, k, rec);
}

std::pair<bool, std::string> chain_rule_orders() {
    // deterministic: pure decay, no front motion
    ModelCoefficients det = zero_coefficients(0.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -4.5, 4.5, 64);
    std::vector<double> det_res;
    for (int level = 0; level < 4; ++level)
        det_res.push_back(residual_for_level(det, k, level, 11, 0.7));
    double det_order = 1e300;
    bool det_monotone = true;
    for (int i = 0; i + 1 < 4; ++i) {
        if (!(det_res[i + 1] < det_res[i])) det_monotone = false;
        det_order = std::min(det_order, std::log2(det_res[i] / det_res[i + 1]));
    }

    // noisy Stefan: multiplicative noise, moving front; average over seeds
    const ModelCoefficients noisy = ModelCoefficients::stefan_multiplicative(1.0, 0.3);
    std::vector<double> noisy_res(4, 0.0);
    const int n_seeds = 8;
    for (int level = 0; level < 4; ++level) {
        double acc = 0.0;
        for (int s = 0; s < n_seeds; ++s)
            acc += residual_for_level(noisy, k, level, 100 + static_cast<std::uint64_t>(s), 0.7);
        noisy_res[static_cast<std::size_t>(level)] = acc / n_seeds;
    }
    double noisy_order = 1e300;
    bool noisy_monotone = true;
    for (int i = 0; i + 1 < 4; ++i) {
        if (!(noisy_res[i + 1] < noisy_res[i])) noisy_monotone = false;
        noisy_order = std::min(noisy_order, std::log2(noisy_res[i] / noisy_res[i + 1]));
    }

    const bool ok = det_monotone && det_order >= 0.9 && noisy_monotone && noisy_order >= 0.4;
    return {ok, "deterministic order " + fmtg(det_order) + " (need >= 0.9), noisy order " +
                    fmtg(noisy_order) + " (need >= 0.4), residuals " + fmtg(noisy_res[0]) +
                    "->" + fmtg(noisy_res[3])};
}

// ---- 10. shift / transform algebra -----------------------------------------

std::pair<bool, std::string> shift_algebra() {
    // aligned group law, bitwise; compact support so nothing leaves the window
    {
        const FullLineGrid g = FullLineGrid::make(-4.0, 4.0, 0.01, 2.0);
        GaussianStream rng(5);
        FullLineProfile p = FullLineProfile::zero(g);
        for (int i = 0; i < g.count; ++i) {
            const double u = g.node(i) / 2.0;
            p.values[static_cast<std::size_t>(i)] =
                std::fabs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) * (1.0 + 0.1 * rng.next())
                                   : 0.0;
        }
        const FullLineProfile lhs = shift(shift(p, 3 * g.h), -5 * g.h);
        const FullLineProfile rhs = shift(p, -2 * g.h);
        if (lhs.values != rhs.values) return {false, "aligned group law is not bitwise"};
    }

    // unaligned isometry and round trip, constant stable across refinement
    double iso_c_prev = 0, rt_c_prev = 0;
    bool first = true;
    bool ok = true;
    std::ostringstream detail;
    for (int n : {199, 399}) {
        const Grid1D grid = Grid1D::with_length(n, 4.0);
        const double h = grid.h;
        const FullLineGrid g = FullLineGrid::make(-6.0, 6.0, h, 2.0);
        const FullLineProfile f =
            FullLineProfile::sample(g, [](double x) { return std::exp(-2.0 * (x - 0.3) * (x - 0.3)); });
        const double x = 0.3 * h;
        const double iso_err = std::fabs(l2_norm(shift(f, x)) - l2_norm(f));
        const double iso_c = iso_err / (h * h);

        // group law at unaligned offsets
        const FullLineProfile ab = shift(shift(f, 0.3 * h), 0.7 * h);
        const FullLineProfile whole = shift(f, h);
        double worst = 0;
        for (int i = 0; i < g.count; ++i)
            worst = std::max(worst, std::fabs(ab.values[static_cast<std::size_t>(i)] -
                                              whole.values[static_cast<std::size_t>(i)]));
        if (worst > h * h) ok = false;

        // round trip through the frames at an unaligned front
        SystemState s = SystemState::zero(grid);
        for (int j = 0; j < grid.n; ++j) {
            const double xx = grid.node(j);
            s.u1.values[static_cast<std::size_t>(j)] = xx * std::exp(-xx * xx);
            s.u2.values[static_cast<std::size_t>(j)] = 0.5 * xx * std::exp(-1.3 * xx * xx);
        }
        s.xstar = 0.37;
        const FullLineProfile v = to_moving_frame(s, g);
        const SystemState back = to_fixed_frame(v, s.xstar, grid);
        PhaseProfile d1 = back.u1, d2 = back.u2;
        for (int j = 0; j < grid.n; ++j) {
            d1.values[static_cast<std::size_t>(j)] -= s.u1.values[static_cast<std::size_t>(j)];
            d2.values[static_cast<std::size_t>(j)] -= s.u2.values[static_cast<std::size_t>(j)];
        }
        const double rt_err = std::hypot(norm_sobolev(d1, 0), norm_sobolev(d2, 0));
        const double rt_c = rt_err / (h * h);

        if (!first) {
            if (iso_c > 2.0 * std::max(iso_c_prev, 1e-6)) ok = false;
            if (rt_c > 2.0 * std::max(rt_c_prev, 1e-6)) ok = false;
        }
        iso_c_prev = iso_c;
        rt_c_prev = rt_c;
        first = false;
        detail << "n=" << n << " iso_C " << fmtg(iso_c) << " rt_C " << fmtg(rt_c) << "; ";
    }

    // Frechet consistency on an aligned fine grid
    {
        const double h = 5e-5;
        const FullLineGrid g = FullLineGrid::make(-4.0, 4.0, h, 0.5);
        const FullLineProfile v =
            FullLineProfile::sample(g, [](double x) { return std::exp(-x * x); });
        const FullLineProfile w =
            FullLineProfile::sample(g, [](double x) { return x * std::exp(-0.5 * x * x); });
        // centered derivative of v on the fine grid
        FullLineProfile vprime = FullLineProfile::zero(g);
        for (int i = 1; i + 1 < g.count; ++i)
            vprime.values[static_cast<std::size_t>(i)] =
                (v.values[static_cast<std::size_t>(i + 1)] -
                 v.values[static_cast<std::size_t>(i - 1)]) /
                (2 * h);
        const double x0 = 0.0, xi = 1.0;
        double prev_ratio = 1e300;
        bool decreasing = true;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            FullLineProfile vp = v;
            for (int i = 0; i < g.count; ++i)
                vp.values[static_cast<std::size_t>(i)] +=
                    eps * w.values[static_cast<std::size_t>(i)];
            const FullLineProfile lhs = shift(vp, x0 + eps * xi);
            const FullLineProfile base = shift(v, x0);
            const FullLineProfile sw = shift(w, x0);
            const FullLineProfile sv = shift(vprime, x0);
            FullLineProfile rem = FullLineProfile::zero(g);
            for (int i = 0; i < g.count; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                rem.values[ii] = lhs.values[ii] - base.values[ii] -
                                 eps * (sw.values[ii] + xi * sv.values[ii]);
            }
            const double ratio = l2_norm(rem) / eps;
            if (!(ratio < prev_ratio)) decreasing = false;
            prev_ratio = ratio;
        }
        if (!decreasing) ok = false;
        detail << "Frechet ratios decreasing: " << (decreasing ? "yes" : "no");
    }

    return {ok, detail.str()};
}

// ---- 11. determinism across worker counts ---------------------------------

std::pair<bool, std::string> determinism() {
    const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.4);
    const Grid1D grid = Grid1D::with_length(60, 4.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -7.5, 7.5, 48);
    SystemState s0 = SystemState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        s0.u1.values[static_cast<std::size_t>(j)] = x * std::exp(-x * x);
        s0.u2.values[static_cast<std::size_t>(j)] = -0.6 * x * std::exp(-x * x);
    }
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.seed = 31337;

    const EnsembleStats ref = run_ensemble(cfg, mc, k, s0, 12, 1);
    for (int workers : {4, 8}) {
        const EnsembleStats other = run_ensemble(cfg, mc, k, s0, 12, workers);
        if (other.front_mean != ref.front_mean || other.front_var != ref.front_var ||
            other.g1_mean != ref.g1_mean || other.g2_mean != ref.g2_mean ||
            other.alive != ref.alive || other.blowup_times != ref.blowup_times)
            return {false, "ensemble stats differ between workers=1 and workers=" +
                               std::to_string(workers)};
    }
    return {true, "ensemble stats bitwise identical for workers in {1,4,8}"};
}

}  // namespace

std::vector<CriterionResult> run_all(int workers) {
    if (workers < 1) workers = 1;
    std::vector<CriterionResult> out;
    out.push_back(timed(1, "stefan-front-benchmark", stefan_front));
    out.push_back(timed(2, "heat-series-cross-check", heat_cross_check));
    out.push_back(timed(3, "noise-covariance-mc", noise_covariance));
    out.push_back(timed(4, "hilbert-schmidt-inequality", hs_inequality));
    out.push_back(timed(5, "semigroup-smoothing", smoothing_constants));
    out.push_back(timed(6, "truncation-coincidence", truncation_coincidence));
    out.push_back(timed(7, "global-existence", [&] { return global_existence(workers); }));
    out.push_back(timed(8, "blowup-boundary-order", [&] { return blowup_boundary(workers); }));
    out.push_back(timed(9, "chain-rule-residual", chain_rule_orders));
    out.push_back(timed(10, "shift-transform-algebra", shift_algebra));
    out.push_back(timed(11, "worker-determinism", determinism));
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

std::string format_table(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ");
        os << (r.id < 10 ? "0" : "") << r.id << " " << r.name;
        for (std::size_t i = r.name.size(); i < 28; ++i) os << ' ';
        os.precision(3);
        os << " (" << r.seconds << " s)  " << r.detail << "\n";
    }
    return os.str();
}

}  // namespace smb::accept

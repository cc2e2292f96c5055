#include <doctest.h>

#include <cmath>

#include "smb/solver.hpp"
#include "smb/validation.hpp"

using namespace smb;

namespace {
constexpr double kPi = 3.14159265358979323846;

ModelCoefficients free_heat(double c) {
    ModelCoefficients mc;
    mc.mu_plus = [](double, double, double) { return 0.0; };
    mc.mu_minus = [](double, double, double) { return 0.0; };
    mc.sigma_plus = [](double, double) { return 0.0; };
    mc.sigma_minus = [](double, double) { return 0.0; };
    mc.rho = [](double, double) { return 0.0; };
    mc.c = c;
    return mc;
}

NoiseKernel tiny_kernel() { return NoiseKernel::indicator(0.0, 1.0, 0.0, 1.0, 4); }

SystemState bump_state(const Grid1D& g, double a1 = 1.0, double a2 = -0.5) {
    SystemState s = SystemState::zero(g);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        s.u1.values[static_cast<std::size_t>(j)] = a1 * x * std::exp(-x * x);
        s.u2.values[static_cast<std::size_t>(j)] = a2 * x * std::exp(-x * x / 1.44);
    }
    return s;
}
}  // namespace

TEST_CASE("step basics") {
    const Grid1D g = Grid1D::with_length(60, 3.0);

    SUBCASE("zero state with zero coefficients is a fixed point") {
        const ModelCoefficients mc = free_heat(0.0);
        const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
        const SpectralLaplacian slm(g, mc.eta_minus, mc.c);
        GaussianStream rng(1);
        const SystemState next =
            step(slp, slm, mc, tiny_kernel(), SystemState::zero(g), 1e-3, rng);
        for (double v : next.u1.values) CHECK(v == 0.0);
        for (double v : next.u2.values) CHECK(v == 0.0);
        CHECK(next.xstar == 0.0);
    }

    SUBCASE("pure semigroup on an eigenvector") {
        const ModelCoefficients mc = free_heat(0.0);
        const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
        const SpectralLaplacian slm(g, mc.eta_minus, mc.c);
        const int k = 3;
        SystemState s = SystemState::zero(g);
        s.u1 = PhaseProfile::sample(g, [&](double x) { return std::sin(k * kPi * x / g.L); });
        GaussianStream rng(2);
        const double dt = 1e-3;
        const SystemState next = step(slp, slm, mc, tiny_kernel(), s, dt, rng);
        const double factor = std::exp(dt * slp.eigenvalues()[k - 1]);
        for (int j = 0; j < g.n; ++j)
            CHECK(next.u1.at(j) == doctest::Approx(factor * s.u1.at(j)).epsilon(1e-10));
    }
}

TEST_CASE("deterministic heat against the series oracle") {
    const Grid1D g = Grid1D::with_length(399, 1.0);
    const ModelCoefficients mc = free_heat(0.0);
    // low-mode data: the spatial eigenvalue defect scales like k^4 h^2
    const PhaseProfile p0 = PhaseProfile::sample(g, [&](double x) {
        return std::sin(kPi * x) + 0.15 * std::sin(2 * kPi * x);
    });
    SystemState s0 = SystemState::zero(g);
    s0.u1 = p0;

    SolverConfig cfg;
    cfg.dt = 1e-5;
    cfg.t_end = 0.01;
    const FixedFrameTrajectory traj = run_trajectory(cfg, mc, tiny_kernel(), s0);
    const PhaseProfile oracle = heat_series_solution(p0, 1.0, cfg.t_end);
    PhaseProfile diff = traj.final_state().u1;
    for (int j = 0; j < g.n; ++j) diff.values[static_cast<std::size_t>(j)] -= oracle.at(j);
    CHECK(norm_sobolev(diff, 0) <= 1e-6);
}

TEST_CASE("trajectory determinism and front autonomy") {
    const Grid1D g = Grid1D::with_length(48, 3.0);
    const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.4);
    const NoiseKernel k = NoiseKernel::gaussian(0.4, -6, 6, 32);
    const SystemState s0 = bump_state(g);

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.seed = 99;

    SUBCASE("same seed twice is bitwise identical") {
        const FixedFrameTrajectory a = run_trajectory(cfg, mc, k, s0);
        const FixedFrameTrajectory b = run_trajectory(cfg, mc, k, s0);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].xstar == b.rows[i].xstar);
            CHECK(a.rows[i].graph_norm == b.rows[i].graph_norm);
        }
        CHECK(a.final_state().u1.values == b.final_state().u1.values);
    }

    SUBCASE("zero front law keeps the front exactly in place") {
        ModelCoefficients frozen = mc;
        frozen.rho = [](double, double) { return 0.0; };
        SystemState s = s0;
        s.xstar = 0.75;
        const FixedFrameTrajectory traj = run_trajectory(cfg, frozen, k, s);
        for (const auto& row : traj.rows) CHECK(row.xstar == 0.75);
    }
}

TEST_CASE("mild step is consistent with the strong form to second order") {
    const Grid1D g = Grid1D::with_length(80, 4.0);
    const ModelCoefficients mc = free_heat(1.0);
    const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
    const SpectralLaplacian slm(g, mc.eta_minus, mc.c);
    const OperatorParams op{mc.eta_plus, mc.eta_minus, mc.c};
    const SystemState s = bump_state(g);

    auto defect = [&](double dt) {
        NoiseIncrement w{std::vector<double>(4, 0.0), dt};
        const SystemState mild = step_with_increment(slp, slm, mc, tiny_kernel(), s, dt, w);
        // strong Euler update u + dt (A u + B(u))
        const SystemState au = apply_operator(s, op);
        const DriftEval b = eval_drift(mc, s, boundary_trace(s));
        PhaseProfile strong = s.u1;
        for (int j = 0; j < g.n; ++j)
            strong.values[static_cast<std::size_t>(j)] += dt * (au.u1.at(j) + b.b1.at(j));
        PhaseProfile diff = mild.u1;
        for (int j = 0; j < g.n; ++j) diff.values[static_cast<std::size_t>(j)] -= strong.at(j);
        return norm_sobolev(diff, 0);
    };

    const double d1 = defect(2e-4);
    const double d2 = defect(1e-4);
    CHECK(d1 / d2 > 3.4);  // O(dt^2) defect
    CHECK(d1 / d2 < 4.6);
}

TEST_CASE("strong order under coupled noise refinement") {
    const Grid1D g = Grid1D::with_length(50, 3.0);
    const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.4);
    const NoiseKernel k = NoiseKernel::gaussian(0.4, -6, 6, 32);
    const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
    const SpectralLaplacian slm(g, mc.eta_minus, mc.c);
    const OperatorParams op{mc.eta_plus, mc.eta_minus, mc.c};
    const SystemState s0 = bump_state(g);

    const double t_end = 0.1;
    const int finest_level = 3;
    const int base_steps = 10;

    // mean over a few paths of |X_dt - X_{dt/2}| at T, with synchronized noise
    std::vector<double> errs(finest_level, 0.0);
    const int n_paths = 4;
    for (int path = 0; path < n_paths; ++path) {
        GaussianStream rng(1000 + static_cast<std::uint64_t>(path));
        const int fine_steps = base_steps << finest_level;
        const double fine_dt = t_end / fine_steps;
        std::vector<NoiseIncrement> fine;
        fine.reserve(static_cast<std::size_t>(fine_steps));
        for (int i = 0; i < fine_steps; ++i) fine.push_back(draw_increment(k, fine_dt, rng));

        // aggregate increments for each coarser level
        std::vector<std::vector<NoiseIncrement>> levels(finest_level + 1);
        levels[static_cast<std::size_t>(finest_level)] = fine;
        for (int lvl = finest_level - 1; lvl >= 0; --lvl) {
            const auto& finer = levels[static_cast<std::size_t>(lvl + 1)];
            std::vector<NoiseIncrement> coarse;
            coarse.reserve(finer.size() / 2);
            for (std::size_t i = 0; i + 1 < finer.size(); i += 2) {
                NoiseIncrement w = finer[i];
                for (std::size_t q = 0; q < w.w.size(); ++q) w.w[q] += finer[i + 1].w[q];
                w.dt = 2 * finer[i].dt;
                coarse.push_back(std::move(w));
            }
            levels[static_cast<std::size_t>(lvl)] = std::move(coarse);
        }

        auto integrate = [&](const std::vector<NoiseIncrement>& incs) {
            SystemState s = s0;
            const double dt = incs.front().dt;
            for (const auto& w : incs) s = step_with_increment(slp, slm, mc, k, s, dt, w);
            return s;
        };

        std::vector<SystemState> finals;
        for (int lvl = 0; lvl <= finest_level; ++lvl)
            finals.push_back(integrate(levels[static_cast<std::size_t>(lvl)]));
        for (int lvl = 0; lvl < finest_level; ++lvl) {
            SystemState diff = finals[static_cast<std::size_t>(lvl)];
            const SystemState& finer = finals[static_cast<std::size_t>(lvl + 1)];
            for (int j = 0; j < g.n; ++j) {
                diff.u1.values[static_cast<std::size_t>(j)] -= finer.u1.at(j);
                diff.u2.values[static_cast<std::size_t>(j)] -= finer.u2.at(j);
            }
            diff.xstar -= finer.xstar;
            errs[static_cast<std::size_t>(lvl)] += graph_norm(diff, op) / n_paths;
        }
    }

    double min_order = 1e300;
    for (int lvl = 0; lvl + 1 < finest_level; ++lvl) {
        CHECK(errs[static_cast<std::size_t>(lvl + 1)] < errs[static_cast<std::size_t>(lvl)]);
        min_order = std::min(min_order, std::log2(errs[static_cast<std::size_t>(lvl)] /
                                                  errs[static_cast<std::size_t>(lvl + 1)]));
    }
    CHECK(min_order >= 0.4);
    MESSAGE("paired-noise strong order >= ", min_order);
}

TEST_CASE("truncated dynamics") {
    const Grid1D g = Grid1D::with_length(48, 3.0);
    const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.5);
    const NoiseKernel k = NoiseKernel::gaussian(0.4, -6, 6, 32);
    const OperatorParams op{mc.eta_plus, mc.eta_minus, mc.c};

    SUBCASE("far above the cutoff only the semigroup acts") {
        SystemState s0 = bump_state(g, 4.0, -3.0);
        const double norm0 = graph_norm(s0, op);
        s0.xstar = 1.0;
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 5e-3;
        cfg.truncation_N = norm0 / 1000.0;  // so |s0| > N + 1 robustly
        REQUIRE(graph_norm(s0, op) > *cfg.truncation_N + 1.0);
        const FixedFrameTrajectory traj = run_truncated(cfg, mc, k, s0);

        const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
        PhaseProfile expected = slp.apply_semigroup(s0.u1, cfg.t_end);
        PhaseProfile diff = traj.final_state().u1;
        for (int j = 0; j < g.n; ++j)
            diff.values[static_cast<std::size_t>(j)] -= expected.at(j);
        // stepped exponentials differ from the one-shot one by transform round-off
        CHECK(norm_sobolev(diff, 0) <= 1e-13 * norm_sobolev(expected, 0));
        // the scalar decays with the semigroup as well
        CHECK(traj.final_state().xstar ==
              doctest::Approx(std::exp(-mc.c * cfg.t_end) * 1.0).epsilon(1e-9));
    }

    SUBCASE("two truncation levels agree until the lower crossing") {
        const SystemState s0 = bump_state(g);
        const double base = graph_norm(s0, op);
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 0.2;
        cfg.seed = 7;
        cfg.truncation_N = base * 1.05;
        const FixedFrameTrajectory low = run_truncated(cfg, mc, k, s0);
        cfg.truncation_N = base * 20.0;
        const FixedFrameTrajectory high = run_truncated(cfg, mc, k, s0);

        std::size_t cross = low.rows.size();
        for (std::size_t i = 0; i < low.rows.size(); ++i)
            if (low.rows[i].graph_norm >= base * 1.05) {
                cross = i;
                break;
            }
        const std::size_t upto = std::min(cross + 1, high.rows.size());
        for (std::size_t i = 0; i < upto; ++i) {
            CHECK(low.rows[i].xstar == high.rows[i].xstar);
            CHECK(low.rows[i].graph_norm == high.rows[i].graph_norm);
        }
    }
}

TEST_CASE("blow-up detection carries the boundary flag") {
    const Grid1D g = Grid1D::with_length(60, 3.0);
    ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.1);
    mc.rho = [](double g1, double g2) {
        const double d = g2 - g1;
        return 8.0 * d * d * d;
    };
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -6, 6, 32);
    const SystemState s0 = bump_state(g, 2.5, -2.0);

    SolverConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 1.0;
    cfg.seed = 12;
    cfg.blowup_threshold = 1e6;
    cfg.boundary_threshold = 50.0;

    const FixedFrameTrajectory traj = run_trajectory(cfg, mc, k, s0);
    REQUIRE(traj.status.outcome == TrajectoryStatus::Outcome::blowup);
    CHECK(traj.status.boundary_flag);
    CHECK(traj.status.t_circ <= traj.status.t_blow);
    CHECK(traj.times.size() < static_cast<std::size_t>(cfg.n_steps()) + 1);
}

TEST_CASE("ensemble aggregation") {
    const Grid1D g = Grid1D::with_length(40, 3.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.4, -6, 6, 24);
    const SystemState s0 = bump_state(g);

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.seed = 5;

    SUBCASE("one path reproduces the single trajectory") {
        const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.3);
        const EnsembleStats stats = run_ensemble(cfg, mc, k, s0, 1, 1);
        SolverConfig single = cfg;
        single.seed = derive_seed(cfg.seed, 0);
        const FixedFrameTrajectory traj = run_trajectory(single, mc, k, s0);
        REQUIRE(stats.times.size() == traj.rows.size());
        for (std::size_t i = 0; i < stats.times.size(); ++i) {
            CHECK(stats.front_mean[i] == traj.rows[i].xstar);
            CHECK(stats.front_var[i] == 0.0);
        }
    }

    SUBCASE("deterministic model has zero variance across paths") {
        const ModelCoefficients mc = ModelCoefficients::stefan(1.0);
        const EnsembleStats stats = run_ensemble(cfg, mc, k, s0, 8, 2);
        // identical paths; the two-pass mean leaves only summation round-off
        for (double v : stats.front_var) CHECK(v <= 1e-28);
        CHECK(stats.blowup_count == 0);
    }

    SUBCASE("worker count does not change the stats") {
        const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.3);
        const EnsembleStats a = run_ensemble(cfg, mc, k, s0, 6, 1);
        const EnsembleStats b = run_ensemble(cfg, mc, k, s0, 6, 3);
        CHECK(a.front_mean == b.front_mean);
        CHECK(a.front_var == b.front_var);
        CHECK(a.g1_mean == b.g1_mean);
    }
}

TEST_CASE("semi-implicit scheme stays close to the exponential one") {
    const Grid1D g = Grid1D::with_length(60, 3.0);
    const ModelCoefficients mc = free_heat(1.0);
    const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
    const SpectralLaplacian slm(g, mc.eta_minus, mc.c);
    const SystemState s = bump_state(g);
    const double dt = 1e-4;
    NoiseIncrement w{std::vector<double>(4, 0.0), dt};
    const SystemState a =
        step_with_increment(slp, slm, mc, tiny_kernel(), s, dt, w, Scheme::exponential_euler);
    const SystemState b =
        step_with_increment(slp, slm, mc, tiny_kernel(), s, dt, w, Scheme::semi_implicit_euler);
    PhaseProfile diff = a.u1;
    for (int j = 0; j < g.n; ++j) diff.values[static_cast<std::size_t>(j)] -= b.u1.at(j);
    CHECK(norm_sobolev(diff, 0) <= 10.0 * dt * dt * norm_sobolev(second_derivative(s.u1), 0));
}

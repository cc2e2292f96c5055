#include <doctest.h>

#include <cmath>

#include "smb/solver.hpp"
#include "smb/validation.hpp"

using namespace smb;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

double transcendental_residual(double lambda, double stefan_number) {
    return kSqrtPi * lambda * std::exp(lambda * lambda) * std::erfc(lambda) - stefan_number;
}
}  // namespace

TEST_CASE("stefan similarity root") {
    SUBCASE("vanishing driving force freezes the front") {
        CHECK(stefan_lambda(1.0, 1.0, 1e-6) < 1e-3);
    }

    SUBCASE("monotone in the Stefan number inside its domain") {
        double prev = 0;
        for (double st : {0.1, 0.3, 0.5, 0.8}) {
            const double lam = stefan_lambda(1.0, 1.0, st);
            CHECK(lam > prev);
            prev = lam;
        }
    }

    SUBCASE("residual at the root is tiny") {
        for (double st : {0.1, 0.5, 0.9}) {
            const double lam = stefan_lambda(1.0, st, 1.0);
            CHECK(std::fabs(transcendental_residual(lam, st)) <= 1e-12);
        }
    }

    SUBCASE("no root beyond the supercooled limit") {
        // sqrt(pi) lambda e^{lambda^2} erfc(lambda) < 1, so St >= 1 cannot be matched
        CHECK_THROWS(stefan_lambda(1.0, 1.0, 1.0));
        CHECK_THROWS(stefan_lambda(1.0, 2.0, 1.0));
    }
}

TEST_CASE("similarity profile") {
    const StefanSimilarity ss = StefanSimilarity::make(1.0, 1.0, 0.5, 0.1);
    const Grid1D grid = Grid1D::with_length(400, 8.0);
    const SystemState s = stefan_profile(ss, 0.0, grid);

    SUBCASE("front Dirichlet value") {
        // phase-1 profile extends by 0 at distance 0 from the front
        CHECK(s.u1.interpolate(0.0) == 0.0);
        CHECK(std::fabs(s.u1.at(0)) < 0.1);  // first node already off zero by O(h g1)
    }

    SUBCASE("far field approaches the negative amplitude") {
        CHECK(s.u1.at(grid.n - 1) == doctest::Approx(-ss.amplitude).epsilon(1e-6));
    }

    SUBCASE("discrete trace matches the analytic gradient to O(h^2)") {
        const BoundaryTrace tr = boundary_trace(s);
        const double exact = ss.gradient_at_front(0.0);
        CHECK(std::fabs(tr.g1 - exact) <= 5.0 * grid.h * grid.h * std::fabs(exact));
    }

    SUBCASE("front law closes: -varrho g1 equals the similarity velocity") {
        // transcendental identity, valid to root precision
        const double lhs = -ss.varrho * ss.gradient_at_front(0.0);
        CHECK(lhs == doctest::Approx(ss.front_velocity(0.0)).epsilon(1e-10));
    }

    SUBCASE("front path and velocity are consistent") {
        const double t = 0.3;
        const double fd =
            (ss.front(t + 1e-6) - ss.front(t - 1e-6)) / 2e-6;
        CHECK(fd == doctest::Approx(ss.front_velocity(t)).epsilon(1e-6));
    }
}

TEST_CASE("heat series oracle") {
    const Grid1D g = Grid1D::with_length(120, 2.0);

    SUBCASE("t = 0 reproduces the data") {
        const PhaseProfile p0 =
            PhaseProfile::sample(g, [&](double x) { return x * (g.L - x) * std::exp(-x); });
        const PhaseProfile back = heat_series_solution(p0, 1.0, 0.0);
        for (int j = 0; j < g.n; ++j)
            CHECK(back.at(j) == doctest::Approx(p0.at(j)).epsilon(1e-11));
    }

    SUBCASE("single sine mode decays with the continuum rate") {
        const PhaseProfile p0 =
            PhaseProfile::sample(g, [&](double x) { return std::sin(kPi * x / g.L); });
        const double t = 0.05, eta = 0.8;
        const PhaseProfile sol = heat_series_solution(p0, eta, t);
        const double factor = std::exp(-eta * kPi * kPi / (g.L * g.L) * t);
        for (int j = 0; j < g.n; ++j)
            CHECK(sol.at(j) == doctest::Approx(factor * p0.at(j)).epsilon(1e-11));
    }

    SUBCASE("energy decay along the deterministic solver") {
        ModelCoefficients mc;
        mc.mu_plus = [](double, double, double) { return 0.0; };
        mc.mu_minus = [](double, double, double) { return 0.0; };
        mc.sigma_plus = [](double, double) { return 0.0; };
        mc.sigma_minus = [](double, double) { return 0.0; };
        mc.rho = [](double, double) { return 0.0; };
        mc.c = 0.0;
        SystemState s0 = SystemState::zero(g);
        s0.u1 = PhaseProfile::sample(g, [&](double x) { return x * (g.L - x); });
        SolverConfig cfg;
        cfg.dt = 1e-4;
        cfg.t_end = 0.02;
        const NoiseKernel k = NoiseKernel::indicator(0, 1, 0, 1, 4);
        const FixedFrameTrajectory traj = run_trajectory(cfg, mc, k, s0);
        for (std::size_t i = 0; i + 1 < traj.rows.size(); ++i)
            CHECK(traj.rows[i + 1].l2_norm <= traj.rows[i].l2_norm + 1e-14);
    }
}

TEST_CASE("similarity data advances self-consistently in the solver") {
    // light version of the front benchmark: short horizon, desk-scale grid
    const double eta = 1.0, varrho = 1.0, amplitude = 0.5, t0 = 0.1;
    StefanSimilarity ss = StefanSimilarity::make(eta, varrho, amplitude, t0);
    ss.x0 = 2.0 * ss.lambda * std::sqrt(eta * t0);

    const Grid1D grid = Grid1D::with_length(200, 6.0);
    const ModelCoefficients mc = ModelCoefficients::stefan(varrho);
    SolverConfig cfg;
    cfg.dt = 5e-5;
    cfg.t_end = 0.1;
    const NoiseKernel k = NoiseKernel::indicator(0, 1, 0, 1, 4);
    const FixedFrameTrajectory traj =
        run_trajectory(cfg, mc, k, stefan_profile(ss, 0.0, grid));

    const double x_ref = ss.front(cfg.t_end);
    const double rel = std::fabs(traj.rows.back().xstar - x_ref) / x_ref;
    // 1% per unit time at acceptance resolution; this is 0.1 time units coarser
    CHECK(rel <= 0.01);
}

#include <doctest.h>

#include <cmath>

#include "smb/frame_transform.hpp"

using namespace smb;

namespace {

// smooth bump with genuinely compact support in |x| < 2
double compact_bump(double x) {
    const double u = x / 2.0;
    if (std::fabs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

}  // namespace

TEST_CASE("shift operator") {
    const FullLineGrid g = FullLineGrid::make(-4.0, 4.0, 0.02, 1.0);
    const FullLineProfile f = FullLineProfile::sample(g, compact_bump);

    SUBCASE("zero shift is the identity") {
        const FullLineProfile s = shift(f, 0.0);
        CHECK(s.values == f.values);
    }

    SUBCASE("aligned shift round trip is bitwise") {
        const FullLineProfile fwd = shift(f, g.h);
        const FullLineProfile back = shift(fwd, -g.h);
        CHECK(back.values == f.values);
    }

    SUBCASE("aligned group law is bitwise") {
        const FullLineProfile a = shift(shift(f, 5 * g.h), -2 * g.h);
        const FullLineProfile b = shift(f, 3 * g.h);
        CHECK(a.values == b.values);
    }

    SUBCASE("unaligned shift preserves the L2 norm to O(h^2)") {
        const double before = l2_norm(f);
        const double after = l2_norm(shift(f, 0.3 * g.h));
        CHECK(std::fabs(after - before) <= 1.0 * g.h * g.h);
    }

    SUBCASE("unaligned group law") {
        const FullLineProfile ab = shift(shift(f, 0.3 * g.h), 0.7 * g.h);
        const FullLineProfile whole = shift(f, g.h);
        double worst = 0;
        for (int i = 0; i < g.count; ++i)
            worst = std::max(worst, std::fabs(ab.values[static_cast<std::size_t>(i)] -
                                              whole.values[static_cast<std::size_t>(i)]));
        CHECK(worst <= g.h * g.h);
    }

    SUBCASE("margin overflow raises the window error") {
        CHECK_THROWS_AS(shift(f, 1.5), OutOfWindowError);
        CHECK_THROWS_AS(shift(f, -1.5), OutOfWindowError);
    }
}

TEST_CASE("frame maps") {
    const Grid1D grid = Grid1D::with_length(199, 4.0);
    const FullLineGrid target = FullLineGrid::make(-6.0, 6.0, grid.h, 1.0);

    SUBCASE("zero state maps to the zero profile") {
        const FullLineProfile v = to_moving_frame(SystemState::zero(grid), target);
        for (double x : v.values) CHECK(x == 0.0);
        const SystemState back = to_fixed_frame(v, 0.0, grid);
        for (double x : back.u1.values) CHECK(x == 0.0);
    }

    SUBCASE("centered front pastes phase 1 onto the positive axis") {
        constexpr double kPi = 3.14159265358979323846;
        SystemState s = SystemState::zero(grid);
        s.u1 = PhaseProfile::sample(grid, [&](double x) { return std::sin(kPi * x / grid.L); });
        const FullLineProfile v = to_moving_frame(s, target);
        for (int i = 0; i < target.count; ++i) {
            const double y = target.node(i);
            if (y < 0.0) CHECK(v.values[static_cast<std::size_t>(i)] == 0.0);
        }
        // aligned nodes carry the nodal values exactly
        for (int j = 0; j < grid.n; ++j) {
            const int i = static_cast<int>(std::llround((grid.node(j) - target.x_min) / target.h));
            CHECK(v.values[static_cast<std::size_t>(i)] ==
                  doctest::Approx(s.u1.at(j)).epsilon(1e-13));
        }
    }

    SUBCASE("unaligned round trip is O(h^2)") {
        SystemState s = SystemState::zero(grid);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.node(j);
            s.u1.values[static_cast<std::size_t>(j)] = x * std::exp(-x * x);
            s.u2.values[static_cast<std::size_t>(j)] = 0.4 * x * std::exp(-0.8 * x * x);
        }
        s.xstar = 0.37;
        const SystemState back = to_fixed_frame(to_moving_frame(s, target), s.xstar, grid);
        double worst = 0;
        for (int j = 0; j < grid.n; ++j) {
            worst = std::max(worst, std::fabs(back.u1.at(j) - s.u1.at(j)));
            worst = std::max(worst, std::fabs(back.u2.at(j) - s.u2.at(j)));
        }
        CHECK(worst <= grid.h * grid.h);
    }

    SUBCASE("a kink at the front keeps its one-sided slopes") {
        const double xstar = 0.513;  // deliberately unaligned
        const double s_plus = 0.8, s_minus = -1.3, width = 1.0;
        const FullLineGrid fine = FullLineGrid::make(-6.0, 6.0, grid.h, 1.0);
        const FullLineProfile v = FullLineProfile::sample(fine, [&](double y) {
            const double d = y - xstar;
            if (d >= 0.0 && d <= width) return s_plus * d * (1.0 - d / width);
            if (d < 0.0 && d >= -width) return s_minus * d * (1.0 + d / width);
            return 0.0;
        });
        const SystemState s = to_fixed_frame(v, xstar, grid);
        const BoundaryTrace tr = boundary_trace(s);
        // d/dd of s_plus d (1 - d/width) at 0+ is s_plus; u2 side sees -s_minus
        CHECK(tr.g1 == doctest::Approx(s_plus).epsilon(1e-10));
        CHECK(tr.g2 == doctest::Approx(-s_minus).epsilon(1e-10));
    }

    SUBCASE("coverage failures raise the window error") {
        SystemState s = SystemState::zero(grid);
        s.xstar = 5.0;  // support would extend past the window
        CHECK_THROWS_AS(to_moving_frame(s, target), OutOfWindowError);
        const FullLineProfile v = FullLineProfile::zero(target);
        CHECK_THROWS_AS(to_fixed_frame(v, 5.0, grid), OutOfWindowError);
    }
}

TEST_CASE("Frechet consistency of the frame map") {
    const double h = 5e-5;
    const FullLineGrid g = FullLineGrid::make(-4.0, 4.0, h, 0.5);
    const FullLineProfile v =
        FullLineProfile::sample(g, [](double x) { return std::exp(-x * x); });
    const FullLineProfile w =
        FullLineProfile::sample(g, [](double x) { return x * std::exp(-0.5 * x * x); });
    FullLineProfile vp = FullLineProfile::zero(g);
    for (int i = 1; i + 1 < g.count; ++i)
        vp.values[static_cast<std::size_t>(i)] =
            (v.values[static_cast<std::size_t>(i + 1)] - v.values[static_cast<std::size_t>(i - 1)]) /
            (2 * h);

    const double xi = 1.0;
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        FullLineProfile vpw = v;
        for (int i = 0; i < g.count; ++i)
            vpw.values[static_cast<std::size_t>(i)] += eps * w.values[static_cast<std::size_t>(i)];
        const FullLineProfile lhs = shift(vpw, eps * xi);
        FullLineProfile rem = FullLineProfile::zero(g);
        for (int i = 0; i < g.count; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            rem.values[ii] = lhs.values[ii] - v.values[ii] -
                             eps * (w.values[ii] + xi * vp.values[ii]);
        }
        const double ratio = l2_norm(rem) / eps;
        CHECK(ratio < prev);
        prev = ratio;
    }
}

TEST_CASE("chain rule residual") {
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -4.5, 4.5, 32);

    SUBCASE("zero trajectory has zero residual") {
        const Grid1D grid = Grid1D::with_length(49, 2.0);
        ModelCoefficients mc = ModelCoefficients::stefan(1.0);
        mc.c = 0.0;
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 0.01;
        cfg.state_stride = 1;
        NoiseRecord rec;
        const FixedFrameTrajectory traj =
            run_trajectory(cfg, mc, k, SystemState::zero(grid), &rec);
        CHECK(chain_rule_residual(traj, mc, k, rec) == 0.0);
    }

    SUBCASE("deterministic decay residual halves with dt") {
        const Grid1D grid = Grid1D::with_length(99, 2.0);
        ModelCoefficients mc = ModelCoefficients::stefan(1.0);
        mc.rho = [](double, double) { return 0.0; };
        mc.c = 0.0;
        SystemState s0 = SystemState::zero(grid);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.node(j);
            s0.u1.values[static_cast<std::size_t>(j)] = x * std::exp(-4 * x * x);
        }
        double prev = 0;
        bool first = true;
        for (double dt : {2e-3, 1e-3, 5e-4}) {
            SolverConfig cfg;
            cfg.dt = dt;
            cfg.t_end = 0.04;
            cfg.state_stride = 1;
            NoiseRecord rec;
            const FixedFrameTrajectory traj = run_trajectory(cfg, mc, k, s0, &rec);
            const double res = chain_rule_residual(traj, mc, k, rec);
            if (!first) {
                CHECK(prev / res > 1.6);
                CHECK(prev / res < 2.6);
            }
            prev = res;
            first = false;
        }
    }

    SUBCASE("missing record is a contract error") {
        const Grid1D grid = Grid1D::with_length(49, 2.0);
        const ModelCoefficients mc = ModelCoefficients::stefan(1.0);
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 0.01;
        cfg.state_stride = 1;
        NoiseRecord rec;
        const FixedFrameTrajectory traj =
            run_trajectory(cfg, mc, k, SystemState::zero(grid), &rec);
        NoiseRecord wrong;
        CHECK_THROWS_AS(chain_rule_residual(traj, mc, k, wrong), std::invalid_argument);

        SolverConfig no_states = cfg;
        no_states.state_stride = 0;
        NoiseRecord rec2;
        const FixedFrameTrajectory sparse =
            run_trajectory(no_states, mc, k, SystemState::zero(grid), &rec2);
        CHECK_THROWS_AS(chain_rule_residual(sparse, mc, k, rec2), std::invalid_argument);
    }
}

TEST_CASE("moving frame reconstruction invariants") {
    const Grid1D grid = Grid1D::with_length(99, 3.0);
    const ModelCoefficients mc = ModelCoefficients::stefan(1.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -6, 6, 16);

    SystemState s0 = SystemState::zero(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        s0.u1.values[static_cast<std::size_t>(j)] = -0.5 * x * std::exp(-x);
        s0.u2.values[static_cast<std::size_t>(j)] = 0.4 * x * std::exp(-x);
    }

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.state_stride = 1;
    const FixedFrameTrajectory traj = run_trajectory(cfg, mc, k, s0);

    double max_front = 0;
    for (const auto& st : traj.states) max_front = std::max(max_front, std::fabs(st.xstar));
    const FullLineGrid target =
        FullLineGrid::make(-(grid.L + 1), grid.L + 1, grid.h, max_front + 4 * grid.h);
    const MovingFrameTrajectory mf = reconstruct_moving_frame(traj, target);

    SUBCASE("profile vanishes at the node nearest the front") {
        for (std::size_t i = 0; i < mf.profiles.size(); ++i) {
            const int idx =
                static_cast<int>(std::llround((mf.fronts[i] - target.x_min) / target.h));
            CHECK(std::fabs(mf.profiles[i].values[static_cast<std::size_t>(idx)]) <=
                  2.0 * grid.h * std::fabs(traj.rows[i].g1 - traj.rows[i].g2) + 1e-9);
        }
    }

    SUBCASE("front path differences track the recorded velocity") {
        for (std::size_t i = 0; i + 1 < mf.fronts.size(); ++i) {
            const double fd = (mf.fronts[i + 1] - mf.fronts[i]) / cfg.dt;
            CHECK(fd == doctest::Approx(traj.rows[i].rho).epsilon(1e-9));
        }
    }
}

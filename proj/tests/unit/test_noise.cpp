#include <doctest.h>

#include <cmath>
#include <numeric>

#include "smb/grid.hpp"
#include "smb/noise.hpp"

using namespace smb;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("apply_kernel") {
    SUBCASE("zero increment") {
        const NoiseKernel k = NoiseKernel::gaussian(0.5, -3, 3, 32);
        NoiseIncrement w{std::vector<double>(32, 0.0), 0.1};
        for (double v : apply_kernel(k, w, std::vector<double>{-1.0, 0.0, 2.0}))
            CHECK(v == 0.0);
    }

    SUBCASE("indicator kernel integrates a constant exactly") {
        const NoiseKernel k = NoiseKernel::indicator(0.0, 1.0, 0.0, 1.0, 16);
        const double c = 0.75;
        NoiseIncrement w{std::vector<double>(16, c), 0.1};
        for (double v : apply_kernel(k, w, std::vector<double>{-5.0, 0.3, 7.0}))
            CHECK(v == doctest::Approx(c).epsilon(1e-14));
    }

    SUBCASE("unit mass at one cell against a direct-summation oracle") {
        const NoiseKernel k = NoiseKernel::gaussian(1.0, -4, 4, 64);
        NoiseIncrement w{std::vector<double>(64, 0.0), 0.1};
        w.w[20] = 1.0;
        const std::vector<double> pts{-0.5, 0.0, 1.3};
        const auto out = apply_kernel(k, w, pts);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            // oracle: reversed-order summation of the same quadrature
            double acc = 0.0;
            for (int j = k.m_y - 1; j >= 0; --j)
                acc += k.zeta[0](pts[p], k.y_node(j)) * w.w[static_cast<std::size_t>(j)];
            acc *= k.dy();
            CHECK(out[p] == doctest::Approx(acc).epsilon(1e-13));
            CHECK(out[p] ==
                  doctest::Approx(k.zeta[0](pts[p], k.y_node(20)) * k.dy()).epsilon(1e-13));
        }
    }
}

TEST_CASE("covariance") {
    SUBCASE("zero kernel") {
        NoiseKernel k = NoiseKernel::indicator(0.0, 1.0, 0.0, 1.0, 8);
        k.zeta[0] = [](double, double) { return 0.0; };
        CHECK(covariance(k, 0.2, 0.4) == 0.0);
    }

    SUBCASE("indicator slices overlap to one") {
        const NoiseKernel k = NoiseKernel::indicator(0.0, 1.0, 0.0, 1.0, 64);
        CHECK(covariance(k, -2.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(covariance(k, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("gaussian self-convolution at the diagonal") {
        const NoiseKernel k = NoiseKernel::gaussian(1.0, -10, 10, 2000);
        // unit-mass gaussian squared integrates to 1/(2 sqrt(pi) w)
        CHECK(covariance(k, 0.0, 0.0) == doctest::Approx(1.0 / (2.0 * kSqrtPi)).epsilon(1e-8));
    }

    SUBCASE("convolution covariance depends on x - y only") {
        const NoiseKernel k = NoiseKernel::gaussian(0.7, -12, 12, 4000);
        const double a = covariance(k, 0.3, 0.7);
        const double b = covariance(k, -0.2, 0.2);
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
        CHECK(covariance(k, 1.0, -1.0) == doctest::Approx(covariance(k, -1.0, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("diffusion increment composition") {
    const Grid1D g = Grid1D::with_length(20, 2.0);
    const NoiseKernel k = NoiseKernel::gaussian(0.5, -4, 4, 32);
    GaussianStream rng(9);
    const NoiseIncrement w = draw_increment(k, 0.01, rng);

    SUBCASE("zero sigma") {
        const SystemState s = SystemState::zero(g);
        const auto [i1, i2] =
            sample_diffusion_increment(k, s, PhaseProfile::zero(g), PhaseProfile::zero(g), w);
        for (double v : i1.values) CHECK(v == 0.0);
        for (double v : i2.values) CHECK(v == 0.0);
    }

    SUBCASE("zero increment") {
        SystemState s = SystemState::zero(g);
        PhaseProfile ones = PhaseProfile::sample(g, [](double) { return 1.0; });
        NoiseIncrement zero_w{std::vector<double>(32, 0.0), 0.01};
        const auto [i1, i2] = sample_diffusion_increment(k, s, ones, ones, zero_w);
        for (double v : i1.values) CHECK(v == 0.0);
        for (double v : i2.values) CHECK(v == 0.0);
    }

    SUBCASE("unit sigma at zero front reproduces apply_kernel") {
        SystemState s = SystemState::zero(g);
        const PhaseProfile ones = PhaseProfile::sample(g, [](double) { return 1.0; });
        const auto [i1, i2] = sample_diffusion_increment(k, s, ones, ones, w);
        std::vector<double> nodes;
        for (int j = 0; j < g.n; ++j) nodes.push_back(g.node(j));
        const auto smooth = apply_kernel(k, w, nodes);
        for (int j = 0; j < g.n; ++j)
            CHECK(i1.at(j) == doctest::Approx(smooth[static_cast<std::size_t>(j)]).epsilon(1e-14));
        // phase 2 evaluates at the reflected points
        std::vector<double> refl;
        for (int j = 0; j < g.n; ++j) refl.push_back(-g.node(j));
        const auto smooth2 = apply_kernel(k, w, refl);
        for (int j = 0; j < g.n; ++j)
            CHECK(i2.at(j) == doctest::Approx(smooth2[static_cast<std::size_t>(j)]).epsilon(1e-14));
    }
}

TEST_CASE("Ito isometry at the probe points") {
    const NoiseKernel k = NoiseKernel::gaussian(0.5, -3, 3, 64);
    const double dt = 0.05;
    const int steps = 2;
    const int n_samples = 10000;
    const std::vector<double> probes{-1.0, -0.25, 0.0, 0.4, 1.2};

    GaussianStream rng(555);
    std::vector<double> sum(probes.size(), 0.0), sum_sq(probes.size(), 0.0);
    for (int s = 0; s < n_samples; ++s) {
        std::vector<double> xi(probes.size(), 0.0);
        for (int i = 0; i < steps; ++i) {
            const auto v = apply_kernel(k, draw_increment(k, dt, rng), probes);
            for (std::size_t q = 0; q < xi.size(); ++q) xi[q] += v[q];
        }
        for (std::size_t q = 0; q < xi.size(); ++q) {
            sum[q] += xi[q];
            sum_sq[q] += xi[q] * xi[q];
        }
    }
    for (std::size_t q = 0; q < probes.size(); ++q) {
        const double mean = sum[q] / n_samples;
        const double var = sum_sq[q] / n_samples - mean * mean;
        const double ref = steps * dt * covariance(k, probes[q], probes[q]);
        const double se = ref * std::sqrt(2.0 / n_samples);
        CHECK(std::fabs(var - ref) <= 3.0 * se);
    }
}

TEST_CASE("smoothing Lipschitz bound of the kernel operator") {
    const NoiseKernel k = NoiseKernel::gaussian(0.6, -5, 5, 128);
    GaussianStream rng(31);
    const NoiseIncrement w = draw_increment(k, 1.0, rng);
    const double lip_bound = k.slice_l2(0.0, 1) * increment_l2(k, w);

    std::vector<double> pts;
    for (int i = 0; i <= 4000; ++i) pts.push_back(-2.0 + 4.0 * i / 4000.0);
    const auto vals = apply_kernel(k, w, pts);
    double max_slope = 0.0;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
        max_slope = std::max(max_slope, std::fabs(vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i]));
    CHECK(max_slope <= lip_bound + 1e-8);
}

TEST_CASE("Hilbert-Schmidt direct norm and bound") {
    const Grid1D g = Grid1D::with_length(24, 3.0);
    const OperatorParams op{1.0, 1.0, 1.0};

    SUBCASE("zero sigma gives zero") {
        const NoiseKernel k = NoiseKernel::gaussian(0.5, -5, 5, 32);
        CHECK(hs_norm_direct(k, PhaseProfile::zero(g), PhaseProfile::zero(g), 0.0, op) == 0.0);
        CHECK(hs_norm_bound(k, PhaseProfile::zero(g), PhaseProfile::zero(g), op,
                            std::vector<double>{0.0}) == 0.0);
    }

    SUBCASE("single basis vector reduces to one column graph norm") {
        NoiseKernel k = NoiseKernel::gaussian(0.5, 0.0, 1.0, 1);
        const PhaseProfile sig = PhaseProfile::sample(g, [](double x) { return x; });
        const double direct = hs_norm_direct(k, sig, PhaseProfile::zero(g), 0.3, op);

        SystemState column = SystemState::zero(g);
        const double sqrt_dy = std::sqrt(k.dy());
        for (int j = 0; j < g.n; ++j)
            column.u1.values[static_cast<std::size_t>(j)] =
                sig.at(j) * k.zeta[0](0.3 + g.node(j), k.y_node(0)) * sqrt_dy;
        CHECK(direct == doctest::Approx(graph_norm(column, op)).epsilon(1e-12));
    }

    SUBCASE("direct sum is independent of the basis summation order") {
        const NoiseKernel k = NoiseKernel::gaussian(0.4, -6, 6, 64);
        const PhaseProfile sig1 = PhaseProfile::sample(g, [](double x) { return x * std::exp(-x); });
        const PhaseProfile sig2 =
            PhaseProfile::sample(g, [](double x) { return 0.5 * std::sin(x); });
        const double xstar = 0.21;
        const double direct = hs_norm_direct(k, sig1, sig2, xstar, op);

        // oracle: accumulate the squared column norms from the top cell down
        double acc = 0.0;
        const double sqrt_dy = std::sqrt(k.dy());
        for (int basis = k.m_y - 1; basis >= 0; --basis) {
            SystemState column = SystemState::zero(g);
            for (int j = 0; j < g.n; ++j) {
                column.u1.values[static_cast<std::size_t>(j)] =
                    sig1.at(j) * k.zeta[0](xstar + g.node(j), k.y_node(basis)) * sqrt_dy;
                column.u2.values[static_cast<std::size_t>(j)] =
                    sig2.at(j) * k.zeta[0](xstar - g.node(j), k.y_node(basis)) * sqrt_dy;
            }
            const double gn = graph_norm(column, op);
            acc += gn * gn;
        }
        CHECK(direct == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
    }

    SUBCASE("direct sum never exceeds the majorant") {
        const NoiseKernel k = NoiseKernel::gaussian(0.4, -6, 6, 64);
        const std::vector<double> probes{0.0};  // convolution slices are x-independent
        GaussianStream rng(8);
        for (int trial = 0; trial < 10; ++trial) {
            PhaseProfile s1 = PhaseProfile::zero(g), s2 = PhaseProfile::zero(g);
            for (int kk = 1; kk <= 8; ++kk) {
                const double a = rng.next() / (kk * kk), b = rng.next() / (kk * kk);
                for (int j = 0; j < g.n; ++j) {
                    const double phase = 3.14159265358979323846 * kk * (j + 1) / (g.n + 1);
                    s1.values[static_cast<std::size_t>(j)] += a * std::sin(phase);
                    s2.values[static_cast<std::size_t>(j)] += b * std::sin(phase);
                }
            }
            const double direct = hs_norm_direct(k, s1, s2, rng.next(), op);
            const double bound = hs_norm_bound(k, s1, s2, op, probes);
            CHECK(direct <= bound);
        }
    }
}

TEST_CASE("kernel slice checks include the third derivative") {
    const NoiseKernel k = NoiseKernel::gaussian(0.5, -6, 6, 256);
    const std::vector<double> probes{-2.0, -1.0, 0.0, 1.0, 2.0};
    const KernelCheck chk = check_kernel(k, probes);
    CHECK(chk.finite);
    for (int i = 0; i < 4; ++i) CHECK(chk.sup_slice_l2[static_cast<std::size_t>(i)] > 0.0);
    // convolution slices are shift invariant: sup equals the slice at any x
    CHECK(chk.sup_slice_l2[0] == doctest::Approx(k.slice_l2(0.0, 0)).epsilon(1e-9));
}

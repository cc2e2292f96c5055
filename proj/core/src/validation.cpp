#include "smb/validation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace smb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

double transcendental(double lambda) {
    return kSqrtPi * lambda * std::exp(lambda * lambda) * std::erfc(lambda);
}
}  // namespace

double stefan_lambda(double eta, double varrho, double amplitude) {
    if (!(eta > 0) || !(varrho > 0) || !(amplitude > 0))
        throw std::invalid_argument("stefan_lambda: parameters must be positive");
    const double stefan_number = varrho * amplitude / eta;
    double lo = 1e-8, hi = 10.0;
    double flo = transcendental(lo) - stefan_number;
    double fhi = transcendental(hi) - stefan_number;
    if (flo * fhi > 0)
        throw std::runtime_error(
            "stefan_lambda: no sign change on [1e-8, 10]; the Stefan number varrho*A/eta = " +
            std::to_string(stefan_number) + " must lie in (0, 1)");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = transcendental(mid) - stefan_number;
        if (flo * fmid <= 0) {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

StefanSimilarity StefanSimilarity::make(double eta, double varrho, double amplitude, double t0,
                                        double x0) {
    if (!(t0 > 0)) throw std::invalid_argument("StefanSimilarity: t0 must be positive");
    StefanSimilarity ss;
    ss.eta = eta;
    ss.varrho = varrho;
    ss.amplitude = amplitude;
    ss.t0 = t0;
    ss.x0 = x0;
    ss.lambda = stefan_lambda(eta, varrho, amplitude);
    return ss;
}

double StefanSimilarity::front(double t) const {
    // x0 anchors physical time 0: x*(t) = x0 + 2 lambda (sqrt(eta(t0+t)) - sqrt(eta t0))
    return x0 + 2.0 * lambda * (std::sqrt(eta * (t0 + t)) - std::sqrt(eta * t0));
}

double StefanSimilarity::front_velocity(double t) const {
    return lambda * std::sqrt(eta / (t0 + t));
}

double StefanSimilarity::gradient_at_front(double t) const {
    return -amplitude * std::exp(-lambda * lambda) /
           (std::erfc(lambda) * std::sqrt(kPi * eta * (t0 + t)));
}

SystemState stefan_profile(const StefanSimilarity& ss, double t, const Grid1D& grid) {
    if (t < 0) throw std::invalid_argument("stefan_profile: t must be non-negative");
    SystemState s = SystemState::zero(grid);
    const double denom = 2.0 * std::sqrt(ss.eta * (ss.t0 + t));
    const double erfc_lambda = std::erfc(ss.lambda);
    for (int j = 0; j < grid.n; ++j)
        s.u1.values[static_cast<std::size_t>(j)] =
            ss.amplitude * (std::erfc(ss.lambda + grid.node(j) / denom) / erfc_lambda - 1.0);
    s.xstar = ss.front(t);
    return s;
}

PhaseProfile heat_series_solution(const PhaseProfile& p0, double eta, double t) {
    if (t < 0) throw std::invalid_argument("heat_series_solution: t must be non-negative");
    const int n = p0.grid.n;
    const double L = p0.grid.L;

    // direct sine transform, independent of the spectral solver path
    std::vector<double> coeff(static_cast<std::size_t>(n), 0.0);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= n; ++j)
            acc += p0.values[static_cast<std::size_t>(j - 1)] *
                   std::sin(kPi * static_cast<double>(j * k) / static_cast<double>(n + 1));
        coeff[static_cast<std::size_t>(k - 1)] = 2.0 * acc / static_cast<double>(n + 1);
    }
    PhaseProfile out = PhaseProfile::zero(p0.grid);
    for (int j = 1; j <= n; ++j) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double omega = kPi * static_cast<double>(k) / L;
            acc += coeff[static_cast<std::size_t>(k - 1)] * std::exp(-eta * omega * omega * t) *
                   std::sin(kPi * static_cast<double>(j * k) / static_cast<double>(n + 1));
        }
        out.values[static_cast<std::size_t>(j - 1)] = acc;
    }
    return out;
}

}  // namespace smb

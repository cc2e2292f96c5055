#include "smb/solver.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace smb {

void SolverConfig::check() const {
    if (!(dt > 0)) throw std::invalid_argument("solver.dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("solver.t_end must be at least dt");
    if (!(blowup_threshold > 0))
        throw std::invalid_argument("solver.blowup_threshold must be positive");
    if (!(boundary_threshold > 0))
        throw std::invalid_argument("solver.boundary_threshold must be positive");
    if (truncation_N && !(*truncation_N > 0))
        throw std::invalid_argument("solver.truncation_N must be positive");
    if (state_stride < 0) throw std::invalid_argument("solver.state_stride must be >= 0");
}

int SolverConfig::n_steps() const {
    const auto steps = static_cast<int>(std::llround(t_end / dt));
    return steps < 1 ? 1 : steps;
}

namespace {

struct StepWorkspace {
    std::vector<double> factors_plus;   // per-mode semigroup factors for dt
    std::vector<double> factors_minus;
    double dt = -1;
    Scheme scheme = Scheme::exponential_euler;

    void prepare(const SpectralLaplacian& slp, const SpectralLaplacian& slm, double step_dt,
                 Scheme s) {
        if (dt == step_dt && scheme == s && !factors_plus.empty()) return;
        dt = step_dt;
        scheme = s;
        const auto fill = [&](const SpectralLaplacian& sl, std::vector<double>& f) {
            const auto ev = sl.eigenvalues();
            f.resize(ev.size());
            for (std::size_t k = 0; k < ev.size(); ++k)
                f[k] = s == Scheme::exponential_euler ? std::exp(step_dt * ev[k])
                                                      : 1.0 / (1.0 - step_dt * ev[k]);
        };
        fill(slp, factors_plus);
        fill(slm, factors_minus);
    }
};

SystemState do_step(const SpectralLaplacian& sl_plus, const SpectralLaplacian& sl_minus,
                    const ModelCoefficients& mc, const NoiseKernel& k, const SystemState& s,
                    double dt, const NoiseIncrement& w,
                    const std::optional<TruncationLevel>& trunc, StepWorkspace& ws) {
    ws.prepare(sl_plus, sl_minus, dt, ws.scheme);

    const BoundaryTrace tr = boundary_trace(s);
    DriftEval drift = eval_drift(mc, s, tr);
    auto [sig1, sig2] = eval_sigma(mc, s);

    double h_factor = 1.0;
    if (trunc) {
        const OperatorParams op{mc.eta_plus, mc.eta_minus, mc.c};
        h_factor = (*trunc)(graph_norm(s, op));
        if (h_factor != 1.0) {
            for (auto& v : sig1.values) v *= h_factor;
            for (auto& v : sig2.values) v *= h_factor;
        }
    }
    auto [noise1, noise2] = sample_diffusion_increment(k, s, sig1, sig2, w);

    const Grid1D& g = s.u1.grid;
    SystemState next;
    next.u1 = PhaseProfile::zero(g);
    next.u2 = PhaseProfile::zero(g);
    for (int j = 0; j < g.n; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double b1 = h_factor == 1.0 ? drift.b1.values[jj] : h_factor * drift.b1.values[jj];
        const double b2 = h_factor == 1.0 ? drift.b2.values[jj] : h_factor * drift.b2.values[jj];
        next.u1.values[jj] = s.u1.values[jj] + dt * b1 + noise1.values[jj];
        next.u2.values[jj] = s.u2.values[jj] + dt * b2 + noise2.values[jj];
    }

    // smooth the whole mild update in one transform per phase
    {
        std::vector<double> modes = sl_plus.to_modes(next.u1);
        for (std::size_t m = 0; m < modes.size(); ++m) modes[m] *= ws.factors_plus[m];
        next.u1 = sl_plus.from_modes(modes);
        modes = sl_minus.to_modes(next.u2);
        for (std::size_t m = 0; m < modes.size(); ++m) modes[m] *= ws.factors_minus[m];
        next.u2 = sl_minus.from_modes(modes);
    }

    // The c x* contributions of A and B cancel; the plain front law is exact
    // on the plateau and blends to the pure decay e^{-c dt} x* where h_N = 0.
    if (h_factor == 1.0) {
        next.xstar = s.xstar + dt * drift.rho_value;
    } else {
        next.xstar = s.xstar + dt * h_factor * drift.rho_value +
                     (1.0 - h_factor) * (std::expm1(-mc.c * dt)) * s.xstar;
    }
    return next;
}

}  // namespace

SystemState step_with_increment(const SpectralLaplacian& sl_plus,
                                const SpectralLaplacian& sl_minus,
                                const ModelCoefficients& mc, const NoiseKernel& k,
                                const SystemState& s, double dt, const NoiseIncrement& w,
                                Scheme scheme, const std::optional<TruncationLevel>& trunc) {
    if (!(dt > 0)) throw std::invalid_argument("step: dt must be positive");
    StepWorkspace ws;
    ws.scheme = scheme;
    return do_step(sl_plus, sl_minus, mc, k, s, dt, w, trunc, ws);
}

SystemState step(const SpectralLaplacian& sl_plus, const SpectralLaplacian& sl_minus,
                 const ModelCoefficients& mc, const NoiseKernel& k, const SystemState& s,
                 double dt, GaussianStream& rng, Scheme scheme) {
    const NoiseIncrement w = draw_increment(k, dt, rng);
    return step_with_increment(sl_plus, sl_minus, mc, k, s, dt, w, scheme);
}

namespace {

FixedFrameTrajectory run_impl(const SolverConfig& cfg, const ModelCoefficients& mc,
                              const NoiseKernel& k, const SystemState& s0,
                              const std::optional<TruncationLevel>& trunc,
                              NoiseRecord* record) {
    cfg.check();
    if (!s0.valid()) throw std::invalid_argument("run_trajectory: invalid initial state");

    const Grid1D& g = s0.u1.grid;
    const OperatorParams op{mc.eta_plus, mc.eta_minus, mc.c};
    const SpectralLaplacian sl_plus(g, mc.eta_plus, mc.c);
    const SpectralLaplacian sl_minus(g, mc.eta_minus, mc.c);
    GaussianStream rng(cfg.seed);
    StepWorkspace ws;
    ws.scheme = cfg.scheme;

    const int steps = cfg.n_steps();
    FixedFrameTrajectory out;
    out.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.rows.reserve(static_cast<std::size_t>(steps) + 1);
    if (record) {
        record->increments.clear();
        record->increments.reserve(static_cast<std::size_t>(steps));
    }

    bool boundary_crossed = false;
    double t_circ = 0;

    SystemState state = s0;
    auto push_row = [&](double t) {
        const BoundaryTrace tr = boundary_trace(state);
        TraceRow row;
        row.time = t;
        row.xstar = state.xstar;
        row.g1 = tr.g1;
        row.g2 = tr.g2;
        row.l2_norm = state_l2_norm(state);
        row.graph_norm = graph_norm(state, op);
        row.rho = mc.rho(tr.g1, tr.g2);
        out.times.push_back(t);
        out.rows.push_back(row);
        if (!boundary_crossed && std::hypot(tr.g1, tr.g2) >= cfg.boundary_threshold) {
            boundary_crossed = true;
            t_circ = t;
        }
        return row;
    };
    auto push_state = [&](std::size_t step_index) {
        if (!out.state_steps.empty() && out.state_steps.back() == step_index) return;
        out.state_steps.push_back(step_index);
        out.states.push_back(state);
    };

    TraceRow row = push_row(0.0);
    push_state(0);
    const bool keep_every =
        cfg.state_stride > 0;  // stride 0 keeps only the first and final states

    for (int i = 0; i < steps; ++i) {
        const double t_next = cfg.dt * static_cast<double>(i + 1);
        const NoiseIncrement w = draw_increment(k, cfg.dt, rng);
        if (record) record->increments.push_back(w);
        SystemState next;
        try {
            next = do_step(sl_plus, sl_minus, mc, k, state, cfg.dt, w, trunc, ws);
        } catch (const InvalidStateError& e) {
            out.status.outcome = TrajectoryStatus::Outcome::blowup;
            out.status.t_blow = t_next;
            out.status.norm_at_blow = row.graph_norm;
            out.status.message = e.what();
            out.status.boundary_flag = boundary_crossed;
            out.status.t_circ = t_circ;
            if (record) record->increments.pop_back();
            push_state(static_cast<std::size_t>(i));
            return out;
        }
        const bool finite =
            next.u1.finite() && next.u2.finite() && std::isfinite(next.xstar);
        if (!finite) {
            out.status.outcome = TrajectoryStatus::Outcome::blowup;
            out.status.t_blow = t_next;
            out.status.norm_at_blow = row.graph_norm;  // last finite norm
            out.status.boundary_flag = boundary_crossed;
            out.status.t_circ = t_circ;
            out.status.message = "state left the finite range";
            push_state(static_cast<std::size_t>(i));  // last valid state
            return out;
        }
        state = std::move(next);
        row = push_row(t_next);
        if (row.graph_norm >= cfg.blowup_threshold) {
            out.status.outcome = TrajectoryStatus::Outcome::blowup;
            out.status.t_blow = t_next;
            out.status.norm_at_blow = row.graph_norm;
            out.status.boundary_flag = boundary_crossed;
            out.status.t_circ = t_circ;
            out.status.message = "graph norm crossed the blow-up threshold";
            push_state(static_cast<std::size_t>(i + 1));
            return out;
        }
        if (keep_every && ((i + 1) % cfg.state_stride == 0) && i + 1 < steps)
            push_state(static_cast<std::size_t>(i + 1));
    }
    push_state(static_cast<std::size_t>(steps));
    out.status.outcome = TrajectoryStatus::Outcome::completed;
    out.status.boundary_flag = boundary_crossed;
    out.status.t_circ = t_circ;
    return out;
}

}  // namespace

FixedFrameTrajectory run_trajectory(const SolverConfig& cfg, const ModelCoefficients& mc,
                                    const NoiseKernel& k, const SystemState& s0,
                                    NoiseRecord* record) {
    return run_impl(cfg, mc, k, s0, std::nullopt, record);
}

FixedFrameTrajectory run_truncated(const SolverConfig& cfg, const ModelCoefficients& mc,
                                   const NoiseKernel& k, const SystemState& s0,
                                   NoiseRecord* record) {
    if (!cfg.truncation_N) throw std::invalid_argument("run_truncated: truncation_N not set");
    return run_impl(cfg, mc, k, s0, TruncationLevel{*cfg.truncation_N}, record);
}

EnsembleStats run_ensemble(const SolverConfig& cfg, const ModelCoefficients& mc,
                           const NoiseKernel& k, const SystemState& s0, int n_paths,
                           int workers) {
    if (n_paths < 1) throw std::invalid_argument("run_ensemble: need at least one path");
    if (workers < 1) workers = 1;

    struct PathResult {
        std::vector<TraceRow> rows;
        TrajectoryStatus status;
    };
    std::vector<PathResult> results(static_cast<std::size_t>(n_paths));

    std::atomic<int> next_path{0};
    auto worker_fn = [&]() {
        for (;;) {
            const int idx = next_path.fetch_add(1);
            if (idx >= n_paths) return;
            SolverConfig path_cfg = cfg;
            path_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(idx));
            path_cfg.state_stride = 0;
            path_cfg.record_noise = false;
            FixedFrameTrajectory traj =
                cfg.truncation_N ? run_truncated(path_cfg, mc, k, s0)
                                 : run_trajectory(path_cfg, mc, k, s0);
            results[static_cast<std::size_t>(idx)] =
                PathResult{std::move(traj.rows), traj.status};
        }
    };

    if (workers == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }

    // reduction in path order, independent of scheduling
    const int steps = cfg.n_steps();
    const auto n_times = static_cast<std::size_t>(steps) + 1;
    EnsembleStats stats;
    stats.n_paths = n_paths;
    stats.times.resize(n_times);
    for (std::size_t i = 0; i < n_times; ++i) stats.times[i] = cfg.dt * static_cast<double>(i);
    stats.front_mean.assign(n_times, 0.0);
    stats.front_var.assign(n_times, 0.0);
    stats.g1_mean.assign(n_times, 0.0);
    stats.g2_mean.assign(n_times, 0.0);
    stats.alive.assign(n_times, 0);

    for (const auto& r : results) {
        if (r.status.outcome == TrajectoryStatus::Outcome::blowup) {
            ++stats.blowup_count;
            stats.blowup_times.push_back(r.status.t_blow);
        }
        for (std::size_t i = 0; i < r.rows.size() && i < n_times; ++i) {
            stats.front_mean[i] += r.rows[i].xstar;
            stats.g1_mean[i] += r.rows[i].g1;
            stats.g2_mean[i] += r.rows[i].g2;
            stats.alive[i] += 1;
        }
    }
    for (std::size_t i = 0; i < n_times; ++i) {
        if (stats.alive[i] > 0) {
            stats.front_mean[i] /= stats.alive[i];
            stats.g1_mean[i] /= stats.alive[i];
            stats.g2_mean[i] /= stats.alive[i];
        }
    }
    for (const auto& r : results) {
        for (std::size_t i = 0; i < r.rows.size() && i < n_times; ++i) {
            const double d = r.rows[i].xstar - stats.front_mean[i];
            stats.front_var[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < n_times; ++i)
        if (stats.alive[i] > 1) stats.front_var[i] /= (stats.alive[i] - 1);

    return stats;
}

}  // namespace smb

#include "smb/run.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "smb/acceptance.hpp"
#include "smb/frame_transform.hpp"
#include "smb/validation.hpp"
#include "smb/version.hpp"

namespace smb {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_metadata(std::ostream& os, const RunConfig& cfg) {
    os << "# " << kVersion << "\n";
    os << "# config_hash = " << hash_hex(cfg.hash()) << "\n";
    os << "# seed = " << cfg.seed << "\n";
    os << "# grid_n = " << cfg.grid_n << "\n";
    os << "# grid_L = " << fmt(cfg.grid_L) << "\n";
    os << "# dt = " << fmt(cfg.dt) << "\n";
    os << "# scheme = " << to_string(cfg.scheme) << "\n";
    std::istringstream echo(cfg.canonical_text());
    std::string line;
    while (std::getline(echo, line)) os << "# cfg: " << line << "\n";
}

json metadata_json(const RunConfig& cfg) {
    json meta;
    meta["version"] = kVersion;
    meta["config_hash"] = hash_hex(cfg.hash());
    meta["seed"] = cfg.seed;
    meta["grid_n"] = cfg.grid_n;
    meta["grid_L"] = cfg.grid_L;
    meta["dt"] = cfg.dt;
    meta["scheme"] = to_string(cfg.scheme);
    meta["config"] = cfg.canonical_text();
    return meta;
}

std::ofstream open_artifact(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write artifact: " + p.string());
    return out;
}

void write_config_echo(const RunConfig& cfg, const fs::path& dir,
                       std::vector<std::string>& artifacts) {
    const fs::path p = dir / "config_echo.ini";
    auto out = open_artifact(p);
    out << cfg.canonical_text();
    artifacts.push_back(p.string());
}

struct SimilarityRef {
    StefanSimilarity ss;
};

std::optional<SimilarityRef> similarity_reference(const RunConfig& cfg) {
    if (cfg.initial_preset.rfind("similarity", 0) != 0) return std::nullopt;
    // initial.preset = similarity(t0, amplitude); model preset carries varrho
    const auto open = cfg.initial_preset.find('(');
    const auto close = cfg.initial_preset.rfind(')');
    const std::string inner = cfg.initial_preset.substr(open + 1, close - open - 1);
    const auto comma = inner.find(',');
    const double t0 = std::stod(inner.substr(0, comma));
    const double amplitude = std::stod(inner.substr(comma + 1));
    const auto mopen = cfg.model_preset.find('(');
    const auto mclose = cfg.model_preset.find_first_of(",)", mopen + 1);
    const double varrho = std::stod(cfg.model_preset.substr(mopen + 1, mclose - mopen - 1));
    return SimilarityRef{StefanSimilarity::make(cfg.eta_plus, varrho, amplitude, t0, cfg.xstar0)};
}

int run_single(const RunConfig& cfg, RunResult& result) {
    const ModelCoefficients mc = cfg.make_coefficients();
    const NoiseKernel kernel = cfg.make_kernel();
    const Grid1D grid = cfg.make_grid();
    const SolverConfig sc = cfg.make_solver();
    const SystemState s0 = cfg.make_initial(grid);
    const auto ref = similarity_reference(cfg);

    const FixedFrameTrajectory traj = sc.truncation_N
                                          ? run_truncated(sc, mc, kernel, s0)
                                          : run_trajectory(sc, mc, kernel, s0);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    write_config_echo(cfg, dir, result.artifacts);

    if (cfg.format == OutputFormat::csv) {
        const fs::path p = dir / "trajectory.csv";
        auto out = open_artifact(p);
        write_metadata(out, cfg);
        out << "time,xstar,g1,g2,l2_norm,graph_norm";
        if (ref) out << ",xstar_ref,front_rel_err";
        out << "\n";
        for (const auto& row : traj.rows) {
            out << fmt(row.time) << ',' << fmt(row.xstar) << ',' << fmt(row.g1) << ','
                << fmt(row.g2) << ',' << fmt(row.l2_norm) << ',' << fmt(row.graph_norm);
            if (ref) {
                const double xr = ref->ss.front(row.time);
                const double rel = xr != 0 ? std::abs(row.xstar - xr) / std::abs(xr) : 0.0;
                out << ',' << fmt(xr) << ',' << fmt(rel);
            }
            out << "\n";
        }
        result.artifacts.push_back(p.string());
    } else {
        const fs::path p = dir / "trajectory.json";
        json j;
        j["meta"] = metadata_json(cfg);
        json rows = json::array();
        for (const auto& row : traj.rows) {
            json r;
            r["time"] = row.time;
            r["xstar"] = row.xstar;
            r["g1"] = row.g1;
            r["g2"] = row.g2;
            r["l2_norm"] = row.l2_norm;
            r["graph_norm"] = row.graph_norm;
            if (ref) {
                const double xr = ref->ss.front(row.time);
                r["xstar_ref"] = xr;
                r["front_rel_err"] = xr != 0 ? std::abs(row.xstar - xr) / std::abs(xr) : 0.0;
            }
            rows.push_back(r);
        }
        j["rows"] = rows;
        j["status"] =
            traj.status.outcome == TrajectoryStatus::Outcome::completed ? "completed" : "blowup";
        auto out = open_artifact(p);
        out << j.dump(2) << "\n";
        result.artifacts.push_back(p.string());
    }

    if (cfg.profile_stride > 0) {
        // fixed-frame phases, wide rows at the state stride
        {
            const fs::path p = dir / "profiles_fixed.csv";
            auto out = open_artifact(p);
            write_metadata(out, cfg);
            out << "time,xstar";
            for (int j = 0; j < grid.n; ++j) out << ",u1_" << (j + 1);
            for (int j = 0; j < grid.n; ++j) out << ",u2_" << (j + 1);
            out << "\n";
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                const auto& st = traj.states[i];
                out << fmt(traj.times[traj.state_steps[i]]) << ',' << fmt(st.xstar);
                for (double v : st.u1.values) out << ',' << fmt(v);
                for (double v : st.u2.values) out << ',' << fmt(v);
                out << "\n";
            }
            result.artifacts.push_back(p.string());
        }
        // moving-frame reconstruction
        {
            double max_front = 0;
            for (const auto& st : traj.states)
                max_front = std::max(max_front, std::abs(st.xstar));
            const double reach = grid.L + max_front + 4 * grid.h;
            const FullLineGrid target =
                FullLineGrid::make(-reach, reach, grid.h, max_front + 4 * grid.h);
            const MovingFrameTrajectory mf = reconstruct_moving_frame(traj, target);
            const fs::path p = dir / "moving_frame.csv";
            auto out = open_artifact(p);
            write_metadata(out, cfg);
            out << "time,xstar";
            for (int i = 0; i < target.count; ++i) out << ",v_at_" << fmt(target.node(i));
            out << "\n";
            for (std::size_t i = 0; i < mf.profiles.size(); ++i) {
                out << fmt(mf.times[i]) << ',' << fmt(mf.fronts[i]);
                for (double v : mf.profiles[i].values) out << ',' << fmt(v);
                out << "\n";
            }
            result.artifacts.push_back(p.string());
        }
    }

    std::ostringstream sum;
    if (traj.status.outcome == TrajectoryStatus::Outcome::blowup) {
        sum << "blow-up at t = " << traj.status.t_blow << " (graph norm "
            << traj.status.norm_at_blow << ", boundary flag "
            << (traj.status.boundary_flag ? "set" : "clear") << ")";
        result.summary = sum.str();
        return cfg.fail_on_blowup ? 2 : 0;
    }
    sum << "completed " << traj.rows.size() - 1 << " steps, final front "
        << traj.rows.back().xstar;
    result.summary = sum.str();
    return 0;
}

int run_ensemble_mode(const RunConfig& cfg, RunResult& result) {
    const ModelCoefficients mc = cfg.make_coefficients();
    const NoiseKernel kernel = cfg.make_kernel();
    const Grid1D grid = cfg.make_grid();
    const SolverConfig sc = cfg.make_solver();
    const SystemState s0 = cfg.make_initial(grid);

    const auto t_start = std::chrono::steady_clock::now();
    const EnsembleStats stats = run_ensemble(sc, mc, kernel, s0, cfg.n_paths, cfg.workers);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    write_config_echo(cfg, dir, result.artifacts);

    if (cfg.format == OutputFormat::csv) {
        const fs::path p = dir / "ensemble.csv";
        auto out = open_artifact(p);
        write_metadata(out, cfg);
        out << "# n_paths = " << stats.n_paths << "\n";
        out << "# blowup_count = " << stats.blowup_count << "\n";
        out << "# blowup_frequency = " << fmt(stats.blowup_frequency()) << "\n";
        out << "# wall_time_s = " << fmt(wall) << "\n";
        out << "time,front_mean,front_var,g1_mean,g2_mean,alive\n";
        for (std::size_t i = 0; i < stats.times.size(); ++i) {
            out << fmt(stats.times[i]) << ',' << fmt(stats.front_mean[i]) << ','
                << fmt(stats.front_var[i]) << ',' << fmt(stats.g1_mean[i]) << ','
                << fmt(stats.g2_mean[i]) << ',' << stats.alive[i] << "\n";
        }
        result.artifacts.push_back(p.string());
    } else {
        const fs::path p = dir / "ensemble.json";
        json j;
        j["meta"] = metadata_json(cfg);
        j["meta"]["wall_time_s"] = wall;
        j["n_paths"] = stats.n_paths;
        j["blowup_count"] = stats.blowup_count;
        j["blowup_frequency"] = stats.blowup_frequency();
        j["times"] = stats.times;
        j["front_mean"] = stats.front_mean;
        j["front_var"] = stats.front_var;
        j["g1_mean"] = stats.g1_mean;
        j["g2_mean"] = stats.g2_mean;
        j["alive"] = stats.alive;
        j["blowup_times"] = stats.blowup_times;
        auto out = open_artifact(p);
        out << j.dump(2) << "\n";
        result.artifacts.push_back(p.string());
    }

    std::ostringstream sum;
    sum << stats.n_paths << " paths, " << stats.blowup_count << " blow-ups";
    result.summary = sum.str();
    return 0;
}

int run_validate(const RunConfig& cfg, RunResult& result) {
    const ModelCoefficients mc = cfg.make_coefficients(/*lenient=*/true);
    const ValidationReport rep = validate_assumptions(mc, cfg.probe_box);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    write_config_echo(cfg, dir, result.artifacts);

    auto coeff_json = [](const CoefficientReport& r) {
        json j;
        j["lipschitz_y"] = r.lipschitz_y;
        j["lipschitz_z"] = r.lipschitz_z;
        j["lipschitz_x_spread"] = r.lipschitz_x_spread;
        j["envelope_a"] = r.envelope_a;
        j["envelope_b"] = r.envelope_b;
        return j;
    };
    json j;
    j["meta"] = metadata_json(cfg);
    j["mu_plus"] = coeff_json(rep.mu_plus);
    j["mu_minus"] = coeff_json(rep.mu_minus);
    j["sigma_plus"] = coeff_json(rep.sigma_plus);
    j["sigma_minus"] = coeff_json(rep.sigma_minus);
    j["rho_lipschitz"] = rep.rho_lipschitz;
    j["sigma_bc_residual_plus"] = rep.sigma_bc_residual_plus;
    j["sigma_bc_residual_minus"] = rep.sigma_bc_residual_minus;
    if (rep.affine_residual) j["affine_residual"] = *rep.affine_residual;
    j["warnings"] = rep.warnings;

    const fs::path p = dir / "validation_report.json";
    auto out = open_artifact(p);
    out << j.dump(2) << "\n";
    result.artifacts.push_back(p.string());

    std::ostringstream sum;
    sum << "validation " << (rep.flagged() ? "FLAGGED" : "clean") << "; rho Lipschitz "
        << rep.rho_lipschitz << "; sigma(0,0) residuals " << rep.sigma_bc_residual_plus << ", "
        << rep.sigma_bc_residual_minus;
    for (const auto& w : rep.warnings) sum << "\n  warning: " << w;
    result.summary = sum.str();
    return 0;
}

int run_benchmark(const RunConfig& cfg, RunResult& result) {
    const auto results = accept::run_all(cfg.workers);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    const fs::path p = dir / "bench_results.csv";
    auto out = open_artifact(p);
    write_metadata(out, cfg);
    out << "id,name,passed,seconds,detail\n";
    for (const auto& r : results) {
        std::string detail = r.detail;
        for (auto& ch : detail)
            if (ch == ',' || ch == '\n') ch = ';';
        out << r.id << ',' << r.name << ',' << (r.passed ? 1 : 0) << ',' << fmt(r.seconds) << ','
            << detail << "\n";
    }
    result.artifacts.push_back(p.string());
    result.summary = accept::format_table(results);
    return accept::all_passed(results) ? 0 : 3;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    RunResult result;
    switch (cfg.mode) {
        case RunMode::single: result.exit_code = run_single(cfg, result); break;
        case RunMode::ensemble: result.exit_code = run_ensemble_mode(cfg, result); break;
        case RunMode::validate: result.exit_code = run_validate(cfg, result); break;
        case RunMode::benchmark: result.exit_code = run_benchmark(cfg, result); break;
    }
    return result;
}

}  // namespace smb

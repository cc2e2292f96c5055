// smbsim: stochastic moving-boundary simulator front end.
//
// Subcommands:
//   run <config>       integrate a single trajectory or an ensemble
//   validate <config>  probe the model coefficients against their assumptions
//   bench              run the built-in verification suite
//
// Exit codes: 0 ok, 1 usage/config error, 2 blow-up with fail_on_blowup,
// 3 internal error or failed benchmark criteria.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

#include "smb/acceptance.hpp"
#include "smb/config.hpp"
#include "smb/run.hpp"
#include "smb/version.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> paths;
    std::optional<int> workers;

    void apply(smb::RunConfig& cfg) const {
        if (seed) cfg.seed = *seed;
        if (out) cfg.out_dir = *out;
        if (paths) cfg.n_paths = *paths;
        if (workers) cfg.workers = *workers;
    }
};

int execute(const smb::RunConfig& cfg) {
    const smb::RunResult res = smb::run(cfg);
    if (!res.summary.empty()) std::cout << res.summary << "\n";
    for (const auto& a : res.artifacts) std::cout << "wrote " << a << "\n";
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(smb::kVersion) + " - stochastic moving-boundary simulator"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;

    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option("--seed", ov.seed, "override solver.seed");
        cmd->add_option("--out", ov.out, "override output.dir");
        cmd->add_option("--paths", ov.paths, "override run.n_paths");
        cmd->add_option("--workers", ov.workers, "override run.workers");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "integrate the configured model");
    cmd_run->add_option("config", config_path, "config file")->required();
    add_overrides(cmd_run);

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "check the model coefficients against the assumptions");
    cmd_validate->add_option("config", config_path, "config file")->required();
    add_overrides(cmd_validate);

    CLI::App* cmd_bench = app.add_subcommand("bench", "run the built-in verification suite");
    add_overrides(cmd_bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        smb::RunConfig cfg;
        if (cmd_bench->parsed()) {
            cfg.mode = smb::RunMode::benchmark;
            cfg.out_dir = "out";
        } else {
            cfg = smb::load_config(config_path);
            if (cmd_validate->parsed()) cfg.mode = smb::RunMode::validate;
        }
        ov.apply(cfg);
        return execute(cfg);
    } catch (const smb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

#pragma once

#include <string>
#include <vector>

#include "smb/config.hpp"

namespace smb {

struct RunResult {
    int exit_code = 0;  ///< 0 ok, 2 blow-up with fail_on_blowup, 3 internal
    std::vector<std::string> artifacts;
    std::string summary;
};

/// Executes the configured mode and writes the output artifacts.  Every file
/// carries a metadata header with config hash, seed, grid, dt, scheme and
/// version; (config, seed) fully determine every numeric output byte.
RunResult run(const RunConfig& cfg);

}  // namespace smb

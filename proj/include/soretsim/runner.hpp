#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "soretsim/config.hpp"

namespace soretsim {
namespace runner {

struct RunOutcome {
    int exit_code = 0;           // 0 on success, category code otherwise
    ErrorCode category = ErrorCode::Internal; // meaningful when exit_code != 0
    std::string message;         // human-readable summary / error text
    std::filesystem::path out_dir;
};

/// Exit-code mapping used by the CLI (documented in the README).
int exit_code_for(ErrorCode code);

/// out_dir resolution: explicit override > config value; a relative result
/// is placed under $SORETSIM_OUT_ROOT when that variable is set.
std::filesystem::path resolve_out_dir(const RunConfig& config,
                                      const std::optional<std::string>& override_dir);

/// Executes the configured mode and writes all artifacts (canonical config
/// echo, snapshots/reports, manifest.json). A sentinel file INCOMPLETE is
/// present while the run is in flight and retained on failure.
RunOutcome run(const RunConfig& config,
               const std::optional<std::string>& out_dir_override = std::nullopt);

RunOutcome run_file(const std::string& config_path,
                    const std::optional<std::string>& out_dir_override = std::nullopt,
                    const std::optional<std::string>& mode_override = std::nullopt);

} // namespace runner
} // namespace soretsim

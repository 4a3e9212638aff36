#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace etmrs {

/// Process exit codes of the CLI surface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

struct RunOptions {
    std::string config_path;
    std::string out_path;
    std::optional<bool> mc_override;          // --mc / --no-mc
    int threads = 1;                          // workers for the MC streams
    std::optional<std::uint64_t> seed_override;
};

/// Runs the sweep described by the config and streams one CSV row per point
/// to the output path (flushed incrementally). Diagnostics and timing go to
/// `log`. Returns a process exit code.
int run_sweep(const RunOptions& options, std::ostream& log);

/// Checks a config without running it; prints either "OK" or one line per
/// violation to `out`. Returns a process exit code.
int validate_config(const std::string& config_path, std::ostream& out);

}  // namespace etmrs

#ifndef DBAR_PIPELINE_HPP
#define DBAR_PIPELINE_HPP

#include <string>
#include <vector>

#include "dbar/config.hpp"

namespace dbar {

/// Process exit codes shared by the pipeline and the CLI.
enum ExitCode : int {
    kExitOk = 0,
    kExitDiverged = 2,        // small-norm condition violated / iteration diverged
    kExitNonConvergence = 3,  // iteration budget exhausted; partial output kept
    kExitConfigError = 4,
};

struct PipelineResult {
    int exit_code = kExitOk;
    /// Paths of the files written, relative to out_dir.
    std::vector<std::string> outputs;
    /// One-line human summary (also printed by the CLI).
    std::string message;
};

/// Run one subcommand end to end, writing CSV/JSON artifacts into out_dir
/// (created if missing). Commands: "cauchy", "solve", "reconstruct",
/// "verify". Output bytes are deterministic for a fixed config.
PipelineResult run_pipeline(const std::string& command, const RunConfig& cfg,
                            const std::string& out_dir);

}  // namespace dbar

#endif

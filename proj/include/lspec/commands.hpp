#pragma once

#include "lspec/config.hpp"

#include <iosfwd>
#include <string>

namespace lspec {

struct RunContext {
    std::string out_dir;        // empty: use the config's [outputs] dir
    int threads = 1;
    std::uint64_t seed_offset = 0;
    std::ostream* log = nullptr; // nullptr: quiet
};

/// Exit codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

int cmd_dos(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_thermo(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_observable(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_eth(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_fock(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_pr(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_uhlmann(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_entropy(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_verify(const ExperimentConfig& cfg, const RunContext& ctx);

/// Maps an in-flight exception to the exit-code contract and prints the
/// message; used by the CLI around every subcommand.
int run_command(const std::string& name, const ExperimentConfig& cfg, const RunContext& ctx);

} // namespace lspec

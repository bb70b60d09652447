#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qotto/otto.hpp"
#include "qotto/protocol.hpp"

namespace qotto {

struct RunOptions {
    std::string out_override;  // replaces the config's primary output path
    int jobs = 1;              // sweep parallelism; results are emitted in input order
};

/// Executes one scenario described by a parsed JSON config.  Scenarios:
/// stroke, sta-design, cycle, sweep, cd.  Throws ConfigError (naming the
/// field) on malformed input; module errors propagate with scenario context.
/// Identical configs produce byte-identical output files, independent of
/// `jobs`.
void run_scenario(const nlohmann::json& config, const RunOptions& opts = {});

/// Full CLI: `qotto <scenario> --config <file> [--out <path>] [--jobs <n>]`.
/// Returns the process exit code (0 on success).
int run_cli(int argc, const char* const* argv);

/// Builds a protocol from a config block.  When `omega_start` / `omega_end`
/// are supplied (cycle strokes) they override the block's own endpoint
/// fields; standalone blocks must carry omega0 (and omega_f where the kind
/// needs it).
FrequencyProtocol protocol_from_json(const nlohmann::json& block,
                                     std::optional<double> omega_start = std::nullopt,
                                     std::optional<double> omega_end = std::nullopt);

SolverOptions solver_from_json(const nlohmann::json& config);

}  // namespace qotto

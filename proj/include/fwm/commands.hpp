#pragma once

// The CLI subcommands as pure functions: each returns its stdout text and the
// files it would write, so the front end only does I/O.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fwm/rb_ledger.hpp"
#include "fwm/run_config.hpp"

namespace fwm {

enum class OutputFormat { Csv, Svg, Both };

struct OutputFile {
    std::string name;
    std::string content;
};

struct CommandOutput {
    std::string text;
    std::vector<OutputFile> files;
    int exit_code = 0;

    const OutputFile* file(std::string_view name) const;
};

/// plan.csv + plan.txt: beams, detunings, beat note, feasibility.
CommandOutput cmd_plan(const RunConfig& config, const RbLedger& ledger = RbLedger::standard());

/// spectrum.csv, markers.csv and optionally spectrum.svg.
CommandOutput cmd_spectrum(const RunConfig& config, OutputFormat format,
                           const RbLedger& ledger = RbLedger::standard());

/// sweep.csv, sweep_summary.txt and optionally sweep.svg.
CommandOutput cmd_sweep(const RunConfig& config, OutputFormat format, const RbLedger& ledger = RbLedger::standard());

/// noise.csv + noise.txt: loss budget and gain at the planned point.
CommandOutput cmd_noise(const RunConfig& config, const RbLedger& ledger = RbLedger::standard());

/// oracle_check.csv + oracle_check.txt; exit code 1 when any trial fails.
/// DomainError for trials == 0.
CommandOutput cmd_oracle_check(std::uint64_t trials, std::uint64_t seed);

inline constexpr double kOracleTolerance = 1e-9;

void write_outputs(const CommandOutput& output, const std::filesystem::path& dir);

}  // namespace fwm

// cli_app.hpp
// The pqclone command-line front end: file loading, the per-command
// pipelines, and report rendering. Kept as a small library so the command
// logic can be exercised directly by tests.

#pragma once

#include <iosfwd>
#include <string>

#include "pqclone/feasibility.hpp"
#include "pqclone/stateset.hpp"

namespace pqclone::cli {

enum class Command { analyze, optimize, synthesize, simulate, discriminate, compare_limit };
enum class OutputFormat { table, json };

struct RunConfig {
    Command command = Command::analyze;
    std::string input_path;
    std::size_t n_copies = 2;
    PGramMode pgram_mode = PGramMode::search;
    double tol = 1e-9;
    OutputFormat format = OutputFormat::table;
    unsigned seed = 0;
    bool probe_soundness = false;
};

// Exit codes, stable for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitImpossible = 2;

// Reads {"dim": d, "states": [[[re, im], …], …]}; throws FileNotFoundError /
// ParseError (with field context) / ZeroVectorError. States with norms off by
// more than 1e-6 are rejected; smaller deviations renormalize with a warning
// on `warn`.
StateSet load_state_file(const std::string& path, std::ostream& warn);

// Runs one command; report goes to `out`, warnings/errors to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full argv entry point (CLI11 parsing plus run_command).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pqclone::cli

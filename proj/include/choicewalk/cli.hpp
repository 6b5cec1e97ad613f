#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "choicewalk/rng.hpp"

namespace choicewalk {

/// Everything a CLI run depends on. Serialized into the metadata of every
/// output file; parsing it back gives an equal config.
struct RunConfig {
    std::string command;
    std::vector<std::string> families;  // ratio accepts several, other commands one
    std::string process = "solo";       // solo | rchoice | rcomplete
    std::size_t r = 1;
    std::string policy = "uniform";
    std::string phase_switch = "adaptive";  // adaptive | steps
    std::size_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::string grid;  // empty: automatic
    std::string out = "-";
    std::string format = "csv";  // csv | json
    std::string svg;             // chart path, empty for none
    unsigned workers = 0;        // 0: available parallelism

    std::vector<std::size_t> sizes;  // ratio
    std::string mode = "solo";       // exact: solo | policy | optimal | relevant | level | monotone
    std::optional<std::size_t> weight;  // exact level
    std::size_t samples = 100000;       // exact level / monotone when not exhaustive
    std::size_t n = 0;                  // census
    std::optional<double> eps;          // census
    std::optional<std::size_t> steps;   // census
    std::size_t reps = 1;               // census
    std::vector<std::size_t> prefixes;  // diagnose; empty: automatic
    std::size_t trajectories = 20;      // diagnose
    std::size_t inner_trials = 200;     // diagnose

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const RunConfig& config);
// UsageError on missing or mistyped fields.
RunConfig run_config_from_json(const nlohmann::ordered_json& j);

struct CommandLine {
    RunConfig config;
    bool quiet = false;  // no progress on standard error
};

// Command-line parsing only. UsageError on bad arguments. `--seed random`
// is resolved here to a concrete seed, so the config stays reproducible.
// Returns nullopt when help was requested (already printed to `out`).
std::optional<CommandLine> parse_command_line(int argc, const char* const* argv, std::ostream& out);

// Runs a parsed config. Records go to config.out, or to `out` when that is
// "-"; progress and summaries go to `err`.
void execute(const RunConfig& config, std::ostream& out, std::ostream& err, bool progress = false);

// Parse and execute; returns 0 on success, 1 on usage errors, 2 on
// capacity, integrity or I/O errors. Messages go to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace choicewalk

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relay/rvi.hpp"
#include "relay/types.hpp"

namespace relay {

/// Full description of an experiment run. Flat key=value config files use
/// dotted keys (params.mu1, solver.n, sim.seeds, ...); CLI flags override
/// file values, which override the defaults below.
struct ExperimentConfig {
    SystemParams params;
    SolverConfig solver;
    std::uint64_t horizon = 100000;
    std::vector<std::uint64_t> seeds;      // default 1..20
    std::vector<double> sweep_gammas;      // empty unless sweeping
    std::string out_dir;                   // default: $RELAY_AOI_OUT_DIR or "."
    std::string out_prefix = "relay_aoi";

    void validate() const;

    /// Stable serialization of every effective value; two configs hash
    /// equal iff they run identically.
    std::string canonical() const;
    std::string hash() const;
};

ExperimentConfig default_config();

/// Applies one dotted-key entry; unknown keys and unparsable values throw.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

/// Reads a key=value file ('#' starts a comment) on top of the defaults.
ExperimentConfig load_config_file(const std::string& path);

/// "1,2,5" or "1..20".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace relay

#pragma once

#include <string>

#include "relay/config.hpp"
#include "relay/policy.hpp"
#include "relay/solve.hpp"

namespace relay {

struct SolveArtifacts {
    CmdpSolution solution;
    std::string summary_path;
    std::string policy_plus_path;
    std::string policy_minus_path;
};

/// Runs the full bisection design and writes both bracketing policies plus
/// a one-row summary CSV (multipliers, exact J and D-bar at both endpoints,
/// eta, J_mix, iteration counts, wall time).
SolveArtifacts cmd_solve(const ExperimentConfig& cfg);

/// Simulates `policy_spec`, a policy file path or a builtin name ("greedy",
/// "idle"), over every configured seed. The CSV has one row per seed plus
/// mean and stderr rows; for table policies the exact-evaluation J and
/// D-bar are carried in every row for comparison. Returns the CSV path.
std::string cmd_simulate(const ExperimentConfig& cfg, const std::string& policy_spec);

/// For each budget in the sweep list, evaluates the solved deterministic
/// policy and the mixed value exactly, and simulates the greedy benchmark;
/// a generate-at-will lower-bound scenario (arrival rates 1, budget 2) is
/// simulated once and repeated per row. Long-format CSV, one row per
/// (gamma_max, method); per-point failures land in the row's status column.
std::string cmd_sweep(const ExperimentConfig& cfg);

struct SliceSpec {
    std::vector<std::pair<Coord, int>> fixed;
    Coord free_a = Coord::y1;
    Coord free_b = Coord::y2;
    ActionComponent component = ActionComponent::beta;
};

/// Emits a slice grid of the policy plus its switching-structure summary.
std::string cmd_inspect(const ExperimentConfig& cfg, const std::string& policy_path,
                        const SliceSpec& spec);

/// Parses "theta1=1,theta2=1,x1=2,x2=0" style assignments.
std::vector<std::pair<Coord, int>> parse_fixed_assignment(const std::string& text);

}  // namespace relay

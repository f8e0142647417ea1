#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relay/types.hpp"

namespace relay {

/// Deterministic stationary policy: one action code per truncated state,
/// indexed by state_index.
struct PolicyTable {
    TruncationLevel n{7};
    std::vector<std::uint8_t> actions;

    Action at(std::int64_t state_idx) const {
        return Action::from_code(actions.at(static_cast<std::size_t>(state_idx)));
    }
    Action at(const State& s) const { return at(state_index(s, n)); }
};

// ---------------------------------------------------------------------------
// Switching-structure check
// ---------------------------------------------------------------------------

struct SwitchingViolation {
    State state;        // beta serves this source here ...
    Action action;
    State state_up;     // ... but not one step up the y-axis
    Action action_up;
};

/// Result of checking the relay decision along one y-axis: once beta serves
/// source i at some state, it must keep serving it as y_i grows.
struct SwitchingReport {
    int source = 0;  // axis y_source
    std::vector<SwitchingViolation> violations;
};

/// Checks adjacent increments along y_1 and y_2 (transitivity makes that
/// equivalent to arbitrary increments). States at the cap y_i = N aggregate
/// many untruncated states and are skipped as targets.
std::array<SwitchingReport, 2> verify_switching(const PolicyTable& policy);

// ---------------------------------------------------------------------------
// Slices
// ---------------------------------------------------------------------------

enum class Coord { theta1, x1, y1, theta2, x2, y2 };

const char* coord_name(Coord c);
Coord coord_from_name(const std::string& name);

enum class ActionComponent { alpha, beta };

/// (N+1) x (N+1) grid of one action component over two free coordinates,
/// the remaining four held fixed. grid[b][a] is the component at
/// free_b = b, free_a = a.
std::vector<std::vector<int>> policy_slice(const PolicyTable& policy,
                                           const std::vector<std::pair<Coord, int>>& fixed,
                                           Coord free_a, Coord free_b,
                                           ActionComponent component);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------
// Versioned text format: a self-describing header (cap, lambda, system
// parameters and their hash) followed by the flat action-code array.

struct PolicyFileMeta {
    double lambda = 0.0;
    SystemParams params;
};

struct LoadedPolicy {
    PolicyTable table;
    PolicyFileMeta meta;
};

void save_policy(const PolicyTable& policy, const PolicyFileMeta& meta,
                 const std::string& path);

/// Throws std::runtime_error on malformed or truncated files, and when
/// expect_n is given and does not match the file's cap.
LoadedPolicy load_policy(const std::string& path, int expect_n = -1);

}  // namespace relay

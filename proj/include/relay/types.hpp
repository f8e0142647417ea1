#pragma once

#include <cstdint>
#include <vector>

namespace relay {

/// Arrival rates, link reliabilities, and the average transmission budget
/// that define one problem instance.
struct SystemParams {
    double mu1 = 0.6;        // per-slot Bernoulli arrival rate, source 1
    double mu2 = 0.9;        // per-slot Bernoulli arrival rate, source 2
    double p = 0.8;          // Tx -> relay success probability
    double q = 0.7;          // relay -> destination success probability
    double gamma_max = 1.6;  // allowed average transmissions per slot, in (0, 2]

    double mu(int source) const { return source == 1 ? mu1 : mu2; }

    /// Throws std::invalid_argument when any probability leaves [0, 1]
    /// or gamma_max leaves (0, 2].
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

/// Age cap N. All per-source ages live in {0, ..., N} once truncated.
struct TruncationLevel {
    int n;

    explicit TruncationLevel(int cap);

    int m() const { return n + 1; }                       // values per coordinate
    std::int64_t m3() const;                              // per-source state count
    std::int64_t m6() const { return m3() * m3(); }       // joint state count

    bool operator==(const TruncationLevel&) const = default;
};

/// One source's slice of the scheduling state: age at the transmitter and
/// the relative ages at the relay and at the destination.
struct SourceState {
    int theta = 0;  // AoI at Tx
    int x = 0;      // AoI at relay minus AoI at Tx
    int y = 0;      // AoI at destination minus AoI at relay

    bool operator==(const SourceState&) const = default;
};

/// Joint state, ordered (theta1, x1, y1, theta2, x2, y2).
struct State {
    SourceState s1;
    SourceState s2;

    bool operator==(const State&) const = default;
};

/// Scheduling decision: alpha picks the source sent over Tx->R (0 = idle),
/// beta picks the source forwarded over R->D (0 = idle).
struct Action {
    int alpha = 0;
    int beta = 0;

    /// Dense code 3*alpha + beta. Ascending codes order actions
    /// lexicographically over (alpha, beta) with (0, 0) first.
    int code() const { return 3 * alpha + beta; }
    static Action from_code(int code);

    bool operator==(const Action&) const = default;
};

inline constexpr int kActionCount = 9;

// ---------------------------------------------------------------------------
// Costs
// ---------------------------------------------------------------------------

/// Sum of the destination AoIs: theta1+x1+y1 + theta2+x2+y2.
int aoi_cost(const State& s);

/// Number of non-idle links in the action, in {0, 1, 2}.
int transmission_cost(const Action& a);

/// aoi_cost(s) + lambda * transmission_cost(a). Rejects lambda < 0.
double lagrangian_cost(const State& s, const Action& a, double lambda);

// ---------------------------------------------------------------------------
// State indexing
// ---------------------------------------------------------------------------
// States enumerate row-major over (theta1, x1, y1, theta2, x2, y2); the
// all-zero state is index 0 and (N,N,N,N,N,N) is index (N+1)^6 - 1.

std::int64_t source_index(const SourceState& s, TruncationLevel trunc);
SourceState index_source(std::int64_t idx, TruncationLevel trunc);

std::int64_t state_index(const State& s, TruncationLevel trunc);
State index_state(std::int64_t idx, TruncationLevel trunc);

std::vector<State> enumerate_states(TruncationLevel trunc);

}  // namespace relay

#pragma once

#include <cstdint>
#include <utility>

#include "relay/policy.hpp"
#include "relay/types.hpp"

namespace relay {

/// Per-slot random draws: arrivals for both sources and the two link
/// outcomes. Link outcomes are only meaningful when the corresponding link
/// is scheduled, but they are drawn every slot so the random stream does
/// not depend on the policy.
struct StepOutcome {
    bool arrival1 = false;
    bool arrival2 = false;
    bool tx_success = false;     // rho
    bool relay_success = false;  // rho'
};

/// Unclamped ages of one source: theta <= delta <= dest always holds.
struct SourceSim {
    std::uint64_t theta = 0;  // AoI at Tx
    std::uint64_t delta = 0;  // AoI at relay
    std::uint64_t dest = 0;   // AoI at destination
};

struct SimState {
    SourceSim s1;
    SourceSim s2;
    std::uint64_t cum_transmissions = 0;
    std::uint64_t cum_aoi_sum = 0;  // running sum of dest ages over completed slots
    std::uint64_t cum_aoi_1 = 0;
    std::uint64_t cum_aoi_2 = 0;
    std::uint64_t t = 0;  // completed slots
};

/// One slot of the age recursions: the destination age resets to delta+1 on
/// a successful forward of the scheduled source, the relay age resets to
/// theta+1 on a successful transmission, and theta resets on an arrival;
/// all right-hand sides are taken from the pre-step state.
SimState sim_step(const SimState& state, const Action& action, const StepOutcome& outcome);

struct SimMetrics {
    double avg_sum_aoi = 0.0;
    double avg_transmissions = 0.0;
    std::pair<double, double> per_source_aoi{0.0, 0.0};
    std::uint64_t horizon = 0;
    std::uint64_t seed = 0;
    /// Second-half mean age well above the first-half mean: the run never
    /// settled (e.g. a policy that starves a source).
    bool unbounded_trend = false;
};

class PolicyExecutor {
public:
    virtual ~PolicyExecutor() = default;
    virtual Action decide(const SimState& state) = 0;
};

/// Looks the action up in a solved table: relative coordinates of each
/// source are clamped to the table's cap componentwise.
class TableExecutor : public PolicyExecutor {
public:
    explicit TableExecutor(PolicyTable table);
    Action decide(const SimState& state) override;

private:
    PolicyTable table_;
};

/// Benchmark heuristic. Links are considered Tx first, then relay; a link
/// may transmit only if the running average including the tentative
/// transmission stays within gamma_max. Tx serves the source with the
/// largest relative age at the relay, the relay the one with the largest
/// relative age at the destination; a link idles when its criterion is zero
/// and ties go to source 1.
class GreedyExecutor : public PolicyExecutor {
public:
    explicit GreedyExecutor(double gamma_max);
    Action decide(const SimState& state) override;

private:
    double gamma_max_;
};

class IdleExecutor : public PolicyExecutor {
public:
    Action decide(const SimState&) override { return Action{}; }
};

/// One-shot randomization: draws once at construction and then behaves as
/// the chosen table forever.
class MixingExecutor : public PolicyExecutor {
public:
    MixingExecutor(PolicyTable policy_plus, PolicyTable policy_minus, double eta,
                   std::uint64_t seed);
    Action decide(const SimState& state) override;
    bool chose_plus() const { return chose_plus_; }

private:
    bool chose_plus_;
    TableExecutor chosen_;
};

/// Runs `horizon` slots from all-zero ages with a deterministic generator
/// (mt19937_64; per slot the draws are arrival1, arrival2, tx, relay, each
/// via the top 53 bits). Identical inputs give identical metrics.
SimMetrics run_simulation(PolicyExecutor& executor, const SystemParams& params,
                          std::uint64_t horizon, std::uint64_t seed);

}  // namespace relay

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "relay/types.hpp"

namespace relay {

/// Distribution over next joint states. Entries carry strictly positive
/// probabilities, have pairwise distinct states, and sum to 1.
struct TransitionDist {
    std::vector<std::pair<State, double>> entries;
};

/// One-slot transition law of a single source under the truncated dynamics.
///
/// scheduled_tx / scheduled_relay say whether this source is the one served
/// on the Tx->R and R->D links this slot. The untruncated case rows are
/// mapped into the capped space by clamping the implied absolute next ages
/// (theta', delta', Delta') to N and converting back to relative
/// coordinates; rows that collapse onto the same capped state are merged by
/// summing their probabilities. Zero-probability rows are dropped.
std::vector<std::pair<SourceState, double>> source_transitions(
    const SourceState& src, bool scheduled_tx, bool scheduled_relay,
    double arrival_rate, double p, double q, TruncationLevel trunc);

/// Joint one-slot transition law: product of the two per-source laws,
/// with duplicate next states merged.
TransitionDist joint_transitions(const State& state, const Action& action,
                                 const SystemParams& params, TruncationLevel trunc);

/// Per-source transition tables over source-state indices, precomputed for
/// the four (tx, relay) scheduling combinations. The joint kernel factors
/// over sources, so sweeps contract one source at a time instead of
/// enumerating joint outcomes.
class FactoredKernel {
public:
    // Scheduling combination of one source: bit 0 = served on Tx->R,
    // bit 1 = served on R->D.
    static constexpr int kComboIdle = 0;
    static constexpr int kComboTx = 1;
    static constexpr int kComboRelay = 2;
    static constexpr int kComboBoth = 3;
    static constexpr int kComboCount = 4;
    static constexpr int kMaxOutcomes = 8;

    FactoredKernel(const SystemParams& params, TruncationLevel trunc);

    TruncationLevel trunc() const { return trunc_; }
    const SystemParams& params() const { return params_; }
    std::int64_t m3() const { return trunc_.m3(); }
    std::int64_t m6() const { return trunc_.m6(); }

    /// Scheduling combination the action induces for `source` (1 or 2).
    static int combo_for(int source, const Action& a) {
        return (a.alpha == source ? kComboTx : 0) | (a.beta == source ? kComboRelay : 0);
    }

    int outcome_count(int source, int combo, std::int64_t src_idx) const {
        return counts_[source - 1][offset(combo, src_idx)];
    }
    const std::int32_t* outcome_targets(int source, int combo, std::int64_t src_idx) const {
        return &targets_[source - 1][offset(combo, src_idx) * kMaxOutcomes];
    }
    const double* outcome_probs(int source, int combo, std::int64_t src_idx) const {
        return &probs_[source - 1][offset(combo, src_idx) * kMaxOutcomes];
    }

    /// theta + x + y per source-state index.
    const std::vector<double>& source_costs() const { return cost3_; }

    /// Appends the joint outcome list of (state index, action) to the given
    /// target/probability vectors; returns the number of entries appended.
    /// Duplicates are not merged (irrelevant for expectation sums).
    int append_joint_outcomes(std::int64_t state_idx, const Action& a,
                              std::vector<std::int32_t>& targets,
                              std::vector<double>& probs) const;

private:
    std::size_t offset(int combo, std::int64_t src_idx) const {
        return static_cast<std::size_t>(combo) * static_cast<std::size_t>(m3()) +
               static_cast<std::size_t>(src_idx);
    }

    SystemParams params_;
    TruncationLevel trunc_;
    // [source][combo * m3 + src_idx]
    std::vector<std::uint8_t> counts_[2];
    std::vector<std::int32_t> targets_[2];
    std::vector<double> probs_[2];
    std::vector<double> cost3_;
};

}  // namespace relay

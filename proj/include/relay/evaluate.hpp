#pragma once

#include <cstdint>
#include <vector>

#include "relay/kernel.hpp"
#include "relay/policy.hpp"
#include "relay/types.hpp"

namespace relay {

/// Exact long-run averages of a deterministic stationary policy on the
/// truncated chain.
struct PolicyEvaluation {
    double avg_aoi = 0.0;            // J: stationary expectation of the AoI cost
    double avg_transmissions = 0.0;  // D-bar: stationary expectation of D(policy(s))
    std::vector<double> stationary;  // limiting distribution from the all-zero state
    std::int64_t iterations = 0;
};

/// Builds the chain the policy induces and computes its limiting
/// distribution by damped power iteration (x <- 0.1 x + 0.9 xP, which keeps
/// the same fixed point and is immune to periodic cycles), started from a
/// point mass on the all-zero state and run to an L1 change of 1e-12.
/// Throws if the iteration fails to converge, which on a unichain kernel
/// indicates a bug upstream.
PolicyEvaluation evaluate_policy_exact(const PolicyTable& policy, const SystemParams& params,
                                       TruncationLevel trunc);

/// Same, reusing a prebuilt kernel (its cap must match the policy's).
PolicyEvaluation evaluate_policy_exact(const FactoredKernel& kernel, const PolicyTable& policy);

}  // namespace relay

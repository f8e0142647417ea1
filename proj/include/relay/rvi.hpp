#pragma once

#include <cstdint>
#include <vector>

#include "relay/kernel.hpp"
#include "relay/policy.hpp"
#include "relay/types.hpp"

namespace relay {

/// Knobs of the relative-value-iteration / bisection pipeline.
struct SolverConfig {
    TruncationLevel n{7};
    double epsilon = 1e-3;              // RVI stopping threshold on sup|h - h_old|
    double zeta = 0.01;                 // bisection width threshold
    double lambda_minus_init = 0.0;
    double lambda_plus_init = 1000.0;
    std::int64_t max_rvi_iters = 100000;
    State ref_state{};                  // all-zero by default

    void validate() const;
};

struct RviSolution {
    PolicyTable policy;
    double gain = 0.0;            // average Lagrangian cost per slot, V(ref) at the end
    std::vector<double> h;        // relative value function, h(ref) = 0
    std::int64_t iterations = 0;
    double residual = 0.0;        // last sup-norm change of h
    bool converged = false;
};

/// Relative value iteration for the lambda-relaxed average-cost problem on
/// the truncated space. Each iteration applies the Bellman operator to the
/// previous h across all states, then re-centers at the reference state;
/// the greedy policy is extracted from the converged h with ties broken
/// lexicographically over (alpha, beta), idle first. Non-convergence within
/// max_rvi_iters is reported through the converged/residual fields.
RviSolution rvi_solve(const SystemParams& params, const SolverConfig& cfg, double lambda);

/// Same, reusing a prebuilt kernel (its cap must match cfg.n).
RviSolution rvi_solve(const FactoredKernel& kernel, const SolverConfig& cfg, double lambda);

}  // namespace relay

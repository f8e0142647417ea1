#pragma once

#include <cstdint>

#include "relay/evaluate.hpp"
#include "relay/policy.hpp"
#include "relay/rvi.hpp"
#include "relay/types.hpp"

namespace relay {

/// Output of the full Lagrangian design: the bracketing multipliers, their
/// policies and exact evaluations, and the one-shot mixing between them.
struct CmdpSolution {
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    PolicyTable policy_minus;
    PolicyTable policy_plus;
    PolicyEvaluation eval_minus;
    PolicyEvaluation eval_plus;
    double eta = 1.0;    // probability of running policy_plus
    double j_mix = 0.0;

    bool slack_at_zero = false;  // budget already satisfied by the lambda=0 policy
    std::int64_t bisection_iterations = 0;
    std::int64_t rvi_iterations_total = 0;
    int lambda_plus_doublings = 0;
    bool all_rvi_converged = true;
};

/// eta = (gamma_max - d_minus) / (d_plus - d_minus), clamped to [0, 1];
/// returns 1 when the endpoints coincide. Requires
/// d_plus <= gamma_max <= d_minus.
double mixing_factor(double d_minus, double d_plus, double gamma_max);

/// eta * j_plus + (1 - eta) * j_minus.
double mixed_value(double j_minus, double j_plus, double eta);

/// Bisection on the Lagrange multiplier. Each probe solves the relaxed
/// problem by RVI and evaluates the resulting policy's average transmission
/// rate exactly; probes with rate >= gamma_max move lambda_minus up,
/// others move lambda_plus down, until the bracket is narrower than zeta.
/// When the lambda = lambda_minus_init policy already meets the budget the
/// bracket degenerates there with eta = 1. An infeasible initial
/// lambda_plus is doubled up to 2^20 before the search starts.
CmdpSolution bisection_solve(const SystemParams& params, const SolverConfig& cfg);

}  // namespace relay

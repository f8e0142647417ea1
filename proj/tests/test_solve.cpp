#include <stdexcept>

#include "doctest.h"
#include "relay/evaluate.hpp"
#include "relay/solve.hpp"

using namespace relay;

TEST_CASE("mixing factor") {
    CHECK(mixing_factor(1.7, 1.5, 1.6) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mixing_factor(1.6, 1.5, 1.6) == 0.0);
    CHECK(mixing_factor(1.8, 1.8, 1.8) == 1.0);
    CHECK_THROWS_AS(mixing_factor(1.5, 1.7, 1.6), std::invalid_argument);
    CHECK_THROWS_AS(mixing_factor(1.4, 1.2, 1.6), std::invalid_argument);
}

TEST_CASE("mixed value") {
    CHECK(mixed_value(18.0, 20.0, 0.5) == 19.0);
    CHECK(mixed_value(18.0, 20.0, 1.0) == 20.0);
    CHECK(mixed_value(18.0, 20.0, 0.0) == 18.0);
    CHECK_THROWS_AS(mixed_value(18.0, 20.0, 1.5), std::invalid_argument);
}

TEST_CASE("a budget of two is slack at lambda zero") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 2.0};
    SolverConfig cfg;
    cfg.n = TruncationLevel{2};
    const CmdpSolution sol = bisection_solve(params, cfg);
    CHECK(sol.slack_at_zero);
    CHECK(sol.eta == 1.0);
    CHECK(sol.lambda_minus == 0.0);
    CHECK(sol.lambda_plus == 0.0);
    CHECK(sol.j_mix == sol.eval_plus.avg_aoi);
    CHECK(sol.bisection_iterations == 0);
}

TEST_CASE("bisection contract at a small cap") {
    // N = 3 is the smallest cap where transmissions can beat idling: a
    // delivered packet reaches the destination with age 2, one below the cap.
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{3};
    cfg.zeta = 0.05;
    const CmdpSolution sol = bisection_solve(params, cfg);
    CHECK_FALSE(sol.slack_at_zero);
    CHECK(sol.lambda_plus - sol.lambda_minus < cfg.zeta);
    CHECK(sol.lambda_plus - sol.lambda_minus >= 0.0);
    CHECK(sol.eval_plus.avg_transmissions <= params.gamma_max);
    CHECK(sol.eval_minus.avg_transmissions >= params.gamma_max);
    CHECK(sol.eta >= 0.0);
    CHECK(sol.eta <= 1.0);
    CHECK(sol.eval_minus.avg_aoi <= sol.j_mix + 1e-12);
    CHECK(sol.j_mix <= sol.eval_plus.avg_aoi + 1e-12);
    CHECK(sol.all_rvi_converged);
    CHECK(sol.bisection_iterations > 0);
}

TEST_CASE("an infeasible initial upper multiplier is doubled until feasible") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 0.2};
    SolverConfig cfg;
    cfg.n = TruncationLevel{3};
    cfg.lambda_plus_init = 1e-3;
    cfg.zeta = 0.05;
    const CmdpSolution sol = bisection_solve(params, cfg);
    CHECK(sol.lambda_plus_doublings >= 1);
    CHECK(sol.eval_plus.avg_transmissions <= params.gamma_max);
    CHECK(sol.eval_minus.avg_transmissions >= params.gamma_max);
    CHECK(sol.lambda_plus - sol.lambda_minus < cfg.zeta);
}

TEST_CASE("transmissions fall and ages rise along the multiplier grid") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{3};
    const FactoredKernel kernel(params, cfg.n);
    double prev_d = 2.0;
    double prev_j = 0.0;
    for (double lambda : {0.0, 1.0, 5.0}) {
        CAPTURE(lambda);
        const RviSolution sol = rvi_solve(kernel, cfg, lambda);
        const PolicyEvaluation eval = evaluate_policy_exact(kernel, sol.policy);
        CHECK(eval.avg_transmissions <= prev_d + 1e-6);
        CHECK(eval.avg_aoi >= prev_j - 1e-6);
        prev_d = eval.avg_transmissions;
        prev_j = eval.avg_aoi;
    }
}

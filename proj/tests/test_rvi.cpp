#include <algorithm>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "relay/evaluate.hpp"
#include "relay/rvi.hpp"
#include "support/policy_iteration.hpp"

using namespace relay;

namespace {

// Q(s, a) computed the slow way, straight off the joint outcome lists.
double q_direct(const FactoredKernel& kernel, std::int64_t state_idx, const Action& action,
                double lambda, const std::vector<double>& h) {
    const State state = index_state(state_idx, kernel.trunc());
    std::vector<std::int32_t> targets;
    std::vector<double> probs;
    kernel.append_joint_outcomes(state_idx, action, targets, probs);
    double q = lagrangian_cost(state, action, lambda);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        q += probs[k] * h[static_cast<std::size_t>(targets[k])];
    }
    return q;
}

}  // namespace

TEST_CASE("dead links pin the gain at 2N with an idle policy") {
    // p = q = 0: no transmission ever succeeds, every action induces the
    // same chain, and with certain arrivals each source settles at cost N.
    const SystemParams params{1.0, 1.0, 0.0, 0.0, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{7};
    cfg.max_rvi_iters = 5000;
    for (double lambda : {0.0, 3.0}) {
        CAPTURE(lambda);
        const RviSolution sol = rvi_solve(params, cfg, lambda);
        CHECK(sol.converged);
        CHECK(sol.gain == 14.0);
        CHECK(std::all_of(sol.policy.actions.begin(), sol.policy.actions.end(),
                          [](std::uint8_t a) { return a == 0; }));
    }
}

TEST_CASE("a prohibitive multiplier makes idling optimal everywhere") {
    const SystemParams params{1.0, 1.0, 1.0, 1.0, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{7};
    cfg.max_rvi_iters = 20000;
    const double lambda = 1e6;
    const FactoredKernel kernel(params, cfg.n);
    const RviSolution sol = rvi_solve(kernel, cfg, lambda);
    CHECK(sol.converged);
    CHECK(sol.gain == 14.0);
    CHECK(std::all_of(sol.policy.actions.begin(), sol.policy.actions.end(),
                      [](std::uint8_t a) { return a == 0; }));

    // Exact evaluation of the always-idle policy agrees ...
    const PolicyEvaluation eval = evaluate_policy_exact(kernel, sol.policy);
    CHECK(eval.avg_aoi == doctest::Approx(14.0).epsilon(1e-9));
    CHECK(eval.avg_transmissions == 0.0);

    // ... and no action improves any state against the converged h.
    double worst = 0.0;
    for (std::int64_t s = 0; s < kernel.m6(); ++s) {
        const double q_idle = q_direct(kernel, s, Action{0, 0}, lambda, sol.h);
        for (int code = 1; code < kActionCount; ++code) {
            const double q = q_direct(kernel, s, Action::from_code(code), lambda, sol.h);
            worst = std::max(worst, q_idle - q);
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("the factored sweep reproduces a direct joint-enumeration solve") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    const TruncationLevel n3{3};
    const FactoredKernel kernel(params, n3);
    const double lambda = 0.3;

    SolverConfig cfg;
    cfg.n = n3;
    cfg.epsilon = 1e-10;
    const RviSolution sol = rvi_solve(kernel, cfg, lambda);
    REQUIRE(sol.converged);

    // reference: same iteration, expectations straight off the joint lists
    const std::int64_t m6 = kernel.m6();
    std::vector<double> h(static_cast<std::size_t>(m6), 0.0);
    std::vector<double> h_next(static_cast<std::size_t>(m6), 0.0);
    std::vector<double> v(static_cast<std::size_t>(m6), 0.0);
    double residual = 1.0;
    std::int64_t iters = 0;
    while (residual > cfg.epsilon && iters < 10000) {
        for (std::int64_t s = 0; s < m6; ++s) {
            double best = std::numeric_limits<double>::infinity();
            for (int code = 0; code < kActionCount; ++code) {
                const double q = q_direct(kernel, s, Action::from_code(code), lambda, h);
                best = std::min(best, q);
            }
            v[static_cast<std::size_t>(s)] = best;
        }
        residual = 0.0;
        for (std::int64_t s = 0; s < m6; ++s) {
            h_next[static_cast<std::size_t>(s)] = v[static_cast<std::size_t>(s)] - v[0];
            residual = std::max(residual, std::fabs(h_next[static_cast<std::size_t>(s)] -
                                                    h[static_cast<std::size_t>(s)]));
        }
        h.swap(h_next);
        ++iters;
    }
    CHECK(iters == sol.iterations);
    CHECK(v[0] == doctest::Approx(sol.gain).epsilon(1e-9));
    double max_dh = 0.0;
    for (std::int64_t s = 0; s < m6; ++s) {
        max_dh = std::max(max_dh, std::fabs(h[static_cast<std::size_t>(s)] -
                                            sol.h[static_cast<std::size_t>(s)]));
    }
    CHECK(max_dh <= 1e-9);
}

TEST_CASE("rvi matches policy iteration at a small cap") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{2};
    cfg.epsilon = 1e-9;
    cfg.max_rvi_iters = 300000;
    const double lambda = 1.0;
    const RviSolution sol = rvi_solve(params, cfg, lambda);
    REQUIRE(sol.converged);
    const auto pi = pi_oracle::policy_iteration(params, cfg.n, lambda);
    CHECK(sol.gain == doctest::Approx(pi.gain).epsilon(1e-6));
}

TEST_CASE("identical inputs give identical solutions") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{2};
    const RviSolution a = rvi_solve(params, cfg, 0.7);
    const RviSolution b = rvi_solve(params, cfg, 0.7);
    CHECK(a.gain == b.gain);
    CHECK(a.iterations == b.iterations);
    CHECK(a.policy.actions == b.policy.actions);
    CHECK(a.h == b.h);
}

TEST_CASE("solution bookkeeping") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{2};

    SUBCASE("converged run: h is centered and the residual is within epsilon") {
        const RviSolution sol = rvi_solve(params, cfg, 0.5);
        REQUIRE(sol.converged);
        CHECK(sol.residual <= cfg.epsilon);
        CHECK(sol.h[static_cast<std::size_t>(state_index(cfg.ref_state, cfg.n))] == 0.0);
    }

    SUBCASE("iteration cap reports non-convergence instead of throwing") {
        cfg.max_rvi_iters = 2;
        const RviSolution sol = rvi_solve(params, cfg, 0.5);
        CHECK_FALSE(sol.converged);
        CHECK(sol.iterations == 2);
        CHECK(sol.residual > cfg.epsilon);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(rvi_solve(params, cfg, -1.0), std::invalid_argument);
        SolverConfig crossed = cfg;
        crossed.lambda_minus_init = crossed.lambda_plus_init + 1.0;
        CHECK_THROWS_AS(rvi_solve(params, crossed, 1.0), std::invalid_argument);
        const FactoredKernel kernel(params, TruncationLevel{3});
        CHECK_THROWS_AS(rvi_solve(kernel, cfg, 1.0), std::invalid_argument);
        cfg.epsilon = 0.0;
        CHECK_THROWS_AS(rvi_solve(params, cfg, 1.0), std::invalid_argument);
    }
}

TEST_CASE("greedy extraction is optimal against the converged h") {
    const SystemParams params{0.6, 0.9, 0.8, 0.7, 1.6};
    SolverConfig cfg;
    cfg.n = TruncationLevel{2};
    const double lambda = 1.0;
    const FactoredKernel kernel(params, cfg.n);
    const RviSolution sol = rvi_solve(kernel, cfg, lambda);
    REQUIRE(sol.converged);
    for (std::int64_t s = 0; s < kernel.m6(); ++s) {
        const double q_chosen = q_direct(kernel, s, sol.policy.at(s), lambda, sol.h);
        for (int code = 0; code < kActionCount; ++code) {
            const double q = q_direct(kernel, s, Action::from_code(code), lambda, sol.h);
            CHECK(q_chosen <= q + 1e-9);
            // lexicographic tie-break: no strictly-lower code ties the choice
            if (code < sol.policy.at(s).code()) {
                CHECK(q > q_chosen - 1e-12);
            }
        }
    }
}

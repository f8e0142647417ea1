#include "relay/sim.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace relay {

namespace {

SourceSim step_source(const SourceSim& src, int source, const Action& a, bool arrival,
                      bool tx_success, bool relay_success) {
    SourceSim next;
    next.dest = (a.beta == source && relay_success) ? src.delta + 1 : src.dest + 1;
    next.delta = (a.alpha == source && tx_success) ? src.theta + 1 : src.delta + 1;
    next.theta = arrival ? 0 : src.theta + 1;
    return next;
}

int clamp_to(std::uint64_t v, int n) {
    return static_cast<int>(std::min<std::uint64_t>(v, static_cast<std::uint64_t>(n)));
}

SourceState clamped_relative(const SourceSim& src, int n) {
    return SourceState{clamp_to(src.theta, n), clamp_to(src.delta - src.theta, n),
                       clamp_to(src.dest - src.delta, n)};
}

}  // namespace

SimState sim_step(const SimState& state, const Action& action, const StepOutcome& outcome) {
    SimState next = state;
    next.s1 = step_source(state.s1, 1, action, outcome.arrival1, outcome.tx_success,
                          outcome.relay_success);
    next.s2 = step_source(state.s2, 2, action, outcome.arrival2, outcome.tx_success,
                          outcome.relay_success);
    next.cum_transmissions += static_cast<std::uint64_t>(transmission_cost(action));
    next.cum_aoi_1 += next.s1.dest;
    next.cum_aoi_2 += next.s2.dest;
    next.cum_aoi_sum += next.s1.dest + next.s2.dest;
    next.t += 1;
    return next;
}

TableExecutor::TableExecutor(PolicyTable table) : table_(std::move(table)) {
    if (table_.actions.size() != static_cast<std::size_t>(table_.n.m6())) {
        throw std::invalid_argument("policy table does not cover the truncated state space");
    }
}

Action TableExecutor::decide(const SimState& state) {
    const State s{clamped_relative(state.s1, table_.n.n),
                  clamped_relative(state.s2, table_.n.n)};
    return table_.at(s);
}

GreedyExecutor::GreedyExecutor(double gamma_max) : gamma_max_(gamma_max) {
    if (!(gamma_max > 0.0 && gamma_max <= 2.0)) {
        throw std::invalid_argument("gamma_max must lie in (0, 2]");
    }
}

Action GreedyExecutor::decide(const SimState& state) {
    const std::uint64_t slot = state.t + 1;  // 1-based slot about to run
    std::uint64_t cum = state.cum_transmissions;
    Action a;

    const std::uint64_t x1 = state.s1.delta - state.s1.theta;
    const std::uint64_t x2 = state.s2.delta - state.s2.theta;
    if ((x1 > 0 || x2 > 0) &&
        static_cast<double>(cum + 1) / static_cast<double>(slot) <= gamma_max_) {
        a.alpha = x1 >= x2 ? 1 : 2;
        ++cum;
    }

    const std::uint64_t y1 = state.s1.dest - state.s1.delta;
    const std::uint64_t y2 = state.s2.dest - state.s2.delta;
    if ((y1 > 0 || y2 > 0) &&
        static_cast<double>(cum + 1) / static_cast<double>(slot) <= gamma_max_) {
        a.beta = y1 >= y2 ? 1 : 2;
    }
    return a;
}

MixingExecutor::MixingExecutor(PolicyTable policy_plus, PolicyTable policy_minus, double eta,
                               std::uint64_t seed)
    : chose_plus_([&] {
          if (!(eta >= 0.0 && eta <= 1.0)) {
              throw std::invalid_argument("eta must lie in [0, 1]");
          }
          std::mt19937_64 rng(seed);
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          return u < eta;
      }()),
      chosen_(chose_plus_ ? std::move(policy_plus) : std::move(policy_minus)) {}

Action MixingExecutor::decide(const SimState& state) { return chosen_.decide(state); }

SimMetrics run_simulation(PolicyExecutor& executor, const SystemParams& params,
                          std::uint64_t horizon, std::uint64_t seed) {
    params.validate();
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }

    std::mt19937_64 rng(seed);
    const auto draw = [&rng](double prob) {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 < prob;
    };

    SimState state;
    std::uint64_t half_cum = 0;
    for (std::uint64_t slot = 0; slot < horizon; ++slot) {
        const Action action = executor.decide(state);
        StepOutcome outcome;
        outcome.arrival1 = draw(params.mu1);
        outcome.arrival2 = draw(params.mu2);
        outcome.tx_success = draw(params.p);
        outcome.relay_success = draw(params.q);
        state = sim_step(state, action, outcome);
        if (state.t == horizon / 2) {
            half_cum = state.cum_aoi_sum;
        }
    }

    SimMetrics metrics;
    metrics.horizon = horizon;
    metrics.seed = seed;
    const double t = static_cast<double>(horizon);
    metrics.avg_sum_aoi = static_cast<double>(state.cum_aoi_sum) / t;
    metrics.avg_transmissions = static_cast<double>(state.cum_transmissions) / t;
    metrics.per_source_aoi = {static_cast<double>(state.cum_aoi_1) / t,
                              static_cast<double>(state.cum_aoi_2) / t};
    if (horizon >= 4) {
        const double first = static_cast<double>(half_cum) / static_cast<double>(horizon / 2);
        const double second = static_cast<double>(state.cum_aoi_sum - half_cum) /
                              static_cast<double>(horizon - horizon / 2);
        metrics.unbounded_trend = second > 1.5 * first + 1.0;
    }
    return metrics;
}

}  // namespace relay

#include "relay/evaluate.hpp"

#include <stdexcept>

#include "relay/simd_kernels.hpp"

namespace relay {

namespace {

constexpr double kTol = 1e-12;
constexpr std::int64_t kMaxIters = 200000;
constexpr double kDamping = 0.9;  // weight on xP; 1 - kDamping stays on x

// Column-oriented sparse form of the induced chain: for each next state,
// the list of (previous state, probability) feeding into it. Lets the
// power iteration read each output entry with one gather-dot.
struct IncomingChain {
    std::vector<std::int64_t> offsets;  // m6 + 1
    std::vector<std::int32_t> sources;
    std::vector<double> probs;
};

IncomingChain build_incoming(const FactoredKernel& kernel, const PolicyTable& policy) {
    const std::int64_t m6 = kernel.m6();

    std::vector<std::int32_t> out_targets;
    std::vector<double> out_probs;
    std::vector<std::int64_t> row_start(static_cast<std::size_t>(m6) + 1, 0);
    out_targets.reserve(static_cast<std::size_t>(m6) * 8);
    out_probs.reserve(static_cast<std::size_t>(m6) * 8);
    for (std::int64_t s = 0; s < m6; ++s) {
        row_start[static_cast<std::size_t>(s)] = static_cast<std::int64_t>(out_targets.size());
        kernel.append_joint_outcomes(s, policy.at(s), out_targets, out_probs);
    }
    row_start[static_cast<std::size_t>(m6)] = static_cast<std::int64_t>(out_targets.size());

    IncomingChain chain;
    chain.offsets.assign(static_cast<std::size_t>(m6) + 1, 0);
    for (std::int32_t t : out_targets) {
        ++chain.offsets[static_cast<std::size_t>(t) + 1];
    }
    for (std::int64_t i = 0; i < m6; ++i) {
        chain.offsets[static_cast<std::size_t>(i) + 1] += chain.offsets[static_cast<std::size_t>(i)];
    }
    chain.sources.resize(out_targets.size());
    chain.probs.resize(out_targets.size());
    std::vector<std::int64_t> cursor(chain.offsets.begin(), chain.offsets.end() - 1);
    for (std::int64_t s = 0; s < m6; ++s) {
        for (std::int64_t e = row_start[static_cast<std::size_t>(s)];
             e < row_start[static_cast<std::size_t>(s) + 1]; ++e) {
            const std::int32_t t = out_targets[static_cast<std::size_t>(e)];
            const std::int64_t pos = cursor[static_cast<std::size_t>(t)]++;
            chain.sources[static_cast<std::size_t>(pos)] = static_cast<std::int32_t>(s);
            chain.probs[static_cast<std::size_t>(pos)] = out_probs[static_cast<std::size_t>(e)];
        }
    }
    return chain;
}

}  // namespace

PolicyEvaluation evaluate_policy_exact(const FactoredKernel& kernel, const PolicyTable& policy) {
    if (!(kernel.trunc() == policy.n)) {
        throw std::invalid_argument("kernel truncation level does not match the policy");
    }
    const std::int64_t m6 = kernel.m6();
    const std::size_t m6z = static_cast<std::size_t>(m6);
    if (policy.actions.size() != m6z) {
        throw std::invalid_argument("policy table does not cover the truncated state space");
    }

    const IncomingChain chain = build_incoming(kernel, policy);

    std::vector<double> x(m6z, 0.0);
    std::vector<double> y(m6z, 0.0);
    x[static_cast<std::size_t>(state_index(State{}, policy.n))] = 1.0;

    PolicyEvaluation out;
    bool converged = false;
    while (out.iterations < kMaxIters) {
        for (std::int64_t s = 0; s < m6; ++s) {
            const std::int64_t off = chain.offsets[static_cast<std::size_t>(s)];
            const std::int64_t len = chain.offsets[static_cast<std::size_t>(s) + 1] - off;
            y[static_cast<std::size_t>(s)] =
                simd::dot_gather(x.data(), &chain.sources[static_cast<std::size_t>(off)],
                                 &chain.probs[static_cast<std::size_t>(off)],
                                 static_cast<std::size_t>(len));
        }
        simd::axpby(y.data(), 1.0 - kDamping, x.data(), kDamping, m6z);
        simd::scale(y.data(), 1.0 / simd::sum(y.data(), m6z), m6z);
        const double change = simd::l1_diff(y.data(), x.data(), m6z);
        x.swap(y);
        ++out.iterations;
        if (change <= kTol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw std::runtime_error(
            "stationary distribution power iteration did not converge; "
            "the induced chain is expected to be unichain");
    }

    const double* cost3 = kernel.source_costs().data();
    std::vector<double> cost(m6z);
    std::vector<double> tx_cost(m6z);
    const std::int64_t m3 = kernel.m3();
    for (std::int64_t s = 0; s < m6; ++s) {
        cost[static_cast<std::size_t>(s)] = cost3[s / m3] + cost3[s % m3];
        tx_cost[static_cast<std::size_t>(s)] =
            static_cast<double>(transmission_cost(policy.at(s)));
    }
    out.avg_aoi = simd::dot(x.data(), cost.data(), m6z);
    out.avg_transmissions = simd::dot(x.data(), tx_cost.data(), m6z);
    out.stationary = std::move(x);
    return out;
}

PolicyEvaluation evaluate_policy_exact(const PolicyTable& policy, const SystemParams& params,
                                       TruncationLevel trunc) {
    if (!(trunc == policy.n)) {
        throw std::invalid_argument("truncation level does not match the policy");
    }
    return evaluate_policy_exact(FactoredKernel(params, trunc), policy);
}

}  // namespace relay

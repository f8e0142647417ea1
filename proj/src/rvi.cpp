#include "relay/rvi.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "relay/simd_kernels.hpp"

namespace relay {

void SolverConfig::validate() const {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!(zeta > 0.0)) {
        throw std::invalid_argument("zeta must be positive");
    }
    if (!(lambda_minus_init >= 0.0)) {
        throw std::invalid_argument("lambda_minus must be nonnegative");
    }
    if (!(lambda_minus_init < lambda_plus_init)) {
        throw std::invalid_argument("lambda_minus must be below lambda_plus");
    }
    if (max_rvi_iters < 1) {
        throw std::invalid_argument("max_rvi_iters must be >= 1");
    }
    state_index(ref_state, n);  // range check
}

namespace {

void transpose(const double* src, double* dst, std::int64_t rows, std::int64_t cols) {
    constexpr std::int64_t kBlock = 32;
    for (std::int64_t i0 = 0; i0 < rows; i0 += kBlock) {
        const std::int64_t i1 = std::min(i0 + kBlock, rows);
        for (std::int64_t j0 = 0; j0 < cols; j0 += kBlock) {
            const std::int64_t j1 = std::min(j0 + kBlock, cols);
            for (std::int64_t i = i0; i < i1; ++i) {
                for (std::int64_t j = j0; j < j1; ++j) {
                    dst[j * rows + i] = src[i * cols + j];
                }
            }
        }
    }
}

struct SweepWorkspace {
    std::vector<double> h_t;     // h transposed: [s2'][s1']
    std::vector<double> g;       // [combo2][s2][s1'] source-2 contraction of h
    std::vector<double> g_t;     // [combo2][s1'][s2]
    std::vector<double> q;       // scratch row over s2
    std::vector<double> vmin;    // running minimum over actions, row over s2
    std::vector<double> amin;    // running argmin codes, row over s2

    explicit SweepWorkspace(std::int64_t m3) {
        const std::size_t m6 = static_cast<std::size_t>(m3) * static_cast<std::size_t>(m3);
        h_t.resize(m6);
        g.resize(FactoredKernel::kComboCount * m6);
        g_t.resize(FactoredKernel::kComboCount * m6);
        q.resize(static_cast<std::size_t>(m3));
        vmin.resize(static_cast<std::size_t>(m3));
        amin.resize(static_cast<std::size_t>(m3));
    }
};

// Per-source scheduling combination and transmission count per action code.
struct ActionMeta {
    int combo1;
    int combo2;
    double tx_cost;
};

std::array<ActionMeta, kActionCount> action_meta() {
    std::array<ActionMeta, kActionCount> meta{};
    for (int code = 0; code < kActionCount; ++code) {
        const Action a = Action::from_code(code);
        meta[code] = {FactoredKernel::combo_for(1, a), FactoredKernel::combo_for(2, a),
                      static_cast<double>(transmission_cost(a))};
    }
    return meta;
}

// One Bellman sweep: v_out[s] = min_a { C(s) + lambda*D(a) + E[h(s')] }.
// The expectation factors over sources: h is first contracted over the
// source-2 outcome lists for each of its four scheduling combinations, then
// each (s1, a) row adds the source-1 outcomes as axpy over contiguous
// s2-vectors. Actions are scanned in ascending code order with a
// strictly-less running minimum, so ties go to the lexicographically first
// action. amin_out may be null when only values are needed.
void bellman_sweep(const FactoredKernel& kernel, double lambda, const double* h,
                   SweepWorkspace& ws, double* v_out, double* amin_out) {
    const std::int64_t m3 = kernel.m3();
    const std::size_t m3z = static_cast<std::size_t>(m3);
    static const std::array<ActionMeta, kActionCount> kMeta = action_meta();
    const double* cost3 = kernel.source_costs().data();

    transpose(h, ws.h_t.data(), m3, m3);

    for (int combo = 0; combo < FactoredKernel::kComboCount; ++combo) {
        for (std::int64_t s2 = 0; s2 < m3; ++s2) {
            double* row = &ws.g[(static_cast<std::size_t>(combo) * m3z + s2) * m3z];
            std::fill(row, row + m3z, 0.0);
            const int cnt = kernel.outcome_count(2, combo, s2);
            const std::int32_t* tgt = kernel.outcome_targets(2, combo, s2);
            const double* prob = kernel.outcome_probs(2, combo, s2);
            for (int k = 0; k < cnt; ++k) {
                simd::axpy(row, prob[k], &ws.h_t[static_cast<std::size_t>(tgt[k]) * m3z], m3z);
            }
        }
        transpose(&ws.g[static_cast<std::size_t>(combo) * m3z * m3z],
                  &ws.g_t[static_cast<std::size_t>(combo) * m3z * m3z], m3, m3);
    }

    for (std::int64_t s1 = 0; s1 < m3; ++s1) {
        std::fill(ws.vmin.begin(), ws.vmin.end(), std::numeric_limits<double>::infinity());
        if (amin_out != nullptr) {
            std::fill(ws.amin.begin(), ws.amin.end(), 0.0);
        }
        for (int code = 0; code < kActionCount; ++code) {
            const ActionMeta& meta = kMeta[static_cast<std::size_t>(code)];
            const double base = cost3[s1] + lambda * meta.tx_cost;
            simd::add_scalar(ws.q.data(), cost3, base, m3z);
            const int cnt = kernel.outcome_count(1, meta.combo1, s1);
            const std::int32_t* tgt = kernel.outcome_targets(1, meta.combo1, s1);
            const double* prob = kernel.outcome_probs(1, meta.combo1, s1);
            for (int k = 0; k < cnt; ++k) {
                simd::axpy(ws.q.data(), prob[k],
                           &ws.g_t[(static_cast<std::size_t>(meta.combo2) * m3z +
                                    static_cast<std::size_t>(tgt[k])) *
                                   m3z],
                           m3z);
            }
            if (amin_out != nullptr) {
                simd::min_update(ws.vmin.data(), ws.amin.data(), ws.q.data(),
                                 static_cast<double>(code), m3z);
            } else {
                simd::min_inplace(ws.vmin.data(), ws.q.data(), m3z);
            }
        }
        std::copy(ws.vmin.begin(), ws.vmin.end(), v_out + static_cast<std::size_t>(s1) * m3z);
        if (amin_out != nullptr) {
            std::copy(ws.amin.begin(), ws.amin.end(),
                      amin_out + static_cast<std::size_t>(s1) * m3z);
        }
    }
}

}  // namespace

RviSolution rvi_solve(const FactoredKernel& kernel, const SolverConfig& cfg, double lambda) {
    cfg.validate();
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    if (!(kernel.trunc() == cfg.n)) {
        throw std::invalid_argument("kernel truncation level does not match solver config");
    }

    const std::int64_t m6 = kernel.m6();
    const std::size_t m6z = static_cast<std::size_t>(m6);
    const std::size_t ref = static_cast<std::size_t>(state_index(cfg.ref_state, cfg.n));

    std::vector<double> h(m6z, 0.0);
    std::vector<double> h_next(m6z, 0.0);
    std::vector<double> v(m6z, 0.0);
    SweepWorkspace ws(kernel.m3());

    RviSolution sol;
    while (sol.iterations < cfg.max_rvi_iters) {
        bellman_sweep(kernel, lambda, h.data(), ws, v.data(), nullptr);
        ++sol.iterations;
        simd::add_scalar(h_next.data(), v.data(), -v[ref], m6z);
        sol.residual = simd::max_abs_diff(h_next.data(), h.data(), m6z);
        h.swap(h_next);
        if (sol.residual <= cfg.epsilon) {
            sol.converged = true;
            break;
        }
    }

    // Extraction pass against the final h: greedy policy and gain estimate.
    std::vector<double> amin(m6z, 0.0);
    bellman_sweep(kernel, lambda, h.data(), ws, v.data(), amin.data());
    sol.gain = v[ref];
    sol.policy.n = cfg.n;
    sol.policy.actions.resize(m6z);
    for (std::size_t i = 0; i < m6z; ++i) {
        sol.policy.actions[i] = static_cast<std::uint8_t>(amin[i]);
    }
    sol.h = std::move(h);
    return sol;
}

RviSolution rvi_solve(const SystemParams& params, const SolverConfig& cfg, double lambda) {
    return rvi_solve(FactoredKernel(params, cfg.n), cfg, lambda);
}

}  // namespace relay

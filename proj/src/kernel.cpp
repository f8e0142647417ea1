#include "relay/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace relay {

namespace {

struct RawRow {
    double prob;
    int theta_next;
    int x_next;
    int y_next;
};

// Untruncated case rows of the per-source transition law. Probabilities are
// written with factors ordered (arrival, Tx link, R link) throughout.
int raw_rows(const SourceState& s, bool tx, bool relay, double mu, double p, double q,
             std::array<RawRow, FactoredKernel::kMaxOutcomes>& out) {
    const int th = s.theta;
    const int x = s.x;
    const int y = s.y;
    if (tx && relay) {
        out = {{
            {mu * p * q, 0, th + 1, x},
            {mu * (1 - p) * q, 0, x + th + 1, 0},
            {mu * p * (1 - q), 0, th + 1, y + x},
            {mu * (1 - p) * (1 - q), 0, x + th + 1, y},
            {(1 - mu) * p * q, th + 1, 0, x},
            {(1 - mu) * (1 - p) * q, th + 1, x, 0},
            {(1 - mu) * p * (1 - q), th + 1, 0, y + x},
            {(1 - mu) * (1 - p) * (1 - q), th + 1, x, y},
        }};
        return 8;
    }
    if (tx && !relay) {
        out = {{
            {mu * p, 0, th + 1, y + x},
            {mu * (1 - p), 0, x + th + 1, y},
            {(1 - mu) * p, th + 1, 0, y + x},
            {(1 - mu) * (1 - p), th + 1, x, y},
        }};
        return 4;
    }
    if (!tx && relay) {
        out = {{
            {mu * q, 0, x + th + 1, 0},
            {mu * (1 - q), 0, x + th + 1, y},
            {(1 - mu) * q, th + 1, x, 0},
            {(1 - mu) * (1 - q), th + 1, x, y},
        }};
        return 4;
    }
    out = {{
        {mu, 0, x + th + 1, y},
        {1 - mu, th + 1, x, y},
    }};
    return 2;
}

// Clamp the absolute ages implied by a raw row to N and convert back to
// relative coordinates. Clamping is monotone, so the result stays a valid
// truncated source state.
SourceState truncate_row(const RawRow& row, int n) {
    const int theta_abs = row.theta_next;
    const int delta_abs = theta_abs + row.x_next;
    const int dest_abs = delta_abs + row.y_next;
    const int tc = std::min(theta_abs, n);
    const int dc = std::min(delta_abs, n);
    const int Dc = std::min(dest_abs, n);
    return SourceState{tc, dc - tc, Dc - dc};
}

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

std::vector<std::pair<SourceState, double>> source_transitions(
    const SourceState& src, bool scheduled_tx, bool scheduled_relay,
    double arrival_rate, double p, double q, TruncationLevel trunc) {
    check_probability(arrival_rate, "arrival_rate");
    check_probability(p, "p");
    check_probability(q, "q");
    source_index(src, trunc);  // range check

    std::array<RawRow, FactoredKernel::kMaxOutcomes> rows;
    const int count = raw_rows(src, scheduled_tx, scheduled_relay, arrival_rate, p, q, rows);

    std::vector<std::pair<SourceState, double>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        if (rows[i].prob == 0.0) {
            continue;
        }
        const SourceState next = truncate_row(rows[i], trunc.n);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const auto& e) { return e.first == next; });
        if (it == out.end()) {
            out.emplace_back(next, rows[i].prob);
        } else {
            it->second += rows[i].prob;
        }
    }
    return out;
}

TransitionDist joint_transitions(const State& state, const Action& action,
                                 const SystemParams& params, TruncationLevel trunc) {
    params.validate();
    if (action.alpha < 0 || action.alpha > 2 || action.beta < 0 || action.beta > 2) {
        throw std::invalid_argument("action components must lie in {0, 1, 2}");
    }
    const auto l1 = source_transitions(state.s1, action.alpha == 1, action.beta == 1,
                                       params.mu1, params.p, params.q, trunc);
    const auto l2 = source_transitions(state.s2, action.alpha == 2, action.beta == 2,
                                       params.mu2, params.p, params.q, trunc);

    TransitionDist dist;
    dist.entries.reserve(l1.size() * l2.size());
    for (const auto& [n1, p1] : l1) {
        for (const auto& [n2, p2] : l2) {
            const State next{n1, n2};
            const double prob = p1 * p2;
            auto it = std::find_if(dist.entries.begin(), dist.entries.end(),
                                   [&](const auto& e) { return e.first == next; });
            if (it == dist.entries.end()) {
                dist.entries.emplace_back(next, prob);
            } else {
                it->second += prob;
            }
        }
    }
    return dist;
}

FactoredKernel::FactoredKernel(const SystemParams& params, TruncationLevel trunc)
    : params_(params), trunc_(trunc) {
    params.validate();
    const std::int64_t m3 = trunc.m3();
    const std::size_t slots = static_cast<std::size_t>(kComboCount) * m3;
    for (int src = 0; src < 2; ++src) {
        counts_[src].assign(slots, 0);
        targets_[src].assign(slots * kMaxOutcomes, 0);
        probs_[src].assign(slots * kMaxOutcomes, 0.0);
        const double mu = src == 0 ? params.mu1 : params.mu2;
        for (int combo = 0; combo < kComboCount; ++combo) {
            for (std::int64_t i = 0; i < m3; ++i) {
                const auto list =
                    source_transitions(index_source(i, trunc), combo & kComboTx,
                                       combo & kComboRelay, mu, params.p, params.q, trunc);
                const std::size_t off = offset(combo, i);
                counts_[src][off] = static_cast<std::uint8_t>(list.size());
                for (std::size_t k = 0; k < list.size(); ++k) {
                    targets_[src][off * kMaxOutcomes + k] =
                        static_cast<std::int32_t>(source_index(list[k].first, trunc));
                    probs_[src][off * kMaxOutcomes + k] = list[k].second;
                }
            }
        }
    }
    cost3_.resize(static_cast<std::size_t>(m3));
    for (std::int64_t i = 0; i < m3; ++i) {
        const SourceState s = index_source(i, trunc);
        cost3_[static_cast<std::size_t>(i)] = static_cast<double>(s.theta + s.x + s.y);
    }
}

int FactoredKernel::append_joint_outcomes(std::int64_t state_idx, const Action& a,
                                          std::vector<std::int32_t>& targets,
                                          std::vector<double>& probs) const {
    const std::int64_t m3_ = m3();
    const std::int64_t i1 = state_idx / m3_;
    const std::int64_t i2 = state_idx % m3_;
    const int c1 = combo_for(1, a);
    const int c2 = combo_for(2, a);
    const int n1 = outcome_count(1, c1, i1);
    const int n2 = outcome_count(2, c2, i2);
    const std::int32_t* t1 = outcome_targets(1, c1, i1);
    const double* p1 = outcome_probs(1, c1, i1);
    const std::int32_t* t2 = outcome_targets(2, c2, i2);
    const double* p2 = outcome_probs(2, c2, i2);
    for (int a1 = 0; a1 < n1; ++a1) {
        for (int a2 = 0; a2 < n2; ++a2) {
            targets.push_back(static_cast<std::int32_t>(t1[a1] * m3_ + t2[a2]));
            probs.push_back(p1[a1] * p2[a2]);
        }
    }
    return n1 * n2;
}

}  // namespace relay

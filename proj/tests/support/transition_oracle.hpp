#pragma once

// Independent per-source transition oracles used to cross-check the
// production kernel on unclamped states.
//
// table_rows transcribes the eighteen case rows directly; recursion_rows
// re-derives them by enumerating the binary outcomes (arrival, link
// successes) and applying the absolute-age update rules. Probability
// factors multiply in (arrival, Tx link, R link) order in both, which is
// also the production grouping, so matching entries agree bit for bit.

#include <vector>

namespace transition_oracle {

struct Row {
    double prob;
    int theta;
    int x;
    int y;

    bool operator==(const Row&) const = default;
};

inline std::vector<Row> table_rows(int th, int x, int y, bool tx, bool relay, double mu,
                                   double p, double q) {
    if (tx && relay) {
        return {
            {mu * p * q, 0, th + 1, x},
            {mu * (1 - p) * q, 0, x + th + 1, 0},
            {mu * p * (1 - q), 0, th + 1, y + x},
            {mu * (1 - p) * (1 - q), 0, x + th + 1, y},
            {(1 - mu) * p * q, th + 1, 0, x},
            {(1 - mu) * (1 - p) * q, th + 1, x, 0},
            {(1 - mu) * p * (1 - q), th + 1, 0, y + x},
            {(1 - mu) * (1 - p) * (1 - q), th + 1, x, y},
        };
    }
    if (tx && !relay) {
        return {
            {mu * p, 0, th + 1, y + x},
            {mu * (1 - p), 0, x + th + 1, y},
            {(1 - mu) * p, th + 1, 0, y + x},
            {(1 - mu) * (1 - p), th + 1, x, y},
        };
    }
    if (!tx && relay) {
        return {
            {mu * q, 0, x + th + 1, 0},
            {mu * (1 - q), 0, x + th + 1, y},
            {(1 - mu) * q, th + 1, x, 0},
            {(1 - mu) * (1 - q), th + 1, x, y},
        };
    }
    return {
        {mu, 0, x + th + 1, y},
        {1 - mu, th + 1, x, y},
    };
}

inline std::vector<Row> recursion_rows(int th, int x, int y, bool tx, bool relay, double mu,
                                       double p, double q) {
    const int delta = th + x;
    const int dest = th + x + y;
    std::vector<Row> rows;
    for (int arrival = 1; arrival >= 0; --arrival) {
        const int tx_options = tx ? 2 : 1;
        for (int tx_opt = tx_options - 1; tx_opt >= 0; --tx_opt) {
            const bool tx_ok = tx && tx_opt == 1;
            const int relay_options = relay ? 2 : 1;
            for (int relay_opt = relay_options - 1; relay_opt >= 0; --relay_opt) {
                const bool relay_ok = relay && relay_opt == 1;
                double prob = arrival != 0 ? mu : 1 - mu;
                if (tx) {
                    prob *= tx_ok ? p : 1 - p;
                }
                if (relay) {
                    prob *= relay_ok ? q : 1 - q;
                }
                const int theta_next = arrival != 0 ? 0 : th + 1;
                const int delta_next = tx_ok ? th + 1 : delta + 1;
                const int dest_next = relay_ok ? delta + 1 : dest + 1;
                rows.push_back(
                    {prob, theta_next, delta_next - theta_next, dest_next - delta_next});
            }
        }
    }
    return rows;
}

}  // namespace transition_oracle

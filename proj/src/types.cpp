#include "relay/types.hpp"

#include <stdexcept>
#include <string>

namespace relay {

namespace {

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(v));
    }
}

}  // namespace

void SystemParams::validate() const {
    check_probability(mu1, "mu1");
    check_probability(mu2, "mu2");
    check_probability(p, "p");
    check_probability(q, "q");
    if (!(gamma_max > 0.0 && gamma_max <= 2.0)) {
        throw std::invalid_argument("gamma_max must lie in (0, 2], got " +
                                    std::to_string(gamma_max));
    }
}

TruncationLevel::TruncationLevel(int cap) : n(cap) {
    if (cap < 1) {
        throw std::invalid_argument("truncation level must be >= 1, got " +
                                    std::to_string(cap));
    }
    // (N+1)^6 joint states have to stay addressable and materializable.
    if (cap > 40) {
        throw std::invalid_argument("truncation level " + std::to_string(cap) +
                                    " is beyond the supported range (max 40)");
    }
}

std::int64_t TruncationLevel::m3() const {
    const std::int64_t m_ = m();
    return m_ * m_ * m_;
}

Action Action::from_code(int code) {
    if (code < 0 || code >= kActionCount) {
        throw std::out_of_range("action code out of range: " + std::to_string(code));
    }
    return Action{code / 3, code % 3};
}

int aoi_cost(const State& s) {
    return s.s1.theta + s.s1.x + s.s1.y + s.s2.theta + s.s2.x + s.s2.y;
}

int transmission_cost(const Action& a) {
    return (a.alpha != 0 ? 1 : 0) + (a.beta != 0 ? 1 : 0);
}

double lagrangian_cost(const State& s, const Action& a, double lambda) {
    if (lambda < 0.0) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    return static_cast<double>(aoi_cost(s)) + lambda * transmission_cost(a);
}

namespace {

void check_coord(int v, int n, const char* name) {
    if (v < 0 || v > n) {
        throw std::out_of_range(std::string(name) + " out of truncated range [0, " +
                                std::to_string(n) + "]: " + std::to_string(v));
    }
}

}  // namespace

std::int64_t source_index(const SourceState& s, TruncationLevel trunc) {
    check_coord(s.theta, trunc.n, "theta");
    check_coord(s.x, trunc.n, "x");
    check_coord(s.y, trunc.n, "y");
    const std::int64_t m = trunc.m();
    return (static_cast<std::int64_t>(s.theta) * m + s.x) * m + s.y;
}

SourceState index_source(std::int64_t idx, TruncationLevel trunc) {
    if (idx < 0 || idx >= trunc.m3()) {
        throw std::out_of_range("source state index out of range: " + std::to_string(idx));
    }
    const std::int64_t m = trunc.m();
    SourceState s;
    s.y = static_cast<int>(idx % m);
    idx /= m;
    s.x = static_cast<int>(idx % m);
    s.theta = static_cast<int>(idx / m);
    return s;
}

std::int64_t state_index(const State& s, TruncationLevel trunc) {
    return source_index(s.s1, trunc) * trunc.m3() + source_index(s.s2, trunc);
}

State index_state(std::int64_t idx, TruncationLevel trunc) {
    if (idx < 0 || idx >= trunc.m6()) {
        throw std::out_of_range("state index out of range: " + std::to_string(idx));
    }
    const std::int64_t m3 = trunc.m3();
    return State{index_source(idx / m3, trunc), index_source(idx % m3, trunc)};
}

std::vector<State> enumerate_states(TruncationLevel trunc) {
    std::vector<State> out;
    out.reserve(static_cast<std::size_t>(trunc.m6()));
    for (std::int64_t i = 0; i < trunc.m6(); ++i) {
        out.push_back(index_state(i, trunc));
    }
    return out;
}

}  // namespace relay

#include "relay/policy.hpp"

#include <fstream>
#include <stdexcept>

#include "relay/util.hpp"

namespace relay {

namespace {

int coord_value(const State& s, Coord c) {
    switch (c) {
        case Coord::theta1: return s.s1.theta;
        case Coord::x1: return s.s1.x;
        case Coord::y1: return s.s1.y;
        case Coord::theta2: return s.s2.theta;
        case Coord::x2: return s.s2.x;
        case Coord::y2: return s.s2.y;
    }
    throw std::logic_error("bad coord");
}

void set_coord(State& s, Coord c, int v) {
    switch (c) {
        case Coord::theta1: s.s1.theta = v; return;
        case Coord::x1: s.s1.x = v; return;
        case Coord::y1: s.s1.y = v; return;
        case Coord::theta2: s.s2.theta = v; return;
        case Coord::x2: s.s2.x = v; return;
        case Coord::y2: s.s2.y = v; return;
    }
    throw std::logic_error("bad coord");
}

void check_policy_shape(const PolicyTable& policy) {
    if (policy.actions.size() != static_cast<std::size_t>(policy.n.m6())) {
        throw std::invalid_argument("policy table does not cover the truncated state space");
    }
}

}  // namespace

const char* coord_name(Coord c) {
    switch (c) {
        case Coord::theta1: return "theta1";
        case Coord::x1: return "x1";
        case Coord::y1: return "y1";
        case Coord::theta2: return "theta2";
        case Coord::x2: return "x2";
        case Coord::y2: return "y2";
    }
    throw std::logic_error("bad coord");
}

Coord coord_from_name(const std::string& name) {
    for (Coord c : {Coord::theta1, Coord::x1, Coord::y1, Coord::theta2, Coord::x2, Coord::y2}) {
        if (name == coord_name(c)) {
            return c;
        }
    }
    throw std::invalid_argument("unknown coordinate name: " + name);
}

std::array<SwitchingReport, 2> verify_switching(const PolicyTable& policy) {
    check_policy_shape(policy);
    const TruncationLevel trunc = policy.n;
    const int n = trunc.n;
    std::array<SwitchingReport, 2> reports{SwitchingReport{1, {}}, SwitchingReport{2, {}}};

    for (std::int64_t idx = 0; idx < trunc.m6(); ++idx) {
        const State s = index_state(idx, trunc);
        const Action a = policy.at(idx);
        for (int source = 1; source <= 2; ++source) {
            if (a.beta != source) {
                continue;
            }
            const Coord axis = source == 1 ? Coord::y1 : Coord::y2;
            const int y = coord_value(s, axis);
            // y+1 = N would land on the aggregated cap state; skip.
            if (y + 1 > n - 1) {
                continue;
            }
            State up = s;
            set_coord(up, axis, y + 1);
            const Action a_up = policy.at(up);
            if (a_up.beta != source) {
                reports[source - 1].violations.push_back({s, a, up, a_up});
            }
        }
    }
    return reports;
}

std::vector<std::vector<int>> policy_slice(const PolicyTable& policy,
                                           const std::vector<std::pair<Coord, int>>& fixed,
                                           Coord free_a, Coord free_b,
                                           ActionComponent component) {
    check_policy_shape(policy);
    if (free_a == free_b) {
        throw std::invalid_argument("free axes must be distinct");
    }
    if (fixed.size() != 4) {
        throw std::invalid_argument("exactly four coordinates must be fixed");
    }
    bool seen[6] = {false, false, false, false, false, false};
    seen[static_cast<int>(free_a)] = true;
    seen[static_cast<int>(free_b)] = true;
    State base{};
    for (const auto& [coord, value] : fixed) {
        if (seen[static_cast<int>(coord)]) {
            throw std::invalid_argument(std::string(coord_name(coord)) +
                                        " cannot be both fixed and free (or fixed twice)");
        }
        if (value < 0 || value > policy.n.n) {
            throw std::invalid_argument(std::string(coord_name(coord)) + " out of range [0, " +
                                        std::to_string(policy.n.n) + "]");
        }
        seen[static_cast<int>(coord)] = true;
        set_coord(base, coord, value);
    }
    for (bool s : seen) {
        if (!s) {
            throw std::invalid_argument("fixed + free axes must cover all six coordinates");
        }
    }

    const int m = policy.n.m();
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(m),
                                       std::vector<int>(static_cast<std::size_t>(m), 0));
    for (int b = 0; b < m; ++b) {
        for (int a = 0; a < m; ++a) {
            State s = base;
            set_coord(s, free_a, a);
            set_coord(s, free_b, b);
            const Action act = policy.at(s);
            grid[b][a] = component == ActionComponent::alpha ? act.alpha : act.beta;
        }
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {
constexpr const char* kPolicyMagic = "relay-aoi-policy v1";
constexpr int kCodesPerLine = 64;
}  // namespace

void save_policy(const PolicyTable& policy, const PolicyFileMeta& meta,
                 const std::string& path) {
    check_policy_shape(policy);
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open policy file for writing: " + path);
    }
    out << kPolicyMagic << "\n";
    out << "n " << policy.n.n << "\n";
    out << "lambda " << fmt_exact(meta.lambda) << "\n";
    out << "mu1 " << fmt_exact(meta.params.mu1) << "\n";
    out << "mu2 " << fmt_exact(meta.params.mu2) << "\n";
    out << "p " << fmt_exact(meta.params.p) << "\n";
    out << "q " << fmt_exact(meta.params.q) << "\n";
    out << "gamma_max " << fmt_exact(meta.params.gamma_max) << "\n";
    out << "params_hash " << params_fingerprint(meta.params) << "\n";
    out << "actions " << policy.actions.size() << "\n";
    for (std::size_t i = 0; i < policy.actions.size(); ++i) {
        out << static_cast<int>(policy.actions[i]);
        out << ((i % kCodesPerLine == kCodesPerLine - 1 || i + 1 == policy.actions.size())
                    ? '\n'
                    : ' ');
    }
    if (!out) {
        throw std::runtime_error("failed writing policy file: " + path);
    }
}

namespace {

std::string expect_key(std::ifstream& in, const std::string& key) {
    std::string k, v;
    if (!(in >> k >> v) || k != key) {
        throw std::runtime_error("malformed policy file: expected '" + key + "' entry");
    }
    return v;
}

}  // namespace

LoadedPolicy load_policy(const std::string& path, int expect_n) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open policy file: " + path);
    }
    std::string magic;
    std::getline(in, magic);
    if (magic != kPolicyMagic) {
        throw std::runtime_error("not a relay-aoi policy file: " + path);
    }
    const int n = std::stoi(expect_key(in, "n"));
    LoadedPolicy loaded{PolicyTable{TruncationLevel{n}, {}}, {}};
    loaded.meta.lambda = std::stod(expect_key(in, "lambda"));
    loaded.meta.params.mu1 = std::stod(expect_key(in, "mu1"));
    loaded.meta.params.mu2 = std::stod(expect_key(in, "mu2"));
    loaded.meta.params.p = std::stod(expect_key(in, "p"));
    loaded.meta.params.q = std::stod(expect_key(in, "q"));
    loaded.meta.params.gamma_max = std::stod(expect_key(in, "gamma_max"));
    const std::string hash = expect_key(in, "params_hash");
    if (hash != params_fingerprint(loaded.meta.params)) {
        throw std::runtime_error("policy file parameter hash mismatch: " + path);
    }
    const long long count = std::stoll(expect_key(in, "actions"));
    if (count != loaded.table.n.m6()) {
        throw std::runtime_error("policy file action count does not match its cap: " + path);
    }
    if (expect_n >= 0 && n != expect_n) {
        throw std::runtime_error("policy file cap N=" + std::to_string(n) +
                                 " does not match expected N=" + std::to_string(expect_n));
    }
    loaded.table.actions.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        int code;
        if (!(in >> code)) {
            throw std::runtime_error("truncated policy file: " + path);
        }
        if (code < 0 || code >= kActionCount) {
            throw std::runtime_error("invalid action code in policy file: " + path);
        }
        loaded.table.actions.push_back(static_cast<std::uint8_t>(code));
    }
    return loaded;
}

}  // namespace relay

#include "relay/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "relay/util.hpp"

namespace relay {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad integer '" + value + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    const auto range = text.find("..");
    if (range != std::string::npos) {
        const std::int64_t lo = to_int("seeds", trim(text.substr(0, range)));
        const std::int64_t hi = to_int("seeds", trim(text.substr(range + 2)));
        if (lo < 0 || hi < lo) {
            throw std::invalid_argument("bad seed range: " + text);
        }
        for (std::int64_t s = lo; s <= hi; ++s) {
            seeds.push_back(static_cast<std::uint64_t>(s));
        }
        return seeds;
    }
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) {
            continue;
        }
        const std::int64_t v = to_int("seeds", item);
        if (v < 0) {
            throw std::invalid_argument("seeds must be nonnegative");
        }
        seeds.push_back(static_cast<std::uint64_t>(v));
    }
    return seeds;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) {
            continue;
        }
        out.push_back(to_double("list", item));
    }
    return out;
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        cfg.seeds.push_back(s);
    }
    const char* dir = std::getenv("RELAY_AOI_OUT_DIR");
    cfg.out_dir = dir != nullptr ? dir : ".";
    return cfg;
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "params.mu1") {
        cfg.params.mu1 = to_double(key, value);
    } else if (key == "params.mu2") {
        cfg.params.mu2 = to_double(key, value);
    } else if (key == "params.p") {
        cfg.params.p = to_double(key, value);
    } else if (key == "params.q") {
        cfg.params.q = to_double(key, value);
    } else if (key == "params.gamma_max") {
        cfg.params.gamma_max = to_double(key, value);
    } else if (key == "solver.n") {
        cfg.solver.n = TruncationLevel{static_cast<int>(to_int(key, value))};
    } else if (key == "solver.epsilon") {
        cfg.solver.epsilon = to_double(key, value);
    } else if (key == "solver.zeta") {
        cfg.solver.zeta = to_double(key, value);
    } else if (key == "solver.lambda_minus") {
        cfg.solver.lambda_minus_init = to_double(key, value);
    } else if (key == "solver.lambda_plus") {
        cfg.solver.lambda_plus_init = to_double(key, value);
    } else if (key == "solver.max_rvi_iters") {
        cfg.solver.max_rvi_iters = to_int(key, value);
    } else if (key == "sim.horizon") {
        cfg.horizon = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "sim.seeds") {
        cfg.seeds = parse_seed_list(value);
    } else if (key == "sweep.gamma_max") {
        cfg.sweep_gammas = parse_double_list(value);
    } else if (key == "output.dir") {
        cfg.out_dir = value;
    } else if (key == "output.prefix") {
        cfg.out_prefix = value;
    } else {
        throw std::invalid_argument("unknown config key: " + key);
    }
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    ExperimentConfig cfg = default_config();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        }
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void ExperimentConfig::validate() const {
    params.validate();
    solver.validate();
    if (horizon < 1) {
        throw std::invalid_argument("sim.horizon must be >= 1");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("sim.seeds must not be empty");
    }
}

std::string ExperimentConfig::canonical() const {
    std::string out;
    out += "params.mu1=" + fmt_exact(params.mu1) + "\n";
    out += "params.mu2=" + fmt_exact(params.mu2) + "\n";
    out += "params.p=" + fmt_exact(params.p) + "\n";
    out += "params.q=" + fmt_exact(params.q) + "\n";
    out += "params.gamma_max=" + fmt_exact(params.gamma_max) + "\n";
    out += "solver.n=" + std::to_string(solver.n.n) + "\n";
    out += "solver.epsilon=" + fmt_exact(solver.epsilon) + "\n";
    out += "solver.zeta=" + fmt_exact(solver.zeta) + "\n";
    out += "solver.lambda_minus=" + fmt_exact(solver.lambda_minus_init) + "\n";
    out += "solver.lambda_plus=" + fmt_exact(solver.lambda_plus_init) + "\n";
    out += "solver.max_rvi_iters=" + std::to_string(solver.max_rvi_iters) + "\n";
    out += "sim.horizon=" + std::to_string(horizon) + "\n";
    out += "sim.seeds=";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        out += (i > 0 ? "," : "") + std::to_string(seeds[i]);
    }
    out += "\nsweep.gamma_max=";
    for (std::size_t i = 0; i < sweep_gammas.size(); ++i) {
        out += (i > 0 ? "," : "") + fmt_exact(sweep_gammas[i]);
    }
    out += "\n";
    return out;
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(canonical())); }

}  // namespace relay

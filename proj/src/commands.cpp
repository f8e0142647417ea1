#include "relay/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "relay/evaluate.hpp"
#include "relay/sim.hpp"
#include "relay/util.hpp"

namespace relay {

namespace {

std::string output_path(const ExperimentConfig& cfg, const std::string& suffix) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / (cfg.out_prefix + "." + suffix)).string();
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n') {
            c = ';';
        }
    }
    return text;
}

struct RunningStats {
    double sum = 0.0;
    double sumsq = 0.0;
    std::size_t count = 0;

    void add(double v) {
        sum += v;
        sumsq += v * v;
        ++count;
    }
    double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }
    double stderr_mean() const {
        if (count < 2) {
            return 0.0;
        }
        const double k = static_cast<double>(count);
        const double var = std::max(0.0, (sumsq - sum * sum / k) / (k - 1.0));
        return std::sqrt(var / k);
    }
};

}  // namespace

SolveArtifacts cmd_solve(const ExperimentConfig& cfg) {
    cfg.validate();

    const auto start = std::chrono::steady_clock::now();
    SolveArtifacts art;
    art.solution = bisection_solve(cfg.params, cfg.solver);
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const CmdpSolution& sol = art.solution;

    art.policy_plus_path = output_path(cfg, "policy_plus.txt");
    art.policy_minus_path = output_path(cfg, "policy_minus.txt");
    save_policy(sol.policy_plus, PolicyFileMeta{sol.lambda_plus, cfg.params},
                art.policy_plus_path);
    save_policy(sol.policy_minus, PolicyFileMeta{sol.lambda_minus, cfg.params},
                art.policy_minus_path);

    art.summary_path = output_path(cfg, "solve.csv");
    std::ofstream out = open_csv(art.summary_path);
    out << "# relay-aoi solve\n";
    out << "# config_hash=" << cfg.hash() << "\n";
    out << "# params_hash=" << params_fingerprint(cfg.params) << "\n";
    out << "lambda_minus,lambda_plus,j_minus,j_plus,d_minus,d_plus,eta,j_mix,"
           "slack_at_zero,bisection_iterations,rvi_iterations_total,"
           "lambda_plus_doublings,all_rvi_converged,wall_time_s\n";
    out << fmt_g(sol.lambda_minus) << ',' << fmt_g(sol.lambda_plus) << ','
        << fmt_g(sol.eval_minus.avg_aoi) << ',' << fmt_g(sol.eval_plus.avg_aoi) << ','
        << fmt_g(sol.eval_minus.avg_transmissions) << ','
        << fmt_g(sol.eval_plus.avg_transmissions) << ',' << fmt_g(sol.eta) << ','
        << fmt_g(sol.j_mix) << ',' << (sol.slack_at_zero ? 1 : 0) << ','
        << sol.bisection_iterations << ',' << sol.rvi_iterations_total << ','
        << sol.lambda_plus_doublings << ',' << (sol.all_rvi_converged ? 1 : 0) << ','
        << fmt_g(wall_s) << "\n";
    return art;
}

std::string cmd_simulate(const ExperimentConfig& cfg, const std::string& policy_spec) {
    cfg.validate();

    std::unique_ptr<PolicyExecutor> executor;
    bool have_exact = false;
    double exact_j = 0.0;
    double exact_d = 0.0;
    if (policy_spec == "greedy") {
        executor = std::make_unique<GreedyExecutor>(cfg.params.gamma_max);
    } else if (policy_spec == "idle") {
        executor = std::make_unique<IdleExecutor>();
    } else {
        LoadedPolicy loaded = load_policy(policy_spec);
        const SystemParams& fp = loaded.meta.params;
        if (fp.mu1 != cfg.params.mu1 || fp.mu2 != cfg.params.mu2 || fp.p != cfg.params.p ||
            fp.q != cfg.params.q) {
            throw std::runtime_error(
                "policy file was solved under different system parameters than the "
                "configured ones: " + policy_spec);
        }
        const PolicyEvaluation eval =
            evaluate_policy_exact(loaded.table, cfg.params, loaded.table.n);
        have_exact = true;
        exact_j = eval.avg_aoi;
        exact_d = eval.avg_transmissions;
        executor = std::make_unique<TableExecutor>(std::move(loaded.table));
    }

    const std::string path = output_path(cfg, "simulate.csv");
    std::ofstream out = open_csv(path);
    out << "# relay-aoi simulate policy=" << sanitize(policy_spec) << "\n";
    out << "# config_hash=" << cfg.hash() << "\n";
    out << "seed,horizon,avg_sum_aoi,avg_transmissions,aoi_source1,aoi_source2,"
           "unbounded_trend,exact_j,exact_d\n";

    RunningStats aoi, tx, aoi1, aoi2;
    for (std::uint64_t seed : cfg.seeds) {
        const SimMetrics m = run_simulation(*executor, cfg.params, cfg.horizon, seed);
        aoi.add(m.avg_sum_aoi);
        tx.add(m.avg_transmissions);
        aoi1.add(m.per_source_aoi.first);
        aoi2.add(m.per_source_aoi.second);
        out << seed << ',' << m.horizon << ',' << fmt_g(m.avg_sum_aoi) << ','
            << fmt_g(m.avg_transmissions) << ',' << fmt_g(m.per_source_aoi.first) << ','
            << fmt_g(m.per_source_aoi.second) << ',' << (m.unbounded_trend ? 1 : 0) << ',';
        if (have_exact) {
            out << fmt_g(exact_j) << ',' << fmt_g(exact_d);
        } else {
            out << ',';
        }
        out << "\n";
    }
    out << "mean," << cfg.horizon << ',' << fmt_g(aoi.mean()) << ',' << fmt_g(tx.mean()) << ','
        << fmt_g(aoi1.mean()) << ',' << fmt_g(aoi2.mean()) << ",,";
    if (have_exact) {
        out << fmt_g(exact_j) << ',' << fmt_g(exact_d);
    } else {
        out << ',';
    }
    out << "\n";
    out << "stderr,," << fmt_g(aoi.stderr_mean()) << ',' << fmt_g(tx.stderr_mean()) << ','
        << fmt_g(aoi1.stderr_mean()) << ',' << fmt_g(aoi2.stderr_mean()) << ",,,\n";
    return path;
}

std::string cmd_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.sweep_gammas.empty()) {
        throw std::invalid_argument("sweep.gamma_max must list at least one budget");
    }

    const std::string path = output_path(cfg, "sweep.csv");
    std::ofstream out = open_csv(path);
    out << "# relay-aoi sweep\n";
    out << "# config_hash=" << cfg.hash() << "\n";
    out << "gamma_max,method,aaoi,avg_transmissions,lambda_minus,lambda_plus,eta,seeds,"
           "status\n";

    const auto simulate_mean = [&](PolicyExecutor& exec, const SystemParams& params,
                                   RunningStats& aoi, RunningStats& tx) {
        for (std::uint64_t seed : cfg.seeds) {
            const SimMetrics m = run_simulation(exec, params, cfg.horizon, seed);
            aoi.add(m.avg_sum_aoi);
            tx.add(m.avg_transmissions);
        }
    };

    // Generate-at-will benchmark: budget released, every slot has a fresh
    // packet, greedy scheduling. Independent of the swept budget.
    SystemParams lb_params = cfg.params;
    lb_params.mu1 = 1.0;
    lb_params.mu2 = 1.0;
    lb_params.gamma_max = 2.0;
    RunningStats lb_aoi, lb_tx;
    {
        GreedyExecutor lb_exec(lb_params.gamma_max);
        simulate_mean(lb_exec, lb_params, lb_aoi, lb_tx);
    }

    for (double gamma : cfg.sweep_gammas) {
        SystemParams point_params = cfg.params;
        point_params.gamma_max = gamma;

        try {
            const CmdpSolution sol = bisection_solve(point_params, cfg.solver);
            const double mix_tx = sol.eta * sol.eval_plus.avg_transmissions +
                                  (1.0 - sol.eta) * sol.eval_minus.avg_transmissions;
            out << fmt_g(gamma) << ",Deter," << fmt_g(sol.eval_plus.avg_aoi) << ','
                << fmt_g(sol.eval_plus.avg_transmissions) << ',' << fmt_g(sol.lambda_minus)
                << ',' << fmt_g(sol.lambda_plus) << ',' << fmt_g(sol.eta) << ",,ok\n";
            out << fmt_g(gamma) << ",Mix," << fmt_g(sol.j_mix) << ',' << fmt_g(mix_tx) << ','
                << fmt_g(sol.lambda_minus) << ',' << fmt_g(sol.lambda_plus) << ','
                << fmt_g(sol.eta) << ",,ok\n";
        } catch (const std::exception& e) {
            out << fmt_g(gamma) << ",Deter,,,,,,," << sanitize(e.what()) << "\n";
            out << fmt_g(gamma) << ",Mix,,,,,,," << sanitize(e.what()) << "\n";
        }

        try {
            GreedyExecutor greedy(gamma);
            RunningStats g_aoi, g_tx;
            simulate_mean(greedy, point_params, g_aoi, g_tx);
            out << fmt_g(gamma) << ",Greedy," << fmt_g(g_aoi.mean()) << ','
                << fmt_g(g_tx.mean()) << ",,,," << cfg.seeds.size() << ",ok\n";
        } catch (const std::exception& e) {
            out << fmt_g(gamma) << ",Greedy,,,,,," << cfg.seeds.size() << ','
                << sanitize(e.what()) << "\n";
        }

        out << fmt_g(gamma) << ",LowerBound," << fmt_g(lb_aoi.mean()) << ','
            << fmt_g(lb_tx.mean()) << ",,,," << cfg.seeds.size() << ",ok\n";
    }
    return path;
}

std::vector<std::pair<Coord, int>> parse_fixed_assignment(const std::string& text) {
    std::vector<std::pair<Coord, int>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string item = text.substr(pos, end - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("bad fixed-coordinate assignment: " + item);
        }
        const Coord coord = coord_from_name(item.substr(0, eq));
        int value = 0;
        try {
            value = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad fixed-coordinate value in: " + item);
        }
        out.emplace_back(coord, value);
        pos = end + 1;
    }
    return out;
}

std::string cmd_inspect(const ExperimentConfig& cfg, const std::string& policy_path,
                        const SliceSpec& spec) {
    const LoadedPolicy loaded = load_policy(policy_path);
    const auto grid = policy_slice(loaded.table, spec.fixed, spec.free_a, spec.free_b,
                                   spec.component);
    const auto reports = verify_switching(loaded.table);

    const std::string path = output_path(cfg, "inspect.csv");
    std::ofstream out = open_csv(path);
    out << "# relay-aoi inspect policy=" << sanitize(policy_path) << "\n";
    out << "# config_hash=" << cfg.hash() << "\n";
    out << "# n=" << loaded.table.n.n << " lambda=" << fmt_g(loaded.meta.lambda) << "\n";
    // Fixed coordinates reported in display order (theta1,theta2,x1,x2,y1,y2).
    out << "# fixed:";
    for (Coord c : {Coord::theta1, Coord::theta2, Coord::x1, Coord::x2, Coord::y1, Coord::y2}) {
        for (const auto& [coord, value] : spec.fixed) {
            if (coord == c) {
                out << ' ' << coord_name(c) << '=' << value;
            }
        }
    }
    out << "\n";
    out << "# component=" << (spec.component == ActionComponent::alpha ? "alpha" : "beta")
        << " free=" << coord_name(spec.free_a) << ',' << coord_name(spec.free_b) << "\n";
    for (const auto& report : reports) {
        out << "# switching y" << report.source << ": violations=" << report.violations.size()
            << "\n";
    }

    out << coord_name(spec.free_b);
    const int m = loaded.table.n.m();
    for (int a = 0; a < m; ++a) {
        out << ',' << coord_name(spec.free_a) << '=' << a;
    }
    out << "\n";
    for (int b = 0; b < m; ++b) {
        out << b;
        for (int a = 0; a < m; ++a) {
            out << ',' << grid[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
        }
        out << "\n";
    }
    return path;
}

}  // namespace relay

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "relay/commands.hpp"
#include "relay/config.hpp"
#include "relay/simd_kernels.hpp"
#include "relay/util.hpp"

namespace {

struct CliOverrides {
    std::vector<std::pair<std::string, std::string>> entries;

    void bind(CLI::App* app, const std::string& flag, const std::string& key,
              const std::string& help) {
        app->add_option_function<std::string>(
               flag,
               [this, key](const std::string& value) { entries.emplace_back(key, value); },
               help)
            ->expected(1);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-optimal transmission scheduling for a two-source buffer-aided "
                 "relay under an average resource budget: solver, simulator, and "
                 "benchmark sweeps."};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides overrides;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        overrides.bind(sub, "--mu1", "params.mu1", "arrival rate of source 1");
        overrides.bind(sub, "--mu2", "params.mu2", "arrival rate of source 2");
        overrides.bind(sub, "--p", "params.p", "Tx->R success probability");
        overrides.bind(sub, "--q", "params.q", "R->D success probability");
        overrides.bind(sub, "--gamma-max", "params.gamma_max", "average transmission budget");
        overrides.bind(sub, "--n", "solver.n", "age cap N");
        overrides.bind(sub, "--epsilon", "solver.epsilon", "value-iteration threshold");
        overrides.bind(sub, "--zeta", "solver.zeta", "bisection width threshold");
        overrides.bind(sub, "--lambda-plus", "solver.lambda_plus", "initial upper multiplier");
        overrides.bind(sub, "--lambda-minus", "solver.lambda_minus",
                       "initial lower multiplier");
        overrides.bind(sub, "--max-rvi-iters", "solver.max_rvi_iters",
                       "iteration cap per RVI solve");
        overrides.bind(sub, "--horizon", "sim.horizon", "simulation slots per run");
        overrides.bind(sub, "--seeds", "sim.seeds", "seed list, e.g. 1,2,3 or 1..20");
        overrides.bind(sub, "--sweep", "sweep.gamma_max", "budget list for sweeps");
        overrides.bind(sub, "--out-dir", "output.dir", "output directory");
        overrides.bind(sub, "--out-prefix", "output.prefix", "output file prefix");
    };

    CLI::App* solve = app.add_subcommand("solve", "design the scheduling policy");
    add_common(solve);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of a policy");
    add_common(simulate);
    std::string policy_spec;
    simulate->add_option("--policy", policy_spec, "policy file, or builtin: greedy, idle")
        ->required();

    CLI::App* sweep = app.add_subcommand("sweep", "compare methods across budgets");
    add_common(sweep);

    CLI::App* inspect = app.add_subcommand("inspect", "slice a policy file");
    add_common(inspect);
    std::string inspect_policy;
    std::string fix_text;
    std::string free_text = "y1,y2";
    std::string component_text = "beta";
    inspect->add_option("--policy", inspect_policy, "policy file to slice")->required();
    inspect->add_option("--fix", fix_text, "four fixed coordinates, e.g. theta1=1,theta2=1,x1=2,x2=0")
        ->required();
    inspect->add_option("--free", free_text, "two free coordinates, e.g. y1,y2");
    inspect->add_option("--component", component_text, "action component: alpha or beta");

    CLI11_PARSE(app, argc, argv);

    try {
        relay::ExperimentConfig cfg = config_path.empty()
                                          ? relay::default_config()
                                          : relay::load_config_file(config_path);
        for (const auto& [key, value] : overrides.entries) {
            relay::apply_config_entry(cfg, key, value);
        }
        cfg.validate();

        if (solve->parsed()) {
            const relay::SolveArtifacts art = relay::cmd_solve(cfg);
            const relay::CmdpSolution& sol = art.solution;
            std::cout << "simd backend: " << relay::simd::active_backend() << "\n";
            if (sol.slack_at_zero) {
                std::cout << "constraint slack at lambda=0; budget already met\n";
            }
            if (!sol.all_rvi_converged) {
                std::cout << "warning: at least one RVI solve hit its iteration cap\n";
            }
            std::cout << "lambda bracket: [" << relay::fmt_g(sol.lambda_minus) << ", "
                      << relay::fmt_g(sol.lambda_plus) << "]\n"
                      << "J(policy_plus)=" << relay::fmt_g(sol.eval_plus.avg_aoi)
                      << " D(policy_plus)=" << relay::fmt_g(sol.eval_plus.avg_transmissions)
                      << " eta=" << relay::fmt_g(sol.eta)
                      << " J_mix=" << relay::fmt_g(sol.j_mix) << "\n"
                      << "wrote " << art.summary_path << "\n"
                      << "wrote " << art.policy_plus_path << "\n"
                      << "wrote " << art.policy_minus_path << "\n";
        } else if (simulate->parsed()) {
            std::cout << "wrote " << relay::cmd_simulate(cfg, policy_spec) << "\n";
        } else if (sweep->parsed()) {
            std::cout << "wrote " << relay::cmd_sweep(cfg) << "\n";
        } else if (inspect->parsed()) {
            relay::SliceSpec spec;
            spec.fixed = relay::parse_fixed_assignment(fix_text);
            const auto free_coords = [&] {
                const auto comma = free_text.find(',');
                if (comma == std::string::npos) {
                    throw std::invalid_argument("--free needs two coordinates");
                }
                return std::pair{relay::coord_from_name(free_text.substr(0, comma)),
                                 relay::coord_from_name(free_text.substr(comma + 1))};
            }();
            spec.free_a = free_coords.first;
            spec.free_b = free_coords.second;
            if (component_text == "alpha") {
                spec.component = relay::ActionComponent::alpha;
            } else if (component_text == "beta") {
                spec.component = relay::ActionComponent::beta;
            } else {
                throw std::invalid_argument("--component must be alpha or beta");
            }
            std::cout << "wrote " << relay::cmd_inspect(cfg, inspect_policy, spec) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

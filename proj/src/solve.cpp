#include "relay/solve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace relay {

double mixing_factor(double d_minus, double d_plus, double gamma_max) {
    if (!(d_plus <= gamma_max && gamma_max <= d_minus)) {
        throw std::invalid_argument(
            "mixing_factor requires d_plus <= gamma_max <= d_minus");
    }
    if (d_minus == d_plus) {
        return 1.0;
    }
    const double eta = (gamma_max - d_minus) / (d_plus - d_minus);
    return std::clamp(eta, 0.0, 1.0);
}

double mixed_value(double j_minus, double j_plus, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in [0, 1]");
    }
    return eta * j_plus + (1.0 - eta) * j_minus;
}

namespace {
constexpr double kLambdaCap = 1048576.0;  // 2^20
}

CmdpSolution bisection_solve(const SystemParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();
    const FactoredKernel kernel(params, cfg.n);

    CmdpSolution out;

    struct Probe {
        RviSolution rvi;
        PolicyEvaluation eval;
    };
    std::map<double, Probe> cache;
    auto solve_at = [&](double lambda) -> const Probe& {
        auto it = cache.find(lambda);
        if (it == cache.end()) {
            Probe probe;
            probe.rvi = rvi_solve(kernel, cfg, lambda);
            probe.eval = evaluate_policy_exact(kernel, probe.rvi.policy);
            out.rvi_iterations_total += probe.rvi.iterations;
            out.all_rvi_converged = out.all_rvi_converged && probe.rvi.converged;
            probe.rvi.h.clear();  // not needed past extraction
            probe.rvi.h.shrink_to_fit();
            it = cache.emplace(lambda, std::move(probe)).first;
        }
        return it->second;
    };

    // Budget already slack at the lower endpoint: no relaxation needed.
    const Probe& at_zero = solve_at(cfg.lambda_minus_init);
    if (at_zero.eval.avg_transmissions <= params.gamma_max) {
        out.slack_at_zero = true;
        out.lambda_minus = out.lambda_plus = cfg.lambda_minus_init;
        out.policy_minus = out.policy_plus = at_zero.rvi.policy;
        out.eval_minus = out.eval_plus = at_zero.eval;
        out.eta = 1.0;
        out.j_mix = at_zero.eval.avg_aoi;
        return out;
    }

    double lambda_plus = cfg.lambda_plus_init;
    while (solve_at(lambda_plus).eval.avg_transmissions > params.gamma_max) {
        if (lambda_plus >= kLambdaCap) {
            throw std::runtime_error(
                "no feasible policy found while doubling lambda_plus up to 2^20");
        }
        lambda_plus = std::min(lambda_plus * 2.0, kLambdaCap);
        ++out.lambda_plus_doublings;
    }
    double lambda_minus = cfg.lambda_minus_init;

    while (lambda_plus - lambda_minus >= cfg.zeta) {
        const double lambda_bis = 0.5 * (lambda_plus + lambda_minus);
        const Probe& probe = solve_at(lambda_bis);
        if (probe.eval.avg_transmissions >= params.gamma_max) {
            lambda_minus = lambda_bis;
        } else {
            lambda_plus = lambda_bis;
        }
        ++out.bisection_iterations;
    }

    const Probe& plus = solve_at(lambda_plus);
    const Probe& minus = solve_at(lambda_minus);
    out.lambda_minus = lambda_minus;
    out.lambda_plus = lambda_plus;
    out.policy_minus = minus.rvi.policy;
    out.policy_plus = plus.rvi.policy;
    out.eval_minus = minus.eval;
    out.eval_plus = plus.eval;
    out.eta = mixing_factor(minus.eval.avg_transmissions, plus.eval.avg_transmissions,
                            params.gamma_max);
    out.j_mix = mixed_value(minus.eval.avg_aoi, plus.eval.avg_aoi, out.eta);
    return out;
}

}  // namespace relay

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecr/harness/dataset.hpp"
#include "ecr/harness/metrics.hpp"
#include "ecr/harness/parallel.hpp"
#include "ecr/harness/policies.hpp"

namespace ecr::harness {

inline const std::vector<double>& default_alphas() {
    static const std::vector<double> a{0.0, 0.3, 0.5};
    return a;
}

inline const std::vector<double>& default_lambda_grid() {
    static const std::vector<double> l{0.0, 0.01, 0.025, 0.05, 0.1};
    return l;
}

inline constexpr std::size_t kBaselineBudget = 10;

struct AblationRow {
    std::string policy;  // "baseline" or "ecr"
    double alpha = 0.0;
    double lambda = 0.0;
    std::size_t cases = 0;
    double ambiguity_exposure = 0.0;
    double overconfident_error = 0.0;
    double mean_h = 0.0;
    double mean_claims = 0.0;
    std::map<std::string, std::size_t> stop_reasons;

    bool operator==(const AblationRow&) const = default;

    /// Same outcome columns, ignoring the (alpha, lambda) labels.
    bool same_outcome(const AblationRow& o) const {
        return policy == o.policy && cases == o.cases && ambiguity_exposure == o.ambiguity_exposure &&
               overconfident_error == o.overconfident_error && mean_h == o.mean_h && mean_claims == o.mean_claims &&
               stop_reasons == o.stop_reasons;
    }
};

/// A run is exposed when it declines to emit a dominant hypothesis.
inline AblationRow summarize_ablation(std::string policy, double alpha, double lambda,
                                      const std::vector<CaseResult>& results, const std::vector<EvalCase>& cases) {
    AblationRow row{std::move(policy), alpha, lambda, results.size(), 0.0, 0.0, 0.0, 0.0, {}};
    if (results.empty()) return row;
    std::size_t exposed = 0, wrong = 0;
    std::vector<double> hs, claims;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.dominant) {
            ++exposed;
        } else if (*r.dominant != cases[i].ground_truth) {
            ++wrong;
        }
        hs.push_back(r.final_entropy);
        claims.push_back(static_cast<double>(r.claims_evaluated));
        ++row.stop_reasons[r.stop_reason];
    }
    const auto n = static_cast<double>(results.size());
    row.ambiguity_exposure = static_cast<double>(exposed) / n;
    row.overconfident_error = static_cast<double>(wrong) / n;
    row.mean_h = mean_std(hs).mean;
    row.mean_claims = mean_std(claims).mean;
    return row;
}

inline std::vector<EvalCase> inject_all(const std::vector<EvalCase>& cases, double alpha) {
    std::vector<EvalCase> out;
    out.reserve(cases.size());
    for (const auto& c : cases) out.push_back(inject_contradictions(c, alpha));
    return out;
}

/// ECR on contradiction-injected pools with the budget raised to the pool size.
inline std::vector<CaseResult> run_ecr_injected(const std::vector<EvalCase>& injected, double lambda,
                                                const HarnessConfig& cfg, std::size_t jobs) {
    return parallel_map(injected.size(), jobs, [&](std::size_t i) {
        ECRConfig ecfg = cfg.ecr;
        ecfg.lambda = lambda;
        ecfg.max_iterations = static_cast<int>(injected[i].candidates.size());
        return evaluate_ecr(injected[i], ecfg);
    });
}

/// Fixed-budget baseline that always emits its top hypothesis.
inline std::vector<CaseResult> run_baseline_injected(const std::vector<EvalCase>& injected, const HarnessConfig& cfg,
                                                     std::size_t jobs) {
    return parallel_map(injected.size(), jobs, [&](std::size_t i) {
        return evaluate_fixed(injected[i], top_by_retrieval(injected[i], kBaselineBudget), kBaselineBudget, cfg.ecr,
                              "baseline", true);
    });
}

/// One baseline row and one ECR row per alpha.
inline std::vector<AblationRow> run_contradiction_ablation(const std::vector<EvalCase>& cases,
                                                           const std::vector<double>& alphas, double lambda,
                                                           const HarnessConfig& cfg = {}, std::size_t jobs = 1) {
    validate(cfg);
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    std::vector<AblationRow> rows;
    for (double alpha : alphas) {
        const auto injected = inject_all(cases, alpha);
        rows.push_back(summarize_ablation("baseline", alpha, lambda, run_baseline_injected(injected, cfg, jobs), cases));
        rows.push_back(summarize_ablation("ecr", alpha, lambda, run_ecr_injected(injected, lambda, cfg, jobs), cases));
    }
    return rows;
}

/// ECR rows over the lambda x alpha grid, lambda-major.
inline std::vector<AblationRow> run_lambda_sweep(const std::vector<EvalCase>& cases, const std::vector<double>& lambdas,
                                                 const std::vector<double>& alphas, const HarnessConfig& cfg = {},
                                                 std::size_t jobs = 1) {
    validate(cfg);
    std::vector<std::vector<EvalCase>> injected;
    for (double alpha : alphas) injected.push_back(inject_all(cases, alpha));
    std::vector<AblationRow> rows;
    for (double lambda : lambdas) {
        if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
        for (std::size_t a = 0; a < alphas.size(); ++a)
            rows.push_back(
                summarize_ablation("ecr", alphas[a], lambda, run_ecr_injected(injected[a], lambda, cfg, jobs), cases));
    }
    return rows;
}

}  // namespace ecr::harness

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecr/harness/dataset.hpp"
#include "ecr/harness/rng.hpp"
#include "ecr/ranking.hpp"
#include "ecr/resolver.hpp"
#include "ecr/trigger.hpp"
#include "ecr/vector_index.hpp"

namespace ecr::harness {

enum class PolicyKind { retrieval_only, ecr, random };

inline const char* to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::retrieval_only: return "retrieval_only";
        case PolicyKind::ecr: return "ecr";
        case PolicyKind::random: return "random";
    }
    return "unknown";
}

inline PolicyKind parse_policy(const std::string& name) {
    if (name == "retrieval_only" || name == "retrieval") return PolicyKind::retrieval_only;
    if (name == "ecr") return PolicyKind::ecr;
    if (name == "random") return PolicyKind::random;
    throw ConfigError("unknown policy '" + name + "'");
}

inline const std::vector<PolicyKind>& all_policies() {
    static const std::vector<PolicyKind> all{PolicyKind::retrieval_only, PolicyKind::ecr, PolicyKind::random};
    return all;
}

inline constexpr const char* kFixedBudgetStop = "fixed_budget";

struct HarnessConfig {
    ECRConfig ecr{};
    std::size_t retrieval_budget = 15;
    std::size_t random_budget = 5;
    std::size_t embedding_dim = kDefaultEmbeddingDim;
    int rrf_k = kDefaultRrfDamping;
    StrategyWeights strategy_weights{};
    TriggerConfig trigger{};
};

inline void validate(const HarnessConfig& cfg) {
    validate(cfg.ecr, kHypothesisCount);
    if (cfg.retrieval_budget == 0 || cfg.random_budget == 0) throw ConfigError("policy budgets must be >= 1");
    if (cfg.embedding_dim < 8) throw ConfigError("embedding dimension must be >= 8");
    if (cfg.rrf_k < 0) throw ConfigError("rrf_k must be >= 0");
    validate(cfg.strategy_weights);
    if (!(cfg.trigger.variance_threshold >= 0.0)) throw ConfigError("variance threshold must be >= 0");
}

struct CaseResult {
    std::string query_id;
    std::string policy;
    std::size_t claims_evaluated = 0;
    std::vector<double> entropy_trace;  // H0 first
    double final_entropy = 0.0;
    std::size_t collapse_step = 0;
    std::optional<HypothesisId> dominant;
    std::string stop_reason;
    std::vector<ClaimId> selected_claim_ids;
    bool has_unresolved_conflict = false;

    bool operator==(const CaseResult&) const = default;
};

/// First trace index (H0 at index 0) with H <= epsilon, else budget + 1.
inline std::size_t collapse_step(const std::vector<double>& trace, double epsilon, std::size_t budget) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i] <= epsilon) return i;
    }
    return budget + 1;
}

/// Evaluates `order` in sequence with the shared observe/update machinery and
/// no stopping rule. The dominant hypothesis is reported only when the final
/// state is epistemically sufficient, unless `force_dominant` is set.
inline CaseResult evaluate_fixed(const EvalCase& ec, const std::vector<ClaimId>& order, std::size_t budget,
                                 const ECRConfig& cfg, std::string policy, bool force_dominant = false) {
    const auto space = ec.space();
    const auto store = ec.store();
    CaseResult r;
    r.query_id = ec.query_id;
    r.policy = std::move(policy);
    r.stop_reason = kFixedBudgetStop;

    Posterior p = Posterior::uniform(space.size());
    r.entropy_trace.push_back(entropy(p));
    EvaluatedSet evaluated;
    for (const auto& id : order) {
        const Observation obs = observe_truth(id, store);
        p = cfg.observation_mode == ObservationMode::soft
                ? bayes_update_soft(p, id, obs.verification_prob, space, cfg.likelihood)
                : bayes_update(p, id, obs.observed, space, cfg.likelihood);
        evaluated.insert(id);
        r.selected_claim_ids.push_back(id);
        r.entropy_trace.push_back(entropy(p));
    }
    r.claims_evaluated = order.size();
    r.final_entropy = r.entropy_trace.back();
    r.collapse_step = collapse_step(r.entropy_trace, cfg.epsilon, budget);
    r.has_unresolved_conflict = has_conflict(evaluated, store);
    if (force_dominant || epistemic_sufficiency(p, evaluated, store, cfg.epsilon)) r.dominant = space[p.argmax()].id;
    return r;
}

/// Runs ECR on the case's full pool with `cfg`.
inline CaseResult evaluate_ecr(const EvalCase& ec, const ECRConfig& cfg) {
    const auto space = ec.space();
    const auto store = ec.store();
    const auto ids = ec.candidate_ids();
    const auto prior = Posterior::uniform(space.size());
    const ECROutcome out = resolve(ids, space, prior, cfg, store);

    CaseResult r;
    r.query_id = ec.query_id;
    r.policy = to_string(PolicyKind::ecr);
    r.claims_evaluated = out.claims_evaluated();
    r.entropy_trace.push_back(entropy(prior));
    for (const auto& rec : out.trace) {
        r.entropy_trace.push_back(rec.entropy_after);
        r.selected_claim_ids.push_back(rec.claim_id);
    }
    r.final_entropy = entropy(out.posterior);
    r.collapse_step = collapse_step(r.entropy_trace, cfg.epsilon, static_cast<std::size_t>(cfg.max_iterations));
    r.dominant = out.dominant;
    r.stop_reason = to_string(out.stop_reason);
    r.has_unresolved_conflict = out.has_unresolved_conflict;
    return r;
}

/// Top `n` candidates by retrieval score.
inline std::vector<ClaimId> top_by_retrieval(const EvalCase& ec, std::size_t n) {
    auto ids = retrieval_order(ec);
    if (ids.size() > n) ids.resize(n);
    return ids;
}

inline CaseResult run_policy(const EvalCase& ec, PolicyKind policy, std::uint64_t seed, const HarnessConfig& cfg = {}) {
    switch (policy) {
        case PolicyKind::retrieval_only:
            return evaluate_fixed(ec, top_by_retrieval(ec, cfg.retrieval_budget), cfg.retrieval_budget, cfg.ecr,
                                  to_string(policy));
        case PolicyKind::random: {
            Rng rng = Rng::for_key(seed, ec.query_id);
            std::vector<ClaimId> order;
            for (std::size_t i : rng.sample_indices(ec.candidates.size(), cfg.random_budget))
                order.push_back(ec.candidates[i].id);
            return evaluate_fixed(ec, order, cfg.random_budget, cfg.ecr, to_string(policy));
        }
        case PolicyKind::ecr:
            return evaluate_ecr(ec, cfg.ecr);
    }
    throw ConfigError("unknown policy");
}

/// Retrieval-side view of one case: the trigger decision and the competitive
/// scoring of the retrieval, hashed-vector and fused rankings.
struct RetrievalDiagnostics {
    std::string query_id;
    TriggerDecision trigger;
    std::vector<StrategyScore> strategies;
    std::string best_strategy;
};

inline RetrievalDiagnostics retrieval_diagnostics(const EvalCase& ec, const HarnessConfig& cfg = {}) {
    RetrievalDiagnostics d;
    d.query_id = ec.query_id;
    d.trigger = should_trigger_ecr(ec.candidates, ec.query_text, cfg.trigger);

    const auto store = ec.store();
    RankedList by_score{"retrieval", {}};
    VectorIndex index(cfg.embedding_dim);
    for (const auto& c : ec.candidates) {
        by_score.entries.push_back({c.id, c.retrieval_score});
        index.add_text(c.id, c.text);
    }
    sort_ranked(by_score.entries);
    const RankedList by_vector = index.search(embed_text(ec.query_text, cfg.embedding_dim), ec.candidates.size());
    const std::vector<RankedList> lists{by_score, by_vector};
    const RankedList fused = rrf_fuse(lists, cfg.rrf_k);

    for (const RankedList& list : {by_score, by_vector, fused})
        d.strategies.push_back(score_strategy(list, store, cfg.strategy_weights));
    d.best_strategy = best_strategy(d.strategies).strategy;
    return d;
}

}  // namespace ecr::harness

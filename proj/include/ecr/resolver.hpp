#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecr/bayes.hpp"
#include "ecr/claim_store.hpp"
#include "ecr/hypothesis.hpp"
#include "ecr/posterior.hpp"
#include "ecr/selection.hpp"

namespace ecr {

struct ECRConfig {
    double epsilon = 0.3;  // bits
    int max_iterations = 10;
    double lambda = 0.05;
    LikelihoodModel likelihood{};
    ObservationMode observation_mode = ObservationMode::hard_threshold;
};

/// Throws ConfigError unless 0 < epsilon < log2(k), T >= 1, lambda >= 0 and
/// the likelihood table is ordered. `hypotheses == 0` skips the epsilon cap.
inline void validate(const ECRConfig& cfg, std::size_t hypotheses = 0) {
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    if (hypotheses > 0 && !(cfg.epsilon < std::log2(static_cast<double>(hypotheses))))
        throw ConfigError("epsilon must be < log2(|hypotheses|)");
    if (cfg.max_iterations <= 0) throw ConfigError("max_iterations must be >= 1");
    if (!(cfg.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    validate(cfg.likelihood);
}

enum class StopReason { epistemic_sufficiency, unresolved_conflict, candidates_exhausted, max_iterations };

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::epistemic_sufficiency: return "epistemic_sufficiency";
        case StopReason::unresolved_conflict: return "unresolved_conflict";
        case StopReason::candidates_exhausted: return "candidates_exhausted";
        case StopReason::max_iterations: return "max_iterations";
    }
    return "unknown";
}

struct EvaluationRecord {
    int step = 0;
    ClaimId claim_id;
    double verification_prob = 0.0;
    bool observed = false;
    double entropy_after = 0.0;
    double score = 0.0;
    bool conflict_bonus_applied = false;
};

struct ECROutcome {
    StopReason stop_reason = StopReason::candidates_exhausted;
    std::optional<HypothesisId> dominant;  // set iff stop_reason == epistemic_sufficiency
    Posterior posterior;
    std::vector<EvaluationRecord> trace;
    bool has_unresolved_conflict = false;

    std::size_t claims_evaluated() const { return trace.size(); }
};

/// H(p) <= epsilon and no evaluated contradiction pair.
inline bool epistemic_sufficiency(const Posterior& p, const EvaluatedSet& evaluated, const ClaimStoreSnapshot& store,
                                  double epsilon) {
    return entropy(p) <= epsilon && !has_conflict(evaluated, store);
}

/// Sequential entropy-guided claim resolution.
///
/// Each iteration first checks epistemic sufficiency, then selects the
/// candidate maximising eer_proxy + lambda * conflict_potential, observes its
/// truth value from provenance and folds it into the posterior. At most
/// min(T, |candidates|) claims are evaluated. Without sufficiency the run is
/// classified as unresolved_conflict, candidates_exhausted or max_iterations
/// (in that order of precedence) and no dominant hypothesis is emitted.
inline ECROutcome resolve(std::span<const ClaimId> candidates, const HypothesisSpace& space, const Posterior& prior,
                          const ECRConfig& config, const ClaimStoreSnapshot& store) {
    validate(config, space.size());
    if (prior.size() != space.size()) throw ConfigError("resolve: prior/space size mismatch");

    std::vector<ClaimId> pool(candidates.begin(), candidates.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (const auto& id : pool) {
        store.at(id);
        space.support(id);
    }

    ECROutcome out{StopReason::candidates_exhausted, std::nullopt, prior, {}, false};
    EvaluatedSet evaluated;
    bool sufficient = false;

    for (int t = 1; t <= config.max_iterations; ++t) {
        if (epistemic_sufficiency(out.posterior, evaluated, store, config.epsilon)) {
            sufficient = true;
            break;
        }
        if (pool.empty()) break;

        const SelectionContext ctx{space, out.posterior, store, evaluated, config.lambda};
        const ClaimId chosen = select_next(pool, ctx);
        const double score = selection_score(chosen, ctx);
        const bool bonus = config.lambda > 0.0 && conflict_potential(chosen, evaluated, store) == 1;

        const Observation obs = observe_truth(chosen, store);
        out.posterior = config.observation_mode == ObservationMode::soft
                            ? bayes_update_soft(out.posterior, chosen, obs.verification_prob, space, config.likelihood)
                            : bayes_update(out.posterior, chosen, obs.observed, space, config.likelihood);

        pool.erase(std::find(pool.begin(), pool.end(), chosen));
        evaluated.insert(chosen);
        out.trace.push_back({t, chosen, obs.verification_prob, obs.observed, entropy(out.posterior), score, bonus});
    }

    if (!sufficient) sufficient = epistemic_sufficiency(out.posterior, evaluated, store, config.epsilon);
    out.has_unresolved_conflict = has_conflict(evaluated, store);
    if (sufficient) {
        out.stop_reason = StopReason::epistemic_sufficiency;
        out.dominant = space[out.posterior.argmax()].id;
    } else if (out.has_unresolved_conflict) {
        out.stop_reason = StopReason::unresolved_conflict;
    } else if (pool.empty()) {
        out.stop_reason = StopReason::candidates_exhausted;
    } else {
        out.stop_reason = StopReason::max_iterations;
    }
    return out;
}

}  // namespace ecr

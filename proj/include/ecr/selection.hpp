#pragma once

#include <cmath>
#include <set>
#include <span>
#include <vector>

#include "ecr/bayes.hpp"
#include "ecr/claim_store.hpp"
#include "ecr/hypothesis.hpp"
#include "ecr/posterior.hpp"

namespace ecr {

using EvaluatedSet = std::set<ClaimId>;

struct PartitionMass {
    double supporting = 0.0;  // p+
    double opposing = 0.0;    // p-
};

/// Posterior mass on the hypotheses that cite the claim and on the rest.
/// Both sides are summed in hypothesis order, so a claim and its exact
/// complement see mirrored values.
inline PartitionMass partition_mass(const ClaimId& claim, const HypothesisSpace& space, const Posterior& p) {
    const auto& mask = space.support(claim);
    PartitionMass m;
    for (std::size_t a = 0; a < p.size(); ++a) (mask[a] ? m.supporting : m.opposing) += p[a];
    return m;
}

/// Imbalance proxy for expected entropy reduction:
///   |p+ - p-| / (p+ + p-) * H * conf
/// with an explicit zero for partition-trivial claims (their update is the
/// identity, so they carry no information).
inline double eer_proxy(const ClaimId& claim, const HypothesisSpace& space, const Posterior& p, double confidence) {
    if (space.is_partition_trivial(claim)) return 0.0;
    const auto m = partition_mass(claim, space, p);
    const double total = m.supporting + m.opposing;
    if (total <= 0.0) return 0.0;
    return std::abs(m.supporting - m.opposing) / total * entropy(p) * confidence;
}

/// True expected entropy reduction H(p) - E_x[H(p | X_c = x)] under the
/// likelihood model. Kept as a reference against the proxy; the resolver
/// never calls it.
inline double exact_eer(const ClaimId& claim, const HypothesisSpace& space, const Posterior& p,
                        const LikelihoodModel& model = {}) {
    if (space.is_partition_trivial(claim)) return 0.0;
    const auto& mask = space.support(claim);
    double expected_h = 0.0;
    for (bool x : {false, true}) {
        std::vector<double> joint(p.size());
        double px = 0.0;
        for (std::size_t a = 0; a < p.size(); ++a) {
            joint[a] = model.likelihood(x, mask[a]) * p[a];
            px += joint[a];
        }
        if (px <= 0.0) continue;
        for (double& j : joint) j /= px;
        expected_h += px * entropy_bits(joint);
    }
    return entropy(p) - expected_h;
}

/// 1 when the claim's negation partner has already been evaluated.
inline int conflict_potential(const ClaimId& claim, const EvaluatedSet& evaluated, const ClaimStoreSnapshot& store) {
    const Claim& c = store.at(claim);
    return c.negation_of && evaluated.count(*c.negation_of) != 0 ? 1 : 0;
}

/// Both members of some negation pair have been evaluated.
inline bool has_conflict(const EvaluatedSet& evaluated, const ClaimStoreSnapshot& store) {
    for (const auto& id : evaluated) {
        const Claim* c = store.find(id);
        if (c && c->negation_of && evaluated.count(*c->negation_of) != 0) return true;
    }
    return false;
}

/// Everything the coherence-weighted score needs at one step.
struct SelectionContext {
    const HypothesisSpace& space;
    const Posterior& posterior;
    const ClaimStoreSnapshot& store;
    const EvaluatedSet& evaluated;
    double lambda = 0.0;
};

inline double selection_score(const ClaimId& claim, const SelectionContext& ctx) {
    const double proxy = eer_proxy(claim, ctx.space, ctx.posterior, dynamic_confidence(ctx.store.at(claim)));
    return proxy + ctx.lambda * conflict_potential(claim, ctx.evaluated, ctx.store);
}

/// argmax of selection_score; equal scores go to the smaller claim id.
inline ClaimId select_next(std::span<const ClaimId> candidates, const SelectionContext& ctx) {
    if (candidates.empty()) throw ConfigError("select_next: empty candidate set");
    const ClaimId* best = nullptr;
    double best_score = 0.0;
    for (const auto& c : candidates) {
        const double s = selection_score(c, ctx);
        if (!best || s > best_score || (s == best_score && c < *best)) {
            best = &c;
            best_score = s;
        }
    }
    return *best;
}

}  // namespace ecr

#pragma once

#include <vector>

#include "ecr/claim_store.hpp"
#include "ecr/error.hpp"
#include "ecr/hypothesis.hpp"
#include "ecr/posterior.hpp"

namespace ecr {

/// Likelihood table P(X_c = 1 | a): `beta_support` when a cites c,
/// `beta_nonsupport` otherwise.
struct LikelihoodModel {
    double beta_support = 0.7;
    double beta_nonsupport = 0.3;

    double likelihood(bool observed, bool supported) const {
        const double b = supported ? beta_support : beta_nonsupport;
        return observed ? b : 1.0 - b;
    }
};

inline void validate(const LikelihoodModel& m) {
    if (!(0.0 < m.beta_nonsupport && m.beta_nonsupport < m.beta_support && m.beta_support < 1.0))
        throw ConfigError("likelihood model requires 0 < beta_nonsupport < beta_support < 1");
}

enum class ObservationMode { hard_threshold, soft };

struct Observation {
    double verification_prob = 0.0;  // P(X_c = 1)
    bool observed = false;           // hard outcome, verification_prob >= 0.5
};

inline Observation observe_truth(const Claim& claim) {
    const double p = truth_estimate(claim);
    return {p, p >= 0.5};
}

inline Observation observe_truth(const ClaimId& id, const ClaimStoreSnapshot& store) {
    return observe_truth(store.at(id));
}

/// Posterior after observing X_c = x. Partition-trivial claims return the
/// prior unchanged (bit for bit).
inline Posterior bayes_update(const Posterior& prior, const ClaimId& claim, bool observed,
                              const HypothesisSpace& space, const LikelihoodModel& model = {}) {
    if (prior.size() != space.size()) throw ConfigError("bayes_update: posterior/space size mismatch");
    if (space.is_partition_trivial(claim)) return prior;
    const auto& mask = space.support(claim);
    std::vector<double> w(prior.size());
    for (std::size_t a = 0; a < w.size(); ++a) w[a] = model.likelihood(observed, mask[a]) * prior[a];
    return Posterior::from_weights(std::move(w));
}

/// Expected-likelihood update: L(a) = q P(X=1|a) + (1-q) P(X=0|a) with
/// q = verification_prob.
inline Posterior bayes_update_soft(const Posterior& prior, const ClaimId& claim, double verification_prob,
                                   const HypothesisSpace& space, const LikelihoodModel& model = {}) {
    if (prior.size() != space.size()) throw ConfigError("bayes_update_soft: posterior/space size mismatch");
    if (space.is_partition_trivial(claim)) return prior;
    const auto& mask = space.support(claim);
    const double q = verification_prob;
    std::vector<double> w(prior.size());
    for (std::size_t a = 0; a < w.size(); ++a) {
        const double l = q * model.likelihood(true, mask[a]) + (1.0 - q) * model.likelihood(false, mask[a]);
        w[a] = l * prior[a];
    }
    return Posterior::from_weights(std::move(w));
}

}  // namespace ecr

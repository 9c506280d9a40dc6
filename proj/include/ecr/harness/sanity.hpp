#pragma once

#include <string>
#include <vector>

#include "ecr/resolver.hpp"

namespace ecr::harness {

/// Minimal two-hypothesis case: claim "c1" backs a1 and its explicit negation
/// "c1-neg" backs a2.
struct SanityCase {
    std::vector<Hypothesis> hypotheses;
    std::vector<Claim> claims;

    HypothesisSpace space() const { return HypothesisSpace::from_claims(hypotheses, claims); }

    ClaimStoreSnapshot store() const {
        ClaimStore s;
        for (const auto& c : claims) {
            Claim copy = c;
            copy.negation_of.reset();
            s.upsert(copy);
        }
        for (const auto& c : claims) {
            if (c.negation_of) s.upsert(c);
        }
        return s.snapshot();
    }

    std::vector<ClaimId> ids() const {
        std::vector<ClaimId> out;
        for (const auto& c : claims) out.push_back(c.id);
        return out;
    }
};

inline SanityCase make_sanity_case(bool linked = true) {
    SanityCase sc;
    sc.hypotheses = {{"a1", "answer one"}, {"a2", "answer two"}};
    Claim c1{"c1", "The report states the answer is one", 0.8, "report", 3, 0, std::nullopt, 0.9, {"a1"}};
    Claim neg{"c1-neg", "It is not the case that the report states the answer is one", 0.8, "report", 0, 3,
              std::nullopt, 0.9, {"a2"}};
    if (linked) {
        c1.negation_of = neg.id;
        neg.negation_of = c1.id;
    }
    sc.claims = {c1, neg};
    return sc;
}

inline ECROutcome run_sanity_case(const SanityCase& sc, const ECRConfig& cfg = {}) {
    const auto space = sc.space();
    const auto ids = sc.ids();
    return resolve(ids, space, Posterior::uniform(space.size()), cfg, sc.store());
}

/// Passes when both claims are evaluated, the pair is flagged as an
/// unresolved conflict and no dominant hypothesis is emitted.
inline bool conflict_sanity_test(const ECRConfig& cfg = {}) {
    const auto out = run_sanity_case(make_sanity_case(), cfg);
    return out.claims_evaluated() == 2 && out.has_unresolved_conflict && !out.dominant &&
           out.stop_reason == StopReason::unresolved_conflict;
}

}  // namespace ecr::harness

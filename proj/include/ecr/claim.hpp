#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace ecr {

using ClaimId = std::string;
using HypothesisId = std::string;

/// Gain applied per log(1 + support count) in the dynamic confidence rule.
inline constexpr double kSupportGain = 0.15;
/// Penalty applied per contradiction in the dynamic confidence rule.
inline constexpr double kContradictionPenalty = 0.25;

/// Atomic evidence unit.
///
/// `support_count` / `contradiction_count` are provenance counters S(c) and C(c).
/// `support_set` names the hypotheses that cite this claim as supporting evidence.
struct Claim {
    ClaimId id;
    std::string text;
    double base_confidence = 0.5;
    std::string source;
    std::uint32_t support_count = 0;
    std::uint32_t contradiction_count = 0;
    std::optional<ClaimId> negation_of;
    double retrieval_score = 0.0;
    std::set<HypothesisId> support_set;

    bool operator==(const Claim&) const = default;
};

/// clip[0,1](base + 0.15 ln(1 + S) - 0.25 C). Natural logarithm.
inline double dynamic_confidence(double base, std::uint32_t support, std::uint32_t contradiction) {
    const double raw = base + kSupportGain * std::log1p(static_cast<double>(support)) -
                       kContradictionPenalty * static_cast<double>(contradiction);
    return std::clamp(raw, 0.0, 1.0);
}

inline double dynamic_confidence(const Claim& claim) {
    return dynamic_confidence(claim.base_confidence, claim.support_count, claim.contradiction_count);
}

/// Laplace-smoothed truth estimate (S+1)/(S+C+2); falls back to the
/// extraction-time prior when the claim has no provenance history.
inline double truth_estimate(const Claim& claim) {
    const auto s = static_cast<double>(claim.support_count);
    const auto c = static_cast<double>(claim.contradiction_count);
    if (claim.support_count + claim.contradiction_count == 0) return claim.base_confidence;
    return (s + 1.0) / (s + c + 2.0);
}

}  // namespace ecr

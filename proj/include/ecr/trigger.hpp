#pragma once

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecr/claim.hpp"

namespace ecr {

struct TriggerConfig {
    std::size_t claim_volume_threshold = 15;  // trigger when strictly more candidates
    double variance_threshold = 0.15;         // population variance of dynamic confidence
    std::vector<std::string> ambiguity_keywords{"uncertain", "conflicting", "disagree", "multiple", "various"};
};

enum class TriggerReason { claim_volume, ambiguity_keywords, confidence_variance };

inline const char* to_string(TriggerReason r) {
    switch (r) {
        case TriggerReason::claim_volume: return "claim_volume";
        case TriggerReason::ambiguity_keywords: return "ambiguity_keywords";
        case TriggerReason::confidence_variance: return "confidence_variance";
    }
    return "unknown";
}

struct TriggerDecision {
    bool trigger = false;
    std::vector<TriggerReason> reasons;
};

inline double confidence_variance(std::span<const Claim> candidates) {
    if (candidates.empty()) return 0.0;
    double mean = 0.0;
    for (const auto& c : candidates) mean += dynamic_confidence(c);
    mean /= static_cast<double>(candidates.size());
    double var = 0.0;
    for (const auto& c : candidates) {
        const double d = dynamic_confidence(c) - mean;
        var += d * d;
    }
    return var / static_cast<double>(candidates.size());
}

/// Decides whether the retrieved configuration is uncertain enough to run
/// claim resolution. Every satisfied heuristic is listed in `reasons`.
inline TriggerDecision should_trigger_ecr(std::span<const Claim> candidates, std::string_view query,
                                          const TriggerConfig& config = {}) {
    TriggerDecision d;
    if (candidates.size() > config.claim_volume_threshold) d.reasons.push_back(TriggerReason::claim_volume);

    std::string lowered(query);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (const auto& kw : config.ambiguity_keywords) {
        std::string k(kw);
        std::transform(k.begin(), k.end(), k.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (!k.empty() && lowered.find(k) != std::string::npos) {
            d.reasons.push_back(TriggerReason::ambiguity_keywords);
            break;
        }
    }

    if (confidence_variance(candidates) > config.variance_threshold)
        d.reasons.push_back(TriggerReason::confidence_variance);

    d.trigger = !d.reasons.empty();
    return d;
}

}  // namespace ecr

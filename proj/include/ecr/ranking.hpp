#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ecr/claim_store.hpp"
#include "ecr/error.hpp"

namespace ecr {

struct ScoredItem {
    std::string id;
    double score = 0.0;

    bool operator==(const ScoredItem&) const = default;
};

/// Entries are ordered by descending score, ties by ascending id.
struct RankedList {
    std::string strategy;
    std::vector<ScoredItem> entries;

    bool operator==(const RankedList&) const = default;
};

inline void sort_ranked(std::vector<ScoredItem>& entries) {
    std::sort(entries.begin(), entries.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
}

inline constexpr int kDefaultRrfDamping = 60;

/// Reciprocal Rank Fusion: score(d) = sum_j 1 / (k + rank_j(d)), rank 1-based.
/// Each item's contributions are summed in ascending order, so the fused
/// scores are bitwise independent of the order of `lists`.
inline RankedList rrf_fuse(std::span<const RankedList> lists, int k_damp = kDefaultRrfDamping) {
    if (lists.empty()) throw ConfigError("rrf_fuse: at least one ranked list is required");
    if (k_damp < 0) throw ConfigError("rrf_fuse: damping constant must be non-negative");

    std::map<std::string, std::vector<double>> contributions;
    for (const auto& list : lists) {
        for (std::size_t r = 0; r < list.entries.size(); ++r) {
            contributions[list.entries[r].id].push_back(1.0 / (static_cast<double>(k_damp) + static_cast<double>(r + 1)));
        }
    }
    RankedList out{"rrf", {}};
    out.entries.reserve(contributions.size());
    for (auto& [id, parts] : contributions) {
        std::sort(parts.begin(), parts.end());
        double score = 0.0;
        for (double p : parts) score += p;
        out.entries.push_back({id, score});
    }
    sort_ranked(out.entries);
    return out;
}

struct StrategyWeights {
    double similarity = 0.5;
    double diversity = 0.25;
    double confidence = 0.25;
};

inline void validate(const StrategyWeights& w) {
    if (w.similarity < 0 || w.diversity < 0 || w.confidence < 0)
        throw ConfigError("strategy weights must be non-negative");
    if (std::abs(w.similarity + w.diversity + w.confidence - 1.0) > 1e-9)
        throw ConfigError("strategy weights must sum to 1");
}

struct StrategyScore {
    std::string strategy;
    double avg_similarity = 0.0;
    double diversity = 0.0;
    double avg_confidence = 0.0;
    double combined = 0.0;
};

/// Scores one retrieval strategy's list. Diversity is the ratio of distinct
/// sources to entries; an entry that is not a stored claim counts as its own
/// source and contributes nothing to the confidence average.
inline StrategyScore score_strategy(const RankedList& list, const ClaimStoreSnapshot& claims,
                                    const StrategyWeights& weights = {}) {
    validate(weights);
    if (list.entries.empty()) throw ConfigError("score_strategy: empty ranked list '" + list.strategy + "'");

    StrategyScore s{list.strategy};
    std::set<std::string> sources;
    double conf_sum = 0.0;
    std::size_t conf_n = 0;
    for (const auto& e : list.entries) {
        s.avg_similarity += e.score;
        if (const Claim* c = claims.find(e.id)) {
            sources.insert("src:" + c->source);
            conf_sum += dynamic_confidence(*c);
            ++conf_n;
        } else {
            sources.insert("item:" + e.id);
        }
    }
    const auto n = static_cast<double>(list.entries.size());
    s.avg_similarity /= n;
    s.diversity = static_cast<double>(sources.size()) / n;
    s.avg_confidence = conf_n == 0 ? 0.0 : conf_sum / static_cast<double>(conf_n);
    s.combined = weights.similarity * s.avg_similarity + weights.diversity * s.diversity +
                 weights.confidence * s.avg_confidence;
    return s;
}

/// Highest combined score, ties by strategy label.
inline const StrategyScore& best_strategy(std::span<const StrategyScore> scores) {
    if (scores.empty()) throw ConfigError("best_strategy: no strategies");
    const StrategyScore* best = &scores.front();
    for (const auto& s : scores.subspan(1)) {
        if (s.combined > best->combined || (s.combined == best->combined && s.strategy < best->strategy)) best = &s;
    }
    return *best;
}

}  // namespace ecr

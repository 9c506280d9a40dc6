#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecr/claim.hpp"
#include "ecr/error.hpp"

namespace ecr {

struct Hypothesis {
    HypothesisId id;
    std::string text;

    bool operator==(const Hypothesis&) const = default;
};

/// Membership mask over the hypotheses of a space (true = supports).
using SupportMask = std::vector<bool>;

/// Mutually exclusive answer hypotheses plus, for each claim, the subset of
/// hypotheses that cite it as supporting evidence.
class HypothesisSpace {
public:
    explicit HypothesisSpace(std::vector<Hypothesis> hypotheses) : hypotheses_(std::move(hypotheses)) {
        if (hypotheses_.size() < 2) throw ConfigError("hypothesis space needs at least 2 hypotheses");
        std::set<HypothesisId> seen;
        for (const auto& h : hypotheses_) {
            if (!seen.insert(h.id).second) throw ConfigError("duplicate hypothesis id '" + h.id + "'");
        }
    }

    /// Builds supports from each claim's `support_set`.
    template <typename ClaimRange>
    static HypothesisSpace from_claims(std::vector<Hypothesis> hypotheses, const ClaimRange& claims) {
        HypothesisSpace space(std::move(hypotheses));
        for (const Claim& c : claims) space.set_support(c.id, c.support_set);
        return space;
    }

    void set_support(const ClaimId& claim, const std::set<HypothesisId>& supporting) {
        SupportMask mask(hypotheses_.size(), false);
        for (const auto& h : supporting) mask[index_of(h)] = true;
        support_[claim] = std::move(mask);
    }

    std::size_t size() const { return hypotheses_.size(); }
    const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
    const Hypothesis& operator[](std::size_t i) const { return hypotheses_.at(i); }

    std::size_t index_of(const HypothesisId& id) const {
        for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
            if (hypotheses_[i].id == id) return i;
        }
        throw ConfigError("unknown hypothesis id '" + id + "'");
    }

    bool has_support(const ClaimId& claim) const { return support_.count(claim) != 0; }

    const SupportMask& support(const ClaimId& claim) const {
        auto it = support_.find(claim);
        if (it == support_.end()) throw ConfigError("no support entry for claim '" + claim + "'");
        return it->second;
    }

    /// Supports every hypothesis or none: observing it cannot move the posterior.
    bool is_partition_trivial(const ClaimId& claim) const {
        const auto& mask = support(claim);
        std::size_t n = 0;
        for (bool b : mask) n += b ? 1 : 0;
        return n == 0 || n == mask.size();
    }

private:
    std::vector<Hypothesis> hypotheses_;
    std::map<ClaimId, SupportMask> support_;
};

}  // namespace ecr

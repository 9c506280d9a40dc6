#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecr/embedding.hpp"
#include "ecr/ranking.hpp"

namespace ecr {

/// Brute-force cosine index. Immutable once built; const queries are safe to
/// run concurrently.
class VectorIndex {
public:
    explicit VectorIndex(std::size_t dim = kDefaultEmbeddingDim) : dim_(dim) {
        if (dim < 8) throw ConfigError("embedding dimension must be >= 8");
    }

    void add(std::string id, EmbeddingVector v) {
        if (v.dim() != dim_) throw ConfigError("VectorIndex::add: dimension mismatch for '" + id + "'");
        items_.emplace_back(std::move(id), std::move(v));
    }

    void add_text(std::string id, std::string_view text) { add(std::move(id), embed_text(text, dim_)); }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::size_t dim() const { return dim_; }

    /// Top-k by cosine among ids passing `filter` (all ids when absent).
    RankedList search(const EmbeddingVector& query, std::size_t k,
                      const std::optional<std::set<std::string>>& filter = std::nullopt,
                      std::string strategy = "vector") const {
        if (k == 0) throw ConfigError("VectorIndex::search: k must be >= 1");
        RankedList out{std::move(strategy), {}};
        for (const auto& [id, v] : items_) {
            if (filter && filter->count(id) == 0) continue;
            out.entries.push_back({id, cosine_similarity(query, v)});
        }
        sort_ranked(out.entries);
        if (out.entries.size() > k) out.entries.resize(k);
        return out;
    }

private:
    std::size_t dim_;
    std::vector<std::pair<std::string, EmbeddingVector>> items_;
};

}  // namespace ecr

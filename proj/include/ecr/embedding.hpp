#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ecr/error.hpp"

namespace ecr {

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

/// 64-bit FNV-1a. Seedless and byte-order independent, so hashed embeddings
/// and dataset digests are identical on every platform.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t hash = 0xcbf29ce484222325ULL) {
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// Lowercased runs of ASCII alphanumerics.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char ch : text) {
        if (std::isalnum(ch)) {
            current += static_cast<char>(std::tolower(ch));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

struct EmbeddingVector {
    std::vector<double> values;
    bool is_zero = true;  // no tokens (or all contributions cancelled)

    std::size_t dim() const { return values.size(); }
    bool operator==(const EmbeddingVector&) const = default;
};

/// Signed feature hashing: bucket = h mod d, sign from the top bit of h,
/// then L2 normalisation. Empty text yields the flagged zero vector.
inline EmbeddingVector embed_text(std::string_view text, std::size_t dim = kDefaultEmbeddingDim) {
    if (dim < 8) throw ConfigError("embedding dimension must be >= 8");
    EmbeddingVector v{std::vector<double>(dim, 0.0), true};
    for (const auto& token : tokenize(text)) {
        const std::uint64_t h = fnv1a64(token);
        const double sign = (h >> 63) != 0 ? -1.0 : 1.0;
        v.values[h % dim] += sign;
    }
    double norm_sq = 0.0;
    for (double x : v.values) norm_sq += x * x;
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& x : v.values) x *= inv;
        v.is_zero = false;
    }
    return v;
}

/// Cosine similarity; 0 when either side is the zero vector.
inline double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim())
        throw ConfigError("cosine_similarity: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    const double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

}  // namespace ecr

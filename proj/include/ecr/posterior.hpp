#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ecr/error.hpp"

namespace ecr {

/// Probability floor applied before every renormalisation.
inline constexpr double kProbabilityFloor = 1e-12;

/// Shannon entropy in bits, with 0 log 0 = 0.
inline double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log2(x);
    }
    return h;
}

/// Normalised distribution over the hypotheses of a space, index-aligned.
class Posterior {
public:
    static Posterior uniform(std::size_t k) {
        if (k == 0) throw ConfigError("Posterior::uniform: empty hypothesis space");
        Posterior p;
        p.probs_.assign(k, 1.0 / static_cast<double>(k));
        return p;
    }

    /// Floors each weight at kProbabilityFloor, then normalises.
    static Posterior from_weights(std::vector<double> weights) {
        if (weights.empty()) throw ConfigError("Posterior::from_weights: empty weight vector");
        double total = 0.0;
        for (double& w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("Posterior::from_weights: invalid weight");
            if (w < kProbabilityFloor) w = kProbabilityFloor;
            total += w;
        }
        for (double& w : weights) w /= total;
        Posterior p;
        p.probs_ = std::move(weights);
        return p;
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

    /// Index of the largest mass; ties go to the lowest index.
    std::size_t argmax() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < probs_.size(); ++i) {
            if (probs_[i] > probs_[best]) best = i;
        }
        return best;
    }

    bool operator==(const Posterior&) const = default;

private:
    std::vector<double> probs_;
};

inline double entropy(const Posterior& p) { return entropy_bits(p.probs()); }

/// 2^H: the uniform-equivalent number of live hypotheses.
inline double effective_hypotheses(const Posterior& p) { return std::exp2(entropy(p)); }

}  // namespace ecr

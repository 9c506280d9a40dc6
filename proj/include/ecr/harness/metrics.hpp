#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecr/embedding.hpp"
#include "ecr/harness/dataset.hpp"
#include "ecr/harness/parallel.hpp"
#include "ecr/harness/policies.hpp"
#include "ecr/posterior.hpp"

namespace ecr::harness {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;

    bool operator==(const MeanStd&) const = default;
};

/// Population variance; exactly 0 for a constant sequence.
inline double population_variance(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) return 0.0;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return v / static_cast<double>(xs.size());
}

/// Population mean and standard deviation.
inline MeanStd mean_std(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) return {xs.front(), 0.0};
    double m = 0.0;
    for (double x : xs) m += x;
    return {m / static_cast<double>(xs.size()), std::sqrt(population_variance(xs))};
}

// Table columns, in report order.
inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"claims",    "h_final",    "dh_per_claim", "collapse",
                                                "eff_hyp",   "trace_var",  "redundancy",   "hyp_cond_red",
                                                "src_ent",   "coverage"};
    return names;
}

struct CaseMetrics {
    double claims = 0.0;
    double h_final = 0.0;
    double dh_per_claim = 0.0;
    double collapse = 0.0;
    double eff_hyp = 0.0;
    double trace_var = 0.0;
    double redundancy = 0.0;
    double hyp_cond_red = 0.0;
    double src_ent = 0.0;
    double coverage = 0.0;

    std::vector<double> values() const {
        return {claims, h_final, dh_per_claim, collapse, eff_hyp, trace_var, redundancy, hyp_cond_red, src_ent,
                coverage};
    }
};

/// Mean pairwise cosine similarity of hashed text embeddings; 0 below two texts.
inline double mean_pairwise_cosine(const std::vector<std::string>& texts, std::size_t dim = kDefaultEmbeddingDim) {
    if (texts.size() < 2) return 0.0;
    std::vector<EmbeddingVector> vecs;
    for (const auto& t : texts) vecs.push_back(embed_text(t, dim));
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        for (std::size_t j = i + 1; j < vecs.size(); ++j) {
            sum += cosine_similarity(vecs[i], vecs[j]);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

/// Entropy in bits of the empirical distribution of `labels`.
inline double label_entropy(const std::vector<std::string>& labels) {
    if (labels.empty()) return 0.0;
    std::map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[l];
    std::vector<double> p;
    for (const auto& [l, n] : counts) p.push_back(static_cast<double>(n) / static_cast<double>(labels.size()));
    return entropy_bits(p);
}

/// Redundancy within groups of claims that carry the same hypothesis
/// attribution, averaged over groups with at least two members.
inline double hypothesis_conditioned_redundancy(const std::vector<const Claim*>& claims,
                                                std::size_t dim = kDefaultEmbeddingDim) {
    std::map<std::set<HypothesisId>, std::vector<std::string>> groups;
    for (const Claim* c : claims) groups[c->support_set].push_back(c->text);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [attr, texts] : groups) {
        if (texts.size() < 2) continue;
        sum += mean_pairwise_cosine(texts, dim);
        ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

inline double selection_coverage(const EvalCase& ec, const std::vector<ClaimId>& selected) {
    if (ec.expected_snippets.empty()) return 0.0;
    const std::set<ClaimId> sel(selected.begin(), selected.end());
    std::size_t hit = 0;
    for (const auto& id : ec.expected_snippets) hit += sel.count(id);
    return static_cast<double>(hit) / static_cast<double>(ec.expected_snippets.size());
}

inline CaseMetrics case_metrics(const CaseResult& r, const EvalCase& ec, std::size_t dim = kDefaultEmbeddingDim) {
    CaseMetrics m;
    const double h0 = r.entropy_trace.empty() ? r.final_entropy : r.entropy_trace.front();
    m.claims = static_cast<double>(r.claims_evaluated);
    m.h_final = r.final_entropy;
    m.dh_per_claim = r.claims_evaluated == 0 ? 0.0 : (h0 - r.final_entropy) / m.claims;
    m.collapse = static_cast<double>(r.collapse_step);
    m.eff_hyp = std::exp2(r.final_entropy);
    m.trace_var = population_variance(r.entropy_trace);

    std::vector<const Claim*> selected;
    std::vector<std::string> texts, sources;
    for (const auto& id : r.selected_claim_ids) {
        const Claim& c = ec.candidate(id);
        selected.push_back(&c);
        texts.push_back(c.text);
        sources.push_back(c.source);
    }
    m.redundancy = mean_pairwise_cosine(texts, dim);
    m.hyp_cond_red = hypothesis_conditioned_redundancy(selected, dim);
    m.src_ent = label_entropy(sources);
    m.coverage = selection_coverage(ec, r.selected_claim_ids);
    return m;
}

struct PolicySummary {
    std::string policy;
    std::size_t cases = 0;
    std::vector<MeanStd> metrics;  // aligned with metric_names()
    std::map<std::string, std::size_t> stop_reasons;

    const MeanStd& metric(const std::string& name) const {
        for (std::size_t i = 0; i < metric_names().size(); ++i) {
            if (metric_names()[i] == name) return metrics.at(i);
        }
        throw ConfigError("unknown metric '" + name + "'");
    }
};

/// Per-policy mean and std across cases, in the order policies first appear.
inline std::vector<PolicySummary> compute_metrics(const std::vector<CaseResult>& results,
                                                  const std::vector<EvalCase>& cases,
                                                  std::size_t dim = kDefaultEmbeddingDim) {
    if (results.empty()) throw ConfigError("compute_metrics: no results");
    std::map<std::string, const EvalCase*> by_id;
    for (const auto& c : cases) by_id[c.query_id] = &c;

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<double>>> columns;
    std::map<std::string, std::map<std::string, std::size_t>> stops;
    for (const auto& r : results) {
        const auto it = by_id.find(r.query_id);
        if (it == by_id.end()) throw ConfigError("compute_metrics: result for unknown case '" + r.query_id + "'");
        if (!columns.count(r.policy)) {
            order.push_back(r.policy);
            columns[r.policy].resize(metric_names().size());
        }
        const auto vals = case_metrics(r, *it->second, dim).values();
        for (std::size_t i = 0; i < vals.size(); ++i) columns[r.policy][i].push_back(vals[i]);
        ++stops[r.policy][r.stop_reason];
    }

    std::vector<PolicySummary> out;
    for (const auto& p : order) {
        PolicySummary s{p, columns[p][0].size(), {}, stops[p]};
        for (const auto& col : columns[p]) s.metrics.push_back(mean_std(col));
        out.push_back(std::move(s));
    }
    return out;
}

/// Runs every requested policy on every case. Results are ordered by policy,
/// then case, regardless of `jobs`.
inline std::vector<CaseResult> run_all(const std::vector<EvalCase>& cases, const std::vector<PolicyKind>& policies,
                                       std::uint64_t seed, const HarnessConfig& cfg = {}, std::size_t jobs = 1) {
    validate(cfg);
    std::vector<CaseResult> out;
    for (PolicyKind p : policies) {
        auto part = parallel_map(cases.size(), jobs, [&](std::size_t i) { return run_policy(cases[i], p, seed, cfg); });
        for (auto& r : part) out.push_back(std::move(r));
    }
    return out;
}

struct SeedSummary {
    std::string policy;
    std::vector<std::uint64_t> seeds;
    std::vector<MeanStd> metrics;  // mean and std over seed-level means
    bool seed_invariant = false;   // every seed produced identical per-case results
};

/// Reruns the policies over each seed on the frozen case list.
inline std::vector<SeedSummary> run_multiseed(const std::vector<EvalCase>& cases,
                                              const std::vector<std::uint64_t>& seeds,
                                              const std::vector<PolicyKind>& policies, const HarnessConfig& cfg = {},
                                              std::size_t jobs = 1) {
    if (seeds.empty()) throw ConfigError("run_multiseed: at least one seed is required");
    std::vector<SeedSummary> out;
    for (PolicyKind p : policies) {
        SeedSummary s{to_string(p), seeds, {}, true};
        std::vector<std::vector<double>> seed_means(metric_names().size());
        std::vector<CaseResult> first;
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            auto results = run_all(cases, {p}, seeds[k], cfg, jobs);
            const auto summary = compute_metrics(results, cases, cfg.embedding_dim).front();
            for (std::size_t i = 0; i < summary.metrics.size(); ++i) seed_means[i].push_back(summary.metrics[i].mean);
            if (k == 0) {
                first = std::move(results);
            } else if (results != first) {
                s.seed_invariant = false;
            }
        }
        for (const auto& col : seed_means) s.metrics.push_back(mean_std(col));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ecr::harness

#pragma once

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecr/claim_store.hpp"
#include "ecr/harness/ablation.hpp"
#include "ecr/harness/metrics.hpp"
#include "ecr/harness/policies.hpp"

namespace ecr::harness {

using ecr::detail::format_double;

inline std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

/// "reason:count;reason:count" in key order.
inline std::string format_stop_reasons(const std::map<std::string, std::size_t>& counts) {
    std::string out;
    for (const auto& [reason, n] : counts) {
        if (!out.empty()) out += ';';
        out += reason + ":" + std::to_string(n);
    }
    return out;
}

inline nlohmann::ordered_json case_result_json(const CaseResult& r) {
    nlohmann::ordered_json j;
    j["query_id"] = r.query_id;
    j["policy"] = r.policy;
    j["claims_evaluated"] = r.claims_evaluated;
    j["entropy_trace"] = r.entropy_trace;
    j["final_entropy"] = r.final_entropy;
    j["collapse_step"] = r.collapse_step;
    j["dominant"] = r.dominant ? nlohmann::ordered_json(*r.dominant) : nlohmann::ordered_json(nullptr);
    j["stop_reason"] = r.stop_reason;
    j["has_unresolved_conflict"] = r.has_unresolved_conflict;
    j["selected_claim_ids"] = r.selected_claim_ids;
    return j;
}

inline std::string results_json(const std::vector<CaseResult>& results) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : results) arr.push_back(case_result_json(r));
    return arr.dump(2) + "\n";
}

inline std::string metrics_csv(const std::vector<PolicySummary>& rows) {
    std::string out = "policy,cases";
    for (const auto& m : metric_names()) out += "," + m + "," + m + "_std";
    out += ",stop_reason\n";
    for (const auto& r : rows) {
        out += r.policy + "," + std::to_string(r.cases);
        for (const auto& ms : r.metrics) out += "," + format_double(ms.mean) + "," + format_double(ms.std);
        out += "," + format_stop_reasons(r.stop_reasons) + "\n";
    }
    return out;
}

inline std::string multiseed_csv(const std::vector<SeedSummary>& rows) {
    std::string out = "policy,seeds";
    for (const auto& m : metric_names()) out += "," + m + "," + m + "_std";
    out += ",seed_invariant\n";
    for (const auto& r : rows) {
        out += r.policy + "," + std::to_string(r.seeds.size());
        for (const auto& ms : r.metrics) out += "," + format_double(ms.mean) + "," + format_double(ms.std);
        out += std::string(",") + (r.seed_invariant ? "true" : "false") + "\n";
    }
    return out;
}

inline std::string ablation_csv(const std::vector<AblationRow>& rows) {
    std::string out = "policy,alpha,lambda,cases,claims,amb_exp,overconf_err,mean_h,stop_reason\n";
    for (const auto& r : rows) {
        out += r.policy + "," + format_double(r.alpha) + "," + format_double(r.lambda) + "," +
               std::to_string(r.cases) + "," + format_double(r.mean_claims) + "," +
               format_double(r.ambiguity_exposure) + "," + format_double(r.overconfident_error) + "," +
               format_double(r.mean_h) + "," + format_stop_reasons(r.stop_reasons) + "\n";
    }
    return out;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

inline std::string render_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "  " : "") + pad(cells[i], w[i]);
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s + "\n";
    };
    std::string out = line(header);
    std::size_t total = 0;
    for (std::size_t x : w) total += x;
    out += std::string(total + 2 * (w.size() - 1), '-') + "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

}  // namespace detail

/// Policy table with mean +/- std per metric.
inline std::string render_metrics_table(const std::vector<PolicySummary>& rows) {
    std::vector<std::string> header{"policy"};
    for (const auto& m : metric_names()) header.push_back(m);
    std::vector<std::vector<std::string>> body;
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.policy};
        for (const auto& ms : r.metrics) cells.push_back(fixed4(ms.mean) + "+-" + fixed4(ms.std));
        body.push_back(std::move(cells));
    }
    return detail::render_grid(header, body);
}

inline std::string render_multiseed_table(const std::vector<SeedSummary>& rows) {
    std::vector<std::string> header{"policy"};
    for (const auto& m : metric_names()) header.push_back(m);
    header.push_back("seed_invariant");
    std::vector<std::vector<std::string>> body;
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.policy};
        for (const auto& ms : r.metrics) cells.push_back(fixed4(ms.mean) + "+-" + fixed4(ms.std));
        cells.push_back(r.seed_invariant ? "yes" : "no");
        body.push_back(std::move(cells));
    }
    return detail::render_grid(header, body);
}

inline std::string render_ablation_table(const std::vector<AblationRow>& rows) {
    std::vector<std::vector<std::string>> body;
    for (const auto& r : rows) {
        body.push_back({r.policy, fixed4(r.alpha), fixed4(r.lambda), fixed4(r.mean_claims), fixed4(r.ambiguity_exposure),
                        fixed4(r.overconfident_error), fixed4(r.mean_h), format_stop_reasons(r.stop_reasons)});
    }
    return detail::render_grid({"policy", "alpha", "lambda", "claims", "amb_exp", "overconf_err", "mean_h", "stop_reason"},
                               body);
}

inline std::string retrieval_csv(const std::vector<RetrievalDiagnostics>& diags) {
    std::string out = "query_id,trigger,reasons,strategy,avg_similarity,diversity,avg_confidence,combined,best\n";
    for (const auto& d : diags) {
        std::string reasons;
        for (auto r : d.trigger.reasons) reasons += (reasons.empty() ? "" : ";") + std::string(to_string(r));
        for (const auto& s : d.strategies) {
            out += d.query_id + "," + (d.trigger.trigger ? "true" : "false") + "," + reasons + "," + s.strategy + "," +
                   format_double(s.avg_similarity) + "," + format_double(s.diversity) + "," +
                   format_double(s.avg_confidence) + "," + format_double(s.combined) + "," +
                   (s.strategy == d.best_strategy ? "true" : "false") + "\n";
        }
    }
    return out;
}

/// (step, H) series per policy and case.
inline std::string entropy_trace_plotdata(const std::vector<CaseResult>& results) {
    std::string out = "policy,query_id,step,entropy\n";
    for (const auto& r : results)
        for (std::size_t i = 0; i < r.entropy_trace.size(); ++i)
            out += r.policy + "," + r.query_id + "," + std::to_string(i) + "," + format_double(r.entropy_trace[i]) + "\n";
    return out;
}

/// (lambda, value) series per alpha.
inline std::string lambda_sweep_plotdata(const std::vector<AblationRow>& rows) {
    std::string out = "alpha,lambda,amb_exp,overconf_err,claims,mean_h\n";
    for (const auto& r : rows)
        out += format_double(r.alpha) + "," + format_double(r.lambda) + "," + format_double(r.ambiguity_exposure) + "," +
               format_double(r.overconfident_error) + "," + format_double(r.mean_claims) + "," +
               format_double(r.mean_h) + "\n";
    return out;
}

}  // namespace ecr::harness

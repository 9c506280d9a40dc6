#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/random_instance.hpp"
#include "ecr/ecr.hpp"

using namespace ecr;
using namespace ecr::harness;
using ecr::testing::random_config;
using ecr::testing::random_instance;
using ecr::testing::random_posterior;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

const Dataset& dataset() {
    static const Dataset ds = generate_dataset(7);
    return ds;
}

const PolicySummary& find(const std::vector<PolicySummary>& rows, const std::string& policy) {
    for (const auto& r : rows)
        if (r.policy == policy) return r;
    throw Error("missing policy " + policy);
}

bool all_cases(const std::vector<CaseResult>& results, const std::string& policy,
               const std::function<bool(const CaseResult&)>& pred) {
    for (const auto& r : results)
        if (r.policy == policy && !pred(r)) return false;
    return true;
}

Verdict ecr_endpoint() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const Dataset ds = generate_dataset(7);
    const auto results = run_all(ds.cases, {PolicyKind::ecr}, 7, HarnessConfig{}, 1);
    const auto summary = compute_metrics(results, ds.cases);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& s = find(summary, "ecr");
    const auto& claims = s.metric("claims");
    const auto& collapse = s.metric("collapse");
    const double h = s.metric("h_final").mean;
    const double dh = s.metric("dh_per_claim").mean;
    const double eff = s.metric("eff_hyp").mean;
    v.require(ds.cases.size() == 80, "case count");
    v.require(claims.mean == 5.0 && claims.std == 0.0, "claims " + num(claims.mean) + "+-" + num(claims.std));
    v.require(collapse.mean == 5.0 && collapse.std == 0.0, "collapse " + num(collapse.mean));
    v.require(std::abs(h - 0.213) <= 0.02, "H_final " + num(h));
    v.require(std::abs(dh - 0.274) <= 0.005, "dH/claim " + num(dh));
    v.require(std::abs(eff - 1.159) <= 0.02, "2^H " + num(eff));
    v.require(secs < 5.0, "runtime " + num(secs) + " s");
    if (v.pass)
        v.detail = "claims 5, collapse 5, H " + num(h) + ", dH/claim " + num(dh) + ", 2^H " + num(eff) + ", " +
                   num(secs) + " s";
    return v;
}

Verdict retrieval_null() {
    Verdict v;
    const auto& ds = dataset();
    const auto results = run_all(ds.cases, {PolicyKind::retrieval_only}, 7);
    const double h0 = std::log2(3.0);
    v.require(all_cases(results, "retrieval_only", [&](const CaseResult& r) { return r.final_entropy == h0; }),
              "H_final != log2 3");
    v.require(all_cases(results, "retrieval_only", [](const CaseResult& r) { return r.collapse_step == 16; }),
              "collapse != 16");
    const auto s = compute_metrics(results, ds.cases).front();
    v.require(s.metric("dh_per_claim").mean == 0.0 && s.metric("dh_per_claim").std == 0.0, "dH/claim != 0");
    if (v.pass) v.detail = "H_final = log2 3, dH/claim = 0, collapse = 16 on all 80 cases";
    return v;
}

Verdict random_ordering() {
    Verdict v;
    const auto& ds = dataset();
    const HarnessConfig cfg;
    const double h0 = std::log2(3.0);
    const std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    std::string means;
    for (auto seed : seeds) {
        const auto rows = compute_metrics(run_all(ds.cases, all_policies(), seed, cfg), ds.cases);
        const double hr = find(rows, "random").metric("h_final").mean;
        const double he = find(rows, "ecr").metric("h_final").mean;
        const double hb = find(rows, "retrieval_only").metric("h_final").mean;
        v.require(hr > cfg.ecr.epsilon && hr < h0, "seed " + std::to_string(seed) + " random H outside (eps, H0)");
        v.require(he < hr && hr < hb, "seed " + std::to_string(seed) + " ordering");
        means += (means.empty() ? "" : ",") + num(hr);
    }
    for (const auto& s : run_multiseed(ds.cases, seeds, {PolicyKind::ecr, PolicyKind::retrieval_only}, cfg)) {
        bool zero = s.seed_invariant;
        for (const auto& m : s.metrics) zero = zero && m.std == 0.0;
        v.require(zero, s.policy + " varies across seeds");
    }
    if (v.pass) v.detail = "random H per seed " + means + "; ecr and retrieval_only std 0";
    return v;
}

Verdict budget_bound() {
    Verdict v;
    std::mt19937_64 gen(4);
    std::size_t violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto inst = random_instance(gen, 5, 12);
        const auto cfg = random_config(gen, inst.space.size());
        const auto ids = inst.ids();
        const auto out = resolve(ids, inst.space, inst.prior, cfg, inst.store);
        if (out.claims_evaluated() > std::min<std::size_t>(static_cast<std::size_t>(cfg.max_iterations), ids.size()))
            ++violations;
    }
    v.require(violations == 0, std::to_string(violations) + " violations");
    if (v.pass) v.detail = "10000 random instances, 0 violations";
    return v;
}

Verdict eer_coherence() {
    Verdict v;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> conf(0.01, 1.0);
    std::size_t negative = 0, trivial_nonzero = 0, zero_set_mismatch = 0, balanced = 0, checked = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        auto inst = random_instance(gen, 5, 10, false);
        const bool uniform = trial % 2 == 0;
        if (!uniform) inst.prior = random_posterior(gen, inst.space.size());
        for (const auto& c : inst.claims) {
            const double eer = exact_eer(c.id, inst.space, inst.prior);
            const double proxy = eer_proxy(c.id, inst.space, inst.prior, conf(gen));
            const bool trivial = inst.space.is_partition_trivial(c.id);
            negative += eer < 0.0;
            trivial_nonzero += trivial && eer != 0.0;
            const auto m = partition_mass(c.id, inst.space, inst.prior);
            if (!trivial && m.supporting == m.opposing) {
                ++balanced;
                continue;
            }
            ++checked;
            zero_set_mismatch += (proxy == 0.0) != (eer == 0.0);
        }
    }
    v.require(negative == 0, std::to_string(negative) + " negative oracle values");
    v.require(trivial_nonzero == 0, std::to_string(trivial_nonzero) + " trivial claims with nonzero oracle");
    v.require(zero_set_mismatch == 0, std::to_string(zero_set_mismatch) + " zero-set mismatches");
    if (v.pass)
        v.detail = "oracle >= 0, 0 on trivial claims, zero sets agree on " + std::to_string(checked) +
                   " claims; " + std::to_string(balanced) + " balanced-partition claims (p+ = p-) excluded";
    return v;
}

Verdict bayes_soundness() {
    Verdict v;
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    std::size_t identity_breaks = 0, chains = 0;
    while (chains < 1000) {
        const auto inst = random_instance(gen, 6, 10, false);
        if (inst.claims.empty()) continue;
        ++chains;
        const auto cfg = random_config(gen, inst.space.size());
        Posterior p = inst.prior;
        for (int step = 0; step < 30; ++step) {
            const auto& c = inst.claims[gen() % inst.claims.size()];
            const Posterior before = p;
            p = cfg.observation_mode == ObservationMode::soft
                    ? bayes_update_soft(p, c.id, u(gen), inst.space, cfg.likelihood)
                    : bayes_update(p, c.id, gen() % 2 == 0, inst.space, cfg.likelihood);
            double sum = 0.0;
            for (double x : p.probs()) sum += x;
            worst = std::max(worst, std::abs(sum - 1.0));
            if (inst.space.is_partition_trivial(c.id) && !(p == before)) ++identity_breaks;
        }
    }
    v.require(worst <= 1e-9, "normalisation error " + std::to_string(worst));
    v.require(identity_breaks == 0, std::to_string(identity_breaks) + " trivial updates changed the posterior");
    if (v.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "1000 chains x 30 updates, max |sum - 1| = %.1e, trivial updates exact", worst);
        v.detail = buf;
    }
    return v;
}

Verdict phase_transition() {
    Verdict v;
    const auto& ds = dataset();
    const HarnessConfig cfg;
    const std::vector<double> alphas{0.0, 0.3, 0.5};
    const std::vector<double> lambdas{0.0, 0.01, 0.025, 0.05, 0.1};
    const auto rows = run_lambda_sweep(ds.cases, lambdas, alphas, cfg, 4);
    const std::size_t n = ds.cases.size();
    for (const auto& r : rows) {
        const std::string cell = "(a=" + num(r.alpha) + ",l=" + num(r.lambda) + ")";
        if (r.lambda == 0.0) {
            v.require(r.overconfident_error == 0.0 && r.ambiguity_exposure == 0.0 &&
                          r.stop_reasons == std::map<std::string, std::size_t>{{"epistemic_sufficiency", n}},
                      cell + " did not converge");
        } else if (r.alpha == 0.0) {
            v.require(r.stop_reasons == std::map<std::string, std::size_t>{{"epistemic_sufficiency", n}},
                      cell + " not all epistemic_sufficiency");
        } else {
            v.require(r.ambiguity_exposure == 1.0 && r.overconfident_error == 0.0 &&
                          r.stop_reasons == std::map<std::string, std::size_t>{{"unresolved_conflict", n}},
                      cell + " not fully exposed");
        }
        for (const auto& o : rows)
            if (o.alpha == r.alpha && r.lambda > 0.0 && o.lambda > 0.0)
                v.require(o.same_outcome(r), cell + " differs from lambda " + num(o.lambda));
    }
    const auto ablation = run_contradiction_ablation(ds.cases, {0.0, 0.3, 0.5}, cfg.ecr.lambda, cfg, 4);
    for (const auto& r : ablation)
        if (r.policy == "ecr" && r.alpha == 0.0)
            v.require(r.stop_reasons == std::map<std::string, std::size_t>{{"epistemic_sufficiency", n}},
                      "ablation alpha 0 not all epistemic_sufficiency");
    if (v.pass) v.detail = "15 sweep cells: lambda 0 converges, lambda > 0 saturates to exposure 1.0, error 0.0";
    return v;
}

Verdict sanity() {
    Verdict v;
    const auto out = run_sanity_case(make_sanity_case());
    v.require(out.has_unresolved_conflict, "no conflict flagged");
    v.require(!out.dominant.has_value(), "dominant emitted");
    v.require(conflict_sanity_test(), "sanity test returned false");
    if (v.pass) v.detail = "conflict flagged, no dominant, stop " + std::string(to_string(out.stop_reason));
    return v;
}

std::vector<std::pair<std::string, std::string>> render_reports(std::size_t jobs) {
    const Dataset ds = generate_dataset(7);
    const HarnessConfig cfg;
    const auto results = run_all(ds.cases, all_policies(), 7, cfg, jobs);
    const auto summary = compute_metrics(results, ds.cases);
    const auto multi = run_multiseed(ds.cases, {0, 1, 2, 3, 4}, all_policies(), cfg, jobs);
    std::vector<RetrievalDiagnostics> diags;
    for (const auto& c : ds.cases) diags.push_back(retrieval_diagnostics(c, cfg));
    const auto ablation = run_contradiction_ablation(ds.cases, default_alphas(), cfg.ecr.lambda, cfg, jobs);
    const auto sweep = run_lambda_sweep(ds.cases, default_lambda_grid(), default_alphas(), cfg, jobs);
    auto files = render_dataset(ds);
    files.emplace_back("results.json", results_json(results));
    files.emplace_back("metrics.csv", metrics_csv(summary));
    files.emplace_back("metrics.txt", render_metrics_table(summary));
    files.emplace_back("multiseed.csv", multiseed_csv(multi));
    files.emplace_back("retrieval.csv", retrieval_csv(diags));
    files.emplace_back("entropy_traces.csv", entropy_trace_plotdata(results));
    files.emplace_back("ablation.csv", ablation_csv(ablation));
    files.emplace_back("sweep.csv", ablation_csv(sweep));
    files.emplace_back("lambda_sweep.csv", lambda_sweep_plotdata(sweep));
    return files;
}

Verdict determinism() {
    Verdict v;
    const auto a = render_reports(1);
    const auto b = render_reports(1);
    const auto c = render_reports(4);
    v.require(a == b, "serial reruns differ");
    v.require(a == c, "parallel run differs from serial");
    if (v.pass) v.detail = std::to_string(a.size()) + " files byte-identical across two serial runs and jobs=4";
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
        {"clean-harness ECR endpoint", ecr_endpoint},
        {"retrieval-only null result", retrieval_null},
        {"random-control ordering", random_ordering},
        {"budget bound", budget_bound},
        {"EER oracle coherence", eer_coherence},
        {"Bayesian soundness", bayes_soundness},
        {"contradiction phase transition", phase_transition},
        {"conflict sanity test", sanity},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
        failed += !v.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

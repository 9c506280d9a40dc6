#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecr/ecr.hpp"

namespace fs = std::filesystem;
using namespace ecr;
using namespace ecr::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised for problems the user can fix by changing arguments or inputs.
struct UsageError : Error {
    using Error::Error;
};

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> seed;
    std::optional<std::string> seeds;
    std::optional<std::string> epsilon;
    std::optional<std::string> lambda;
    std::optional<std::string> alpha;
    std::optional<std::string> policies;
    std::optional<std::string> out;
    std::optional<std::string> data;
    std::optional<std::string> jobs;
    bool emit_plotdata = false;
};

RunConfig resolve_config(const Flags& f, bool lambda_is_grid) {
    RunConfig cfg;
    if (f.config) {
        try {
            cfg = load_run_config(*f.config);
        } catch (const ParseError& e) {
            throw ConfigError(*f.config + ": " + e.what());
        }
    }
    const auto set = [&](const std::optional<std::string>& v, const char* key) {
        if (v) apply_setting(cfg, key, *v);
    };
    set(f.seed, "seed");
    set(f.seeds, "seeds");
    set(f.epsilon, "epsilon");
    set(f.lambda, lambda_is_grid ? "lambda_grid" : "lambda");
    set(f.alpha, "alphas");
    set(f.policies, "policies");
    set(f.out, "output_dir");
    set(f.data, "data_dir");
    set(f.jobs, "jobs");
    validate(cfg);
    return cfg;
}

fs::path data_dir(const RunConfig& cfg) { return cfg.data_dir.empty() ? fs::path("data") : fs::path(cfg.data_dir); }

Dataset require_dataset(const RunConfig& cfg) {
    const fs::path dir = data_dir(cfg);
    if (!fs::is_directory(dir) || !fs::exists(dir / kCasesFile))
        throw UsageError("dataset not found in '" + dir.string() + "' (run `ecr generate` first)");
    return load_dataset(dir);
}

void write_report(const fs::path& dir, const std::string& name, const std::string& body) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory '" + dir.string() + "': " + ec.message());
    ecr::harness::detail::write_text(dir / name, body);
}

int cmd_generate(const Flags& f) {
    RunConfig cfg = resolve_config(f, false);
    const fs::path dir = f.out ? fs::path(*f.out) : data_dir(cfg);
    const Dataset ds = generate_dataset(cfg.seed);
    save_dataset(ds, dir);
    std::cout << "wrote " << ds.cases.size() << " cases and " << ds.tables.size() << " tables to " << dir.string()
              << "\n";
    std::cout << "digest " << dataset_digest(ds) << "\n";
    return kExitOk;
}

int cmd_eval(const Flags& f) {
    const RunConfig cfg = resolve_config(f, false);
    const Dataset ds = require_dataset(cfg);
    std::vector<PolicyKind> policies;
    for (const auto& p : cfg.policies) policies.push_back(parse_policy(p));

    const auto results = run_all(ds.cases, policies, cfg.seed, cfg.harness, cfg.jobs);
    const auto summary = compute_metrics(results, ds.cases, cfg.harness.embedding_dim);
    const auto multi = run_multiseed(ds.cases, cfg.seeds, policies, cfg.harness, cfg.jobs);
    std::vector<RetrievalDiagnostics> diags;
    for (const auto& c : ds.cases) diags.push_back(retrieval_diagnostics(c, cfg.harness));

    const fs::path out(cfg.output_dir);
    const std::string table = render_metrics_table(summary);
    write_report(out, "results.json", results_json(results));
    write_report(out, "metrics.csv", metrics_csv(summary));
    write_report(out, "metrics.txt", table);
    write_report(out, "multiseed.csv", multiseed_csv(multi));
    write_report(out, "multiseed.txt", render_multiseed_table(multi));
    write_report(out, "retrieval.csv", retrieval_csv(diags));
    if (f.emit_plotdata) write_report(out / "plotdata", "entropy_traces.csv", entropy_trace_plotdata(results));

    std::cout << table;
    for (const auto& s : multi) {
        if ((s.policy == "ecr" || s.policy == "retrieval_only") && !s.seed_invariant) {
            std::cerr << "error: policy " << s.policy << " changed across seeds\n";
            return kExitFailure;
        }
    }
    return kExitOk;
}

int cmd_ablate(const Flags& f) {
    const RunConfig cfg = resolve_config(f, false);
    const Dataset ds = require_dataset(cfg);
    const auto rows = run_contradiction_ablation(ds.cases, cfg.alphas, cfg.harness.ecr.lambda, cfg.harness, cfg.jobs);
    const fs::path out(cfg.output_dir);
    const std::string table = render_ablation_table(rows);
    write_report(out, "ablation.csv", ablation_csv(rows));
    write_report(out, "ablation.txt", table);
    std::cout << table;
    return kExitOk;
}

int cmd_sweep(const Flags& f) {
    const RunConfig cfg = resolve_config(f, true);
    const Dataset ds = require_dataset(cfg);
    const auto rows = run_lambda_sweep(ds.cases, cfg.lambda_grid, cfg.alphas, cfg.harness, cfg.jobs);
    const fs::path out(cfg.output_dir);
    const std::string table = render_ablation_table(rows);
    write_report(out, "sweep.csv", ablation_csv(rows));
    write_report(out, "sweep.txt", table);
    if (f.emit_plotdata) write_report(out / "plotdata", "lambda_sweep.csv", lambda_sweep_plotdata(rows));
    std::cout << table;
    return kExitOk;
}

int cmd_sanity(const Flags& f) {
    const RunConfig cfg = resolve_config(f, false);
    const ECRConfig& ecfg = cfg.harness.ecr;
    const auto out = run_sanity_case(make_sanity_case(), ecfg);
    std::cout << "claims_evaluated " << out.claims_evaluated() << "\n";
    std::cout << "has_unresolved_conflict " << (out.has_unresolved_conflict ? "true" : "false") << "\n";
    std::cout << "dominant " << (out.dominant ? *out.dominant : std::string("none")) << "\n";
    std::cout << "stop_reason " << to_string(out.stop_reason) << "\n";
    const bool pass = conflict_sanity_test(ecfg);
    std::cout << (pass ? "PASS" : "FAIL") << " conflict sanity test\n";
    return pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic claim resolution: dataset generation, evaluation, ablations and sanity checks"};
    app.require_subcommand(1);
    Flags flags;

    const auto common = [&](CLI::App* sub, bool needs_data) {
        sub->add_option("--config", flags.config, "key=value config file; flags override it");
        sub->add_option("--seed", flags.seed, "run seed");
        sub->add_option("--epsilon", flags.epsilon, "entropy threshold in bits");
        sub->add_option("--jobs", flags.jobs, "worker threads across cases");
        if (needs_data) sub->add_option("--data", flags.data, "dataset directory (default: data)");
    };

    auto* gen = app.add_subcommand("generate", "write the synthetic dataset and print its digest");
    gen->add_option("--seed", flags.seed, "dataset seed");
    gen->add_option("--out", flags.out, "dataset directory (default: data)");
    gen->add_option("--config", flags.config, "key=value config file; flags override it");

    auto* eval = app.add_subcommand("eval", "run the policies and write metric reports");
    common(eval, true);
    eval->add_option("--seeds", flags.seeds, "comma-separated seeds for the multi-seed table");
    eval->add_option("--lambda", flags.lambda, "coherence bonus weight");
    eval->add_option("--policies", flags.policies, "comma-separated: retrieval_only,ecr,random");
    eval->add_option("--out", flags.out, "report directory (default: out)");
    eval->add_flag("--emit-plotdata", flags.emit_plotdata, "also write entropy-trace series");

    auto* ablate = app.add_subcommand("ablate", "contradiction-injection ablation");
    common(ablate, true);
    ablate->add_option("--alpha", flags.alpha, "comma-separated contradiction rates");
    ablate->add_option("--lambda", flags.lambda, "coherence bonus weight");
    ablate->add_option("--out", flags.out, "report directory (default: out)");

    auto* sweep = app.add_subcommand("sweep", "lambda sweep over contradiction rates");
    common(sweep, true);
    sweep->add_option("--alpha", flags.alpha, "comma-separated contradiction rates");
    sweep->add_option("--lambda", flags.lambda, "comma-separated lambda grid");
    sweep->add_option("--out", flags.out, "report directory (default: out)");
    sweep->add_flag("--emit-plotdata", flags.emit_plotdata, "also write lambda-sweep series");

    auto* sanity = app.add_subcommand("sanity", "minimal contradiction-pair check");
    sanity->add_option("--config", flags.config, "key=value config file; flags override it");
    sanity->add_option("--epsilon", flags.epsilon, "entropy threshold in bits");
    sanity->add_option("--lambda", flags.lambda, "coherence bonus weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(flags);
        if (*eval) return cmd_eval(flags);
        if (*ablate) return cmd_ablate(flags);
        if (*sweep) return cmd_sweep(flags);
        if (*sanity) return cmd_sanity(flags);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

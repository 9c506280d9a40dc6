#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ecr/error.hpp"
#include "ecr/harness/ablation.hpp"
#include "ecr/harness/policies.hpp"

namespace ecr {

/// Everything a CLI run needs. Defaults match the reference setup.
struct RunConfig {
    harness::HarnessConfig harness{};
    std::uint64_t seed = 7;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    std::vector<double> alphas = harness::default_alphas();
    std::vector<double> lambda_grid = harness::default_lambda_grid();
    std::vector<std::string> policies{"retrieval_only", "ecr", "random"};
    std::string output_dir = "out";
    std::string data_dir;  // empty: "data"
    std::size_t jobs = 1;
};

namespace config_detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline double to_double(const std::string& key, const std::string& v) {
    double d = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), d);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(d))
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return d;
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t u = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), u);
    if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    return u;
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

}  // namespace config_detail

/// Applies one key=value setting. Throws ConfigError for unknown keys and
/// malformed values; range checks happen in validate().
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    using namespace config_detail;
    auto& h = cfg.harness;
    if (key == "epsilon") {
        h.ecr.epsilon = to_double(key, value);
    } else if (key == "lambda") {
        h.ecr.lambda = to_double(key, value);
    } else if (key == "max_iterations") {
        const auto t = to_uint(key, value);
        if (t > 1'000'000) throw ConfigError("max_iterations: too large");
        h.ecr.max_iterations = static_cast<int>(t);
    } else if (key == "beta_support") {
        h.ecr.likelihood.beta_support = to_double(key, value);
    } else if (key == "beta_nonsupport") {
        h.ecr.likelihood.beta_nonsupport = to_double(key, value);
    } else if (key == "soft_observations") {
        h.ecr.observation_mode = to_bool(key, value) ? ObservationMode::soft : ObservationMode::hard_threshold;
    } else if (key == "retrieval_budget") {
        h.retrieval_budget = to_uint(key, value);
    } else if (key == "random_budget") {
        h.random_budget = to_uint(key, value);
    } else if (key == "embedding_dim") {
        h.embedding_dim = to_uint(key, value);
    } else if (key == "rrf_k") {
        const auto k = to_uint(key, value);
        if (k > 1'000'000) throw ConfigError("rrf_k: too large");
        h.rrf_k = static_cast<int>(k);
    } else if (key == "weight_similarity") {
        h.strategy_weights.similarity = to_double(key, value);
    } else if (key == "weight_diversity") {
        h.strategy_weights.diversity = to_double(key, value);
    } else if (key == "weight_confidence") {
        h.strategy_weights.confidence = to_double(key, value);
    } else if (key == "claim_volume_threshold") {
        h.trigger.claim_volume_threshold = to_uint(key, value);
    } else if (key == "variance_threshold") {
        h.trigger.variance_threshold = to_double(key, value);
    } else if (key == "ambiguity_keywords") {
        h.trigger.ambiguity_keywords = split_list(value);
    } else if (key == "seed") {
        cfg.seed = to_uint(key, value);
    } else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& s : split_list(value)) cfg.seeds.push_back(to_uint(key, s));
    } else if (key == "alphas" || key == "alpha") {
        cfg.alphas.clear();
        for (const auto& s : split_list(value)) cfg.alphas.push_back(to_double(key, s));
    } else if (key == "lambda_grid") {
        cfg.lambda_grid.clear();
        for (const auto& s : split_list(value)) cfg.lambda_grid.push_back(to_double(key, s));
    } else if (key == "policies") {
        cfg.policies = split_list(value);
    } else if (key == "output_dir" || key == "out") {
        cfg.output_dir = value;
    } else if (key == "data_dir" || key == "data") {
        cfg.data_dir = value;
    } else if (key == "jobs") {
        cfg.jobs = to_uint(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

inline void validate(const RunConfig& cfg) {
    validate(cfg.harness);
    if (cfg.seeds.empty()) throw ConfigError("seeds: at least one seed is required");
    if (cfg.alphas.empty()) throw ConfigError("alphas: at least one value is required");
    for (double a : cfg.alphas)
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha must lie in [0,1]");
    if (cfg.lambda_grid.empty()) throw ConfigError("lambda_grid: at least one value is required");
    for (double l : cfg.lambda_grid)
        if (!(l >= 0.0)) throw ConfigError("lambda_grid values must be >= 0");
    if (cfg.policies.empty()) throw ConfigError("policies: at least one policy is required");
    for (const auto& p : cfg.policies) harness::parse_policy(p);
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (cfg.jobs == 0 || cfg.jobs > 256) throw ConfigError("jobs must lie in [1,256]");
}

/// Parses `key = value` lines; '#' starts a comment. Errors carry line numbers.
inline RunConfig parse_run_config(std::istream& in, RunConfig cfg = {}) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        const auto body = config_detail::trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", n);
        const auto key = config_detail::trim(std::string_view(body).substr(0, eq));
        const auto value = config_detail::trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", n);
        try {
            apply_setting(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ParseError(e.what(), n);
        }
    }
    return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path, RunConfig cfg = {}) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_run_config(f, std::move(cfg));
}

}  // namespace ecr

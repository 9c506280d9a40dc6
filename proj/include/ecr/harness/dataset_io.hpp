#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecr/claim_store.hpp"
#include "ecr/embedding.hpp"
#include "ecr/harness/dataset.hpp"

namespace ecr::harness {

namespace fs = std::filesystem;

inline constexpr const char* kCasesFile = "cases.json";
inline constexpr const char* kClaimsFile = "claims.txt";

namespace detail {

inline std::string csv_line(const std::vector<std::string>& fields, const std::string& table) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].find_first_of(",\"\n\r") != std::string::npos)
            throw Error("table " + table + ": field '" + fields[i] + "' cannot be written as plain CSV");
        if (i) out += ',';
        out += fields[i];
    }
    return out + '\n';
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    for (char ch : line) {
        if (ch == ',') {
            out.emplace_back();
        } else if (ch != '\r') {
            out.back() += ch;
        }
    }
    return out;
}

inline void write_text(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path.string() + "' for writing");
    f << content;
    if (!f.flush()) throw Error("write failed for '" + path.string() + "'");
}

inline std::string read_text(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace detail

inline std::string render_table_csv(const SourceTable& t) {
    std::string out = detail::csv_line(t.columns, t.name);
    for (const auto& row : t.rows) out += detail::csv_line(row, t.name);
    return out;
}

inline SourceTable parse_table_csv(const std::string& name, const std::string& text) {
    SourceTable t{name, {}, {}};
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        auto fields = detail::split_csv(line);
        if (t.columns.empty()) {
            t.columns = std::move(fields);
        } else if (fields.size() != t.columns.size()) {
            throw ParseError(name + ".csv: expected " + std::to_string(t.columns.size()) + " fields", n);
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    if (t.columns.empty()) throw ParseError(name + ".csv: missing header", 1);
    return t;
}

inline nlohmann::ordered_json cases_to_json(const std::vector<EvalCase>& cases) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : cases) {
        nlohmann::ordered_json j;
        j["query_id"] = c.query_id;
        j["query_text"] = c.query_text;
        auto hyps = nlohmann::ordered_json::array();
        for (const auto& h : c.hypotheses) hyps.push_back({{"id", h.id}, {"text", h.text}});
        j["hypotheses"] = hyps;
        j["ground_truth"] = c.ground_truth;
        j["candidates"] = c.candidate_ids();
        j["expected_snippets"] = c.expected_snippets;
        arr.push_back(std::move(j));
    }
    return nlohmann::ordered_json{{"cases", arr}};
}

inline ClaimStoreSnapshot all_claims(const std::vector<EvalCase>& cases) {
    ClaimStoreSnapshot snap;
    for (const auto& c : cases) {
        for (const auto& cl : c.candidates) {
            if (!snap.claims.emplace(cl.id, cl).second) throw ClaimStoreError("duplicate claim id '" + cl.id + "'");
        }
    }
    snap.version = snap.claims.size();
    return snap;
}

inline std::vector<EvalCase> cases_from_json(const nlohmann::json& j, const ClaimStoreSnapshot& claims) {
    std::vector<EvalCase> out;
    try {
        for (const auto& jc : j.at("cases")) {
            EvalCase c;
            c.query_id = jc.at("query_id").get<std::string>();
            c.query_text = jc.at("query_text").get<std::string>();
            for (const auto& h : jc.at("hypotheses"))
                c.hypotheses.push_back({h.at("id").get<std::string>(), h.at("text").get<std::string>()});
            c.ground_truth = jc.at("ground_truth").get<std::string>();
            for (const auto& id : jc.at("candidates")) c.candidates.push_back(claims.at(id.get<std::string>()));
            c.expected_snippets = jc.at("expected_snippets").get<std::vector<std::string>>();
            out.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed cases file: ") + e.what());
    }
    return out;
}

/// Rendered dataset files, keyed by file name, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> render_dataset(const Dataset& ds) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& t : ds.tables) files.push_back({t.name + ".csv", render_table_csv(t)});
    files.push_back({kCasesFile, cases_to_json(ds.cases).dump(2) + "\n"});
    std::ostringstream claims;
    write_claims(claims, all_claims(ds.cases));
    files.push_back({kClaimsFile, claims.str()});
    return files;
}

/// FNV-1a over every file name and body, as 16 lowercase hex digits.
inline std::string dataset_digest(const Dataset& ds) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [name, body] : render_dataset(ds)) {
        h = fnv1a64(name, h);
        h = fnv1a64(std::string_view("\0", 1), h);
        h = fnv1a64(body, h);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void save_dataset(const Dataset& ds, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory '" + dir.string() + "': " + ec.message());
    for (const auto& [name, body] : render_dataset(ds)) detail::write_text(dir / name, body);
}

inline const std::vector<std::string>& table_names() {
    static const std::vector<std::string> names{"sales", "customers", "expenses", "inventory", "hr", "marketing"};
    return names;
}

inline Dataset load_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("dataset directory '" + dir.string() + "' does not exist");
    Dataset ds;
    for (const auto& name : table_names())
        ds.tables.push_back(parse_table_csv(name, detail::read_text(dir / (name + ".csv"))));
    const auto claims = load(dir / kClaimsFile);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(detail::read_text(dir / kCasesFile));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("malformed cases file: ") + e.what());
    }
    ds.cases = cases_from_json(j, claims);
    return ds;
}

}  // namespace ecr::harness

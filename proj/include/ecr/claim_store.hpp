#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ecr/claim.hpp"
#include "ecr/error.hpp"

namespace ecr {

/// Immutable view of the store at one version.
struct ClaimStoreSnapshot {
    std::map<ClaimId, Claim> claims;
    std::uint64_t version = 0;

    bool operator==(const ClaimStoreSnapshot&) const = default;

    const Claim* find(const ClaimId& id) const {
        auto it = claims.find(id);
        return it == claims.end() ? nullptr : &it->second;
    }

    const Claim& at(const ClaimId& id) const {
        if (const Claim* c = find(id)) return *c;
        throw ClaimStoreError("unknown claim id '" + id + "'");
    }

    bool contains(const ClaimId& id) const { return claims.count(id) != 0; }
};

namespace detail {

inline void validate_claim_fields(const Claim& claim) {
    if (claim.id.empty()) throw ClaimStoreError("claim id must be non-empty");
    if (!(claim.base_confidence >= 0.0 && claim.base_confidence <= 1.0))
        throw ClaimStoreError("claim '" + claim.id + "': base_confidence outside [0,1]");
    if (!(claim.retrieval_score >= 0.0 && claim.retrieval_score <= 1.0))
        throw ClaimStoreError("claim '" + claim.id + "': retrieval_score outside [0,1]");
    if (claim.negation_of && *claim.negation_of == claim.id)
        throw ClaimStoreError("claim '" + claim.id + "' cannot negate itself");
}

// Negation targets exist and every link is reciprocated.
inline void validate_links(const std::map<ClaimId, Claim>& claims) {
    for (const auto& [id, claim] : claims) {
        if (!claim.negation_of) continue;
        auto it = claims.find(*claim.negation_of);
        if (it == claims.end())
            throw ClaimStoreError("claim '" + id + "': unknown negation target '" + *claim.negation_of + "'");
        if (it->second.negation_of != id)
            throw ClaimStoreError("claim '" + id + "': negation link to '" + *claim.negation_of +
                                  "' is not symmetric");
    }
}

}  // namespace detail

/// Single-writer claim store. Negation links are kept symmetric: linking `a`
/// to `b` sets `b.negation_of = a` and detaches any previous partners.
class ClaimStore {
public:
    ClaimStore() = default;

    explicit ClaimStore(ClaimStoreSnapshot snapshot) : state_(std::move(snapshot)) {
        for (const auto& [id, claim] : state_.claims) {
            if (id != claim.id) throw ClaimStoreError("snapshot key '" + id + "' does not match claim id");
            detail::validate_claim_fields(claim);
        }
        detail::validate_links(state_.claims);
    }

    std::uint64_t upsert(Claim claim) {
        detail::validate_claim_fields(claim);
        if (claim.negation_of && !state_.contains(*claim.negation_of))
            throw ClaimStoreError("unknown negation target '" + *claim.negation_of + "'");

        if (const Claim* old = state_.find(claim.id); old && old->negation_of &&
                                                       old->negation_of != claim.negation_of) {
            state_.claims.at(*old->negation_of).negation_of.reset();
        }
        if (claim.negation_of) {
            Claim& partner = state_.claims.at(*claim.negation_of);
            if (partner.negation_of && *partner.negation_of != claim.id)
                state_.claims.at(*partner.negation_of).negation_of.reset();
            partner.negation_of = claim.id;
        }
        const ClaimId id = claim.id;
        state_.claims.insert_or_assign(id, std::move(claim));
        return ++state_.version;
    }

    Claim record_support(const ClaimId& id) {
        Claim& claim = mutable_at(id);
        ++claim.support_count;
        ++state_.version;
        return claim;
    }

    Claim record_contradiction(const ClaimId& id) {
        Claim& claim = mutable_at(id);
        ++claim.contradiction_count;
        ++state_.version;
        return claim;
    }

    const Claim& at(const ClaimId& id) const { return state_.at(id); }
    bool contains(const ClaimId& id) const { return state_.contains(id); }
    std::size_t size() const { return state_.claims.size(); }
    std::uint64_t version() const { return state_.version; }

    /// Copy of the current state; later writes do not affect it.
    ClaimStoreSnapshot snapshot() const { return state_; }
    const ClaimStoreSnapshot& view() const { return state_; }

private:
    Claim& mutable_at(const ClaimId& id) {
        auto it = state_.claims.find(id);
        if (it == state_.claims.end()) throw ClaimStoreError("unknown claim id '" + id + "'");
        return it->second;
    }

    ClaimStoreSnapshot state_;
};

// ---------------------------------------------------------------------------
// Persistence: a header line followed by one record per claim,
//   id|text|base_confidence|source|S|C|negation_of|retrieval_score|support_set
// '\', '|', ',' and line breaks inside fields are backslash-escaped.

inline constexpr std::string_view kClaimFileMagic = "#ecr-claims";

namespace detail {

inline std::string escape_field(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (char ch : in) {
        switch (ch) {
            case '\\': out += "\\\\"; break;
            case '|': out += "\\|"; break;
            case ',': out += "\\,"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += ch;
        }
    }
    return out;
}

// Splits on unescaped `sep` and unescapes each piece.
inline std::vector<std::string> split_escaped(std::string_view in, char sep, std::size_t line) {
    std::vector<std::string> parts(1);
    for (std::size_t i = 0; i < in.size(); ++i) {
        const char ch = in[i];
        if (ch == '\\') {
            if (i + 1 == in.size()) throw ParseError("dangling escape character", line);
            const char next = in[++i];
            switch (next) {
                case 'n': parts.back() += '\n'; break;
                case 'r': parts.back() += '\r'; break;
                case '\\':
                case '|':
                case ',': parts.back() += next; break;
                default: throw ParseError(std::string("unknown escape sequence \\") + next, line);
            }
        } else if (ch == sep) {
            parts.emplace_back();
        } else {
            parts.back() += ch;
        }
    }
    return parts;
}

// Splits on unescaped `sep` without unescaping (used for the record level).
inline std::vector<std::string_view> split_raw(std::string_view in, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] == '\\') {
            ++i;
        } else if (in[i] == sep) {
            parts.push_back(in.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(in.substr(start));
    return parts;
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, std::string_view field, std::size_t line) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("invalid number in field '" + std::string(field) + "': '" + std::string(s) + "'", line);
    return v;
}

template <typename Int>
Int parse_uint(std::string_view s, std::string_view field, std::size_t line) {
    Int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("invalid integer in field '" + std::string(field) + "': '" + std::string(s) + "'", line);
    return v;
}

inline std::string unescape_one(std::string_view raw, std::size_t line) {
    auto parts = split_escaped(raw, '\0', line);
    return parts.front();
}

}  // namespace detail

inline void write_claims(std::ostream& out, const ClaimStoreSnapshot& snapshot) {
    out << kClaimFileMagic << " version=" << snapshot.version << " count=" << snapshot.claims.size() << '\n';
    for (const auto& [id, c] : snapshot.claims) {
        out << detail::escape_field(c.id) << '|' << detail::escape_field(c.text) << '|'
            << detail::format_double(c.base_confidence) << '|' << detail::escape_field(c.source) << '|'
            << c.support_count << '|' << c.contradiction_count << '|'
            << (c.negation_of ? detail::escape_field(*c.negation_of) : std::string()) << '|'
            << detail::format_double(c.retrieval_score) << '|';
        bool first = true;
        for (const auto& h : c.support_set) {
            if (!first) out << ',';
            out << detail::escape_field(h);
            first = false;
        }
        out << '\n';
    }
}

inline ClaimStoreSnapshot read_claims(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);

    std::uint64_t version = 0;
    std::size_t expected = 0;
    {
        std::istringstream header(line);
        std::string magic, version_kv, count_kv;
        header >> magic >> version_kv >> count_kv;
        if (magic != kClaimFileMagic || version_kv.rfind("version=", 0) != 0 || count_kv.rfind("count=", 0) != 0)
            throw ParseError("malformed header '" + line + "'", 1);
        version = detail::parse_uint<std::uint64_t>(std::string_view(version_kv).substr(8), "version", 1);
        expected = detail::parse_uint<std::size_t>(std::string_view(count_kv).substr(6), "count", 1);
    }

    ClaimStoreSnapshot snap;
    snap.version = version;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = detail::split_raw(line, '|');
        if (fields.size() != 9)
            throw ParseError("expected 9 fields, found " + std::to_string(fields.size()), line_no);

        Claim c;
        c.id = detail::unescape_one(fields[0], line_no);
        c.text = detail::unescape_one(fields[1], line_no);
        c.base_confidence = detail::parse_double(fields[2], "base_confidence", line_no);
        c.source = detail::unescape_one(fields[3], line_no);
        c.support_count = detail::parse_uint<std::uint32_t>(fields[4], "support_count", line_no);
        c.contradiction_count = detail::parse_uint<std::uint32_t>(fields[5], "contradiction_count", line_no);
        if (!fields[6].empty()) c.negation_of = detail::unescape_one(fields[6], line_no);
        c.retrieval_score = detail::parse_double(fields[7], "retrieval_score", line_no);
        if (!fields[8].empty()) {
            for (auto& h : detail::split_escaped(fields[8], ',', line_no)) c.support_set.insert(std::move(h));
        }
        try {
            detail::validate_claim_fields(c);
        } catch (const ClaimStoreError& e) {
            throw ParseError(e.what(), line_no);
        }
        const ClaimId id = c.id;
        if (!snap.claims.emplace(id, std::move(c)).second) throw ParseError("duplicate claim id '" + id + "'", line_no);
    }
    if (snap.claims.size() != expected)
        throw ParseError("expected " + std::to_string(expected) + " records, found " +
                             std::to_string(snap.claims.size()) + " (truncated file?)",
                         line_no);
    try {
        detail::validate_links(snap.claims);
    } catch (const ClaimStoreError& e) {
        throw ParseError(e.what(), 0);
    }
    return snap;
}

inline void save(const ClaimStoreSnapshot& snapshot, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_claims(out, snapshot);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline ClaimStoreSnapshot load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    return read_claims(in);
}

}  // namespace ecr

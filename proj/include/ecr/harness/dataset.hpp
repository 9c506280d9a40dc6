#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ecr/claim_store.hpp"
#include "ecr/harness/rng.hpp"
#include "ecr/hypothesis.hpp"
#include "ecr/posterior.hpp"
#include "ecr/selection.hpp"

namespace ecr::harness {

inline constexpr std::size_t kCaseCount = 80;
inline constexpr std::size_t kPoolSize = 20;
inline constexpr std::size_t kHypothesisCount = 3;
inline constexpr std::size_t kGenericClaims = 15;
inline constexpr std::size_t kDiscriminativeClaims = kPoolSize - kGenericClaims;

struct SourceTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const SourceTable&) const = default;
};

/// One harness query with its frozen candidate pool (retrieval order).
struct EvalCase {
    std::string query_id;
    std::string query_text;
    std::vector<Hypothesis> hypotheses;
    HypothesisId ground_truth;
    std::vector<Claim> candidates;
    std::vector<ClaimId> expected_snippets;

    bool operator==(const EvalCase&) const = default;

    HypothesisSpace space() const { return HypothesisSpace::from_claims(hypotheses, candidates); }

    ClaimStoreSnapshot store() const {
        ClaimStoreSnapshot snap;
        for (const auto& c : candidates) snap.claims.emplace(c.id, c);
        snap.version = candidates.size();
        return snap;
    }

    std::vector<ClaimId> candidate_ids() const {
        std::vector<ClaimId> ids;
        ids.reserve(candidates.size());
        for (const auto& c : candidates) ids.push_back(c.id);
        return ids;
    }

    const Claim& candidate(const ClaimId& id) const {
        for (const auto& c : candidates) {
            if (c.id == id) return c;
        }
        throw ClaimStoreError("case " + query_id + ": unknown candidate '" + id + "'");
    }
};

struct Dataset {
    std::vector<SourceTable> tables;
    std::vector<EvalCase> cases;

    bool operator==(const Dataset&) const = default;
};

/// Candidates ordered by descending retrieval score, ties by ascending id.
inline std::vector<ClaimId> retrieval_order(const EvalCase& c) {
    std::vector<const Claim*> ptrs;
    for (const auto& cl : c.candidates) ptrs.push_back(&cl);
    std::sort(ptrs.begin(), ptrs.end(), [](const Claim* a, const Claim* b) {
        if (a->retrieval_score != b->retrieval_score) return a->retrieval_score > b->retrieval_score;
        return a->id < b->id;
    });
    std::vector<ClaimId> ids;
    for (const Claim* p : ptrs) ids.push_back(p->id);
    return ids;
}

namespace detail {

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

// One entity's metric value inside the query's scope.
struct Fact {
    std::string entity;
    double value = 0.0;
};

// Everything the claim templates need for one query.
struct QueryFrame {
    std::string query_text;
    std::vector<std::string> sources;  // originating tables, primary first
    std::string metric;
    std::string scope;                 // e.g. "in 2024Q1"; may be empty
    bool higher_wins = true;
    std::array<Fact, kHypothesisCount> contenders;
    std::vector<std::pair<std::string, std::string>> background;  // (text fragment, source)
    int decimals = 1;
};

inline const std::vector<std::string> kRegions{"North", "South", "East", "West", "Central"};
inline const std::vector<std::string> kQuarters{"2023Q3", "2023Q4", "2024Q1", "2024Q2"};
inline const std::vector<std::string> kCustomers{"Acme Corp", "Globex",       "Initech", "Umbrella",
                                                 "Hooli",     "Vandelay",     "Soylent", "Tyrell",
                                                 "Cyberdyne", "Wonka Foods",  "Stark Works", "Wayne Freight"};
inline const std::vector<std::string> kSegments{"Enterprise", "Mid-Market", "SMB"};
inline const std::vector<std::string> kDepartments{"Engineering", "Sales", "Marketing", "Operations", "Finance"};
inline const std::vector<std::string> kProducts{"Widget", "Gadget", "Sprocket", "Gizmo", "Flange"};
inline const std::vector<std::string> kWarehouses{"Austin", "Denver", "Reno", "Columbus"};
inline const std::vector<std::string> kCampaigns{"Spring Launch", "Summer Promo", "Back to School", "Holiday Push",
                                                 "Brand Refresh"};
inline const std::vector<std::string> kChannels{"Email", "Search", "Social", "Display"};

// Numeric backing data for the six tables.
struct TableData {
    std::vector<std::vector<double>> sales;       // [region][quarter] revenue (k$)
    std::vector<double> customer_ltv;             // [customer]
    std::vector<std::size_t> customer_segment;    // [customer]
    std::vector<std::size_t> customer_region;     // [customer]
    std::vector<std::vector<double>> expenses;    // [department][quarter] amount (k$)
    std::vector<std::vector<double>> inventory;   // [product][warehouse] units
    std::vector<int> headcount;                   // [department]
    std::vector<double> attrition;                // [department] percent
    std::vector<std::vector<double>> spend;       // [campaign][channel] k$
    std::vector<std::vector<double>> conversions; // [campaign][channel]
};

inline TableData make_table_data(Rng& rng) {
    TableData d;
    d.sales.assign(kRegions.size(), std::vector<double>(kQuarters.size()));
    for (auto& row : d.sales)
        for (double& v : row) v = round_to(rng.uniform(120.0, 980.0), 1);
    for (std::size_t i = 0; i < kCustomers.size(); ++i) {
        d.customer_ltv.push_back(round_to(rng.uniform(20.0, 640.0), 1));
        d.customer_segment.push_back(rng.below(kSegments.size()));
        d.customer_region.push_back(rng.below(kRegions.size()));
    }
    d.expenses.assign(kDepartments.size(), std::vector<double>(kQuarters.size()));
    for (auto& row : d.expenses)
        for (double& v : row) v = round_to(rng.uniform(80.0, 720.0), 1);
    d.inventory.assign(kProducts.size(), std::vector<double>(kWarehouses.size()));
    for (auto& row : d.inventory)
        for (double& v : row) v = static_cast<double>(rng.between(40, 2400));
    for (std::size_t i = 0; i < kDepartments.size(); ++i) {
        d.headcount.push_back(rng.between(12, 180));
        d.attrition.push_back(round_to(rng.uniform(2.0, 24.0), 1));
    }
    d.spend.assign(kCampaigns.size(), std::vector<double>(kChannels.size()));
    d.conversions.assign(kCampaigns.size(), std::vector<double>(kChannels.size()));
    for (std::size_t c = 0; c < kCampaigns.size(); ++c) {
        for (std::size_t ch = 0; ch < kChannels.size(); ++ch) {
            d.spend[c][ch] = round_to(rng.uniform(5.0, 90.0), 1);
            d.conversions[c][ch] = static_cast<double>(rng.between(30, 4200));
        }
    }
    return d;
}

inline std::vector<SourceTable> render_tables(const TableData& d) {
    std::vector<SourceTable> t;
    SourceTable sales{"sales", {"region", "quarter", "revenue_k"}, {}};
    for (std::size_t r = 0; r < kRegions.size(); ++r)
        for (std::size_t q = 0; q < kQuarters.size(); ++q)
            sales.rows.push_back({kRegions[r], kQuarters[q], fixed(d.sales[r][q], 1)});
    t.push_back(std::move(sales));

    SourceTable customers{"customers", {"customer", "segment", "region", "lifetime_value_k"}, {}};
    for (std::size_t i = 0; i < kCustomers.size(); ++i)
        customers.rows.push_back({kCustomers[i], kSegments[d.customer_segment[i]], kRegions[d.customer_region[i]],
                                  fixed(d.customer_ltv[i], 1)});
    t.push_back(std::move(customers));

    SourceTable expenses{"expenses", {"department", "quarter", "amount_k"}, {}};
    for (std::size_t i = 0; i < kDepartments.size(); ++i)
        for (std::size_t q = 0; q < kQuarters.size(); ++q)
            expenses.rows.push_back({kDepartments[i], kQuarters[q], fixed(d.expenses[i][q], 1)});
    t.push_back(std::move(expenses));

    SourceTable inventory{"inventory", {"product", "warehouse", "units"}, {}};
    for (std::size_t p = 0; p < kProducts.size(); ++p)
        for (std::size_t w = 0; w < kWarehouses.size(); ++w)
            inventory.rows.push_back({kProducts[p], kWarehouses[w], fixed(d.inventory[p][w], 0)});
    t.push_back(std::move(inventory));

    SourceTable hr{"hr", {"department", "headcount", "attrition_pct"}, {}};
    for (std::size_t i = 0; i < kDepartments.size(); ++i)
        hr.rows.push_back({kDepartments[i], std::to_string(d.headcount[i]), fixed(d.attrition[i], 1)});
    t.push_back(std::move(hr));

    SourceTable marketing{"marketing", {"campaign", "channel", "spend_k", "conversions"}, {}};
    for (std::size_t c = 0; c < kCampaigns.size(); ++c)
        for (std::size_t ch = 0; ch < kChannels.size(); ++ch)
            marketing.rows.push_back(
                {kCampaigns[c], kChannels[ch], fixed(d.spend[c][ch], 1), fixed(d.conversions[c][ch], 0)});
    t.push_back(std::move(marketing));
    return t;
}

inline std::array<std::size_t, kHypothesisCount> pick3(Rng& rng, std::size_t n) {
    auto idx = rng.sample_indices(n, kHypothesisCount);
    return {idx[0], idx[1], idx[2]};
}

// Eight query templates, ten instances each.
inline QueryFrame make_frame(std::size_t case_index, const TableData& d, Rng& rng) {
    QueryFrame f;
    const std::size_t instance = case_index / 8;
    const std::size_t q = instance % kQuarters.size();
    const std::size_t other_q = (q + 1 + rng.below(kQuarters.size() - 1)) % kQuarters.size();

    switch (case_index % 8) {
        case 0:
        case 1: {
            f.higher_wins = case_index % 8 == 0;
            f.sources = {"sales"};
            f.metric = "revenue";
            f.scope = "in " + kQuarters[q];
            f.query_text = std::string("Which region had the ") + (f.higher_wins ? "highest" : "lowest") +
                           " revenue in " + kQuarters[q] + "?";
            auto pick = pick3(rng, kRegions.size());
            for (std::size_t i = 0; i < 3; ++i) f.contenders[i] = {kRegions[pick[i]], d.sales[pick[i]][q]};
            for (std::size_t r = 0; r < kRegions.size(); ++r) {
                f.background.push_back({kRegions[r] + " recorded revenue of " + fixed(d.sales[r][other_q], 1) +
                                            "k in " + kQuarters[other_q],
                                        "sales"});
            }
            break;
        }
        case 2: {
            f.sources = {"customers"};
            f.metric = "lifetime value";
            auto pick = pick3(rng, kCustomers.size());
            f.query_text = "Which of " + kCustomers[pick[0]] + ", " + kCustomers[pick[1]] + " or " +
                           kCustomers[pick[2]] + " has the highest customer lifetime value?";
            for (std::size_t i = 0; i < 3; ++i) f.contenders[i] = {kCustomers[pick[i]], d.customer_ltv[pick[i]]};
            for (std::size_t i = 0; i < kCustomers.size(); ++i) {
                f.background.push_back({kCustomers[i] + " is a " + kSegments[d.customer_segment[i]] +
                                            " account in the " + kRegions[d.customer_region[i]] + " region",
                                        "customers"});
            }
            break;
        }
        case 3: {
            f.sources = {"expenses"};
            f.metric = "spend";
            f.scope = "in " + kQuarters[q];
            f.query_text = "Which department spent the most in " + kQuarters[q] + "?";
            auto pick = pick3(rng, kDepartments.size());
            for (std::size_t i = 0; i < 3; ++i) f.contenders[i] = {kDepartments[pick[i]], d.expenses[pick[i]][q]};
            for (std::size_t i = 0; i < kDepartments.size(); ++i) {
                f.background.push_back({kDepartments[i] + " spent " + fixed(d.expenses[i][other_q], 1) + "k in " +
                                            kQuarters[other_q],
                                        "expenses"});
            }
            break;
        }
        case 4: {
            const std::size_t p = instance % kProducts.size();
            f.sources = {"inventory"};
            f.metric = kProducts[p] + " stock";
            f.decimals = 0;
            f.query_text = "Which warehouse holds the most " + kProducts[p] + " units?";
            auto pick = pick3(rng, kWarehouses.size());
            for (std::size_t i = 0; i < 3; ++i) f.contenders[i] = {kWarehouses[pick[i]], d.inventory[p][pick[i]]};
            for (std::size_t op = 0; op < kProducts.size(); ++op) {
                if (op == p) continue;
                for (std::size_t w = 0; w < kWarehouses.size(); ++w)
                    f.background.push_back({kWarehouses[w] + " holds " + fixed(d.inventory[op][w], 0) + " " +
                                                kProducts[op] + " units",
                                            "inventory"});
            }
            break;
        }
        case 5: {
            f.sources = {"hr"};
            f.metric = "attrition rate";
            f.query_text = "Which department has the highest attrition rate?";
            auto pick = pick3(rng, kDepartments.size());
            for (std::size_t i = 0; i < 3; ++i) f.contenders[i] = {kDepartments[pick[i]], d.attrition[pick[i]]};
            for (std::size_t i = 0; i < kDepartments.size(); ++i) {
                f.background.push_back(
                    {kDepartments[i] + " employs " + std::to_string(d.headcount[i]) + " people", "hr"});
            }
            break;
        }
        case 6: {
            const std::size_t c = instance % kCampaigns.size();
            f.sources = {"marketing"};
            f.metric = "conversions";
            f.scope = "for the " + kCampaigns[c] + " campaign";
            f.decimals = 0;
            f.query_text = "Which channel drove the most conversions for the " + kCampaigns[c] + " campaign?";
            auto pick = pick3(rng, kChannels.size());
            for (std::size_t i = 0; i < 3; ++i) f.contenders[i] = {kChannels[pick[i]], d.conversions[c][pick[i]]};
            for (std::size_t ch = 0; ch < kChannels.size(); ++ch) {
                f.background.push_back({kChannels[ch] + " spend for the " + kCampaigns[c] + " campaign was " +
                                            fixed(d.spend[c][ch], 1) + "k",
                                        "marketing"});
            }
            break;
        }
        default: {
            f.sources = {"expenses", "hr"};
            f.metric = "spend per head";
            f.scope = "in " + kQuarters[q];
            f.decimals = 2;
            f.query_text = "Which department has the highest spend per head in " + kQuarters[q] + "?";
            auto pick = pick3(rng, kDepartments.size());
            for (std::size_t i = 0; i < 3; ++i) {
                const std::size_t dep = pick[i];
                f.contenders[i] = {kDepartments[dep], round_to(d.expenses[dep][q] / d.headcount[dep], 2)};
            }
            for (std::size_t i = 0; i < kDepartments.size(); ++i) {
                f.background.push_back({kDepartments[i] + " spent " + fixed(d.expenses[i][q], 1) + "k in " +
                                            kQuarters[q],
                                        "expenses"});
                f.background.push_back(
                    {kDepartments[i] + " employs " + std::to_string(d.headcount[i]) + " people", "hr"});
            }
            break;
        }
    }
    return f;
}

inline std::string id_suffix(std::size_t n) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02zu", n);
    return buf;
}

inline EvalCase build_case(std::size_t case_index, const QueryFrame& f, Rng& rng) {
    EvalCase ec;
    char qid[16];
    std::snprintf(qid, sizeof qid, "q%03zu", case_index);
    ec.query_id = qid;
    ec.query_text = f.query_text;

    std::set<HypothesisId> all;
    for (std::size_t i = 0; i < kHypothesisCount; ++i) {
        ec.hypotheses.push_back({ec.query_id + "-h" + std::to_string(i), f.contenders[i].entity});
        all.insert(ec.hypotheses.back().id);
    }

    std::size_t winner = 0;
    for (std::size_t i = 1; i < kHypothesisCount; ++i) {
        const bool better = f.higher_wins ? f.contenders[i].value > f.contenders[winner].value
                                          : f.contenders[i].value < f.contenders[winner].value;
        if (better) winner = i;
    }
    ec.ground_truth = ec.hypotheses[winner].id;

    const auto& m = f.metric;
    const std::string scope = f.scope.empty() ? "" : " " + f.scope;
    const auto val = [&](std::size_t i) { return fixed(f.contenders[i].value, f.decimals); };
    const auto& name = [&](std::size_t i) -> const std::string& { return f.contenders[i].entity; };
    const auto& src = [&](std::size_t k) -> const std::string& { return f.sources[k % f.sources.size()]; };

    double lo = f.contenders[0].value, hi = lo, sum = 0.0;
    for (const auto& c : f.contenders) {
        lo = std::min(lo, c.value);
        hi = std::max(hi, c.value);
        sum += c.value;
    }

    // Generic claims: true, relevant-looking, and cited by every hypothesis.
    std::vector<std::pair<std::string, std::string>> generic;
    generic.push_back({"The " + src(0) + " table reports " + m + " for " + name(0) + ", " + name(1) + " and " +
                           name(2) + scope,
                       src(0)});
    for (std::size_t i = 0; i < kHypothesisCount; ++i)
        generic.push_back({name(i) + " appears in the " + src(i) + " table with " + m + " recorded" + scope, src(i)});
    generic.push_back({"Reported " + m + scope + " ranges from " + fixed(lo, f.decimals) + " to " +
                           fixed(hi, f.decimals) + " across the compared entries",
                       src(0)});
    generic.push_back({"The combined " + m + scope + " of the compared entries is " + fixed(sum, f.decimals), src(1)});
    generic.push_back({"Average " + m + scope + " across the compared entries is " +
                           fixed(sum / kHypothesisCount, f.decimals),
                       src(0)});
    std::vector<std::size_t> bg(f.background.size());
    for (std::size_t i = 0; i < bg.size(); ++i) bg[i] = i;
    rng.shuffle(bg);
    for (std::size_t k = 0; generic.size() < kGenericClaims; ++k) {
        const auto& b = f.background[bg[k % bg.size()]];
        generic.push_back({b.first + (k >= bg.size() ? " according to the " + b.second + " table" : ""), b.second});
    }

    // Discriminative claims: cite only the ground-truth hypothesis.
    const std::size_t o1 = (winner + 1) % kHypothesisCount, o2 = (winner + 2) % kHypothesisCount;
    const std::string cmp = f.higher_wins ? " exceeds " : " is below ";
    const std::size_t runner = (f.higher_wins ? f.contenders[o1].value >= f.contenders[o2].value
                                              : f.contenders[o1].value <= f.contenders[o2].value)
                                   ? o1
                                   : o2;
    std::vector<std::pair<std::string, std::string>> decisive{
        {name(winner) + " recorded the " + (f.higher_wins ? "highest " : "lowest ") + m + scope + " at " + val(winner),
         src(0)},
        {name(winner) + "'s " + m + scope + " (" + val(winner) + ")" + cmp + name(o1) + "'s (" + val(o1) + ")", src(1)},
        {name(winner) + "'s " + m + scope + " (" + val(winner) + ")" + cmp + name(o2) + "'s (" + val(o2) + ")", src(0)},
        {name(winner) + " ranks first among " + name(0) + ", " + name(1) + " and " + name(2) + " by " + m + scope,
         src(1)},
        {name(winner) + " leads " + name(runner) + " on " + m + scope + " by " +
             fixed(std::abs(f.contenders[winner].value - f.contenders[runner].value), f.decimals),
         src(0)},
    };

    std::vector<std::size_t> slots(kPoolSize);
    for (std::size_t i = 0; i < kPoolSize; ++i) slots[i] = i;
    rng.shuffle(slots);

    std::vector<Claim> generic_claims, decisive_claims;
    for (std::size_t k = 0; k < kGenericClaims; ++k) {
        Claim c;
        c.id = ec.query_id + "-c" + id_suffix(slots[k]);
        c.text = generic[k].first;
        c.source = generic[k].second;
        c.base_confidence = round_to(rng.uniform(0.55, 0.95), 2);
        c.support_count = static_cast<std::uint32_t>(rng.between(0, 4));
        c.contradiction_count = rng.below(4) == 0 ? 1 : 0;
        c.retrieval_score = round_to(rng.uniform(0.72, 0.97), 3);
        c.support_set = all;
        generic_claims.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < kDiscriminativeClaims; ++k) {
        Claim c;
        c.id = ec.query_id + "-c" + id_suffix(slots[kGenericClaims + k]);
        c.text = decisive[k].first;
        c.source = decisive[k].second;
        // base >= 0.80 with S >= 3 saturates dynamic confidence at 1.0.
        c.base_confidence = round_to(rng.uniform(0.80, 0.95), 2);
        c.support_count = static_cast<std::uint32_t>(rng.between(3, 6));
        c.contradiction_count = 0;
        c.retrieval_score = round_to(rng.uniform(0.40, 0.70), 3);
        c.support_set = {ec.ground_truth};
        decisive_claims.push_back(std::move(c));
    }

    for (auto& c : generic_claims) ec.candidates.push_back(c);
    for (auto& c : decisive_claims) ec.candidates.push_back(c);
    const auto order = retrieval_order(ec);
    std::vector<Claim> ordered;
    for (const auto& id : order) ordered.push_back(ec.candidate(id));
    ec.candidates = std::move(ordered);

    // Gold snippets: the three most relevant generic claims and two decisive ones.
    for (std::size_t k = 0; k < 3; ++k) ec.expected_snippets.push_back(ec.candidates[k].id);
    std::vector<ClaimId> decisive_ids;
    for (const auto& c : decisive_claims) decisive_ids.push_back(c.id);
    std::sort(decisive_ids.begin(), decisive_ids.end());
    ec.expected_snippets.push_back(decisive_ids[0]);
    ec.expected_snippets.push_back(decisive_ids[1]);
    return ec;
}

}  // namespace detail

/// Synthesises the six source tables and the 80 templated cases. Per case the
/// 20-claim pool holds 15 generic claims (cited by all three hypotheses,
/// highest retrieval scores) and 5 decisive claims citing only the ground
/// truth, each with support history S >= 3 and no contradictions.
inline Dataset generate_dataset(std::uint64_t seed) {
    Rng rng(seed);
    const auto data = detail::make_table_data(rng);
    Dataset ds;
    ds.tables = detail::render_tables(data);
    for (std::size_t i = 0; i < kCaseCount; ++i) {
        Rng case_rng = Rng::for_key(seed, "case:" + std::to_string(i));
        const auto frame = detail::make_frame(i, data, case_rng);
        ds.cases.push_back(detail::build_case(i, frame, case_rng));
    }
    return ds;
}

/// Fraction of expected snippets present in the candidate pool; identical for
/// every policy because it does not look at the selection.
inline double pool_coverage(const EvalCase& c) {
    if (c.expected_snippets.empty()) return 0.0;
    std::size_t hit = 0;
    for (const auto& id : c.expected_snippets) {
        for (const auto& cand : c.candidates) {
            if (cand.id == id) {
                ++hit;
                break;
            }
        }
    }
    return static_cast<double>(hit) / static_cast<double>(c.expected_snippets.size());
}

/// Twin id that sorts after every regular candidate id of the same case.
inline ClaimId twin_id(const ClaimId& original) {
    const auto pos = original.rfind("-c");
    if (pos != std::string::npos) return original.substr(0, pos) + "-n" + original.substr(pos + 2);
    return original + "-neg";
}

/// Adds ceil(alpha * 20) explicit negation twins. Targets are the candidates
/// with the highest proxy score under the uniform prior (ties by id); each
/// twin copies its target's provenance and confidence, cites the complementary
/// hypothesis subset, and is linked to the target symmetrically.
inline EvalCase inject_contradictions(const EvalCase& base, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("contradiction rate alpha must lie in [0,1]");
    const auto n_twins = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(kPoolSize) - 1e-9));
    if (n_twins == 0) return base;

    const auto space = base.space();
    const auto prior = Posterior::uniform(space.size());
    std::vector<std::pair<double, const Claim*>> ranked;
    for (const auto& c : base.candidates) {
        if (c.negation_of) continue;
        ranked.push_back({eer_proxy(c.id, space, prior, dynamic_confidence(c)), &c});
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->id < b.second->id;
    });

    EvalCase out = base;
    std::set<HypothesisId> all;
    for (const auto& h : base.hypotheses) all.insert(h.id);
    for (std::size_t k = 0; k < std::min(n_twins, ranked.size()); ++k) {
        const Claim& target = *ranked[k].second;
        Claim twin = target;
        twin.id = twin_id(target.id);
        twin.text = "It is not the case that " + target.text;
        twin.support_set.clear();
        std::set_difference(all.begin(), all.end(), target.support_set.begin(), target.support_set.end(),
                            std::inserter(twin.support_set, twin.support_set.end()));
        twin.negation_of = target.id;
        for (auto& c : out.candidates) {
            if (c.id == target.id) c.negation_of = twin.id;
        }
        out.candidates.push_back(std::move(twin));
    }
    return out;
}

}  // namespace ecr::harness

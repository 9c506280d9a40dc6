#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ecr/resolver.hpp"

using namespace ecr;

namespace {

const std::vector<Hypothesis> kHyps{{"a1", "first"}, {"a2", "second"}, {"a3", "third"}};

Claim make(const std::string& id, std::set<HypothesisId> support, double base = 0.9, std::uint32_t s = 3,
           std::uint32_t c = 0) {
    Claim cl;
    cl.id = id;
    cl.text = id;
    cl.base_confidence = base;
    cl.source = "t";
    cl.support_count = s;
    cl.contradiction_count = c;
    cl.support_set = std::move(support);
    return cl;
}

struct Fixture {
    std::vector<Claim> claims;
    ClaimStoreSnapshot store;
    HypothesisSpace space{kHyps};

    explicit Fixture(std::vector<Claim> cs, std::vector<Hypothesis> hyps = kHyps) : claims(std::move(cs)), space(hyps) {
        ClaimStore s;
        for (auto c : claims) {
            c.negation_of.reset();
            s.upsert(c);
        }
        for (const auto& c : claims)
            if (c.negation_of) s.upsert(c);
        store = s.snapshot();
        space = HypothesisSpace::from_claims(std::move(hyps), claims);
    }

    std::vector<ClaimId> ids() const {
        std::vector<ClaimId> out;
        for (const auto& c : claims) out.push_back(c.id);
        return out;
    }
};

// Clean pool: 15 generic claims plus 5 discriminative true claims for a1.
Fixture clean_pool() {
    std::vector<Claim> cs;
    for (int i = 0; i < 15; ++i) cs.push_back(make("g" + std::to_string(10 + i), {"a1", "a2", "a3"}, 0.7, 1, 0));
    for (int i = 0; i < 5; ++i) cs.push_back(make("t" + std::to_string(i), {"a1"}, 0.85, 3, 0));
    return Fixture(cs);
}

constexpr double kLog2_3 = 1.584962500721156;

}  // namespace

TEST(Entropy, KnownDistributions) {
    EXPECT_DOUBLE_EQ(entropy(Posterior::uniform(3)), std::log2(3.0));
    EXPECT_NEAR(entropy(Posterior::uniform(3)), kLog2_3, 1e-15);
    const std::vector<double> degenerate{1.0, 0.0, 0.0};
    EXPECT_EQ(entropy_bits(degenerate), 0.0);
    const std::vector<double> peaked{0.9721, 0.01393, 0.01393};
    EXPECT_NEAR(entropy_bits(peaked), 0.2114597, 1e-6);
}

TEST(Entropy, EffectiveHypotheses) {
    EXPECT_NEAR(effective_hypotheses(Posterior::uniform(3)), 3.0, 1e-12);
    EXPECT_NEAR(effective_hypotheses(Posterior::from_weights({1.0, 0.0, 0.0})), 1.0, 1e-9);
}

TEST(PosteriorType, FloorAndNormalise) {
    const auto p = Posterior::from_weights({2.0, 0.0, 2.0});
    EXPECT_GT(p[1], 0.0);
    EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
    EXPECT_EQ(p.argmax(), 0u);
    EXPECT_THROW(Posterior::from_weights({-1.0, 1.0}), ConfigError);
    EXPECT_THROW(Posterior::from_weights({}), ConfigError);
    EXPECT_THROW(Posterior::uniform(0), ConfigError);
}

TEST(HypothesisSpaceType, Validation) {
    EXPECT_THROW(HypothesisSpace(std::vector<Hypothesis>{{"a", ""}}), ConfigError);
    EXPECT_THROW(HypothesisSpace({{"a", ""}, {"a", ""}}), ConfigError);
    HypothesisSpace space(kHyps);
    EXPECT_THROW(space.set_support("c", {"zz"}), ConfigError);
    EXPECT_THROW(space.support("missing"), ConfigError);
}

TEST(PartitionMass, UniformPrior) {
    Fixture f({make("one", {"a2"}), make("all", {"a1", "a2", "a3"}), make("none", {})});
    const auto u = Posterior::uniform(3);
    auto m = partition_mass("one", f.space, u);
    EXPECT_NEAR(m.supporting, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.opposing, 2.0 / 3.0, 1e-15);
    m = partition_mass("all", f.space, u);
    EXPECT_NEAR(m.supporting, 1.0, 1e-15);
    EXPECT_EQ(m.opposing, 0.0);
    m = partition_mass("none", f.space, u);
    EXPECT_EQ(m.supporting, 0.0);
    EXPECT_NEAR(m.opposing, 1.0, 1e-15);
    EXPECT_THROW(partition_mass("unknown", f.space, u), ConfigError);
}

TEST(EerProxy, Values) {
    Fixture f({make("one", {"a1"}), make("all", {"a1", "a2", "a3"}), make("none", {})});
    const auto u = Posterior::uniform(3);
    EXPECT_NEAR(eer_proxy("one", f.space, u, 1.0), 0.5283208335737186, 1e-15);
    EXPECT_EQ(eer_proxy("all", f.space, u, 1.0), 0.0);
    EXPECT_EQ(eer_proxy("none", f.space, u, 1.0), 0.0);
    EXPECT_EQ(eer_proxy("one", f.space, u, 0.0), 0.0);
}

TEST(ExactEer, Values) {
    Fixture f({make("one", {"a1"}), make("all", {"a1", "a2", "a3"}), make("none", {})});
    const auto u = Posterior::uniform(3);
    EXPECT_NEAR(exact_eer("one", f.space, u), 0.1058468751414936, 1e-13);
    EXPECT_EQ(exact_eer("all", f.space, u), 0.0);
    EXPECT_EQ(exact_eer("none", f.space, u), 0.0);
}

TEST(Conflict, PotentialAndDetection) {
    auto c = make("c", {"a1"});
    auto n = make("n", {"a2", "a3"});
    n.negation_of = "c";
    Fixture f({c, n, make("free", {"a1"})});
    EXPECT_EQ(conflict_potential("n", {"c"}, f.store), 1);
    EXPECT_EQ(conflict_potential("c", {"n"}, f.store), 1);
    EXPECT_EQ(conflict_potential("free", {"c"}, f.store), 0);
    EXPECT_EQ(conflict_potential("n", {"free"}, f.store), 0);
    EXPECT_TRUE(has_conflict({"c", "n"}, f.store));
    EXPECT_FALSE(has_conflict({"c"}, f.store));
    EXPECT_FALSE(has_conflict({"c", "free"}, f.store));
}

TEST(Selection, ConflictBonusOvertakesSmallGap) {
    // proxies at the uniform prior: x = 0.2113, y = 0.1057; y completes a pair with evaluated z.
    auto x = make("x", {"a1"}, 0.4, 0, 0);
    auto y = make("y", {"a2"}, 0.2, 0, 0);
    auto z = make("z", {"a3"}, 0.5, 0, 0);
    y.negation_of = "z";
    Fixture f({x, y, z});
    const auto u = Posterior::uniform(3);
    const EvaluatedSet evaluated{"z"};
    const std::vector<ClaimId> pool{"x", "y"};
    EXPECT_EQ(select_next(pool, {f.space, u, f.store, evaluated, 0.0}), "x");
    EXPECT_EQ(select_next(pool, {f.space, u, f.store, evaluated, 0.15}), "y");
    EXPECT_NEAR(selection_score("y", {f.space, u, f.store, evaluated, 0.15}), 0.2 * 0.5283208335737186 + 0.15, 1e-12);
}

TEST(Selection, TiesGoToSmallerId) {
    Fixture f({make("b", {"a1"}), make("a", {"a2"})});
    const auto u = Posterior::uniform(3);
    const std::vector<ClaimId> pool{"b", "a"};
    EXPECT_EQ(select_next(pool, {f.space, u, f.store, {}, 0.05}), "a");
    EXPECT_THROW(select_next(std::vector<ClaimId>{}, {f.space, u, f.store, {}, 0.05}), ConfigError);
}

TEST(Observation, ProvenanceThreshold) {
    auto o = observe_truth(make("x", {}, 0.9, 3, 0));
    EXPECT_DOUBLE_EQ(o.verification_prob, 0.8);
    EXPECT_TRUE(o.observed);
    o = observe_truth(make("x", {}, 0.9, 0, 3));
    EXPECT_DOUBLE_EQ(o.verification_prob, 0.2);
    EXPECT_FALSE(o.observed);
    o = observe_truth(make("x", {}, 0.5, 0, 0));
    EXPECT_DOUBLE_EQ(o.verification_prob, 0.5);
    EXPECT_TRUE(o.observed);
}

TEST(BayesUpdate, SingleSupportTrue) {
    Fixture f({make("one", {"a1"}), make("all", {"a1", "a2", "a3"})});
    const auto p = bayes_update(Posterior::uniform(3), "one", true, f.space);
    EXPECT_NEAR(p[0], 0.5384615384615384, 1e-15);
    EXPECT_NEAR(p[1], 0.23076923076923078, 1e-15);
    EXPECT_NEAR(p[2], 0.23076923076923078, 1e-15);
    const auto prior = Posterior::from_weights({0.2, 0.5, 0.3});
    EXPECT_EQ(bayes_update(prior, "all", true, f.space), prior);
    EXPECT_EQ(bayes_update(prior, "all", false, f.space), prior);
}

TEST(BayesUpdate, FiveTrueObservationsRatioChain) {
    Fixture f({make("one", {"a1"})});
    const double expected_h[] = {1.4572659, 1.1081872, 0.7097404, 0.4032540, 0.21289564890680956};
    auto p = Posterior::uniform(3);
    for (int k = 0; k < 5; ++k) {
        p = bayes_update(p, "one", true, f.space);
        EXPECT_NEAR(entropy(p), expected_h[k], 1e-7);
    }
    const double r5 = std::pow(7.0 / 3.0, 5);
    EXPECT_NEAR(p[0], r5 / (r5 + 2.0), 1e-12);
    EXPECT_NEAR(p[0], 0.9718961, 1e-7);
}

TEST(BayesUpdate, SoftModeMixesLikelihoods) {
    Fixture f({make("one", {"a1"})});
    const auto u = Posterior::uniform(3);
    EXPECT_EQ(bayes_update_soft(u, "one", 1.0, f.space), bayes_update(u, "one", true, f.space));
    const auto half = bayes_update_soft(u, "one", 0.5, f.space);
    EXPECT_NEAR(half[0], 1.0 / 3.0, 1e-15);
}

TEST(Sufficiency, Conjuncts) {
    auto c = make("c", {"a1"});
    auto n = make("n", {"a2"});
    n.negation_of = "c";
    Fixture f({c, n});
    const auto peaked = Posterior::from_weights({0.9718961, 0.01405195, 0.01405195});
    EXPECT_TRUE(epistemic_sufficiency(peaked, {"c"}, f.store, 0.3));
    const auto certain = Posterior::from_weights({1.0, 0.0, 0.0});
    EXPECT_FALSE(epistemic_sufficiency(certain, {"c", "n"}, f.store, 0.3));
    EXPECT_FALSE(epistemic_sufficiency(Posterior::uniform(3), {}, f.store, 0.3));
}

TEST(ConfigValidation, RejectsOutOfRange) {
    ECRConfig cfg;
    EXPECT_NO_THROW(validate(cfg, 3));
    cfg.epsilon = 0.0;
    EXPECT_THROW(validate(cfg, 3), ConfigError);
    cfg.epsilon = 1.6;
    EXPECT_THROW(validate(cfg, 3), ConfigError);
    cfg = {};
    cfg.max_iterations = 0;
    EXPECT_THROW(validate(cfg, 3), ConfigError);
    cfg = {};
    cfg.lambda = -0.1;
    EXPECT_THROW(validate(cfg, 3), ConfigError);
    cfg = {};
    cfg.likelihood = {0.3, 0.7};
    EXPECT_THROW(validate(cfg, 3), ConfigError);
}

TEST(Resolve, CleanPoolCollapsesAtStepFive) {
    auto f = clean_pool();
    const auto ids = f.ids();
    const auto out = resolve(ids, f.space, Posterior::uniform(3), ECRConfig{}, f.store);
    EXPECT_EQ(out.stop_reason, StopReason::epistemic_sufficiency);
    EXPECT_EQ(out.claims_evaluated(), 5u);
    EXPECT_EQ(out.dominant, std::optional<HypothesisId>("a1"));
    EXPECT_NEAR(entropy(out.posterior), 0.21289564890680956, 1e-12);
    EXPECT_FALSE(out.has_unresolved_conflict);
    const double expected_h[] = {1.4572659, 1.1081872, 0.7097404, 0.4032540, 0.2128956};
    for (int k = 0; k < 5; ++k) {
        EXPECT_EQ(out.trace[k].step, k + 1);
        EXPECT_EQ(out.trace[k].claim_id, "t" + std::to_string(k));
        EXPECT_TRUE(out.trace[k].observed);
        EXPECT_DOUBLE_EQ(out.trace[k].verification_prob, 0.8);
        EXPECT_NEAR(out.trace[k].entropy_after, expected_h[k], 1e-7);
        EXPECT_FALSE(out.trace[k].conflict_bonus_applied);
    }
}

TEST(Resolve, TwinPairRefusesDominant) {
    auto c = make("c1", {"a1"}, 0.8, 3, 0);
    auto n = make("c1-neg", {"a2"}, 0.8, 0, 3);
    n.negation_of = "c1";
    Fixture f({c, n}, {{"a1", ""}, {"a2", ""}});
    const auto ids = f.ids();
    const auto out = resolve(ids, f.space, Posterior::uniform(2), ECRConfig{}, f.store);
    EXPECT_EQ(out.claims_evaluated(), 2u);
    EXPECT_TRUE(out.has_unresolved_conflict);
    EXPECT_FALSE(out.dominant.has_value());
    EXPECT_EQ(out.stop_reason, StopReason::unresolved_conflict);
    EXPECT_TRUE(out.trace[1].conflict_bonus_applied);
}

TEST(Resolve, EmptyPoolKeepsPrior) {
    auto f = clean_pool();
    const auto prior = Posterior::uniform(3);
    const auto out = resolve(std::vector<ClaimId>{}, f.space, prior, ECRConfig{}, f.store);
    EXPECT_EQ(out.stop_reason, StopReason::candidates_exhausted);
    EXPECT_EQ(out.posterior, prior);
    EXPECT_TRUE(out.trace.empty());
}

TEST(Resolve, BudgetExhaustionIsMaxIterations) {
    auto f = clean_pool();
    ECRConfig cfg;
    cfg.max_iterations = 3;
    const auto ids = f.ids();
    const auto out = resolve(ids, f.space, Posterior::uniform(3), cfg, f.store);
    EXPECT_EQ(out.claims_evaluated(), 3u);
    EXPECT_EQ(out.stop_reason, StopReason::max_iterations);
    EXPECT_FALSE(out.dominant.has_value());
}

TEST(Resolve, GenericOnlyPoolIsExhausted) {
    std::vector<Claim> cs;
    for (int i = 0; i < 4; ++i) cs.push_back(make("g" + std::to_string(i), {"a1", "a2", "a3"}));
    Fixture f(cs);
    const auto ids = f.ids();
    const auto out = resolve(ids, f.space, Posterior::uniform(3), ECRConfig{}, f.store);
    EXPECT_EQ(out.stop_reason, StopReason::candidates_exhausted);
    EXPECT_DOUBLE_EQ(entropy(out.posterior), std::log2(3.0));
}

TEST(Resolve, LambdaInertWithoutTwins) {
    auto f = clean_pool();
    const auto ids = f.ids();
    ECRConfig a, b;
    a.lambda = 0.0;
    b.lambda = 0.1;
    const auto ra = resolve(ids, f.space, Posterior::uniform(3), a, f.store);
    const auto rb = resolve(ids, f.space, Posterior::uniform(3), b, f.store);
    ASSERT_EQ(ra.trace.size(), rb.trace.size());
    for (std::size_t i = 0; i < ra.trace.size(); ++i) {
        EXPECT_EQ(ra.trace[i].claim_id, rb.trace[i].claim_id);
        EXPECT_EQ(ra.trace[i].entropy_after, rb.trace[i].entropy_after);
    }
    EXPECT_EQ(ra.posterior, rb.posterior);
}

TEST(Resolve, RejectsUnknownCandidate) {
    auto f = clean_pool();
    const std::vector<ClaimId> ids{"t0", "ghost"};
    EXPECT_THROW(resolve(ids, f.space, Posterior::uniform(3), ECRConfig{}, f.store), ClaimStoreError);
    EXPECT_THROW(resolve(f.ids(), f.space, Posterior::uniform(2), ECRConfig{}, f.store), ConfigError);
}

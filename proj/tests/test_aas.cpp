#include <gtest/gtest.h>

#include "random_instances.hpp"
#include "support.hpp"

using namespace desattack;
using testing_support::pairs;
using testing_support::RunningExample;

namespace {

struct Built {
  RunningExample ex;
  std::shared_ptr<const AasContext> ctx = make_context(ex.g, ex.h);
  AasGraph aas = build_aas(ctx);
  ExtendedString h(const std::string& text) const { return parse_extended(ex.g.alphabet(), text); }
  StateId z(const std::string& n) const { return ex.h.automaton().state(n); }
};

}  // namespace

TEST(BuildAas, InitialStateOffersBAndC) {
  Built b;
  const AasNode& root = b.aas.node(b.aas.initial());
  EXPECT_TRUE(root.is_environment());
  EXPECT_EQ(root.q, b.ex.states({"1", "2"}));
  EXPECT_EQ(root.qt, pairs(b.ctx->aug, {{"1", "1"}, {"2", "2"}}));
  EXPECT_EQ(root.z, b.z("z0"));
  EXPECT_EQ(environment_events(*b.ctx, root), (EventSet{b.ex.ev("b"), b.ex.ev("c")}));
  ASSERT_EQ(b.aas.edges(0).size(), 2u);
}

TEST(BuildAas, EraseBranch) {
  Built b;
  auto a01 = run_extended(b.aas, b.h("b"));
  ASSERT_TRUE(a01);
  EXPECT_TRUE(b.aas.node(*a01).is_attack());
  EXPECT_EQ(b.aas.node(*a01).sigma, b.ex.ev("b"));
  EXPECT_EQ(b.aas.edges(*a01).size(), 2u);  // erase, forward b
  auto n = run_extended(b.aas, b.h("b ^"));
  ASSERT_TRUE(n);
  EXPECT_EQ(b.aas.node(*n).q, b.ex.states({"1", "2"}));
  EXPECT_EQ(b.aas.node(*n).qt, pairs(b.ctx->aug, {{"1", "3"}, {"1", "4"}, {"2", "4"}}));
  EXPECT_EQ(b.aas.node(*n).z, b.z("z0"));
}

TEST(BuildAas, ForcedDRevealsTheAttack) {
  Built b;
  auto n = run_extended(b.aas, b.h("b ^ d ^d"));
  ASSERT_TRUE(n);
  EXPECT_TRUE(b.aas.node(*n).q.empty());
  EXPECT_EQ(b.aas.node(*n).qt, pairs(b.ctx->aug, {{"1", "6"}, {"2", "6"}}));
  EXPECT_TRUE(b.aas.node(*n).revealing());
  EXPECT_TRUE(b.aas.edges(*n).empty());
}

TEST(BuildAas, EraseThenForwardCReachesTheSecretEstimate) {
  // The supervisor moves on the forwarded c, so the state carries z2.
  Built b;
  auto n = run_extended(b.aas, b.h("b ^ c ^c"));
  ASSERT_TRUE(n);
  EXPECT_EQ(b.aas.node(*n).q, b.ex.states({"3", "5"}));
  EXPECT_EQ(b.aas.node(*n).qt, pairs(b.ctx->aug, {{"1", "6"}}));
  EXPECT_EQ(b.aas.node(*n).z, b.z("z2"));
}

TEST(BuildAas, PassThroughBranch) {
  Built b;
  auto n = run_extended(b.aas, b.h("b ^b"));
  ASSERT_TRUE(n);
  EXPECT_EQ(b.aas.node(*n).q, b.ex.states({"3", "4"}));
  EXPECT_EQ(b.aas.node(*n).z, b.z("z1"));
  auto c = run_extended(b.aas, b.h("c ^c"));
  ASSERT_TRUE(c);
  EXPECT_EQ(b.aas.node(*c).q, b.ex.states({"3", "5"}));
  EXPECT_EQ(b.aas.node(*c).qt, pairs(b.ctx->aug, {{"1", "3"}, {"1", "5"}, {"2", "3"}}));
  EXPECT_FALSE(run_extended(b.aas, b.h("c ^")));  // c is not vulnerable
  EXPECT_FALSE(run_extended(b.aas, b.h("d")));
  EXPECT_EQ(run_extended(b.aas, {}), b.aas.initial());
}

TEST(BuildAas, SizeWithinWorstCaseBound) {
  Built b;
  EXPECT_LE(std::log2(static_cast<double>(b.aas.size())), log2_node_bound(*b.ctx));
  EXPECT_EQ(b.aas.num_environment() + b.aas.num_attack(), b.aas.size());
}

TEST(ExtendedStrings, ObsAndTam) {
  Built b;
  EXPECT_EQ(obs(b.h("b ^ c ^c")), b.ex.obs("b c"));
  EXPECT_TRUE(obs({}).empty());
  EXPECT_EQ(obs(b.h("c ^c c ^c")), b.ex.obs("c c"));
  EXPECT_EQ(tam(b.h("b ^ c ^c")), b.ex.obs("c"));
  EXPECT_EQ(tam(b.h("b ^b")), b.ex.obs("b"));
  EXPECT_EQ(tam(b.h("b ^ d ^d")), b.ex.obs("d"));
}

TEST(ExtendedStrings, RejectMalformedAlternation) {
  Built b;
  EXPECT_THROW(obs(b.h("b c")), InputError);
  EXPECT_THROW(tam(b.h("^ b")), InputError);
  EXPECT_THROW(parse_extended(b.ex.g.alphabet(), "b ^q"), InputError);
}

TEST(ExtendedStrings, FormatRoundTrips) {
  Built b;
  for (const char* text : {"b ^ c ^c", "b ^b", "c ^c d ^d"})
    EXPECT_EQ(format_extended(b.ex.g.alphabet(), b.h(text)), text);
}

TEST(ExtendedStrings, StrategyRunMatchesStructure) {
  Built b;
  EraseFirstStrategy erase_b(b.ex.ev("b"));
  EXPECT_EQ(extended_run(b.ex.g.alphabet(), erase_b, b.ex.obs("b c")), b.h("b ^ c ^c"));
}

// --- properties ---------------------------------------------------------------

TEST(AasProperties, StructuralInvariants) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto in = testing_support::random_instance(seed);
    auto ctx = make_context(in.plant, in.sup);
    AasGraph g = build_aas(ctx);
    EXPECT_LE(std::log2(static_cast<double>(g.size())), log2_node_bound(*ctx));
    const AasNode& root = g.node(0);
    EXPECT_EQ(root.q, in.plant.initial());
    EXPECT_EQ(root.qt, ctx->aug.base.initial());
    EXPECT_EQ(root.z, in.sup.initial());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const AasNode& n = g.node(i);
      EXPECT_EQ(n.q.empty(), n.revealing()) << "seed " << seed;
      if (n.is_attack()) {
        EXPECT_FALSE(n.revealing()) << "seed " << seed;
      }
      std::set<AasLabel> labels;
      for (const auto& e : g.edges(i)) {
        EXPECT_TRUE(labels.insert(e.label).second) << "nondeterministic, seed " << seed;
        EXPECT_NE(n.is_environment(), g.node(e.target).is_environment()) << "seed " << seed;
        if (n.is_environment()) {
          EXPECT_TRUE(std::holds_alternative<EventId>(e.label));
          EXPECT_EQ(g.node(e.target).sigma, std::get<EventId>(e.label));
        } else {
          ASSERT_TRUE(std::holds_alternative<AttackAction>(e.label));
          EXPECT_TRUE(admissible(in.plant.alphabet(), *n.sigma, std::get<AttackAction>(e.label)));
        }
      }
      if (n.is_attack()) {
        EXPECT_EQ(g.edges(i).size(), action_space(in.plant.alphabet(), *n.sigma).size());
      }
      if (n.is_environment()) {
        EXPECT_EQ(g.edges(i).size(), environment_events(*ctx, n).size());
      }
    }
  }
}

TEST(AasProperties, ConstructionIsDeterministic) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto in = testing_support::random_instance(seed);
    EXPECT_EQ(build_aas(in.plant, in.sup), build_aas(in.plant, in.sup));
  }
}

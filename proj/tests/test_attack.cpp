#include <gtest/gtest.h>

#include "random_instances.hpp"
#include "support.hpp"

using namespace desattack;
using testing_support::RunningExample;

namespace {

Alphabet with_vulnerable(const Alphabet& s, std::initializer_list<const char*> names) {
  auto m = s.to_map();
  for (auto& [n, f] : m) f.vulnerable = false;
  for (const char* n : names) m[n].vulnerable = true;
  return Alphabet(m);
}

Automaton relabel(const Automaton& a, const Alphabet& s) {
  Automaton::Builder b;
  b.alphabet(s);
  for (StateId x = 0; x < a.num_states(); ++x) b.state(a.state_name(x));
  for (StateId x : a.initial()) b.initial(a.state_name(x));
  for (StateId x : a.secret_initial()) b.secret(a.state_name(x));
  for (StateId x = 0; x < a.num_states(); ++x)
    for (const auto& [e, y] : a.out(x)) b.transition(a.state_name(x), s.name(e), a.state_name(y));
  return b.build();
}

/// Answers with a fixed action for every event, admissible or not.
class Constant final : public AttackStrategy {
 public:
  explicit Constant(AttackAction a) : a_(a) {}
  AttackAction decide(const Observation&, EventId) const override { return a_; }

 private:
  AttackAction a_;
};

}  // namespace

TEST(ActionSpace, VulnerableEventsMayBeErasedOrReplaced) {
  RunningExample ex;
  const Alphabet& s = ex.g.alphabet();
  EXPECT_EQ(action_space(s, ex.ev("b")), (std::vector{AttackAction::erase(), AttackAction::forward(ex.ev("b"))}));
  EXPECT_EQ(action_space(s, ex.ev("d")), std::vector{AttackAction::forward(ex.ev("d"))});
  Alphabet bc = with_vulnerable(s, {"b", "c"});
  EXPECT_EQ(action_space(bc, ex.ev("b")), (std::vector{AttackAction::erase(), AttackAction::forward(ex.ev("b")),
                                                       AttackAction::forward(ex.ev("c"))}));
  EXPECT_THROW(action_space(s, ex.ev("a")), InputError);
}

TEST(Modify, AppliesTheStrategyEventByEvent) {
  RunningExample ex;
  const Alphabet& s = ex.g.alphabet();
  EraseFirstStrategy erase_b(ex.ev("b"));
  PassThroughStrategy pass;
  EXPECT_EQ(modify(s, erase_b, ex.obs("b c")), ex.obs("c"));
  EXPECT_EQ(modify(s, pass, ex.obs("b c d")), ex.obs("b c d"));
  EXPECT_EQ(modify(s, erase_b, ex.obs("c c")), ex.obs("c c"));
  EXPECT_EQ(modify(s, erase_b, ex.obs("b b")), ex.obs("b"));
  EXPECT_TRUE(modify(s, erase_b, {}).empty());
}

TEST(Modify, RejectsInadmissibleActions) {
  RunningExample ex;
  const Alphabet& s = ex.g.alphabet();
  EXPECT_THROW(modify(s, Constant(AttackAction::erase()), ex.obs("c")), ContractError);
  EXPECT_THROW(modify(s, Constant(AttackAction::forward(ex.ev("d"))), ex.obs("b")), ContractError);
  EXPECT_THROW(modify(s, PassThroughStrategy{}, Observation{ex.ev("a")}), InputError);
}

TEST(AttackedStep, ErasingKeepsTheSupervisorStill) {
  RunningExample ex;
  EraseFirstStrategy erase_b(ex.ev("b"));
  const Automaton& h = ex.h.automaton();
  AttackedState s0 = attacked_initial(ex.h, ex.st("1"));
  AttackedState s1 = attacked_step(ex.g, ex.h, erase_b, s0, ex.ev("b"));
  EXPECT_EQ(s1.x, ex.st("3"));
  EXPECT_EQ(s1.z, h.state("z0"));
  EXPECT_EQ(s1.actual, ex.obs("b"));
  EXPECT_TRUE(s1.doctored.empty());
  AttackedState s2 = attacked_step(ex.g, ex.h, erase_b, s1, ex.ev("c"));
  EXPECT_EQ(s2.x, ex.st("6"));
  EXPECT_EQ(s2.z, h.state("z2"));
  EXPECT_EQ(s2.actual, ex.obs("b c"));
  EXPECT_EQ(s2.doctored, ex.obs("c"));
}

TEST(AttackedStep, PassThroughFollowsTheClosedLoop) {
  RunningExample ex;
  PassThroughStrategy pass;
  AttackedState s1 = attacked_step(ex.g, ex.h, pass, attacked_initial(ex.h, ex.st("1")), ex.ev("b"));
  EXPECT_EQ(s1.x, ex.st("3"));
  EXPECT_EQ(s1.z, ex.h.automaton().state("z1"));
  EXPECT_EQ(s1.doctored, ex.obs("b"));
  AttackedState s2 = attacked_step(ex.g, ex.h, pass, s1, ex.ev("a"));
  EXPECT_EQ(s2.x, ex.st("4"));
  EXPECT_EQ(s2.z, s1.z);
  EXPECT_EQ(s2.actual, s1.actual);
}

TEST(AttackedStep, RejectsDisabledOrInfeasibleEvents) {
  RunningExample ex;
  PassThroughStrategy pass;
  AttackedState s1 = attacked_step(ex.g, ex.h, pass, attacked_initial(ex.h, ex.st("1")), ex.ev("b"));
  EXPECT_THROW(attacked_step(ex.g, ex.h, pass, s1, ex.ev("c")), ContractError);  // c disabled at z1
  EXPECT_THROW(attacked_step(ex.g, ex.h, pass, s1, ex.ev("d")), ContractError);  // no d at 3
}

TEST(AttackedStep, UndefinedSupervisorMoveRevealsTheAttack) {
  RunningExample ex;
  EraseFirstStrategy erase_b(ex.ev("b"));
  AttackedState s = attacked_initial(ex.h, ex.st("2"));
  s = attacked_step(ex.g, ex.h, erase_b, s, ex.ev("b"));
  s = attacked_step(ex.g, ex.h, erase_b, s, ex.ev("d"));
  EXPECT_EQ(s.z, ex.h.automaton().state("z0"));  // z0 self-loops on d
  EXPECT_FALSE(s.detected());

  // With d and c vulnerable, replacing d by c at z1 has no supervisor move.
  Alphabet wide = with_vulnerable(ex.g.alphabet(), {"b", "c", "d"});
  Plant g = relabel(ex.g, wide);
  SupervisorAutomaton h(relabel(ex.h.automaton(), wide));
  TableStrategy swap;
  swap.set(ex.obs("b d"), AttackAction::forward(ex.ev("c")));
  AttackedState t = attacked_initial(h, ex.st("2"));
  t = attacked_step(g, h, swap, t, ex.ev("b"));
  EXPECT_EQ(t.z, h.automaton().state("z1"));
  t = attacked_step(g, h, swap, t, ex.ev("d"));
  EXPECT_TRUE(t.detected());
  EXPECT_EQ(t.z, kAttackRevealed);
  EXPECT_EQ(t.x, ex.st("6"));
  EXPECT_FALSE(is_stealthy(g, h, swap, ex.obs("b d")));
}

TEST(IsStealthy, RunningExample) {
  RunningExample ex;
  EraseFirstStrategy erase_b(ex.ev("b"));
  EXPECT_TRUE(is_stealthy(ex.g, ex.h, erase_b, ex.obs("b c")));
  EXPECT_EQ(current_state_estimate(ex.g, ex.h, ex.obs("c")), ex.states({"3", "4", "5"}));
  EXPECT_TRUE(is_stealthy(ex.g, ex.h, PassThroughStrategy{}, {}));
  EXPECT_FALSE(is_stealthy(ex.g, ex.h, erase_b, ex.obs("b d")));
}

TEST(BoundedAttackedLanguage, RunningExample) {
  RunningExample ex;
  EraseFirstStrategy erase_b(ex.ev("b"));
  auto all = bounded_attacked_language(ex.g, ex.h, erase_b, 2);
  EXPECT_TRUE(all.contains(ex.obs("b c")));
  auto from2 = bounded_attacked_language(ex.g, ex.h, erase_b, ex.st("2"), 2);
  EXPECT_TRUE(from2.contains(ex.obs("b d")));
  EXPECT_FALSE(bounded_attacked_language(ex.g, ex.h, PassThroughStrategy{}, 2).contains(ex.obs("b c")));
}

TEST(AttackEstimates, ErasingBThenC) {
  RunningExample ex;
  AugmentedPlant aug = build_augmented(ex.g);
  EraseFirstStrategy erase_b(ex.ev("b"));
  auto e = attack_estimates(ex.g, aug, ex.h, erase_b, ex.obs("b c"));
  EXPECT_EQ(e.doctored, ex.obs("c"));
  EXPECT_EQ(e.attacker_initial, ex.states({"1"}));
  EXPECT_EQ(e.attacker_current, ex.states({"6"}));
  EXPECT_EQ(e.supervisor_current, ex.states({"3", "4", "5"}));
  EXPECT_TRUE(e.stealthy);
}

// --- properties ---------------------------------------------------------------

namespace {

/// Deterministic pseudo-random admissible strategy: the action depends on a
/// hash of the history.
class Hashed final : public AttackStrategy {
 public:
  Hashed(const Alphabet& s, std::uint64_t salt) : s_(s), salt_(salt) {}
  AttackAction decide(const Observation& history, EventId sigma) const override {
    auto space = action_space(s_, sigma);
    std::uint64_t h = salt_;
    for (EventId e : history) h = h * 1'000'003u + e + 1;
    h = h * 1'000'003u + sigma + 1;
    return space[(h >> 7) % space.size()];
  }

 private:
  const Alphabet& s_;
  std::uint64_t salt_;
};

}  // namespace

TEST(AttackProperties, PassThroughPreservesTheClosedLoop) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto in = testing_support::random_instance(seed);
    Automaton cl = closed_loop(in.plant, in.sup);
    std::set<Trace> expected;
    for (StateId s : cl.initial()) expected.merge(bounded_language(cl, s, 6));
    EXPECT_EQ(bounded_attacked_language(in.plant, in.sup, PassThroughStrategy{}, 6), expected) << "seed " << seed;
  }
}

TEST(AttackProperties, ModificationIsPrefixMonotoneAndStealthIsPrefixClosed) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto in = testing_support::random_instance(seed);
    Hashed strategy(in.plant.alphabet(), seed);
    for (const Trace& s : bounded_attacked_language(in.plant, in.sup, strategy, 6)) {
      Observation alpha = project(s, in.plant.alphabet());
      Observation full = modify(in.plant.alphabet(), strategy, alpha);
      EXPECT_LE(full.size(), alpha.size());
      bool stealthy = is_stealthy(in.plant, in.sup, strategy, alpha);
      for (std::size_t k = 0; k <= alpha.size(); ++k) {
        Observation prefix(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(k));
        Observation part = modify(in.plant.alphabet(), strategy, prefix);
        EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin())) << "seed " << seed;
        if (stealthy) {
          EXPECT_TRUE(is_stealthy(in.plant, in.sup, strategy, prefix)) << "seed " << seed;
        }
      }
    }
  }
}

TEST(AttackProperties, NoVulnerableEventsMeansPassThroughOnly) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto in = testing_support::random_instance(seed);
    Alphabet plain = with_vulnerable(in.plant.alphabet(), {});
    for (EventId e : plain.observable_events())
      EXPECT_EQ(action_space(plain, e), std::vector{AttackAction::forward(e)});
  }
}

TEST(AttackProperties, RecursiveEstimatesMatchDefinitions) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto in = testing_support::random_instance(seed);
    AugmentedPlant aug = build_augmented(in.plant);
    Hashed strategy(in.plant.alphabet(), seed * 7);
    for (const Trace& s : bounded_attacked_language(in.plant, in.sup, strategy, 5)) {
      Observation alpha = project(s, in.plant.alphabet());
      auto rec = attack_estimates(in.plant, aug, in.sup, strategy, alpha);
      auto def = oracle::definitional_estimates(in.plant, in.sup, strategy, alpha);
      EXPECT_EQ(rec.attacker_initial, def.attacker_initial) << "seed " << seed;
      EXPECT_EQ(rec.attacker_current, def.attacker_current) << "seed " << seed;
      EXPECT_EQ(rec.supervisor_current, def.supervisor_current) << "seed " << seed;
      EXPECT_EQ(rec.doctored, def.doctored) << "seed " << seed;
    }
  }
}

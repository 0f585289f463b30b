#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "desattack/automaton.hpp"

namespace desattack {

/// Supervisor state meaning "the supervisor has noticed the attacker".
/// Never a valid index into the realization automaton.
inline constexpr StateId kAttackRevealed = std::numeric_limits<StateId>::max();
inline constexpr std::string_view kAttackRevealedName = "z_att";

/// Deterministic realization H = (Z, Σ, ξ, z0) of a partial-observation
/// supervisor. The control decision at z is the set of events active at z.
class SupervisorAutomaton {
 public:
  SupervisorAutomaton() = default;

  explicit SupervisorAutomaton(Automaton h) : h_(std::move(h)) {
    if (h_.initial().size() != 1)
      throw InputError("a supervisor automaton needs exactly one initial state");
    if (!h_.secret_initial().empty())
      throw InputError("a supervisor automaton cannot declare secret states");
    if (h_.find_state(kAttackRevealedName))
      throw InputError("state identifier 'z_att' is reserved");
    z0_ = *h_.initial().begin();
  }

  const Automaton& automaton() const { return h_; }
  const Alphabet& alphabet() const { return h_.alphabet(); }
  StateId initial() const { return z0_; }
  std::size_t num_states() const { return h_.num_states(); }

  std::string state_name(StateId z) const {
    if (z == kAttackRevealed) return std::string(kAttackRevealedName);
    return h_.state_name(z);
  }

  /// ξ(z, e); z_att has no successors.
  std::optional<StateId> next(StateId z, EventId e) const {
    if (z == kAttackRevealed) return std::nullopt;
    return h_.next(z, e);
  }

  /// ξ(z0, α), absent when undefined somewhere along α.
  std::optional<StateId> run(const Observation& alpha) const {
    std::optional<StateId> z = z0_;
    for (EventId e : alpha) {
      z = h_.next(*z, e);
      if (!z) return std::nullopt;
    }
    return z;
  }

  /// Δ_H(z), with Δ_H(z_att) = ∅.
  EventSet decision(StateId z) const {
    if (z == kAttackRevealed) return {};
    return feasible_events(h_, z);
  }

  friend bool operator==(const SupervisorAutomaton&, const SupervisorAutomaton&) = default;

 private:
  Automaton h_;
  StateId z0_ = 0;
};

inline EventSet control_decision(const SupervisorAutomaton& sup, StateId z) {
  return sup.decision(z);
}

/// The supervisor that never disables anything: one state with a self-loop
/// on every event.
inline SupervisorAutomaton all_enabling_supervisor(const Alphabet& alphabet) {
  Automaton::Builder b;
  b.alphabet(alphabet).state("z").initial("z");
  for (EventId e = 0; e < alphabet.size(); ++e) b.transition("z", alphabet.name(e), "z");
  return SupervisorAutomaton(b.build());
}

struct SupervisorViolation {
  enum class Kind {
    Nondeterministic,        // two successors for one (state, event)
    UnobservableMove,        // non-self-loop on an unobservable event
    UncontrollableDisabled,  // an uncontrollable event is not active
  };
  Kind kind;
  std::string state;
  std::string event;

  std::string message() const {
    switch (kind) {
      case Kind::Nondeterministic:
        return "state " + state + ": nondeterministic on event " + event;
      case Kind::UnobservableMove:
        return "state " + state + ": unobservable event " + event + " changes the supervisor state";
      case Kind::UncontrollableDisabled:
        return "state " + state + ": uncontrollable event " + event + " is disabled";
    }
    return {};
  }
};

/// Checks the realization conditions and that every control decision
/// contains all uncontrollable events. Determinism is already enforced by
/// Automaton::Builder; documents are checked for it before construction.
inline std::vector<SupervisorViolation> validate_supervisor(const SupervisorAutomaton& sup) {
  std::vector<SupervisorViolation> out;
  const Automaton& h = sup.automaton();
  const Alphabet& sigma = h.alphabet();
  for (StateId z = 0; z < h.num_states(); ++z) {
    for (const auto& [e, z2] : h.out(z)) {
      if (!sigma.observable(e) && z2 != z)
        out.push_back({SupervisorViolation::Kind::UnobservableMove, h.state_name(z), sigma.name(e)});
    }
    for (EventId e : sigma.uncontrollable_events()) {
      if (!h.next(z, e))
        out.push_back(
            {SupervisorViolation::Kind::UncontrollableDisabled, h.state_name(z), sigma.name(e)});
    }
  }
  return out;
}

/// Closed loop S/G as the product H × G; states are named "(z,x)".
inline Automaton closed_loop(const Automaton& plant, const SupervisorAutomaton& sup) {
  return product(sup.automaton(), plant);
}

}  // namespace desattack

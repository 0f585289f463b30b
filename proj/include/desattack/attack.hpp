#pragma once

// Sensor-deception attacker model: action spaces, strategies, the
// observation modification map g_A and the attacked closed loop S_A/G.

#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "desattack/estimation.hpp"

namespace desattack {

/// What the attacker does with a freshly observed event: erase it (ε̂) or
/// forward some event σ̂_a to the supervisor.
struct AttackAction {
  enum class Kind { Erase, Forward };
  Kind kind = Kind::Erase;
  EventId event = 0;  // meaningful for Forward only

  static AttackAction erase() { return {Kind::Erase, 0}; }
  static AttackAction forward(EventId e) { return {Kind::Forward, e}; }

  bool is_erase() const { return kind == Kind::Erase; }

  friend bool operator==(const AttackAction&, const AttackAction&) = default;
  // Erase sorts before every forward; forwards sort by event.
  friend auto operator<=>(const AttackAction&, const AttackAction&) = default;
};

inline std::string format_action(const Alphabet& alphabet, const AttackAction& a) {
  return a.is_erase() ? std::string("^") : "^" + alphabet.name(a.event);
}

/// V(σ): erase or any vulnerable event when σ is vulnerable, otherwise only
/// σ itself. Ordered erase first, then forwards by event name.
inline std::vector<AttackAction> action_space(const Alphabet& alphabet, EventId sigma) {
  if (!alphabet.contains(sigma)) throw InputError("event index out of range");
  if (!alphabet.observable(sigma))
    throw InputError("event '" + alphabet.name(sigma) + "' is unobservable");
  if (!alphabet.vulnerable(sigma)) return {AttackAction::forward(sigma)};
  std::vector<AttackAction> out{AttackAction::erase()};
  for (EventId e : alphabet.vulnerable_events()) out.push_back(AttackAction::forward(e));
  return out;
}

inline bool admissible(const Alphabet& alphabet, EventId sigma, const AttackAction& a) {
  if (!alphabet.vulnerable(sigma)) return a == AttackAction::forward(sigma);
  return a.is_erase() || (alphabet.contains(a.event) && alphabet.vulnerable(a.event));
}

/// A deterministic attack strategy: decides the action for the newest
/// observable event σ given the actual observation history before it.
class AttackStrategy {
 public:
  virtual ~AttackStrategy() = default;
  virtual AttackAction decide(const Observation& history, EventId sigma) const = 0;
};

class PassThroughStrategy final : public AttackStrategy {
 public:
  AttackAction decide(const Observation&, EventId sigma) const override {
    return AttackAction::forward(sigma);
  }
};

/// Erases the first occurrence of one event and forwards everything else.
class EraseFirstStrategy final : public AttackStrategy {
 public:
  explicit EraseFirstStrategy(EventId target) : target_(target) {}

  AttackAction decide(const Observation& history, EventId sigma) const override {
    if (sigma == target_ && std::find(history.begin(), history.end(), target_) == history.end())
      return AttackAction::erase();
    return AttackAction::forward(sigma);
  }

 private:
  EventId target_;
};

/// Explicit table keyed by the full history ασ; pass-through elsewhere.
class TableStrategy final : public AttackStrategy {
 public:
  TableStrategy() = default;
  explicit TableStrategy(std::map<Observation, AttackAction> table) : table_(std::move(table)) {}

  void set(Observation history_with_sigma, AttackAction a) {
    table_[std::move(history_with_sigma)] = a;
  }

  AttackAction decide(const Observation& history, EventId sigma) const override {
    Observation key = history;
    key.push_back(sigma);
    auto it = table_.find(key);
    return it == table_.end() ? AttackAction::forward(sigma) : it->second;
  }

  const std::map<Observation, AttackAction>& entries() const { return table_; }

 private:
  std::map<Observation, AttackAction> table_;
};

/// Asks the strategy and checks the answer lies in V(σ).
inline AttackAction checked_decision(const Alphabet& alphabet, const AttackStrategy& strategy,
                                     const Observation& history, EventId sigma) {
  AttackAction a = strategy.decide(history, sigma);
  if (!admissible(alphabet, sigma, a))
    throw ContractError("strategy answered " + format_action(alphabet, a) + " to event '" +
                        alphabet.name(sigma) + "', which is not in its action space");
  return a;
}

/// g_A(α): the observation the supervisor receives.
inline Observation modify(const Alphabet& alphabet, const AttackStrategy& strategy,
                          const Observation& alpha) {
  Observation history, doctored;
  for (EventId sigma : alpha) {
    if (!alphabet.contains(sigma) || !alphabet.observable(sigma))
      throw InputError("observations may only contain observable events");
    AttackAction a = checked_decision(alphabet, strategy, history, sigma);
    if (!a.is_erase()) doctored.push_back(a.event);
    history.push_back(sigma);
  }
  return doctored;
}

/// Configuration of the attacked closed loop.
struct AttackedState {
  StateId x = 0;
  /// Supervisor state driven by doctored observations; kAttackRevealed once
  /// the supervisor received an event it has no transition for.
  StateId z = 0;
  Observation actual;
  Observation doctored;

  bool detected() const { return z == kAttackRevealed; }
  friend auto operator<=>(const AttackedState&, const AttackedState&) = default;
};

inline AttackedState attacked_initial(const SupervisorAutomaton& sup, StateId x0) {
  return {x0, sup.initial(), {}, {}};
}

/// One plant event under S_A = S ∘ g_A. The event must be feasible in the
/// plant and enabled by the supervisor's current decision.
inline AttackedState attacked_step(const Automaton& plant, const SupervisorAutomaton& sup,
                                   const AttackStrategy& strategy, const AttackedState& state,
                                   EventId event) {
  auto x2 = plant.next(state.x, event);
  if (!x2) throw ContractError("event '" + plant.alphabet().name(event) + "' is not feasible");
  if (!sup.decision(state.z).contains(event))
    throw ContractError("event '" + plant.alphabet().name(event) + "' is disabled");
  AttackedState out = state;
  out.x = *x2;
  const Alphabet& sigma = plant.alphabet();
  if (!sigma.observable(event)) return out;
  AttackAction a = checked_decision(sigma, strategy, state.actual, event);
  out.actual.push_back(event);
  if (!a.is_erase()) {
    out.doctored.push_back(a.event);
    out.z = sup.next(state.z, a.event).value_or(kAttackRevealed);
  }
  return out;
}

/// The attack is stealthy along α iff the supervisor's estimate of
/// the doctored observation is nonempty.
inline bool is_stealthy(const Automaton& plant, const SupervisorAutomaton& sup,
                        const AttackStrategy& strategy, const Observation& alpha) {
  return !current_state_estimate(plant, sup, modify(plant.alphabet(), strategy, alpha)).empty();
}

/// L(S_A/G, x0) up to `horizon` events.
inline std::set<Trace> bounded_attacked_language(const Automaton& plant,
                                                 const SupervisorAutomaton& sup,
                                                 const AttackStrategy& strategy, StateId x0,
                                                 std::size_t horizon) {
  std::set<Trace> out{Trace{}};
  std::vector<std::pair<AttackedState, Trace>> frontier{{attacked_initial(sup, x0), {}}};
  for (std::size_t depth = 0; depth < horizon && !frontier.empty(); ++depth) {
    std::vector<std::pair<AttackedState, Trace>> next;
    for (const auto& [st, s] : frontier) {
      EventSet enabled = sup.decision(st.z);
      for (const auto& [e, _] : plant.out(st.x)) {
        if (!enabled.contains(e)) continue;
        Trace t = s;
        t.push_back(e);
        out.insert(t);
        next.emplace_back(attacked_step(plant, sup, strategy, st, e), std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Union over every initial plant state.
inline std::set<Trace> bounded_attacked_language(const Automaton& plant,
                                                 const SupervisorAutomaton& sup,
                                                 const AttackStrategy& strategy,
                                                 std::size_t horizon) {
  std::set<Trace> out;
  for (StateId x0 : plant.initial()) out.merge(bounded_attacked_language(plant, sup, strategy, x0, horizon));
  return out;
}

/// Estimates of both sides after the actual observation α under attack,
/// computed with the estimation operators (the attacker's over G̃ with the
/// supervisor's decisions driven by g_A).
struct AttackEstimates {
  Observation doctored;
  StateSet supervisor_current;  // E^C_{S/G}(g_A(α))
  StateSet attacker_current;    // E^C_{S_A/G}(α)
  StateSet attacker_initial;    // E^I_{S_A/G}(α)
  bool stealthy = false;
};

inline AttackEstimates attack_estimates(const Automaton& plant, const AugmentedPlant& aug,
                                        const SupervisorAutomaton& sup,
                                        const AttackStrategy& strategy, const Observation& alpha) {
  AttackEstimates out;
  StateId z = sup.initial();
  StateSet qt = unobservable_reach(aug.base, aug.base.initial(), sup.decision(z));
  Observation history;
  for (EventId sigma : alpha) {
    if (!sup.decision(z).contains(sigma)) {
      qt.clear();
      break;
    }
    qt = observable_reach(aug.base, qt, sigma);
    AttackAction a = checked_decision(plant.alphabet(), strategy, history, sigma);
    history.push_back(sigma);
    if (!a.is_erase()) z = sup.next(z, a.event).value_or(kAttackRevealed);
    qt = unobservable_reach(aug.base, qt, sup.decision(z));
  }
  for (StateId s : qt) {
    out.attacker_current.insert(aug.pairing[s].second);
    out.attacker_initial.insert(aug.pairing[s].first);
  }
  out.doctored = modify(plant.alphabet(), strategy, alpha);
  out.supervisor_current = current_state_estimate(plant, sup, out.doctored);
  out.stealthy = !out.supervisor_current.empty();
  return out;
}

}  // namespace desattack

#pragma once

// Partial-observation operators and state estimation under supervision.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "desattack/automaton.hpp"
#include "desattack/supervision.hpp"

namespace desattack {

/// Natural projection: drops unobservable events.
inline Observation project(const Trace& s, const Alphabet& alphabet) {
  Observation out;
  for (EventId e : s) {
    if (!alphabet.contains(e)) throw InputError("event index " + std::to_string(e) + " out of range");
    if (alphabet.observable(e)) out.push_back(e);
  }
  return out;
}

/// UR_γ(q): closure of q under unobservable events that γ enables.
inline StateSet unobservable_reach(const Automaton& g, const StateSet& q, const EventSet& gamma) {
  StateSet out = q;
  std::deque<StateId> work(q.begin(), q.end());
  const Alphabet& sigma = g.alphabet();
  while (!work.empty()) {
    StateId x = work.front();
    work.pop_front();
    for (const auto& [e, y] : g.out(x)) {
      if (sigma.observable(e) || !gamma.contains(e)) continue;
      if (out.insert(y).second) work.push_back(y);
    }
  }
  return out;
}

/// NX_σ(q); `sigma` empty stands for ε, for which NX is the identity.
inline StateSet observable_reach(const Automaton& g, const StateSet& q, std::optional<EventId> sigma) {
  if (!sigma) return q;
  g.check_event(*sigma);
  if (!g.alphabet().observable(*sigma))
    throw InputError("observable reach on unobservable event '" + g.alphabet().name(*sigma) + "'");
  StateSet out;
  for (StateId x : q)
    if (auto y = g.next(x, *sigma)) out.insert(*y);
  return out;
}

/// O(q, γ): observable events of γ that can occur after some unobservable
/// string enabled by γ.
inline EventSet observable_events(const Automaton& g, const StateSet& q, const EventSet& gamma) {
  EventSet out;
  for (StateId x : unobservable_reach(g, q, gamma))
    for (const auto& [e, _] : g.out(x))
      if (g.alphabet().observable(e) && gamma.contains(e)) out.insert(e);
  return out;
}

/// Current-state estimate of the closed loop after observing α, computed by
/// alternating NX and UR under the supervisor's decisions. Empty when α is
/// not an observation of the closed loop.
inline StateSet current_state_estimate(const Automaton& plant, const SupervisorAutomaton& sup,
                                       const Observation& alpha) {
  if (!plant.alphabet().compatible_with(sup.alphabet()))
    throw InputError("plant and supervisor alphabets differ");
  StateId z = sup.initial();
  StateSet q = unobservable_reach(plant, plant.initial(), sup.decision(z));
  for (EventId e : alpha) {
    auto z2 = sup.next(z, e);
    if (!z2) return {};
    q = observable_reach(plant, q, e);
    if (q.empty()) return {};
    z = *z2;
    q = unobservable_reach(plant, q, sup.decision(z));
  }
  return q;
}

/// G̃: automaton over (initial, current) pairs, restricted to the part
/// reachable from the diagonal. Its states are named "(x0,x)" so all the
/// estimation operators apply to it unchanged.
struct AugmentedPlant {
  Automaton base;
  /// augmented state -> (initial component, current component), as plant ids
  std::vector<std::pair<StateId, StateId>> pairing;

  std::map<std::pair<StateId, StateId>, StateId> index;

  std::optional<StateId> find(StateId x0, StateId x) const {
    auto it = index.find({x0, x});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline AugmentedPlant build_augmented(const Automaton& plant) {
  auto name = [&](StateId x0, StateId x) {
    return "(" + plant.state_name(x0) + "," + plant.state_name(x) + ")";
  };
  Automaton::Builder b;
  b.alphabet(plant.alphabet());
  std::set<std::pair<StateId, StateId>> seen;
  std::deque<std::pair<StateId, StateId>> work;
  for (StateId x0 : plant.initial()) {
    seen.emplace(x0, x0);
    work.emplace_back(x0, x0);
    b.state(name(x0, x0)).initial(name(x0, x0));
    if (plant.secret_initial().contains(x0)) b.secret(name(x0, x0));
  }
  while (!work.empty()) {
    auto [x0, x] = work.front();
    work.pop_front();
    for (const auto& [e, y] : plant.out(x)) {
      b.transition(name(x0, x), plant.alphabet().name(e), name(x0, y));
      if (seen.emplace(x0, y).second) {
        b.state(name(x0, y));
        work.emplace_back(x0, y);
      }
    }
  }
  AugmentedPlant aug{b.build(), {}, {}};
  aug.pairing.resize(aug.base.num_states());
  for (const auto& [x0, x] : seen) {
    StateId id = aug.base.state(name(x0, x));
    aug.pairing[id] = {x0, x};
    aug.index.emplace(std::pair{x0, x}, id);
  }
  return aug;
}

/// I(q̃): the initial components of a set of augmented states.
inline StateSet initial_projection(const AugmentedPlant& aug, const StateSet& qt) {
  StateSet out;
  for (StateId s : qt) out.insert(aug.pairing.at(s).first);
  return out;
}

inline StateSet initial_state_estimate(const AugmentedPlant& aug, const SupervisorAutomaton& sup,
                                       const Observation& alpha) {
  return initial_projection(aug, current_state_estimate(aug.base, sup, alpha));
}

/// Initial-state estimate through the current-state estimate of G̃.
inline StateSet initial_state_estimate(const Automaton& plant, const SupervisorAutomaton& sup,
                                       const Observation& alpha) {
  return initial_state_estimate(build_augmented(plant), sup, alpha);
}

}  // namespace desattack

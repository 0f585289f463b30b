#pragma once

// Brute-force decision procedures for testing. Nothing here calls the
// estimation operators, the AAS or the synthesis code: every set is obtained
// by exploring runs of the (attacked) closed loop event by event, directly
// from the recursive definition of L(S/G, x0).

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "desattack/attack.hpp"
#include "desattack/supervision.hpp"

namespace desattack::oracle {

/// Bounded strategy table: explicit actions on some histories ασ,
/// pass-through everywhere else.
using StrategyTable = TableStrategy;

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::size_t max_nodes = 5'000'000;
};

/// (initial state, current state) of one run.
using Config = std::pair<StateId, StateId>;
using ConfigSet = std::set<Config>;

namespace detail {

/// Runs extended by unobservable events the decision enables, starting from
/// `seed`. Visits every configuration reachable by some run.
inline ConfigSet extend_silently(const Automaton& g, ConfigSet seed, const EventSet& enabled) {
  std::vector<Config> stack(seed.begin(), seed.end());
  while (!stack.empty()) {
    auto [x0, x] = stack.back();
    stack.pop_back();
    for (const auto& [e, y] : g.out(x)) {
      if (g.alphabet().observable(e) || !enabled.contains(e)) continue;
      if (seed.emplace(x0, y).second) stack.emplace_back(x0, y);
    }
  }
  return seed;
}

/// Runs extended by one occurrence of the observable event `e`.
inline ConfigSet extend_by(const Automaton& g, const ConfigSet& runs, EventId e, const EventSet& enabled) {
  ConfigSet out;
  if (!enabled.contains(e)) return out;
  for (auto [x0, x] : runs) {
    auto it = g.out(x).find(e);
    if (it != g.out(x).end()) out.emplace(x0, it->second);
  }
  return out;
}

inline EventSet enabled_at(const SupervisorAutomaton& sup, std::optional<StateId> z) {
  if (!z) return {};
  EventSet out;
  for (const auto& [e, _] : sup.automaton().out(*z)) out.insert(e);
  return out;
}

inline ConfigSet start(const Automaton& g) {
  ConfigSet out;
  for (StateId x0 : g.initial()) out.emplace(x0, x0);
  return out;
}

/// Runs of the unattacked closed loop whose projection is `beta`.
inline ConfigSet closed_loop_runs(const Automaton& g, const SupervisorAutomaton& sup, const Observation& beta) {
  std::optional<StateId> z = sup.initial();
  ConfigSet runs = extend_silently(g, start(g), enabled_at(sup, z));
  for (EventId e : beta) {
    runs = extend_by(g, runs, e, enabled_at(sup, z));
    z = z ? sup.automaton().next(*z, e) : std::nullopt;
    runs = extend_silently(g, std::move(runs), enabled_at(sup, z));
  }
  return runs;
}

inline std::vector<AttackAction> actions(const Alphabet& sigma, EventId e) {
  if (!sigma.vulnerable(e)) return {AttackAction::forward(e)};
  std::vector<AttackAction> out{AttackAction::erase()};
  for (EventId v = 0; v < sigma.size(); ++v)
    if (sigma.vulnerable(v)) out.push_back(AttackAction::forward(v));
  return out;
}

inline bool subset_of_secret(const ConfigSet& runs, const StateSet& secret) {
  if (runs.empty()) return false;
  return std::all_of(runs.begin(), runs.end(), [&](const Config& c) { return secret.contains(c.first); });
}

}  // namespace detail

struct DefinitionalEstimates {
  StateSet attacker_current;    // E^C_{S_A/G}(α)
  StateSet attacker_initial;    // E^I_{S_A/G}(α)
  StateSet supervisor_current;  // E^C_{S/G}(g_A(α))
  Observation doctored;         // g_A(α)
};

/// Estimates of both sides after the actual observation α, from runs of
/// S_A/G and of S/G.
inline DefinitionalEstimates definitional_estimates(const Automaton& g, const SupervisorAutomaton& sup,
                                                    const AttackStrategy& strategy, const Observation& alpha) {
  DefinitionalEstimates out;
  std::optional<StateId> z = sup.initial();
  ConfigSet runs = detail::extend_silently(g, detail::start(g), detail::enabled_at(sup, z));
  Observation history;
  for (EventId e : alpha) {
    runs = detail::extend_by(g, runs, e, detail::enabled_at(sup, z));
    AttackAction a = strategy.decide(history, e);
    history.push_back(e);
    if (!a.is_erase()) {
      out.doctored.push_back(a.event);
      z = z ? sup.automaton().next(*z, a.event) : std::nullopt;
    }
    runs = detail::extend_silently(g, std::move(runs), detail::enabled_at(sup, z));
  }
  for (auto [x0, x] : runs) {
    out.attacker_initial.insert(x0);
    out.attacker_current.insert(x);
  }
  for (auto [x0, x] : detail::closed_loop_runs(g, sup, out.doctored)) out.supervisor_current.insert(x);
  return out;
}

struct AttackWitness {
  StrategyTable strategy;
  Observation observation;  // ασ
};

/// Decides IS-attackability by enumerating attacker choices: every
/// observable event the attacked loop can emit, followed by every admissible
/// action, up to `horizon` observations. A hit is an observation ασ along
/// which the strategy built so far is stealthy on α and the attacker's
/// initial-state estimate of ασ is a nonempty subset of the secret.
///
/// Only the table entries along one observation influence whether that
/// observation is a witness, so enumerating tables path by path covers every
/// table on the bounded domain.
inline std::optional<AttackWitness> exists_attacker(const Automaton& g, const SupervisorAutomaton& sup,
                                                    const StateSet& secret, std::size_t horizon,
                                                    Limits limits = {}) {
  const Alphabet& sigma = g.alphabet();
  std::size_t visited = 0;
  std::vector<std::pair<Observation, AttackAction>> path;  // (ασ, action) per step

  // runs: attacked-loop runs after the actual observation, silently extended.
  // sup_runs: closed-loop runs consistent with the doctored observation.
  auto search = [&](auto&& self, const ConfigSet& runs, const ConfigSet& sup_runs, StateId z,
                    const Observation& actual) -> std::optional<Observation> {
    if (++visited > limits.max_nodes) throw LimitExceeded("oracle enumeration limit exceeded");
    if (actual.size() >= horizon) return std::nullopt;
    EventSet enabled = detail::enabled_at(sup, z);
    for (EventId e : enabled) {
      if (!sigma.observable(e)) continue;
      ConfigSet after = detail::extend_by(g, runs, e, enabled);
      if (after.empty()) continue;
      Observation longer = actual;
      longer.push_back(e);
      if (detail::subset_of_secret(after, secret)) {
        path.emplace_back(longer, AttackAction::forward(e));
        return longer;
      }
      for (const AttackAction& a : detail::actions(sigma, e)) {
        StateId z2 = z;
        ConfigSet sup_after = sup_runs;
        if (!a.is_erase()) {
          auto next = sup.automaton().next(z, a.event);
          if (!next) continue;
          sup_after = detail::extend_by(g, sup_runs, a.event, enabled);
          z2 = *next;
        }
        sup_after = detail::extend_silently(g, std::move(sup_after), detail::enabled_at(sup, z2));
        if (sup_after.empty()) continue;  // supervisor notices the attack
        path.emplace_back(longer, a);
        auto found = self(self, detail::extend_silently(g, after, detail::enabled_at(sup, z2)), sup_after, z2, longer);
        if (found) return found;
        path.pop_back();
      }
    }
    return std::nullopt;
  };

  std::optional<StateId> z0 = sup.initial();
  ConfigSet runs = detail::extend_silently(g, detail::start(g), detail::enabled_at(sup, z0));
  auto found = search(search, runs, runs, sup.initial(), {});
  if (!found) return std::nullopt;
  AttackWitness w;
  w.observation = *found;
  for (const auto& [key, a] : path) w.strategy.set(key, a);
  return w;
}

}  // namespace desattack::oracle

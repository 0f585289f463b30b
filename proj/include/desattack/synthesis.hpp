#pragma once

// IS-attackability, Single Attack Structure extraction and the strategy a
// SAS induces.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "desattack/aas.hpp"
#include "desattack/classification.hpp"

namespace desattack {

/// A sub-structure of the SAAS with exactly one action per attack state and
/// every SAAS event kept at environment states.
struct Sas {
  AasGraph graph;
  /// attack node (index into `graph`) -> its single action
  std::map<std::size_t, AttackAction> choice;

  friend bool operator==(const Sas&, const Sas&) = default;
};

inline bool is_attackable(const AasGraph& saas, const StateSet& secret) {
  for (std::size_t i = 0; i < saas.size(); ++i)
    if (saas.node(i).is_environment() &&
        classify(saas, i, secret).detection == Detection::PositiveDetected)
      return true;
  return false;
}

namespace detail {
inline AttackAction default_action(const AasGraph& g, std::size_t attack_node) {
  const auto& edges = g.edges(attack_node);
  EventId sigma = *g.node(attack_node).sigma;
  for (const auto& e : edges)
    if (std::get<AttackAction>(e.label) == AttackAction::forward(sigma)) return AttackAction::forward(sigma);
  for (const auto& e : edges)
    if (std::get<AttackAction>(e.label).is_erase()) return AttackAction::erase();
  AttackAction best = std::get<AttackAction>(edges.front().label);
  for (const auto& e : edges) best = std::min(best, std::get<AttackAction>(e.label));
  return best;
}
}  // namespace detail

/// Builds a SAS from the SAAS: attack states listed in `pins` use the given
/// action, every other reachable attack state the default action
/// (pass-through, else erase, else the smallest forward). Only the part
/// reachable under these choices is kept.
inline Sas complete_sas(const AasGraph& saas, const std::map<std::size_t, AttackAction>& pins) {
  Sas sas{AasGraph(saas.context_ptr()), {}};
  std::vector<std::size_t> old_of_new;
  auto visit = [&](std::size_t old) {
    auto [j, fresh] = sas.graph.add_node(saas.node(old));
    if (fresh) {
      old_of_new.push_back(old);
      if (saas.label(old)) sas.graph.set_label(j, *saas.label(old));
    }
    return std::pair{j, fresh};
  };
  visit(saas.initial());
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    std::size_t old = old_of_new[i];
    if (saas.node(old).is_environment()) {
      for (const auto& e : saas.edges(old)) {
        auto [j, fresh] = visit(e.target);
        sas.graph.add_edge(i, e.label, j);
        if (fresh) work.push_back(j);
      }
      continue;
    }
    if (saas.edges(old).empty()) continue;
    auto pin = pins.find(old);
    AttackAction a = pin != pins.end() ? pin->second : detail::default_action(saas, old);
    auto target = saas.successor(old, a);
    if (!target) throw InputError("pinned action is not available at attack state");
    auto [j, fresh] = visit(*target);
    sas.graph.add_edge(i, a, j);
    sas.choice.emplace(i, a);
    if (fresh) work.push_back(j);
  }
  return sas;
}

/// Shortest extended string (breadth-first, lexicographic ties) from the
/// initial state to a positive detected state, as the SAAS nodes it visits.
inline std::optional<std::vector<std::size_t>> path_to_positive(const AasGraph& saas,
                                                                const StateSet& secret) {
  std::vector<std::optional<std::size_t>> parent(saas.size());
  std::vector<bool> seen(saas.size(), false);
  std::deque<std::size_t> work{saas.initial()};
  seen[saas.initial()] = true;
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    if (saas.node(i).is_environment() &&
        classify(saas, i, secret).detection == Detection::PositiveDetected) {
      std::vector<std::size_t> path{i};
      while (parent[path.back()]) path.push_back(*parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const auto& e : saas.edges(i)) {
      if (seen[e.target]) continue;
      seen[e.target] = true;
      parent[e.target] = i;
      work.push_back(e.target);
    }
  }
  return std::nullopt;
}

/// A SAS containing a positive detected state, or nothing when the system
/// is not IS-attackable. Attack states on a shortest path to a positive
/// detected state are pinned to that path.
inline std::optional<Sas> extract_sas(const AasGraph& saas, const StateSet& secret) {
  auto path = path_to_positive(saas, secret);
  if (!path) return std::nullopt;
  std::map<std::size_t, AttackAction> pins;
  for (std::size_t k = 0; k + 1 < path->size(); ++k) {
    std::size_t from = (*path)[k], to = (*path)[k + 1];
    if (!saas.node(from).is_attack()) continue;
    for (const auto& e : saas.edges(from))
      if (e.target == to) {
        pins.emplace(from, std::get<AttackAction>(e.label));
        break;
      }
  }
  return complete_sas(saas, pins);
}

/// The attack strategy encoded by a SAS. While the observation history has
/// an extended string in the SAS, the strategy answers with the SAS choice;
/// once it leaves the SAS it forwards every event unchanged.
class InducedStrategy final : public AttackStrategy {
 public:
  explicit InducedStrategy(std::shared_ptr<const Sas> sas) : sas_(std::move(sas)) {}

  /// Incremental execution along one run.
  class Cursor {
   public:
    explicit Cursor(const InducedStrategy& s) : sas_(s.sas_.get()), node_(sas_->graph.initial()) {}

    AttackAction advance(EventId sigma) {
      if (node_) {
        auto attack = sas_->graph.successor(*node_, sigma);
        if (attack) {
          auto it = sas_->choice.find(*attack);
          if (it != sas_->choice.end()) {
            node_ = sas_->graph.successor(*attack, it->second);
            return it->second;
          }
        }
        node_.reset();
      }
      return AttackAction::forward(sigma);
    }

    /// Current SAS environment state, absent after leaving the SAS.
    std::optional<std::size_t> node() const { return node_; }

   private:
    const Sas* sas_;
    std::optional<std::size_t> node_;
  };

  AttackAction decide(const Observation& history, EventId sigma) const override {
    Cursor c(*this);
    for (EventId e : history) c.advance(e);
    return c.advance(sigma);
  }

  const Sas& sas() const { return *sas_; }

 private:
  std::shared_ptr<const Sas> sas_;
};

inline InducedStrategy induced_strategy(Sas sas) {
  return InducedStrategy(std::make_shared<const Sas>(std::move(sas)));
}

/// Searches observations ασ of S_A/G with |ασ| ≤ horizon such that the
/// attack is stealthy along α and ∅ ≠ E^I_{S_A/G}(ασ) ⊆ secret. Returns a
/// shortest such observation (lexicographic among equals).
inline std::optional<Observation> verify_is_detectable(const Automaton& plant,
                                                       const SupervisorAutomaton& sup,
                                                       const AttackStrategy& strategy,
                                                       const StateSet& secret, std::size_t horizon) {
  check_secret(plant, secret);
  const AugmentedPlant aug = build_augmented(plant);
  struct Item {
    Observation actual, doctored;
    StateSet qt;  // closed under the current decision
    StateId z;
  };
  std::vector<Item> frontier{
      {{}, {}, unobservable_reach(aug.base, aug.base.initial(), sup.decision(sup.initial())), sup.initial()}};
  for (std::size_t depth = 0; depth < horizon && !frontier.empty(); ++depth) {
    std::vector<Item> next;
    for (const Item& it : frontier) {
      for (EventId sigma : observable_events(aug.base, it.qt, sup.decision(it.z))) {
        Observation actual = it.actual;
        actual.push_back(sigma);
        StateSet qt = observable_reach(aug.base, it.qt, sigma);
        StateSet init = initial_projection(aug, qt);
        if (!init.empty() && std::includes(secret.begin(), secret.end(), init.begin(), init.end()))
          return actual;
        AttackAction a = checked_decision(plant.alphabet(), strategy, it.actual, sigma);
        Observation doctored = it.doctored;
        StateId z = it.z;
        if (!a.is_erase()) {
          doctored.push_back(a.event);
          z = sup.next(z, a.event).value_or(kAttackRevealed);
        }
        if (current_state_estimate(plant, sup, doctored).empty()) continue;
        next.push_back({std::move(actual), std::move(doctored),
                        unobservable_reach(aug.base, qt, sup.decision(z)), z});
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace desattack

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <utility>

#include "desattack/estimation.hpp"

namespace desattack {

struct OpacityVerdict {
  bool opaque = true;
  /// Shortest observation whose initial-state estimate lies inside the secret.
  std::optional<Observation> witness;
  /// Initial-state estimate reached by the witness.
  StateSet witness_estimate;
};

/// Initial-state opacity of S/G with respect to `secret` ⊆ X_0.
///
/// Explores the observer of the augmented closed loop breadth-first (events
/// in lexicographic order). A reachable estimate q̃ violates opacity when
/// ∅ ≠ I(q̃) ⊆ secret; the first violation found is a shortest witness.
inline OpacityVerdict check_initial_state_opacity(const Automaton& plant,
                                                  const SupervisorAutomaton& sup,
                                                  const StateSet& secret) {
  for (StateId x : secret) {
    plant.check_state(x);
    if (!plant.initial().contains(x))
      throw InputError("secret state '" + plant.state_name(x) + "' is not an initial state");
  }
  if (!plant.alphabet().compatible_with(sup.alphabet()))
    throw InputError("plant and supervisor alphabets differ");

  const AugmentedPlant aug = build_augmented(plant);
  auto violates = [&](const StateSet& qt) {
    StateSet init = initial_projection(aug, qt);
    return !init.empty() &&
           std::includes(secret.begin(), secret.end(), init.begin(), init.end());
  };

  using Node = std::pair<StateSet, StateId>;
  std::map<Node, Observation> seen;
  std::deque<Node> work;
  Node root{unobservable_reach(aug.base, aug.base.initial(), sup.decision(sup.initial())),
            sup.initial()};
  seen.emplace(root, Observation{});
  work.push_back(root);
  while (!work.empty()) {
    Node node = work.front();
    work.pop_front();
    const Observation& alpha = seen.at(node);
    const auto& [qt, z] = node;
    if (violates(qt)) return {false, alpha, initial_projection(aug, qt)};
    for (EventId e : observable_events(aug.base, qt, sup.decision(z))) {
      StateId z2 = *sup.next(z, e);
      Node succ{unobservable_reach(aug.base, observable_reach(aug.base, qt, e), sup.decision(z2)), z2};
      if (seen.contains(succ)) continue;
      Observation longer = alpha;
      longer.push_back(e);
      seen.emplace(succ, std::move(longer));
      work.push_back(std::move(succ));
    }
  }
  return {};
}

}  // namespace desattack

#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "desattack/aas.hpp"

namespace desattack {

inline void check_secret(const Automaton& plant, const StateSet& secret) {
  for (StateId x : secret) {
    plant.check_state(x);
    if (!plant.initial().contains(x))
      throw InputError("secret state '" + plant.state_name(x) + "' is not an initial state");
  }
}

/// Label of an environment state; a function of (q̃, z, secret) only.
///
/// Detected labels take precedence over undetectability. An empty q̃ counts
/// as negative detected.
inline StateLabel classify(const AasContext& ctx, const AasNode& n, const StateSet& secret) {
  StateLabel label{Detection::Neutral, n.revealing()};
  StateSet init = initial_projection(ctx.aug, n.qt);
  bool any_secret = std::any_of(init.begin(), init.end(), [&](StateId x) { return secret.contains(x); });
  bool all_secret = std::all_of(init.begin(), init.end(), [&](StateId x) { return secret.contains(x); });
  if (!init.empty() && all_secret) {
    label.detection = Detection::PositiveDetected;
    return label;
  }
  if (!any_secret) {
    label.detection = Detection::NegativeDetected;
    return label;
  }
  // Every secret-rooted pair needs a non-secret companion with the same
  // current state in the closed estimate.
  StateSet closed = unobservable_reach(ctx.aug.base, n.qt, ctx.sup.decision(n.z));
  StateSet covered;  // current states reached from some non-secret initial state
  for (StateId s : closed) {
    const auto& [x0, x] = ctx.aug.pairing[s];
    if (!secret.contains(x0)) covered.insert(x);
  }
  bool undetectable = std::all_of(closed.begin(), closed.end(), [&](StateId s) {
    const auto& [x0, x] = ctx.aug.pairing[s];
    return !secret.contains(x0) || covered.contains(x);
  });
  if (undetectable) label.detection = Detection::Undetectable;
  return label;
}

inline StateLabel classify(const AasGraph& g, std::size_t node, const StateSet& secret) {
  if (!g.node(node).is_environment()) throw InputError("only environment states are classified");
  return classify(g.context(), g.node(node), secret);
}

inline bool is_terminal(const StateLabel& l) { return l.detection != Detection::Neutral; }

/// Simplified AAS: the part of `aas` reachable from its initial state once
/// every detected or undetectable environment state loses its outgoing
/// edges. Nodes are renumbered in breadth-first order and every environment
/// state carries its label.
inline AasGraph simplify(const AasGraph& aas, const StateSet& secret) {
  check_secret(aas.context().plant, secret);
  AasGraph out(aas.context_ptr());
  std::vector<std::size_t> old_of_new;
  auto visit = [&](std::size_t old) {
    auto [j, fresh] = out.add_node(aas.node(old));
    if (fresh) old_of_new.push_back(old);
    return std::pair{j, fresh};
  };
  visit(aas.initial());
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    std::size_t old = old_of_new[i];
    if (aas.node(old).is_environment()) {
      StateLabel l = classify(aas, old, secret);
      out.set_label(i, l);
      if (is_terminal(l)) continue;
    }
    for (const auto& e : aas.edges(old)) {
      auto [j, fresh] = visit(e.target);
      out.add_edge(i, e.label, j);
      if (fresh) work.push_back(j);
    }
  }
  return out;
}

}  // namespace desattack

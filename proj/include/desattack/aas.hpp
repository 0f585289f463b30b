#pragma once

// All Attack Structure: a bipartite arena alternating environment states,
// where the plant emits an observable event, and attack states, where the
// attacker decides what the supervisor receives.

#include <cmath>
#include <compare>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "desattack/attack.hpp"
#include "desattack/estimation.hpp"
#include "desattack/supervision.hpp"

namespace desattack {

/// Everything an AAS refers to by index. Shared by every graph derived from
/// the same plant/supervisor pair.
struct AasContext {
  Automaton plant;
  AugmentedPlant aug;
  SupervisorAutomaton sup;
};

inline std::shared_ptr<const AasContext> make_context(const Automaton& plant,
                                                      const SupervisorAutomaton& sup) {
  if (!plant.alphabet().compatible_with(sup.alphabet()))
    throw InputError("plant and supervisor alphabets differ");
  return std::make_shared<const AasContext>(AasContext{plant, build_augmented(plant), sup});
}

enum class NodeKind { Environment, Attack };

/// Environment state (q, q̃, z) or attack state (q, q̃, z, σ). The estimate
/// components are stored before unobservable closure.
struct AasNode {
  NodeKind kind = NodeKind::Environment;
  StateSet q;   // plant states (supervisor's view)
  StateSet qt;  // augmented states (attacker's view)
  StateId z = 0;
  std::optional<EventId> sigma;  // pending actual event, attack states only

  bool is_environment() const { return kind == NodeKind::Environment; }
  bool is_attack() const { return kind == NodeKind::Attack; }
  bool revealing() const { return z == kAttackRevealed; }

  friend auto operator<=>(const AasNode&, const AasNode&) = default;
  friend bool operator==(const AasNode&, const AasNode&) = default;
};

/// Plain observable event on environment→attack edges, hatted action on
/// attack→environment edges.
using AasLabel = std::variant<EventId, AttackAction>;
using ExtendedString = std::vector<AasLabel>;

struct AasEdge {
  AasLabel label;
  std::size_t target = 0;
  friend bool operator==(const AasEdge&, const AasEdge&) = default;
};

enum class Detection { Neutral, PositiveDetected, NegativeDetected, Undetectable };

struct StateLabel {
  Detection detection = Detection::Neutral;
  bool attack_revealing = false;
  friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

inline std::string to_string(Detection d) {
  switch (d) {
    case Detection::Neutral: return "neutral";
    case Detection::PositiveDetected: return "positive_detected";
    case Detection::NegativeDetected: return "negative_detected";
    case Detection::Undetectable: return "undetectable";
  }
  return {};
}

inline Detection detection_from_string(const std::string& s) {
  if (s == "neutral") return Detection::Neutral;
  if (s == "positive_detected") return Detection::PositiveDetected;
  if (s == "negative_detected") return Detection::NegativeDetected;
  if (s == "undetectable") return Detection::Undetectable;
  throw InputError("unknown state label '" + s + "'");
}

/// Node 0 is the initial environment state. Nodes are deduplicated by value.
class AasGraph {
 public:
  explicit AasGraph(std::shared_ptr<const AasContext> ctx) : ctx_(std::move(ctx)) {}

  const AasContext& context() const { return *ctx_; }
  const std::shared_ptr<const AasContext>& context_ptr() const { return ctx_; }

  std::size_t size() const { return nodes_.size(); }
  std::size_t initial() const { return 0; }
  const AasNode& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<AasEdge>& edges(std::size_t i) const { return edges_.at(i); }

  std::optional<std::size_t> find(const AasNode& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Returns the index of `n`, inserting it if new.
  std::pair<std::size_t, bool> add_node(AasNode n) {
    if (auto i = find(n)) return {*i, false};
    std::size_t i = nodes_.size();
    index_.emplace(n, i);
    nodes_.push_back(std::move(n));
    edges_.emplace_back();
    labels_.emplace_back();
    return {i, true};
  }

  void add_edge(std::size_t from, AasLabel label, std::size_t to) {
    edges_.at(from).push_back({label, to});
  }

  std::optional<std::size_t> successor(std::size_t i, const AasLabel& label) const {
    for (const auto& e : edges_.at(i))
      if (e.label == label) return e.target;
    return std::nullopt;
  }

  const std::optional<StateLabel>& label(std::size_t i) const { return labels_.at(i); }
  void set_label(std::size_t i, StateLabel l) { labels_.at(i) = l; }

  std::size_t num_environment() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const AasNode& n) { return n.is_environment(); }));
  }
  std::size_t num_attack() const { return size() - num_environment(); }
  std::size_t num_edges() const {
    std::size_t n = 0;
    for (const auto& v : edges_) n += v.size();
    return n;
  }

  friend bool operator==(const AasGraph& a, const AasGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  std::shared_ptr<const AasContext> ctx_;
  std::vector<AasNode> nodes_;
  std::vector<std::vector<AasEdge>> edges_;
  std::vector<std::optional<StateLabel>> labels_;
  std::map<AasNode, std::size_t> index_;
};

/// Δ_M at an environment state: O(q̃, Δ_H(z)) over G̃, empty at z_att.
inline EventSet environment_events(const AasContext& ctx, const AasNode& n) {
  if (n.revealing()) return {};
  return observable_events(ctx.aug.base, n.qt, ctx.sup.decision(n.z));
}

/// f_ea.
inline AasNode environment_to_attack(const AasNode& n, EventId sigma) {
  return {NodeKind::Attack, n.q, n.qt, n.z, sigma};
}

/// f_ae. A forwarded event the supervisor has no transition for leaves its
/// estimate empty, exactly like one the plant cannot produce.
inline AasNode attack_to_environment(const AasContext& ctx, const AasNode& n, const AttackAction& a) {
  EventSet gamma = ctx.sup.decision(n.z);
  AasNode out{NodeKind::Environment, {}, {}, n.z, std::nullopt};
  out.qt = observable_reach(ctx.aug.base, unobservable_reach(ctx.aug.base, n.qt, gamma), *n.sigma);
  StateSet closed = unobservable_reach(ctx.plant, n.q, gamma);
  if (a.is_erase()) {
    out.q = std::move(closed);
    return out;
  }
  auto z2 = ctx.sup.next(n.z, a.event);
  if (z2) out.q = observable_reach(ctx.plant, closed, a.event);
  out.z = (z2 && !out.q.empty()) ? *z2 : kAttackRevealed;
  if (out.z == kAttackRevealed) out.q.clear();
  return out;
}

/// Breadth-first construction from (X_0, X̃_0, z0). Environment events are
/// expanded in lexicographic order; actions erase first, then forwards in
/// lexicographic order.
inline AasGraph build_aas(std::shared_ptr<const AasContext> ctx) {
  AasGraph g(ctx);
  const AasContext& c = *ctx;
  g.add_node({NodeKind::Environment, c.plant.initial(), c.aug.base.initial(), c.sup.initial(), std::nullopt});
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    const AasNode n = g.node(i);
    if (n.is_environment()) {
      for (EventId sigma : environment_events(c, n)) {
        auto [j, fresh] = g.add_node(environment_to_attack(n, sigma));
        g.add_edge(i, sigma, j);
        if (fresh) work.push_back(j);
      }
    } else {
      for (const AttackAction& a : action_space(c.plant.alphabet(), *n.sigma)) {
        auto [j, fresh] = g.add_node(attack_to_environment(c, n, a));
        g.add_edge(i, a, j);
        if (fresh) work.push_back(j);
      }
    }
  }
  return g;
}

inline AasGraph build_aas(const Automaton& plant, const SupervisorAutomaton& sup) {
  return build_aas(make_context(plant, sup));
}

/// log2 of 2^|X| · 2^(|X_0|·|X|) · (|Z|+1) · (1+|Σ_o|), the worst-case node
/// count of an AAS.
inline double log2_node_bound(const AasContext& ctx) {
  double nx = static_cast<double>(ctx.plant.num_states());
  double n0 = static_cast<double>(ctx.plant.initial().size());
  double nz = static_cast<double>(ctx.sup.num_states());
  double no = static_cast<double>(ctx.plant.alphabet().observable_events().size());
  return nx + n0 * nx + std::log2(nz + 1) + std::log2(1 + no);
}

// ---------------------------------------------------------------------------
// Extended strings σ1 σ̂a1 σ2 σ̂a2 ...

/// Parses "b ^ c ^c": bare events are plant observations, "^x" forwards x and
/// a lone "^" is the erase action.
inline ExtendedString parse_extended(const Alphabet& alphabet, std::string_view text) {
  ExtendedString out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token[0] == '^') {
      std::string rest = token.substr(1);
      out.push_back(rest.empty() ? AttackAction::erase() : AttackAction::forward(alphabet.id(rest)));
    } else {
      out.push_back(alphabet.id(token));
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return out;
}

inline std::string format_label(const Alphabet& alphabet, const AasLabel& l) {
  if (const auto* e = std::get_if<EventId>(&l)) return alphabet.name(*e);
  return format_action(alphabet, std::get<AttackAction>(l));
}

inline std::string format_extended(const Alphabet& alphabet, const ExtendedString& h) {
  std::string out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ' ';
    out += format_label(alphabet, h[i]);
  }
  return out;
}

namespace detail {
inline void check_alternation(const ExtendedString& h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    bool want_event = i % 2 == 0;
    if (want_event != std::holds_alternative<EventId>(h[i]))
      throw InputError("extended string must alternate events and hatted actions (position " +
                       std::to_string(i) + ")");
  }
}
}  // namespace detail

/// The actual observation: events at odd positions.
inline Observation obs(const ExtendedString& h) {
  detail::check_alternation(h);
  Observation out;
  for (std::size_t i = 0; i < h.size(); i += 2) out.push_back(std::get<EventId>(h[i]));
  return out;
}

/// The tampered observation: hatted actions with hats removed, erase
/// contributing nothing.
inline Observation tam(const ExtendedString& h) {
  detail::check_alternation(h);
  Observation out;
  for (std::size_t i = 1; i < h.size(); i += 2) {
    const auto& a = std::get<AttackAction>(h[i]);
    if (!a.is_erase()) out.push_back(a.event);
  }
  return out;
}

inline std::optional<std::size_t> run_extended(const AasGraph& g, const ExtendedString& h) {
  std::size_t i = g.initial();
  for (const auto& l : h) {
    auto j = g.successor(i, l);
    if (!j) return std::nullopt;
    i = *j;
  }
  return i;
}

/// α_A: the extended string a strategy produces on the actual observation α.
inline ExtendedString extended_run(const Alphabet& alphabet, const AttackStrategy& strategy,
                                   const Observation& alpha) {
  ExtendedString out;
  Observation history;
  for (EventId sigma : alpha) {
    out.push_back(sigma);
    out.push_back(checked_decision(alphabet, strategy, history, sigma));
    history.push_back(sigma);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text helpers.

inline std::string format_augmented(const AasContext& ctx, const StateSet& qt) {
  return format_states(ctx.aug.base, qt);
}

inline std::string format_node(const AasContext& ctx, const AasNode& n) {
  std::string out = "(" + format_states(ctx.plant, n.q) + ", " + format_augmented(ctx, n.qt) + ", " +
                    ctx.sup.state_name(n.z);
  if (n.sigma) out += ", " + ctx.plant.alphabet().name(*n.sigma);
  return out + ")";
}

}  // namespace desattack

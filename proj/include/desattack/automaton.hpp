#pragma once

// Deterministic finite automata with multiple initial states, event
// attribute flags (observable / controllable / vulnerable) and an optional
// secret-initial subset.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "desattack/error.hpp"

namespace desattack {

using StateId = std::size_t;
using EventId = std::size_t;
using StateSet = std::set<StateId>;
using EventSet = std::set<EventId>;

/// A finite string over the alphabet; the empty vector is epsilon.
using Trace = std::vector<EventId>;
/// A string over the observable events only.
using Observation = Trace;

struct EventFlags {
  bool observable = true;
  bool controllable = true;
  bool vulnerable = false;

  friend bool operator==(const EventFlags&, const EventFlags&) = default;
};

/// Event identifiers with their attribute flags. Event ids follow the
/// lexicographic order of the names, so iterating an EventSet visits events
/// in name order.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(const std::map<std::string, EventFlags>& events) {
    for (const auto& [name, flags] : events) {
      if (name.empty()) throw InputError("event identifiers must be nonempty");
      if (flags.vulnerable && !flags.observable)
        throw InputError("event '" + name + "' is vulnerable but unobservable");
      names_.push_back(name);
      flags_.push_back(flags);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(EventId e) const { return names_.at(e); }
  const EventFlags& flags(EventId e) const { return flags_.at(e); }

  std::optional<EventId> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<EventId>(it - names_.begin());
  }

  EventId id(std::string_view name) const {
    if (auto e = find(name)) return *e;
    throw InputError("unknown event '" + std::string(name) + "'");
  }

  bool contains(EventId e) const { return e < names_.size(); }
  bool observable(EventId e) const { return flags(e).observable; }
  bool controllable(EventId e) const { return flags(e).controllable; }
  bool vulnerable(EventId e) const { return flags(e).vulnerable; }

  EventSet all() const { return select([](const EventFlags&) { return true; }); }
  EventSet observable_events() const {
    return select([](const EventFlags& f) { return f.observable; });
  }
  EventSet unobservable_events() const {
    return select([](const EventFlags& f) { return !f.observable; });
  }
  EventSet controllable_events() const {
    return select([](const EventFlags& f) { return f.controllable; });
  }
  EventSet uncontrollable_events() const {
    return select([](const EventFlags& f) { return !f.controllable; });
  }
  EventSet vulnerable_events() const {
    return select([](const EventFlags& f) { return f.vulnerable; });
  }

  /// Same events with the same observability and controllability. The
  /// vulnerable flags are a property of the attack model and may differ
  /// between a plant and its supervisor.
  bool compatible_with(const Alphabet& other) const {
    if (names_ != other.names_) return false;
    for (std::size_t i = 0; i < flags_.size(); ++i) {
      if (flags_[i].observable != other.flags_[i].observable ||
          flags_[i].controllable != other.flags_[i].controllable)
        return false;
    }
    return true;
  }

  std::map<std::string, EventFlags> to_map() const {
    std::map<std::string, EventFlags> out;
    for (std::size_t i = 0; i < names_.size(); ++i) out.emplace(names_[i], flags_[i]);
    return out;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  template <typename Pred>
  EventSet select(Pred pred) const {
    EventSet out;
    for (EventId e = 0; e < flags_.size(); ++e)
      if (pred(flags_[e])) out.insert(e);
    return out;
  }

  std::vector<std::string> names_;
  std::vector<EventFlags> flags_;
};

/// Deterministic automaton with a partial transition function. States are
/// numbered in lexicographic order of their identifiers. Immutable once
/// built; use Automaton::Builder to construct one.
class Automaton {
 public:
  class Builder;

  Automaton() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId x) const { return names_.at(x); }

  std::optional<StateId> find_state(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  StateId state(std::string_view name) const {
    if (auto x = find_state(name)) return *x;
    throw InputError("unknown state '" + std::string(name) + "'");
  }

  const StateSet& initial() const { return initial_; }
  const StateSet& secret_initial() const { return secret_; }

  /// Outgoing transitions of x keyed by event.
  const std::map<EventId, StateId>& out(StateId x) const {
    check_state(x);
    return delta_[x];
  }

  std::optional<StateId> next(StateId x, EventId e) const {
    check_state(x);
    check_event(e);
    auto it = delta_[x].find(e);
    if (it == delta_[x].end()) return std::nullopt;
    return it->second;
  }

  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& m : delta_) n += m.size();
    return n;
  }

  void check_state(StateId x) const {
    if (x >= names_.size()) throw InputError("state index " + std::to_string(x) + " out of range");
  }
  void check_event(EventId e) const {
    if (!alphabet_.contains(e)) throw InputError("event index " + std::to_string(e) + " out of range");
  }

  friend bool operator==(const Automaton& a, const Automaton& b) {
    return a.alphabet_ == b.alphabet_ && a.names_ == b.names_ && a.delta_ == b.delta_ &&
           a.initial_ == b.initial_ && a.secret_ == b.secret_;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::map<std::string, StateId, std::less<>> index_;
  std::vector<std::map<EventId, StateId>> delta_;
  StateSet initial_;
  StateSet secret_;
};

class Automaton::Builder {
 public:
  Builder& alphabet(Alphabet a) {
    alphabet_ = std::move(a);
    return *this;
  }
  Builder& state(std::string name) {
    states_.insert(std::move(name));
    return *this;
  }
  Builder& transition(std::string from, std::string event, std::string to) {
    transitions_.push_back({std::move(from), std::move(event), std::move(to)});
    return *this;
  }
  Builder& initial(std::string name) {
    initial_.insert(std::move(name));
    return *this;
  }
  Builder& secret(std::string name) {
    secret_.insert(std::move(name));
    return *this;
  }

  /// Validates referential integrity, determinism and X_sec ⊆ X_0.
  Automaton build() const {
    Automaton a;
    a.alphabet_ = alphabet_;
    for (const auto& s : states_) {
      if (s.empty()) throw InputError("state identifiers must be nonempty");
      a.index_.emplace(s, a.names_.size());
      a.names_.push_back(s);
    }
    a.delta_.resize(a.names_.size());
    for (const auto& t : transitions_) {
      auto from = a.find_state(t.from);
      auto to = a.find_state(t.to);
      auto ev = alphabet_.find(t.event);
      if (!from) throw InputError("transition from undeclared state '" + t.from + "'");
      if (!to) throw InputError("transition to undeclared state '" + t.to + "'");
      if (!ev) throw InputError("transition on undeclared event '" + t.event + "'");
      auto [it, inserted] = a.delta_[*from].emplace(*ev, *to);
      if (!inserted && it->second != *to)
        throw InputError("nondeterministic transitions at state '" + t.from + "' on event '" +
                         t.event + "'");
    }
    for (const auto& s : initial_) {
      auto x = a.find_state(s);
      if (!x) throw InputError("initial state '" + s + "' is not declared");
      a.initial_.insert(*x);
    }
    for (const auto& s : secret_) {
      auto x = a.find_state(s);
      if (!x) throw InputError("secret state '" + s + "' is not declared");
      if (!a.initial_.contains(*x))
        throw InputError("secret state '" + s + "' is not an initial state");
      a.secret_.insert(*x);
    }
    return a;
  }

 private:
  struct RawTransition {
    std::string from, event, to;
  };
  Alphabet alphabet_;
  std::set<std::string> states_;
  std::vector<RawTransition> transitions_;
  std::set<std::string> initial_;
  std::set<std::string> secret_;
};

using Plant = Automaton;

inline std::optional<StateId> step(const Automaton& g, StateId x, EventId e) { return g.next(x, e); }

/// Extended transition function; absent as soon as one step is undefined.
inline std::optional<StateId> run(const Automaton& g, StateId x0, const Trace& s) {
  g.check_state(x0);
  std::optional<StateId> x = x0;
  for (EventId e : s) {
    x = g.next(*x, e);
    if (!x) return std::nullopt;
  }
  return x;
}

inline EventSet feasible_events(const Automaton& g, StateId x) {
  EventSet out;
  for (const auto& [e, _] : g.out(x)) out.insert(e);
  return out;
}

/// Synchronous product over a shared alphabet, restricted to the part
/// reachable from initial(a) × initial(b). Product states are named "(p,q)".
inline Automaton product(const Automaton& a, const Automaton& b) {
  if (!a.alphabet().compatible_with(b.alphabet()))
    throw InputError("product requires a shared alphabet");
  auto name = [&](StateId p, StateId q) {
    return "(" + a.state_name(p) + "," + b.state_name(q) + ")";
  };
  Automaton::Builder builder;
  builder.alphabet(a.alphabet());
  std::set<std::pair<StateId, StateId>> seen;
  std::deque<std::pair<StateId, StateId>> work;
  for (StateId p : a.initial())
    for (StateId q : b.initial()) {
      seen.emplace(p, q);
      work.emplace_back(p, q);
      builder.state(name(p, q)).initial(name(p, q));
    }
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    for (const auto& [e, p2] : a.out(p)) {
      auto q2 = b.next(q, e);
      if (!q2) continue;
      builder.transition(name(p, q), a.alphabet().name(e), name(p2, *q2));
      if (seen.emplace(p2, *q2).second) {
        builder.state(name(p2, *q2));
        work.emplace_back(p2, *q2);
      }
    }
  }
  return builder.build();
}

/// Every string of L(G, x0) of length at most `horizon`.
inline std::set<Trace> bounded_language(const Automaton& g, StateId x0, std::size_t horizon) {
  g.check_state(x0);
  std::set<Trace> out;
  std::vector<std::pair<StateId, Trace>> frontier{{x0, {}}};
  out.insert(Trace{});
  for (std::size_t depth = 0; depth < horizon && !frontier.empty(); ++depth) {
    std::vector<std::pair<StateId, Trace>> next;
    for (const auto& [x, s] : frontier) {
      for (const auto& [e, y] : g.out(x)) {
        Trace t = s;
        t.push_back(e);
        out.insert(t);
        next.emplace_back(y, std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text helpers shared by the CLI and the tests.

/// Splits "b c", "b,c" or "b, c" into events. Empty input is epsilon.
inline Trace parse_trace(const Alphabet& alphabet, std::string_view text) {
  Trace out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(alphabet.id(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return out;
}

inline std::string format_trace(const Alphabet& alphabet, const Trace& s) {
  if (s.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(s[i]);
  }
  return out;
}

inline std::string format_states(const Automaton& g, const StateSet& q) {
  std::string out = "{";
  bool first = true;
  for (StateId x : q) {
    if (!first) out += ',';
    first = false;
    out += g.state_name(x);
  }
  return out + "}";
}

inline std::string format_events(const Alphabet& alphabet, const EventSet& events) {
  std::string out = "{";
  bool first = true;
  for (EventId e : events) {
    if (!first) out += ',';
    first = false;
    out += alphabet.name(e);
  }
  return out + "}";
}

}  // namespace desattack

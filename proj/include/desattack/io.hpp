#pragma once

// JSON documents for models (plants and supervisors) and for attack graphs
// (AAS, SAAS and SAS).
//
// Model document:
//   {
//     "states": ["1", "2"],
//     "initial": ["1"],
//     "secret_initial": ["1"],              // plants only, optional
//     "events": [{"name": "a", "observable": false, "controllable": true,
//                 "vulnerable": false}],
//     "transitions": [{"from": "1", "event": "a", "to": "2"}]
//   }

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "desattack/aas.hpp"
#include "desattack/supervision.hpp"
#include "desattack/synthesis.hpp"

namespace desattack {

using json = nlohmann::ordered_json;

struct EventDecl {
  std::string name;
  bool observable = true;
  bool controllable = true;
  bool vulnerable = false;
  friend bool operator==(const EventDecl&, const EventDecl&) = default;
};

struct TransitionDecl {
  std::string from, event, to;
  friend bool operator==(const TransitionDecl&, const TransitionDecl&) = default;
};

struct ModelDocument {
  std::vector<std::string> states;
  std::vector<std::string> initial;
  std::optional<std::vector<std::string>> secret_initial;
  std::vector<EventDecl> events;
  std::vector<TransitionDecl> transitions;
  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

enum class ModelRole { Plant, Supervisor };

namespace detail {

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ',' || c == '(' || c == ')' || c == '{' || c == '}' || c == '^' || c == ' ' || c == '\t' ||
        c == '\n' || c == '"')
      return false;
  return true;
}

inline const json& field(const json& j, const std::string& where, const char* key) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + "." + key + ": missing field");
  return *it;
}

inline std::string string_at(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> strings_at(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline bool bool_at(const json& j, const std::string& where, const char* key, bool fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw InputError(where + "." + key + ": expected a boolean");
  return it->get<bool>();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace detail

inline ModelDocument parse_model_document(const json& j) {
  ModelDocument doc;
  doc.states = detail::strings_at(detail::field(j, "model", "states"), "states");
  doc.initial = detail::strings_at(detail::field(j, "model", "initial"), "initial");
  if (j.contains("secret_initial")) doc.secret_initial = detail::strings_at(j["secret_initial"], "secret_initial");
  const json& events = detail::field(j, "model", "events");
  if (!events.is_array()) throw InputError("events: expected an array");
  for (std::size_t i = 0; i < events.size(); ++i) {
    std::string where = "events[" + std::to_string(i) + "]";
    EventDecl e;
    e.name = detail::string_at(detail::field(events[i], where, "name"), where + ".name");
    e.observable = detail::bool_at(events[i], where, "observable", true);
    e.controllable = detail::bool_at(events[i], where, "controllable", true);
    e.vulnerable = detail::bool_at(events[i], where, "vulnerable", false);
    doc.events.push_back(e);
  }
  const json& trans = detail::field(j, "model", "transitions");
  if (!trans.is_array()) throw InputError("transitions: expected an array");
  for (std::size_t i = 0; i < trans.size(); ++i) {
    std::string where = "transitions[" + std::to_string(i) + "]";
    TransitionDecl t;
    t.from = detail::string_at(detail::field(trans[i], where, "from"), where + ".from");
    t.event = detail::string_at(detail::field(trans[i], where, "event"), where + ".event");
    t.to = detail::string_at(detail::field(trans[i], where, "to"), where + ".to");
    doc.transitions.push_back(t);
  }
  return doc;
}

inline json to_json(const ModelDocument& doc) {
  json j;
  j["states"] = doc.states;
  j["initial"] = doc.initial;
  if (doc.secret_initial) j["secret_initial"] = *doc.secret_initial;
  j["events"] = json::array();
  for (const auto& e : doc.events)
    j["events"].push_back({{"name", e.name},
                           {"observable", e.observable},
                           {"controllable", e.controllable},
                           {"vulnerable", e.vulnerable}});
  j["transitions"] = json::array();
  for (const auto& t : doc.transitions) j["transitions"].push_back({{"from", t.from}, {"event", t.event}, {"to", t.to}});
  return j;
}

/// Every problem with a document, one diagnostic per line, in document order.
inline std::vector<std::string> validate_document(const ModelDocument& doc, ModelRole role) {
  std::vector<std::string> out;
  std::set<std::string> states, events;
  std::map<std::string, EventDecl> event_by_name;
  for (std::size_t i = 0; i < doc.states.size(); ++i) {
    const auto& s = doc.states[i];
    std::string where = "states[" + std::to_string(i) + "]";
    if (!detail::valid_identifier(s)) out.push_back(where + ": invalid identifier '" + s + "'");
    if (s == kAttackRevealedName) out.push_back(where + ": identifier 'z_att' is reserved");
    if (!states.insert(s).second) out.push_back(where + ": duplicate state '" + s + "'");
  }
  for (std::size_t i = 0; i < doc.events.size(); ++i) {
    const auto& e = doc.events[i];
    std::string where = "events[" + std::to_string(i) + "]";
    if (!detail::valid_identifier(e.name)) out.push_back(where + ": invalid identifier '" + e.name + "'");
    if (!events.insert(e.name).second) out.push_back(where + ": duplicate event '" + e.name + "'");
    if (e.vulnerable && !e.observable) out.push_back(where + ": vulnerable event '" + e.name + "' must be observable");
    event_by_name.emplace(e.name, e);
  }
  for (std::size_t i = 0; i < doc.initial.size(); ++i)
    if (!states.contains(doc.initial[i]))
      out.push_back("initial[" + std::to_string(i) + "]: undeclared state '" + doc.initial[i] + "'");
  if (doc.initial.empty()) out.push_back("initial: at least one initial state is required");
  if (doc.secret_initial) {
    if (role == ModelRole::Supervisor) out.push_back("secret_initial: not allowed in a supervisor");
    std::set<std::string> init(doc.initial.begin(), doc.initial.end());
    for (std::size_t i = 0; i < doc.secret_initial->size(); ++i)
      if (!init.contains((*doc.secret_initial)[i]))
        out.push_back("secret_initial[" + std::to_string(i) + "]: '" + (*doc.secret_initial)[i] +
                      "' is not an initial state");
  }
  std::map<std::pair<std::string, std::string>, std::string> delta;
  for (std::size_t i = 0; i < doc.transitions.size(); ++i) {
    const auto& t = doc.transitions[i];
    std::string where = "transitions[" + std::to_string(i) + "]";
    if (!states.contains(t.from)) out.push_back(where + ".from: undeclared state '" + t.from + "'");
    if (!states.contains(t.to)) out.push_back(where + ".to: undeclared state '" + t.to + "'");
    if (!events.contains(t.event)) out.push_back(where + ".event: undeclared event '" + t.event + "'");
    auto [it, inserted] = delta.emplace(std::pair{t.from, t.event}, t.to);
    if (!inserted && it->second != t.to)
      out.push_back(where + ": nondeterministic on (" + t.from + ", " + t.event + ")");
  }
  if (role == ModelRole::Supervisor) {
    if (doc.initial.size() > 1) out.push_back("initial: a supervisor has exactly one initial state");
    for (std::size_t i = 0; i < doc.transitions.size(); ++i) {
      const auto& t = doc.transitions[i];
      auto ev = event_by_name.find(t.event);
      if (ev != event_by_name.end() && !ev->second.observable && t.from != t.to)
        out.push_back("transitions[" + std::to_string(i) + "]: unobservable event '" + t.event +
                      "' changes the supervisor state");
    }
    for (const auto& s : doc.states)
      for (const auto& e : doc.events)
        if (!e.controllable && !delta.contains({s, e.name}))
          out.push_back("state " + s + ": uncontrollable event '" + e.name + "' is disabled");
  }
  return out;
}

inline Alphabet alphabet_of(const ModelDocument& doc) {
  std::map<std::string, EventFlags> events;
  for (const auto& e : doc.events) events.emplace(e.name, EventFlags{e.observable, e.controllable, e.vulnerable});
  return Alphabet(events);
}

inline Automaton automaton_of(const ModelDocument& doc) {
  Automaton::Builder b;
  b.alphabet(alphabet_of(doc));
  for (const auto& s : doc.states) b.state(s);
  for (const auto& s : doc.initial) b.initial(s);
  if (doc.secret_initial)
    for (const auto& s : *doc.secret_initial) b.secret(s);
  for (const auto& t : doc.transitions) b.transition(t.from, t.event, t.to);
  return b.build();
}

inline void throw_if_invalid(const ModelDocument& doc, ModelRole role) {
  auto problems = validate_document(doc, role);
  if (problems.empty()) return;
  std::string msg;
  for (const auto& p : problems) msg += (msg.empty() ? "" : "\n") + p;
  throw InputError(msg);
}

inline Plant plant_from(const ModelDocument& doc) {
  throw_if_invalid(doc, ModelRole::Plant);
  return automaton_of(doc);
}

inline SupervisorAutomaton supervisor_from(const ModelDocument& doc) {
  throw_if_invalid(doc, ModelRole::Supervisor);
  return SupervisorAutomaton(automaton_of(doc));
}

inline ModelDocument document_of(const Automaton& g, bool with_secret) {
  ModelDocument doc;
  for (StateId x = 0; x < g.num_states(); ++x) doc.states.push_back(g.state_name(x));
  for (StateId x : g.initial()) doc.initial.push_back(g.state_name(x));
  if (with_secret) {
    doc.secret_initial.emplace();
    for (StateId x : g.secret_initial()) doc.secret_initial->push_back(g.state_name(x));
  }
  const Alphabet& sigma = g.alphabet();
  for (EventId e = 0; e < sigma.size(); ++e)
    doc.events.push_back({sigma.name(e), sigma.observable(e), sigma.controllable(e), sigma.vulnerable(e)});
  for (StateId x = 0; x < g.num_states(); ++x)
    for (const auto& [e, y] : g.out(x)) doc.transitions.push_back({g.state_name(x), sigma.name(e), g.state_name(y)});
  return doc;
}

inline ModelDocument document_of(const Plant& g) { return document_of(g, true); }
inline ModelDocument document_of(const SupervisorAutomaton& h) { return document_of(h.automaton(), false); }

/// A plant if the document declares secret_initial or a vulnerable event,
/// otherwise a supervisor.
inline ModelRole infer_role(const ModelDocument& doc) {
  if (doc.secret_initial) return ModelRole::Plant;
  for (const auto& e : doc.events)
    if (e.vulnerable) return ModelRole::Plant;
  return ModelRole::Supervisor;
}

inline ModelDocument read_model_document(const std::string& path) {
  return parse_model_document(detail::read_json_file(path));
}

inline std::variant<Plant, SupervisorAutomaton> load_model(const std::string& path) {
  ModelDocument doc = read_model_document(path);
  if (infer_role(doc) == ModelRole::Plant) return plant_from(doc);
  return supervisor_from(doc);
}

inline Plant load_plant(const std::string& path) { return plant_from(read_model_document(path)); }
inline SupervisorAutomaton load_supervisor(const std::string& path) {
  return supervisor_from(read_model_document(path));
}

inline void save_model(const std::string& path, const ModelDocument& doc) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write file");
  out << to_json(doc).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Attack graphs.

namespace detail {

inline json names_of(const Automaton& g, const StateSet& q) {
  json out = json::array();
  for (StateId x : q) out.push_back(g.state_name(x));
  return out;
}

inline StateSet states_from(const Automaton& g, const json& j, const std::string& where) {
  StateSet out;
  for (const auto& s : strings_at(j, where)) out.insert(g.state(s));
  return out;
}

inline StateId supervisor_state_from(const SupervisorAutomaton& sup, const std::string& name) {
  if (name == kAttackRevealedName) return kAttackRevealed;
  return sup.automaton().state(name);
}

inline AasLabel label_from(const Alphabet& sigma, const std::string& text) {
  auto h = parse_extended(sigma, text);
  if (h.size() != 1) throw InputError("malformed edge label '" + text + "'");
  return h.front();
}

}  // namespace detail

/// AAS/SAAS/SAS as JSON. `kind` is "aas", "saas" or "sas".
inline json graph_to_json(const AasGraph& g, const std::string& kind,
                          const std::map<std::size_t, AttackAction>* choice = nullptr) {
  const AasContext& ctx = g.context();
  const Alphabet& sigma = ctx.plant.alphabet();
  json j;
  j["kind"] = kind;
  j["initial"] = g.initial();
  j["nodes"] = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const AasNode& n = g.node(i);
    json node;
    node["id"] = i;
    node["type"] = n.is_environment() ? "environment" : "attack";
    node["q"] = detail::names_of(ctx.plant, n.q);
    node["qt"] = detail::names_of(ctx.aug.base, n.qt);
    node["z"] = ctx.sup.state_name(n.z);
    if (n.sigma) node["sigma"] = sigma.name(*n.sigma);
    if (g.label(i)) {
      node["label"] = to_string(g.label(i)->detection);
      node["attack_revealing"] = g.label(i)->attack_revealing;
    }
    if (choice) {
      auto it = choice->find(i);
      if (it != choice->end()) node["choice"] = format_action(sigma, it->second);
    }
    j["nodes"].push_back(std::move(node));
  }
  j["edges"] = json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& e : g.edges(i))
      j["edges"].push_back({{"from", i}, {"label", format_label(sigma, e.label)}, {"to", e.target}});
  return j;
}

inline json to_json(const Sas& sas) { return graph_to_json(sas.graph, "sas", &sas.choice); }

/// Reads a graph document back against the plant/supervisor it was built
/// from. Node ids must be 0..n-1 in order.
inline AasGraph graph_from_json(const json& j, std::shared_ptr<const AasContext> ctx,
                                std::map<std::size_t, AttackAction>* choice = nullptr) {
  AasGraph g(ctx);
  const Alphabet& sigma = ctx->plant.alphabet();
  const json& nodes = detail::field(j, "graph", "nodes");
  if (!nodes.is_array()) throw InputError("nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string where = "nodes[" + std::to_string(i) + "]";
    const json& nj = nodes[i];
    if (detail::field(nj, where, "id") != i) throw InputError(where + ".id: expected " + std::to_string(i));
    AasNode n;
    std::string type = detail::string_at(detail::field(nj, where, "type"), where + ".type");
    if (type != "environment" && type != "attack") throw InputError(where + ".type: unknown node type");
    n.kind = type == "environment" ? NodeKind::Environment : NodeKind::Attack;
    n.q = detail::states_from(ctx->plant, detail::field(nj, where, "q"), where + ".q");
    n.qt = detail::states_from(ctx->aug.base, detail::field(nj, where, "qt"), where + ".qt");
    n.z = detail::supervisor_state_from(ctx->sup, detail::string_at(detail::field(nj, where, "z"), where + ".z"));
    if (nj.contains("sigma")) n.sigma = sigma.id(detail::string_at(nj["sigma"], where + ".sigma"));
    if (n.is_attack() != n.sigma.has_value()) throw InputError(where + ": sigma is required exactly on attack nodes");
    if (!g.add_node(n).second) throw InputError(where + ": duplicate node");
    if (nj.contains("label")) {
      StateLabel l{detection_from_string(detail::string_at(nj["label"], where + ".label")),
                   detail::bool_at(nj, where, "attack_revealing", false)};
      g.set_label(i, l);
    }
    if (choice && nj.contains("choice")) {
      auto l = detail::label_from(sigma, detail::string_at(nj["choice"], where + ".choice"));
      if (!std::holds_alternative<AttackAction>(l)) throw InputError(where + ".choice: expected an action");
      choice->emplace(i, std::get<AttackAction>(l));
    }
  }
  const json& edges = detail::field(j, "graph", "edges");
  if (!edges.is_array()) throw InputError("edges: expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::string where = "edges[" + std::to_string(k) + "]";
    std::size_t from = detail::field(edges[k], where, "from").get<std::size_t>();
    std::size_t to = detail::field(edges[k], where, "to").get<std::size_t>();
    if (from >= g.size() || to >= g.size()) throw InputError(where + ": node index out of range");
    g.add_edge(from, detail::label_from(sigma, detail::string_at(detail::field(edges[k], where, "label"), where + ".label")), to);
  }
  return g;
}

inline Sas sas_from_json(const json& j, std::shared_ptr<const AasContext> ctx) {
  Sas sas{AasGraph(ctx), {}};
  sas.graph = graph_from_json(j, std::move(ctx), &sas.choice);
  return sas;
}

inline json read_json(const std::string& path) { return detail::read_json_file(path); }

}  // namespace desattack

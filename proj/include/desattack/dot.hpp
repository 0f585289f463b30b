#pragma once

// Graphviz export. Environment states are boxes, attack states circles.
// Colours: undetectable blue, positive detected green, attack revealing red,
// negative detected gray.

#include <sstream>
#include <string>

#include "desattack/aas.hpp"
#include "desattack/supervision.hpp"

namespace desattack {

namespace detail {
inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

inline std::string to_dot(const Automaton& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (StateId x = 0; x < g.num_states(); ++x) {
    os << "  s" << x << " [label=\"" << detail::dot_escape(g.state_name(x)) << "\"";
    if (g.secret_initial().contains(x)) os << ", peripheries=2";
    os << "];\n";
  }
  for (StateId x : g.initial()) os << "  init" << x << " [shape=point];\n  init" << x << " -> s" << x << ";\n";
  for (StateId x = 0; x < g.num_states(); ++x)
    for (const auto& [e, y] : g.out(x)) {
      os << "  s" << x << " -> s" << y << " [label=\"" << detail::dot_escape(g.alphabet().name(e)) << "\"";
      if (!g.alphabet().observable(e)) os << ", style=dashed";
      os << "];\n";
    }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const AasGraph& g, const std::string& name = "AAS") {
  const AasContext& ctx = g.context();
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const AasNode& n = g.node(i);
    os << "  n" << i << " [shape=" << (n.is_environment() ? "box" : "circle") << ", label=\""
       << detail::dot_escape(format_node(ctx, n)) << "\"";
    if (const auto& l = g.label(i)) {
      const char* colour = nullptr;
      if (l->attack_revealing) colour = "red";
      else if (l->detection == Detection::PositiveDetected) colour = "green";
      else if (l->detection == Detection::Undetectable) colour = "blue";
      else if (l->detection == Detection::NegativeDetected) colour = "gray";
      if (colour) os << ", color=" << colour;
    }
    os << "];\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& e : g.edges(i))
      os << "  n" << i << " -> n" << e.target << " [label=\""
         << detail::dot_escape(format_label(ctx.plant.alphabet(), e.label)) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace desattack

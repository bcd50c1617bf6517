#pragma once

#include <sstream>
#include <string>

#include "poctl/kripke.hpp"

namespace poctl {
namespace detail {

inline void dot_nodes(std::ostringstream& out, const PossibilisticKripkeStructure& m) {
  for (std::size_t i = 0; i < m.state_count(); ++i) {
    out << "  \"" << m.states[i] << "\" [label=\"" << m.states[i] << "\\n{";
    bool first = true;
    for (const auto& a : m.labels[i]) {
      if (!first) out << ", ";
      out << a;
      first = false;
    }
    out << "}\"];\n";
  }
}

}  // namespace detail

/// Graphviz rendering of the structure: one labeled edge per positive
/// transition, initial states marked by a sourceless arrow.
inline std::string to_dot(const PossibilisticKripkeStructure& m) {
  std::ostringstream out;
  out << "digraph pks {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  detail::dot_nodes(out, m);
  std::size_t init = 0;
  for (std::size_t i = 0; i < m.state_count(); ++i) {
    if (m.initial[i].is_zero()) continue;
    out << "  __init" << init << " [shape=point];\n";
    out << "  __init" << init << " -> \"" << m.states[i] << "\";\n";
    ++init;
  }
  for (std::size_t i = 0; i < m.state_count(); ++i)
    for (std::size_t j = 0; j < m.state_count(); ++j)
      if (!m.transitions.at(i, j).is_zero())
        out << "  \"" << m.states[i] << "\" -> \"" << m.states[j] << "\" [label=\""
            << m.transitions.at(i, j).str() << "\"];\n";
  out << "}\n";
  return out.str();
}

/// Graphviz rendering of the alpha cut: edges with possibility >= alpha,
/// labeled with their original degrees.
inline std::string to_dot_alpha(const PossibilisticKripkeStructure& m, const Possibility& alpha) {
  const TransitionSystem ts = alpha_cut_ts(m, alpha);
  std::ostringstream out;
  out << "digraph pks_alpha_cut {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  detail::dot_nodes(out, m);
  std::size_t init = 0;
  for (std::size_t i = 0; i < m.state_count(); ++i) {
    if (!ts.initial[i]) continue;
    out << "  __init" << init << " [shape=point];\n";
    out << "  __init" << init << " -> \"" << m.states[i] << "\";\n";
    ++init;
  }
  for (std::size_t i = 0; i < ts.state_count(); ++i)
    for (const std::size_t j : ts.successors[i])
      out << "  \"" << m.states[i] << "\" -> \"" << m.states[j] << "\" [label=\""
          << m.transitions.at(i, j).str() << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace poctl

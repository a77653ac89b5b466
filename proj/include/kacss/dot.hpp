#pragma once

#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "kacss/graph.hpp"
#include "kacss/rational.hpp"

namespace kacss {

/// Graphviz rendering labelled with arc ids and costs. With a highlight set,
/// its arcs are bold and the remaining arcs grey.
inline void export_dot(std::ostream& out, const Instance& inst, const std::optional<ArcSet>& highlight = std::nullopt) {
  out << "digraph kacss {\n";
  out << "  node [shape=circle];\n";
  for (VertexId v = 0; v < inst.n; ++v) out << "  " << v << ";\n";
  for (ArcId a = 0; a < inst.arcs.size(); ++a) {
    const Arc& arc = inst.arcs[a];
    out << "  " << arc.tail << " -> " << arc.head << " [label=\"" << a << ": " << to_string(arc.cost) << "\"";
    if (highlight) out << (highlight->contains(a) ? ", style=bold, color=black" : ", color=grey");
    out << "];\n";
  }
  out << "}\n";
}

inline std::string export_dot(const Instance& inst, const std::optional<ArcSet>& highlight = std::nullopt) {
  std::ostringstream out;
  export_dot(out, inst, highlight);
  return out.str();
}

}  // namespace kacss

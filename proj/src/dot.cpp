#include "craig/dot.hpp"

#include <sstream>

namespace craig {

std::string flow_dot(const FlowGraph& g, const Sequent& end) {
  std::ostringstream out;
  out << "graph flow {\n";
  out << "  node [shape=box];\n";
  for (const auto& v : g.vertices)
    out << "  \"" << occ_label(v, end) << "\";\n";
  for (const auto& [a, b] : g.edges)
    out << "  \"" << occ_label(a, end) << "\" -- \"" << occ_label(b, end) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace craig

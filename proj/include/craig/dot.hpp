#pragma once

#include <string>

#include "craig/proof.hpp"

namespace craig {

// Undirected graph over the end-sequent's atomic occurrences, one node per
// occurrence labelled side:index:path:atom.
std::string flow_dot(const FlowGraph& g, const Sequent& end);

}  // namespace craig

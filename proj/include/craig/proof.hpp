#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "craig/rules.hpp"
#include "craig/sequent.hpp"

namespace craig {

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

// One inference node. `principal` holds conclusion indices: [ant, suc] for a
// two-sided axiom, [i] for a constant axiom or any other rule (the main
// occurrence; for contractions the merged copy).
struct Proof {
  Sequent conclusion;
  RuleId rule = RuleId::Axiom;
  std::vector<int> principal;
  std::vector<ProofPtr> premises;
};

ProofPtr make_proof(Sequent conclusion, RuleId rule, std::vector<int> principal,
                    std::vector<ProofPtr> premises = {});

int proof_size(const ProofPtr& p);  // node count

enum class System { LK, LJ };

struct Violation {
  std::vector<int> node;  // premise indices from the root
  std::string message;
};

struct CheckReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

CheckReport check_proof(const ProofPtr& p, System system);

// Side holding the main occurrence of a non-axiom rule.
Side rule_main_side(RuleId r);

// Resolves a one-index axiom principal: the succedent side for a true
// succedent formula, the antecedent side for a false antecedent formula.
std::optional<Side> constant_axiom_side(const Sequent& c, int i);

// Where a premise occurrence lands in the conclusion: conclusion occurrence
// plus the subtree path under which the premise formula sits.
struct OccImage {
  OccRef to;
  std::vector<int> prefix;
};

// One map per premise; total on the premise's occurrences.
using DownMaps = std::vector<std::map<OccRef, OccImage>>;

// Requires the node to pass its local LK schema check.
DownMaps down_maps(const Proof& node);

struct RuleLink {
  int premise = 0;
  OccPath from;  // in the premise sequent
  OccPath to;    // in the conclusion sequent
};

// Atomic-occurrence links across one inference, derived from down_maps.
std::vector<RuleLink> per_rule_links(const Proof& node);

struct FlowGraph {
  std::vector<OccPath> vertices;                    // end-sequent atoms
  std::set<std::pair<OccPath, OccPath>> edges;      // stored with from <= to
};

// Composes axiom links through the proof down to the end sequent.
FlowGraph flow_graph(const ProofPtr& p);

bool flow_has_edge(const FlowGraph& g, const OccPath& a, const OccPath& b);

}  // namespace craig

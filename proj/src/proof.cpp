#include "craig/proof.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

#include "craig/formula.hpp"

namespace craig {

ProofPtr make_proof(Sequent conclusion, RuleId rule, std::vector<int> principal,
                    std::vector<ProofPtr> premises) {
  auto p = std::make_shared<Proof>();
  p->conclusion = std::move(conclusion);
  p->rule = rule;
  p->principal = std::move(principal);
  p->premises = std::move(premises);
  return p;
}

int proof_size(const ProofPtr& p) {
  if (!p) return 0;
  int n = 1;
  for (const auto& q : p->premises) n += proof_size(q);
  return n;
}

Side rule_main_side(RuleId r) {
  switch (r) {
    case RuleId::NotL:
    case RuleId::AndLMult:
    case RuleId::AndLAddLeft:
    case RuleId::AndLAddRight:
    case RuleId::OrL:
    case RuleId::ImpL:
    case RuleId::WeakL:
    case RuleId::ContrL:
      return Side::Ant;
    default:
      return Side::Suc;
  }
}

std::optional<Side> constant_axiom_side(const Sequent& c, int i) {
  if (i >= 0 && i < c.count(Side::Suc) && c.at(Side::Suc, i).kind() == Conn::Top)
    return Side::Suc;
  if (i >= 0 && i < c.count(Side::Ant) && c.at(Side::Ant, i).kind() == Conn::Bottom)
    return Side::Ant;
  return std::nullopt;
}

namespace {

std::vector<int> cat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Provenance of one expected-premise position: either a conclusion context
// occurrence or a formula introduced above the main occurrence.
struct SrcEntry {
  bool ctx = true;
  int concl_index = -1;       // when ctx
  int aux = -1;               // ordinal into the aux list, -1 for a contracted copy
};

struct AuxSpec {
  Side side;
  Formula formula;
  std::vector<int> prefix;    // subtree path under the main occurrence
};

struct Expected {
  Sequent seq;
  std::array<std::vector<SrcEntry>, 2> src;

  std::vector<SrcEntry>& at(Side s) { return src[static_cast<int>(s)]; }
};

Expected start_from(const Sequent& c) {
  Expected e;
  e.seq = c;
  for (int sd = 0; sd < 2; ++sd) {
    int n = c.count(static_cast<Side>(sd));
    for (int i = 0; i < n; ++i) e.src[sd].push_back(SrcEntry{true, i, -1});
  }
  return e;
}

Expected remove_main(const Sequent& c, Side s, int m) {
  Expected e = start_from(c);
  e.seq = c.removed(s, m);
  auto& v = e.at(s);
  v.erase(v.begin() + m);
  return e;
}

void insert_entry(Expected& e, Side s, const Formula& f, SrcEntry entry) {
  auto [ns, t] = e.seq.inserted(s, f);
  e.seq = std::move(ns);
  auto& v = e.at(s);
  v.insert(v.begin() + t, entry);
}

Conn required_kind(RuleId r) {
  switch (r) {
    case RuleId::NotL:
    case RuleId::NotR:
      return Conn::Not;
    case RuleId::AndLMult:
    case RuleId::AndLAddLeft:
    case RuleId::AndLAddRight:
    case RuleId::AndR:
      return Conn::And;
    case RuleId::OrL:
    case RuleId::OrRMult:
    case RuleId::OrRAddLeft:
    case RuleId::OrRAddRight:
      return Conn::Or;
    case RuleId::ImpL:
    case RuleId::ImpR:
      return Conn::Implies;
    default:
      return Conn::Atom;  // unconstrained
  }
}

bool shape_constrained(RuleId r) { return required_kind(r) != Conn::Atom; }

std::vector<AuxSpec> unary_auxes(RuleId r, const Formula& main) {
  switch (r) {
    case RuleId::NotL:
      return {{Side::Suc, main.child(0), {0}}};
    case RuleId::NotR:
      return {{Side::Ant, main.child(0), {0}}};
    case RuleId::AndLMult:
      return {{Side::Ant, main.child(0), {0}}, {Side::Ant, main.child(1), {1}}};
    case RuleId::AndLAddLeft:
      return {{Side::Ant, main.child(0), {0}}};
    case RuleId::AndLAddRight:
      return {{Side::Ant, main.child(1), {1}}};
    case RuleId::OrRMult:
      return {{Side::Suc, main.child(0), {0}}, {Side::Suc, main.child(1), {1}}};
    case RuleId::OrRAddLeft:
      return {{Side::Suc, main.child(0), {0}}};
    case RuleId::OrRAddRight:
      return {{Side::Suc, main.child(1), {1}}};
    case RuleId::ImpR:
      return {{Side::Ant, main.child(0), {0}}, {Side::Suc, main.child(1), {1}}};
    default:
      return {};
  }
}

// Aux formula placed in each premise of a binary rule.
std::array<AuxSpec, 2> binary_auxes(RuleId r, const Formula& main) {
  switch (r) {
    case RuleId::AndR:
      return {{{Side::Suc, main.child(0), {0}}, {Side::Suc, main.child(1), {1}}}};
    case RuleId::OrL:
      return {{{Side::Ant, main.child(0), {0}}, {Side::Ant, main.child(1), {1}}}};
    default:  // ImpL
      return {{{Side::Suc, main.child(0), {0}}, {Side::Ant, main.child(1), {1}}}};
  }
}

int locate_last(const Sequent& s, Side side, const Formula& f) {
  int last = -1;
  for (int i = 0; i < s.count(side); ++i)
    if (s.at(side, i) == f) last = i;
  return last;
}

void map_from_expected(const Expected& e, Side ms, int m,
                       const std::vector<AuxSpec>& auxes,
                       std::map<OccRef, OccImage>& out) {
  for (int sd = 0; sd < 2; ++sd) {
    Side s = static_cast<Side>(sd);
    for (int i = 0; i < static_cast<int>(e.src[sd].size()); ++i) {
      const SrcEntry& en = e.src[sd][i];
      if (en.ctx) {
        out[{s, i}] = OccImage{{s, en.concl_index}, {}};
      } else if (en.aux >= 0) {
        out[{s, i}] = OccImage{{ms, m}, auxes[en.aux].prefix};
      } else {
        out[{s, i}] = OccImage{{ms, m}, {}};
      }
    }
  }
}

// Local schema analysis. Returns diagnostics; with an empty result and a
// non-null maps_out, fills one occurrence map per premise.
std::vector<std::string> analyze(const Proof& node, DownMaps* maps_out) {
  std::vector<std::string> errs;
  auto fail = [&](std::string m) { errs.push_back(std::move(m)); };

  const Sequent& c = node.conclusion;
  const std::string rname = rule_name(node.rule);

  int need = premise_count(node.rule);
  if (static_cast<int>(node.premises.size()) != need) {
    fail(rname + " expects " + std::to_string(need) + " premises, found " +
         std::to_string(node.premises.size()));
    return errs;
  }
  for (const auto& q : node.premises)
    if (!q) {
      fail("missing premise node");
      return errs;
    }

  if (node.rule == RuleId::Axiom) {
    if (node.principal.size() == 2) {
      int i = node.principal[0], j = node.principal[1];
      if (i < 0 || i >= c.count(Side::Ant) || j < 0 || j >= c.count(Side::Suc)) {
        fail("axiom principal indices out of range");
      } else if (!(c.at(Side::Ant, i) == c.at(Side::Suc, j))) {
        fail("axiom expects matching antecedent and succedent formulas, found '" +
             c.at(Side::Ant, i).text() + "' and '" + c.at(Side::Suc, j).text() + "'");
      }
    } else if (node.principal.size() == 1) {
      if (!constant_axiom_side(c, node.principal[0]))
        fail("constant axiom expects a true succedent or a false antecedent at its principal index");
    } else {
      fail("axiom principal must hold one or two indices");
    }
    if (errs.empty() && maps_out) maps_out->clear();
    return errs;
  }

  if (node.principal.size() != 1) {
    fail(rname + " expects exactly one principal index");
    return errs;
  }
  Side ms = rule_main_side(node.rule);
  int m = node.principal[0];
  if (m < 0 || m >= c.count(ms)) {
    fail(rname + " principal index out of range");
    return errs;
  }
  Formula main = c.at(ms, m);
  if (shape_constrained(node.rule) && main.kind() != required_kind(node.rule)) {
    fail(rname + " principal formula has the wrong connective: '" + main.text() + "'");
    return errs;
  }

  DownMaps maps(node.premises.size());

  if (need == 1) {
    Expected e;
    std::vector<AuxSpec> auxes;
    if (node.rule == RuleId::ContrL || node.rule == RuleId::ContrR) {
      e = start_from(c);
      insert_entry(e, ms, main, SrcEntry{false, -1, -1});
    } else {
      e = remove_main(c, ms, m);
      auxes = unary_auxes(node.rule, main);
      for (int k = 0; k < static_cast<int>(auxes.size()); ++k)
        insert_entry(e, auxes[k].side, auxes[k].formula, SrcEntry{false, -1, k});
    }
    const Sequent& found = node.premises[0]->conclusion;
    if (!(e.seq == found)) {
      fail("premise of " + rname + " should read '" + e.seq.text() + "', found '" +
           found.text() + "'");
      return errs;
    }
    map_from_expected(e, ms, m, auxes, maps[0]);
    if (maps_out) *maps_out = std::move(maps);
    return errs;
  }

  // Binary rule: locate each premise's new component, then merge contexts.
  auto auxes = binary_auxes(node.rule, main);
  std::array<Sequent, 2> ctx;
  std::array<int, 2> aux_at{};
  for (int pi = 0; pi < 2; ++pi) {
    const Sequent& ps = node.premises[pi]->conclusion;
    int la = locate_last(ps, auxes[pi].side, auxes[pi].formula);
    if (la < 0) {
      fail("premise " + std::to_string(pi + 1) + " of " + rname + " lacks '" +
           auxes[pi].formula.text() + "' in its " + side_name(auxes[pi].side) + "ecedent");
      return errs;
    }
    aux_at[pi] = la;
    ctx[pi] = ps.removed(auxes[pi].side, la);
  }

  Expected base = remove_main(c, ms, m);
  // ctx position -> conclusion index, preferring premise 1 within equal runs
  std::array<std::array<std::vector<int>, 2>, 2> assign;  // [premise][side]
  for (int sd = 0; sd < 2 && errs.empty(); ++sd) {
    Side s = static_cast<Side>(sd);
    int i1 = 0, i2 = 0;
    for (int k = 0; k < base.seq.count(s); ++k) {
      Formula f = base.seq.at(s, k);
      int ck = base.src[sd][k].concl_index;
      if (i1 < ctx[0].count(s) && ctx[0].at(s, i1) == f) {
        assign[0][sd].push_back(ck);
        ++i1;
      } else if (i2 < ctx[1].count(s) && ctx[1].at(s, i2) == f) {
        assign[1][sd].push_back(ck);
        ++i2;
      } else {
        fail("premises of " + rname + " do not split the conclusion context '" +
             base.seq.text() + "'");
        break;
      }
    }
    if (errs.empty() && (i1 != ctx[0].count(s) || i2 != ctx[1].count(s)))
      fail("premises of " + rname + " carry more context than the conclusion provides");
  }
  if (!errs.empty()) return errs;

  for (int pi = 0; pi < 2; ++pi) {
    const Sequent& ps = node.premises[pi]->conclusion;
    for (int sd = 0; sd < 2; ++sd) {
      Side s = static_cast<Side>(sd);
      for (int i = 0; i < ps.count(s); ++i) {
        if (s == auxes[pi].side && i == aux_at[pi]) {
          maps[pi][{s, i}] = OccImage{{ms, m}, auxes[pi].prefix};
          continue;
        }
        int cpos = i;
        if (s == auxes[pi].side && i > aux_at[pi]) cpos = i - 1;
        maps[pi][{s, i}] = OccImage{{s, assign[pi][sd][cpos]}, {}};
      }
    }
  }
  if (maps_out) *maps_out = std::move(maps);
  return errs;
}

void lj_checks(const Proof& node, std::vector<std::string>& errs) {
  const std::string rname = rule_name(node.rule);
  if (!lj_admissible(node.rule))
    errs.push_back(rname + " is not available in the single-succedent system");

  const Sequent& c = node.conclusion;
  int sn = c.count(Side::Suc);
  for (int i = 1; i < sn; ++i) {
    if (!(c.at(Side::Suc, i) == c.at(Side::Suc, 0))) {
      errs.push_back("succedent mixes distinct formulas: '" + c.at(Side::Suc, 0).text() +
                     "' and '" + c.at(Side::Suc, i).text() + "'");
      break;
    }
  }

  switch (node.rule) {
    case RuleId::NotL:
      if (sn != 0) errs.push_back("NotL conclusion must have an empty succedent");
      break;
    case RuleId::NotR:
    case RuleId::AndR:
    case RuleId::OrRAddLeft:
    case RuleId::OrRAddRight:
    case RuleId::ImpR:
      if (sn != 1)
        errs.push_back(rname + " conclusion must have exactly one succedent formula");
      break;
    case RuleId::Axiom:
      if (node.principal.size() == 2 && sn != 1) {
        errs.push_back("axiom succedent must be a single formula");
      } else if (node.principal.size() == 1) {
        auto side = constant_axiom_side(c, node.principal[0]);
        if (side && *side == Side::Suc && sn != 1)
          errs.push_back("axiom succedent must be a single formula");
      }
      break;
    case RuleId::ImpL:
      if (node.premises.size() == 2 && node.premises[0] &&
          node.premises[0]->conclusion.count(Side::Suc) != 1)
        errs.push_back("ImpL left premise must carry a single succedent formula");
      break;
    default:
      break;
  }
}

void walk(const ProofPtr& p, System system, std::vector<int>& path,
          std::vector<Violation>& out) {
  if (!p) {
    out.push_back({path, "missing proof node"});
    return;
  }
  auto errs = analyze(*p, nullptr);
  if (system == System::LJ) lj_checks(*p, errs);
  for (auto& e : errs) out.push_back({path, std::move(e)});
  for (size_t i = 0; i < p->premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    walk(p->premises[i], system, path, out);
    path.pop_back();
  }
}

}  // namespace

CheckReport check_proof(const ProofPtr& p, System system) {
  CheckReport report;
  std::vector<int> path;
  walk(p, system, path, report.violations);
  return report;
}

DownMaps down_maps(const Proof& node) {
  DownMaps maps(node.premises.size());
  auto errs = analyze(node, &maps);
  if (!errs.empty())
    throw std::logic_error("occurrence maps of a malformed node: " + errs.front());
  return maps;
}

std::vector<RuleLink> per_rule_links(const Proof& node) {
  DownMaps maps = down_maps(node);
  std::vector<RuleLink> links;
  for (int pi = 0; pi < static_cast<int>(maps.size()); ++pi) {
    const Sequent& ps = node.premises[pi]->conclusion;
    for (int sd = 0; sd < 2; ++sd) {
      Side s = static_cast<Side>(sd);
      for (int i = 0; i < ps.count(s); ++i) {
        const OccImage& img = maps[pi].at({s, i});
        for (const auto& [apath, name] : atom_paths(ps.at(s, i))) {
          links.push_back({pi, OccPath{s, i, apath},
                           OccPath{img.to.side, img.to.index, cat(img.prefix, apath)}});
        }
      }
    }
  }
  return links;
}

namespace {

using RootMap = std::map<OccRef, OccImage>;

void collect_edges(const Proof& node, const RootMap& rm,
                   std::set<std::pair<OccPath, OccPath>>& edges) {
  if (node.rule == RuleId::Axiom) {
    if (node.principal.size() != 2) return;
    OccRef a{Side::Ant, node.principal[0]};
    OccRef b{Side::Suc, node.principal[1]};
    const OccImage& ia = rm.at(a);
    const OccImage& ib = rm.at(b);
    for (const auto& [apath, name] : atom_paths(node.conclusion.at(a.side, a.index))) {
      OccPath u{ia.to.side, ia.to.index, cat(ia.prefix, apath)};
      OccPath v{ib.to.side, ib.to.index, cat(ib.prefix, apath)};
      if (v < u) std::swap(u, v);
      edges.insert({u, v});
    }
    return;
  }
  DownMaps maps = down_maps(node);
  for (size_t pi = 0; pi < node.premises.size(); ++pi) {
    RootMap child;
    const Sequent& ps = node.premises[pi]->conclusion;
    for (int sd = 0; sd < 2; ++sd) {
      Side s = static_cast<Side>(sd);
      for (int i = 0; i < ps.count(s); ++i) {
        const OccImage& loc = maps[pi].at({s, i});
        const OccImage& up = rm.at(loc.to);
        child[{s, i}] = OccImage{up.to, cat(up.prefix, loc.prefix)};
      }
    }
    collect_edges(*node.premises[pi], child, edges);
  }
}

}  // namespace

FlowGraph flow_graph(const ProofPtr& p) {
  if (!p) throw std::logic_error("flow graph of an empty proof");
  FlowGraph g;
  const Sequent& end = p->conclusion;
  RootMap rm;
  for (int sd = 0; sd < 2; ++sd) {
    Side s = static_cast<Side>(sd);
    for (int i = 0; i < end.count(s); ++i) {
      for (const auto& [apath, name] : atom_paths(end.at(s, i)))
        g.vertices.push_back(OccPath{s, i, apath});
      rm[{s, i}] = OccImage{{s, i}, {}};
    }
  }
  collect_edges(*p, rm, g.edges);
  return g;
}

bool flow_has_edge(const FlowGraph& g, const OccPath& a, const OccPath& b) {
  OccPath u = a, v = b;
  if (v < u) std::swap(u, v);
  return g.edges.count({u, v}) > 0;
}

}  // namespace craig

#include <optional>

#include "craig/builders.hpp"
#include "craig/prover.hpp"

namespace craig {
namespace {

// Closing principal for the current goal, if any: an atomic pair, a true
// succedent formula, or a false antecedent formula.
std::optional<std::vector<int>> find_axiom(const Sequent& s) {
  for (int i = 0; i < s.count(Side::Ant); ++i) {
    const Formula& f = s.at(Side::Ant, i);
    if (f.kind() != Conn::Atom) continue;
    for (int j = 0; j < s.count(Side::Suc); ++j)
      if (s.at(Side::Suc, j) == f) return std::vector<int>{i, j};
  }
  for (int j = 0; j < s.count(Side::Suc); ++j)
    if (s.at(Side::Suc, j).kind() == Conn::Top) return std::vector<int>{j};
  for (int i = 0; i < s.count(Side::Ant); ++i)
    if (s.at(Side::Ant, i).kind() == Conn::Bottom) return std::vector<int>{i};
  return std::nullopt;
}

ProofPtr search(const Sequent& s);

// Proves both premises sharing the goal's context, applies the rule
// multiplicatively and contracts the duplicated context away.
ProofPtr branch(RuleId r, const Sequent& s, const Formula& main,
                const Sequent& g1, const Sequent& g2) {
  ProofPtr p1 = search(g1);
  if (!p1) return nullptr;
  ProofPtr p2 = search(g2);
  if (!p2) return nullptr;
  return contract_to(fwd_binary(r, main, p1, p2), s);
}

ProofPtr step(const Sequent& s, RuleId r, int i, const Sequent& goal) {
  ProofPtr sub = search(goal);
  if (!sub) return nullptr;
  return make_proof(s, r, {i}, {sub});
}

ProofPtr search(const Sequent& s) {
  if (auto ax = find_axiom(s)) return make_proof(s, RuleId::Axiom, *ax);
  for (int i = 0; i < s.count(Side::Ant); ++i) {
    const Formula& f = s.at(Side::Ant, i);
    Sequent rest = s.removed(Side::Ant, i);
    switch (f.kind()) {
      case Conn::Not:
        return step(s, RuleId::NotL, i,
                    rest.inserted(Side::Suc, f.child(0)).first);
      case Conn::And:
        return step(s, RuleId::AndLMult, i,
                    rest.inserted(Side::Ant, f.child(0))
                        .first.inserted(Side::Ant, f.child(1))
                        .first);
      case Conn::Or:
        return branch(RuleId::OrL, s, f,
                      rest.inserted(Side::Ant, f.child(0)).first,
                      rest.inserted(Side::Ant, f.child(1)).first);
      case Conn::Implies:
        return branch(RuleId::ImpL, s, f,
                      rest.inserted(Side::Suc, f.child(0)).first,
                      rest.inserted(Side::Ant, f.child(1)).first);
      default:
        break;
    }
  }
  for (int i = 0; i < s.count(Side::Suc); ++i) {
    const Formula& f = s.at(Side::Suc, i);
    Sequent rest = s.removed(Side::Suc, i);
    switch (f.kind()) {
      case Conn::Not:
        return step(s, RuleId::NotR, i,
                    rest.inserted(Side::Ant, f.child(0)).first);
      case Conn::Or:
        return step(s, RuleId::OrRMult, i,
                    rest.inserted(Side::Suc, f.child(0))
                        .first.inserted(Side::Suc, f.child(1))
                        .first);
      case Conn::Implies:
        return step(s, RuleId::ImpR, i,
                    rest.inserted(Side::Ant, f.child(0))
                        .first.inserted(Side::Suc, f.child(1))
                        .first);
      case Conn::And:
        return branch(RuleId::AndR, s, f,
                      rest.inserted(Side::Suc, f.child(0)).first,
                      rest.inserted(Side::Suc, f.child(1)).first);
      default:
        break;
    }
  }
  return nullptr;  // saturated with no closing principal
}

}  // namespace

std::optional<ProofPtr> prove_lk(const Sequent& s) {
  ProofPtr p = search(s);
  if (!p) return std::nullopt;
  return p;
}

}  // namespace craig

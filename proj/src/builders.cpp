#include "craig/builders.hpp"

#include <stdexcept>

namespace craig {

int locate_first(const Sequent& s, Side side, const Formula& f) {
  for (int i = 0; i < s.count(side); ++i)
    if (s.at(side, i) == f) return i;
  return -1;
}

int count_copies(const Sequent& s, Side side, const Formula& f) {
  int n = 0;
  for (int i = 0; i < s.count(side); ++i)
    if (s.at(side, i) == f) ++n;
  return n;
}

Sequent union_sequents(const Sequent& a, const Sequent& b) {
  std::vector<Formula> ant = a.ant();
  ant.insert(ant.end(), b.ant().begin(), b.ant().end());
  std::vector<Formula> suc = a.suc();
  suc.insert(suc.end(), b.suc().begin(), b.suc().end());
  return Sequent::of(std::move(ant), std::move(suc));
}

namespace {

Sequent drop_first(const Sequent& s, Side side, const Formula& f) {
  int i = locate_first(s, side, f);
  if (i < 0)
    throw std::logic_error("missing occurrence of '" + f.text() + "' in '" +
                           s.text() + "'");
  return s.removed(side, i);
}

// Aux formula consumed from each premise of a binary rule.
std::pair<std::pair<Side, Formula>, std::pair<Side, Formula>> binary_aux(
    RuleId r, const Formula& main) {
  switch (r) {
    case RuleId::AndR:
      return {{Side::Suc, main.child(0)}, {Side::Suc, main.child(1)}};
    case RuleId::OrL:
      return {{Side::Ant, main.child(0)}, {Side::Ant, main.child(1)}};
    case RuleId::ImpL:
      return {{Side::Suc, main.child(0)}, {Side::Ant, main.child(1)}};
    default:
      throw std::logic_error("not a two-premise rule");
  }
}

}  // namespace

ProofPtr fwd_intro(RuleId r, const std::vector<std::pair<Side, Formula>>& consumed,
                   Side main_side, const Formula& main, const ProofPtr& prem) {
  Sequent c = prem->conclusion;
  for (const auto& [sd, f] : consumed) c = drop_first(c, sd, f);
  auto [c2, t] = c.inserted(main_side, main);
  return make_proof(std::move(c2), r, {t}, {prem});
}

ProofPtr fwd_binary(RuleId r, const Formula& main, const ProofPtr& p1,
                    const ProofPtr& p2) {
  auto [a1, a2] = binary_aux(r, main);
  Sequent c1 = drop_first(p1->conclusion, a1.first, a1.second);
  Sequent c2 = drop_first(p2->conclusion, a2.first, a2.second);
  auto [c, t] = union_sequents(c1, c2).inserted(rule_main_side(r), main);
  return make_proof(std::move(c), r, {t}, {p1, p2});
}

ProofPtr fwd_contr(Side side, const Formula& f, const ProofPtr& prem) {
  Sequent c = drop_first(prem->conclusion, side, f);
  int m = locate_first(c, side, f);
  if (m < 0)
    throw std::logic_error("contraction needs two copies of '" + f.text() + "'");
  return make_proof(std::move(c),
                    side == Side::Ant ? RuleId::ContrL : RuleId::ContrR, {m},
                    {prem});
}

ProofPtr fwd_weak(Side side, const Formula& f, const ProofPtr& prem) {
  auto [c, t] = prem->conclusion.inserted(side, f);
  return make_proof(std::move(c),
                    side == Side::Ant ? RuleId::WeakL : RuleId::WeakR, {t},
                    {prem});
}

ProofPtr contract_to(ProofPtr p, const Sequent& target) {
  for (int sd = 0; sd < 2; ++sd) {
    Side side = static_cast<Side>(sd);
    int i = 0;
    while (i < p->conclusion.count(side)) {
      Formula f = p->conclusion.at(side, i);
      int have = count_copies(p->conclusion, side, f);
      int want = count_copies(target, side, f);
      if (have <= want) {
        i += have;
        continue;
      }
      for (; have > want; --have)
        p = fwd_contr(side, f, p);
      i = locate_first(p->conclusion, side, f) + want;
    }
  }
  if (!(p->conclusion == target))
    throw std::logic_error("cannot contract '" + p->conclusion.text() +
                           "' down to '" + target.text() + "'");
  return p;
}

ProofPtr weaken_lj(const ProofPtr& p, const Formula& f) {
  auto [c2, t] = p->conclusion.inserted(Side::Ant, f);
  std::vector<int> principal = p->principal;
  auto shift = [t](int idx) { return idx >= t ? idx + 1 : idx; };
  if (p->rule == RuleId::Axiom) {
    if (principal.size() == 2) {
      principal[0] = shift(principal[0]);
    } else if (principal.size() == 1 &&
               constant_axiom_side(p->conclusion, principal[0]) == Side::Ant) {
      principal[0] = shift(principal[0]);
    }
  } else if (rule_main_side(p->rule) == Side::Ant && !principal.empty()) {
    principal[0] = shift(principal[0]);
  }
  std::vector<ProofPtr> prem = p->premises;
  if (!prem.empty()) prem[0] = weaken_lj(prem[0], f);
  return make_proof(std::move(c2), p->rule, std::move(principal),
                    std::move(prem));
}

}  // namespace craig

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "craig/builders.hpp"
#include "craig/prover.hpp"

namespace craig {
namespace {

// Search goal: antecedent as a sorted set, succedent as copies of one formula.
struct Goal {
  std::vector<Formula> ant;
  std::optional<Formula> suc;
  int suc_count = 0;
};

bool contains(const std::vector<Formula>& v, const Formula& f) {
  auto it = std::lower_bound(v.begin(), v.end(), f);
  return it != v.end() && *it == f;
}

void add(std::vector<Formula>& v, const Formula& f) {
  auto it = std::lower_bound(v.begin(), v.end(), f);
  if (it == v.end() || !(*it == f)) v.insert(it, f);
}

void remove(std::vector<Formula>& v, const Formula& f) {
  auto it = std::lower_bound(v.begin(), v.end(), f);
  if (it != v.end() && *it == f) v.erase(it);
}

Sequent to_sequent(const Goal& g) {
  std::vector<Formula> suc;
  for (int i = 0; i < g.suc_count; ++i) suc.push_back(*g.suc);
  return Sequent::of(g.ant, std::move(suc));
}

std::string key_of(const Goal& g) {
  std::string k;
  for (const Formula& f : g.ant) {
    k += f.text();
    k += '\x1f';
  }
  k += '>';
  if (g.suc) k += g.suc->text();
  k += '#';
  k += std::to_string(g.suc_count);
  return k;
}

Goal with_suc(const std::vector<Formula>& ant, const Formula& f, int count) {
  Goal g;
  g.ant = ant;
  if (count > 0) {
    g.suc = f;
    g.suc_count = count;
  }
  return g;
}

class LjProver {
 public:
  explicit LjProver(const SearchBudget& b) : budget_(b) {}

  bool budget_hit() const { return budget_hit_; }

  ProofPtr solve(const Goal& g, int depth) {
    if (depth > budget_.max_depth ||
        static_cast<int>(g.ant.size()) + g.suc_count > budget_.max_sequent_size) {
      budget_hit_ = true;
      return nullptr;
    }
    Sequent seq = to_sequent(g);
    if (ProofPtr leaf = close(g, seq)) return leaf;
    std::string key = key_of(g);
    if (std::find(trail_.begin(), trail_.end(), key) != trail_.end())
      return nullptr;  // goal repeats on this branch
    trail_.push_back(std::move(key));
    ProofPtr r = expand(g, seq, depth);
    trail_.pop_back();
    return r;
  }

 private:
  ProofPtr close(const Goal& g, const Sequent& seq) {
    if (g.suc_count == 1) {
      int i = locate_first(seq, Side::Ant, *g.suc);
      if (i >= 0) return make_proof(seq, RuleId::Axiom, {i, 0});
      if (g.suc->kind() == Conn::Top) return make_proof(seq, RuleId::Axiom, {0});
    }
    for (int i = 0; i < static_cast<int>(g.ant.size()); ++i)
      if (g.ant[i].kind() == Conn::Bottom)
        return make_proof(seq, RuleId::Axiom, {i});
    return nullptr;
  }

  ProofPtr expand(const Goal& g, const Sequent& seq, int depth) {
    // conjunctions feed their parts into the antecedent
    for (const Formula& f : g.ant) {
      if (f.kind() != Conn::And) continue;
      Formula a = f.child(0), b = f.child(1);
      bool add_a = !contains(g.ant, a);
      bool add_b = !(a == b) && !contains(g.ant, b);
      if (!add_a && !add_b) continue;
      Goal g2 = g;
      add(g2.ant, a);
      add(g2.ant, b);
      ProofPtr sub = solve(g2, depth + 1);
      if (!sub) continue;
      if (add_a)
        sub = fwd_intro(RuleId::AndLAddLeft, {{Side::Ant, a}}, Side::Ant, f, sub);
      if (add_b)
        sub = fwd_intro(RuleId::AndLAddRight, {{Side::Ant, b}}, Side::Ant, f, sub);
      return contract_to(std::move(sub), seq);
    }

    if (g.suc_count == 1 && g.suc->kind() == Conn::Not) {
      Formula a = g.suc->child(0);
      Goal g2 = with_suc(g.ant, a, 0);
      add(g2.ant, a);
      if (ProofPtr sub = solve(g2, depth + 1)) {
        if (contains(g.ant, a)) sub = weaken_lj(sub, a);
        sub = fwd_intro(RuleId::NotR, {{Side::Ant, a}}, Side::Suc, *g.suc, sub);
        return contract_to(std::move(sub), seq);
      }
    }

    if (g.suc_count == 1 && g.suc->kind() == Conn::Implies) {
      Formula a = g.suc->child(0), b = g.suc->child(1);
      Goal g2 = with_suc(g.ant, b, 1);
      add(g2.ant, a);
      if (ProofPtr sub = solve(g2, depth + 1)) {
        if (contains(g.ant, a)) sub = weaken_lj(sub, a);
        sub = fwd_intro(RuleId::ImpR, {{Side::Ant, a}, {Side::Suc, b}}, Side::Suc,
                        *g.suc, sub);
        return contract_to(std::move(sub), seq);
      }
    }

    // antecedent disjunctions, trying succedent copy splits
    for (const Formula& f : g.ant) {
      if (f.kind() != Conn::Or) continue;
      Formula a = f.child(0), b = f.child(1);
      Goal base = g;
      remove(base.ant, f);
      bool spare_a = contains(base.ant, a);
      bool spare_b = contains(base.ant, b);
      int c = g.suc_count;
      for (int c1 = c; c1 >= 0; --c1) {
        Goal ga = with_suc(base.ant, c1 > 0 ? *g.suc : Formula::top(), c1);
        add(ga.ant, a);
        ProofPtr p1 = solve(ga, depth + 1);
        if (!p1) continue;
        for (int c2 = c; c1 + c2 >= c && c2 >= 0; --c2) {
          Goal gb = with_suc(base.ant, c2 > 0 ? *g.suc : Formula::top(), c2);
          add(gb.ant, b);
          ProofPtr p2 = solve(gb, depth + 1);
          if (!p2) continue;
          if (spare_a) p1 = weaken_lj(p1, a);
          if (spare_b) p2 = weaken_lj(p2, b);
          return contract_to(fwd_binary(RuleId::OrL, f, p1, p2), seq);
        }
      }
    }

    if (g.suc_count == 1 && g.suc->kind() == Conn::And) {
      Formula a = g.suc->child(0), b = g.suc->child(1);
      if (ProofPtr p1 = solve(with_suc(g.ant, a, 1), depth + 1))
        if (ProofPtr p2 = solve(with_suc(g.ant, b, 1), depth + 1))
          return contract_to(fwd_binary(RuleId::AndR, *g.suc, p1, p2), seq);
    }

    if (g.suc_count == 1 && g.suc->kind() == Conn::Or) {
      for (int pick = 0; pick < 2; ++pick) {
        Formula cpick = g.suc->child(pick);
        if (ProofPtr sub = solve(with_suc(g.ant, cpick, 1), depth + 1)) {
          sub = fwd_intro(pick == 0 ? RuleId::OrRAddLeft : RuleId::OrRAddRight,
                          {{Side::Suc, cpick}}, Side::Suc, *g.suc, sub);
          return contract_to(std::move(sub), seq);
        }
      }
    }

    for (const Formula& f : g.ant) {
      if (f.kind() != Conn::Implies) continue;
      ProofPtr p1 = solve(with_suc(g.ant, f.child(0), 1), depth + 1);
      if (!p1) continue;
      Goal g2 = g;
      remove(g2.ant, f);
      bool spare_b = contains(g2.ant, f.child(1));
      add(g2.ant, f.child(1));
      ProofPtr p2 = solve(g2, depth + 1);
      if (!p2) continue;
      if (spare_b) p2 = weaken_lj(p2, f.child(1));
      return contract_to(fwd_binary(RuleId::ImpL, f, p1, p2), seq);
    }

    if (g.suc_count == 0) {
      for (const Formula& f : g.ant) {
        if (f.kind() != Conn::Not) continue;
        if (ProofPtr sub = solve(with_suc(g.ant, f.child(0), 1), depth + 1)) {
          sub = fwd_intro(RuleId::NotL, {{Side::Suc, f.child(0)}}, Side::Ant, f,
                          sub);
          return contract_to(std::move(sub), seq);
        }
      }
    }
    return nullptr;
  }

  SearchBudget budget_;
  bool budget_hit_ = false;
  std::vector<std::string> trail_;
};

}  // namespace

LjResult prove_lj(const Sequent& s, const SearchBudget& budget) {
  for (int j = 1; j < s.count(Side::Suc); ++j)
    if (!(s.at(Side::Suc, j) == s.at(Side::Suc, 0)))
      return {};  // succedent mixes formulas: outside the system
  Goal g;
  for (const Formula& f : s.ant()) add(g.ant, f);
  if (s.count(Side::Suc) > 0) {
    g.suc = s.at(Side::Suc, 0);
    g.suc_count = s.count(Side::Suc);
  }
  LjProver prover(budget);
  ProofPtr p = prover.solve(g, 0);
  if (!p)
    return {prover.budget_hit() ? LjStatus::BudgetExceeded
                                : LjStatus::NotProvable,
            nullptr};
  for (const Formula& f : g.ant) {
    int extra = count_copies(s, Side::Ant, f) - 1;
    for (; extra > 0; --extra) p = weaken_lj(p, f);
  }
  if (!(p->conclusion == s))
    throw std::logic_error("rebuilt proof concludes '" + p->conclusion.text() +
                           "', wanted '" + s.text() + "'");
  return {LjStatus::Proved, p};
}

}  // namespace craig

#pragma once

#include <string>
#include <vector>

#include "craig/formula.hpp"

// All formulas over the given atoms plus constants, of node depth at most d
// (a leaf has depth 1).
inline std::vector<craig::Formula> enumerate_formulas(
    int d, const std::vector<std::string>& atoms) {
  using craig::Formula;
  std::vector<Formula> leaves;
  for (const auto& a : atoms) leaves.push_back(Formula::atom(a));
  leaves.push_back(Formula::top());
  leaves.push_back(Formula::bottom());
  std::vector<Formula> cur = leaves;
  for (int k = 2; k <= d; ++k) {
    std::vector<Formula> next = leaves;
    for (const Formula& f : cur) next.push_back(Formula::negation(f));
    for (const Formula& f : cur)
      for (const Formula& g : cur) {
        next.push_back(Formula::conjunction(f, g));
        next.push_back(Formula::disjunction(f, g));
        next.push_back(Formula::implication(f, g));
      }
    cur = std::move(next);
  }
  return cur;
}

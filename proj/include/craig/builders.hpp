#pragma once

#include <utility>
#include <vector>

#include "craig/proof.hpp"

namespace craig {

// Index of the first copy of f on the given side, -1 if absent.
int locate_first(const Sequent& s, Side side, const Formula& f);

int count_copies(const Sequent& s, Side side, const Formula& f);

// Multiset sum of two sequents, side by side.
Sequent union_sequents(const Sequent& a, const Sequent& b);

// Applies a one-premise rule forward: removes the listed occurrences from the
// premise conclusion, inserts the main formula, returns the new node. The
// principal index is the insertion position.
ProofPtr fwd_intro(RuleId r, const std::vector<std::pair<Side, Formula>>& consumed,
                   Side main_side, const Formula& main, const ProofPtr& prem);

// Applies a two-premise rule forward. Each premise loses its aux occurrence,
// the contexts are joined multiplicatively, and the main formula is inserted.
ProofPtr fwd_binary(RuleId r, const Formula& main, const ProofPtr& p1,
                    const ProofPtr& p2);

// One contraction step merging two copies of f.
ProofPtr fwd_contr(Side side, const Formula& f, const ProofPtr& prem);

// One weakening step adding f on the given side.
ProofPtr fwd_weak(Side side, const Formula& f, const ProofPtr& prem);

// Contracts surplus copies until the conclusion equals target. Throws
// std::logic_error if the conclusion cannot be reduced to it.
ProofPtr contract_to(ProofPtr p, const Sequent& target);

// Threads one extra antecedent formula through a proof: every node gains a
// copy of f, axioms absorb it as context. Valid for single-succedent proofs.
ProofPtr weaken_lj(const ProofPtr& p, const Formula& f);

}  // namespace craig

#pragma once

#include <optional>

#include "craig/proof.hpp"

namespace craig {

// Complete classical search: returns a proof exactly when the sequent is
// valid under the truth-table semantics. Proofs contain no weakening; shared
// contexts of two-premise rules are rebuilt with contractions.
std::optional<ProofPtr> prove_lk(const Sequent& s);

struct SearchBudget {
  int max_depth = 200;
  int max_sequent_size = 64;
};

enum class LjStatus { Proved, NotProvable, BudgetExceeded };

struct LjResult {
  LjStatus status = LjStatus::NotProvable;
  ProofPtr proof;  // set when status == Proved
};

// Single-succedent search with loop detection: NotProvable is definitive,
// BudgetExceeded reports that some branch hit the budget before closing.
LjResult prove_lj(const Sequent& s, const SearchBudget& budget = {});

}  // namespace craig

#pragma once

#include <map>

#include "craig/sequent.hpp"

namespace craig {

using Valuation = std::map<std::string, bool>;

// Atoms missing from the valuation read as false.
bool eval_classical(const Formula& f, const Valuation& v);

// True when some antecedent member is false or some succedent member is true.
bool holds_classical(const Sequent& s, const Valuation& v);

// Truth-table check over the sequent's atoms.
bool is_valid_classical(const Sequent& s);

}  // namespace craig

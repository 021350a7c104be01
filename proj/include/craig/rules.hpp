#pragma once

#include <optional>
#include <string>

namespace craig {

enum class RuleId {
  Axiom,
  NotL,
  NotR,
  AndLMult,
  AndLAddLeft,
  AndLAddRight,
  AndR,
  OrL,
  OrRMult,
  OrRAddLeft,
  OrRAddRight,
  ImpL,
  ImpR,
  WeakL,
  WeakR,
  ContrL,
  ContrR,
};

// Stable external spellings, used in JSON and diagnostics.
const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& name);

int premise_count(RuleId r);  // 0 for Axiom, 1 or 2 otherwise

// Rules admitted by the single-succedent intuitionistic system: no
// weakening and no multiplicative AndL/OrR.
bool lj_admissible(RuleId r);

}  // namespace craig

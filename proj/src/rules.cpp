#include "craig/rules.hpp"

#include <array>
#include <utility>

namespace craig {

namespace {

constexpr std::array<std::pair<RuleId, const char*>, 17> kNames{{
    {RuleId::Axiom, "Axiom"},
    {RuleId::NotL, "NotL"},
    {RuleId::NotR, "NotR"},
    {RuleId::AndLMult, "AndL-mult"},
    {RuleId::AndLAddLeft, "AndL-add-left"},
    {RuleId::AndLAddRight, "AndL-add-right"},
    {RuleId::AndR, "AndR"},
    {RuleId::OrL, "OrL"},
    {RuleId::OrRMult, "OrR-mult"},
    {RuleId::OrRAddLeft, "OrR-add-left"},
    {RuleId::OrRAddRight, "OrR-add-right"},
    {RuleId::ImpL, "ImpL"},
    {RuleId::ImpR, "ImpR"},
    {RuleId::WeakL, "WeakL"},
    {RuleId::WeakR, "WeakR"},
    {RuleId::ContrL, "ContrL"},
    {RuleId::ContrR, "ContrR"},
}};

}  // namespace

const char* rule_name(RuleId r) {
  for (const auto& [id, name] : kNames)
    if (id == r) return name;
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& name) {
  for (const auto& [id, n] : kNames)
    if (name == n) return id;
  return std::nullopt;
}

int premise_count(RuleId r) {
  switch (r) {
    case RuleId::Axiom:
      return 0;
    case RuleId::AndR:
    case RuleId::OrL:
    case RuleId::ImpL:
      return 2;
    default:
      return 1;
  }
}

bool lj_admissible(RuleId r) {
  switch (r) {
    case RuleId::AndLMult:
    case RuleId::OrRMult:
    case RuleId::WeakL:
    case RuleId::WeakR:
      return false;
    default:
      return true;
  }
}

}  // namespace craig

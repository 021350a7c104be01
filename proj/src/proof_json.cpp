#include "craig/proof_json.hpp"

#include <stdexcept>

#include "craig/parser.hpp"

namespace craig {

nlohmann::json proof_to_json(const ProofPtr& p) {
  if (!p) throw std::runtime_error("cannot serialize an empty proof");
  nlohmann::json j;
  j["rule"] = rule_name(p->rule);
  j["conclusion"] = p->conclusion.text();
  j["principal"] = p->principal;
  auto prem = nlohmann::json::array();
  for (const auto& q : p->premises) prem.push_back(proof_to_json(q));
  j["premises"] = std::move(prem);
  return j;
}

ProofPtr proof_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("proof node must be a JSON object");
  for (const char* key : {"rule", "conclusion", "principal", "premises"})
    if (!j.contains(key))
      throw std::runtime_error(std::string("proof node lacks the '") + key + "' field");
  if (!j["rule"].is_string()) throw std::runtime_error("'rule' must be a string");
  auto rule = rule_from_name(j["rule"].get<std::string>());
  if (!rule)
    throw std::runtime_error("unknown rule id '" + j["rule"].get<std::string>() + "'");
  if (!j["conclusion"].is_string())
    throw std::runtime_error("'conclusion' must be a sequent string");
  Sequent conclusion = parse_sequent(j["conclusion"].get<std::string>());
  if (!j["principal"].is_array())
    throw std::runtime_error("'principal' must be an index array");
  std::vector<int> principal;
  for (const auto& v : j["principal"]) {
    if (!v.is_number_integer())
      throw std::runtime_error("'principal' entries must be integers");
    principal.push_back(v.get<int>());
  }
  if (!j["premises"].is_array())
    throw std::runtime_error("'premises' must be an array");
  std::vector<ProofPtr> premises;
  for (const auto& v : j["premises"]) premises.push_back(proof_from_json(v));
  return make_proof(std::move(conclusion), *rule, std::move(principal),
                    std::move(premises));
}

}  // namespace craig

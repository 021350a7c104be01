#pragma once

#include <json.hpp>

#include "craig/proof.hpp"

namespace craig {

// {"rule": ..., "conclusion": ..., "principal": [...], "premises": [...]}
// with the conclusion in sequent syntax; links are never serialized.
nlohmann::json proof_to_json(const ProofPtr& p);

// Throws std::runtime_error on malformed input, including unknown rule names.
ProofPtr proof_from_json(const nlohmann::json& j);

}  // namespace craig

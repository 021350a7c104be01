#pragma once

#include <stdexcept>
#include <string>

#include "craig/sequent.hpp"

namespace craig {

// Reported positions are 1-based character columns into the input string.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, int position);
  int position() const { return position_; }

private:
  int position_;
};

// Grammar, loosest to tightest: "->" (right associative), "|", "&", "~".
// Atoms are [A-Za-z_][A-Za-z0-9_]*; "true" and "false" are constants.
Formula parse_formula(const std::string& input);

// "gamma => delta" with comma-separated, possibly empty sides.
Sequent parse_sequent(const std::string& input);

}  // namespace craig

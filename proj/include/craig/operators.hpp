#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "craig/rules.hpp"
#include "craig/structured.hpp"

namespace craig {

// Id well shared by every allocation inside one derivation.
struct IdAlloc {
  int next_set = 0;
  int next_point = 0;
  int set_id() { return next_set++; }
  int point_id() { return next_point++; }
};

// Result of building one operator value: the fresh set plus one embedding per
// argument, in argument order.
struct BuiltValue {
  PointSet value;
  std::vector<Embedding> args;
};

using ValueBuilder =
    std::function<BuiltValue(const std::vector<const PointSet*>&, IdAlloc&)>;

// An operator is data: arities, component bookkeeping, and the value builder.
struct OperatorSpec {
  std::string name;
  int arity = 1;
  std::vector<std::pair<int, int>> arg_counts;  // per input: from first, from second
  Comp value_comp = Comp::First;
  bool surjective = true;  // declared; each application records the computed fact
  ValueBuilder build;
  int subarity() const;
};

// One consumed set: a position inside a component of the chosen input.
struct ArgPick {
  Comp comp = Comp::First;
  int index = 0;
  bool operator==(const ArgPick& o) const = default;
};

struct Applied {
  StructuredSet output;
  PointSet value;
  std::vector<Embedding> arg_embeddings;
  std::vector<int> arg_ids;
  bool surjective = false;  // computed: every value point is hit by an argument
};

struct ArgumentMissing : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ComponentMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Consumes the selected sets of the inputs, builds the value, and returns the
// merged output with the value appended to its component. Bystanders pass
// through untouched, inputs in the order given.
Applied apply_operator(const OperatorSpec& op,
                       const std::vector<const StructuredSet*>& inputs,
                       const std::vector<std::vector<ArgPick>>& selection,
                       const SetTable& table, IdAlloc& alloc);

// Records an application around an already-built value, validating the
// selection and embeddings exactly as apply_operator does. Lets one value be
// shared by applications in several spaces.
Applied apply_prebuilt(const OperatorSpec& shape,
                       const std::vector<const StructuredSet*>& inputs,
                       const std::vector<std::vector<ArgPick>>& selection,
                       const SetTable& table, PointSet value,
                       std::vector<Embedding> embeddings);

// Fixed argument spliced into a base operator when deriving a smaller one.
struct Auxiliary {
  int input = 0;  // base input slot the set feeds
  int pos = 0;    // position in that input's argument list
  Comp comp = Comp::First;
  PointSet set;
};

// Restriction of a k-ary operator to its first `kept` inputs: auxiliaries fill
// every dropped input and any dropped argument slots of the kept ones. The
// derived action equals the base action on the augmented arguments.
OperatorSpec derive_operator(const OperatorSpec& base, int kept,
                             std::vector<Auxiliary> aux);

// Same value and embeddings up to renaming of points, matching tree sets leaf
// by leaf and plain sets by position.
bool built_equivalent(const BuiltValue& a, const std::vector<const PointSet*>& args_a,
                      const BuiltValue& b, const std::vector<const PointSet*>& args_b);

// A regular pair: an l-ary operator taking one argument per input, and the
// dual unary operator of subarity l acting on opposite components.
struct RegularPair {
  OperatorSpec wide;
  OperatorSpec tall;
};

struct PairKey {
  int arity = 0;
  std::vector<Comp> arg_comps;  // the wide member's argument components
  Comp value_comp = Comp::First;
  auto operator<=>(const PairKey& o) const = default;
};

PairKey pair_key(const OperatorSpec& wide);
std::string pair_key_text(const PairKey& k);

struct RegistryGap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arity and component duality between the two members.
std::optional<std::string> validate_pair_shape(const RegularPair& p);

// Behavioral half of the pair laws: on shared arguments both members build
// copies of one value, and their argument embeddings coincide leafwise.
std::optional<std::string> validate_pair_values(const RegularPair& p,
                                                const std::vector<const PointSet*>& args);

class RegularPairRegistry {
 public:
  void add(RegularPair pair);  // throws std::invalid_argument on a shape violation
  const RegularPair* find(const PairKey& k) const;
  const RegularPair& require(const PairKey& k) const;  // throws RegistryGap
  void set_contraction(std::function<OperatorSpec(Comp, int)> make);
  bool has_contraction() const { return static_cast<bool>(contraction_); }
  OperatorSpec contraction(Comp c, int copies) const;  // throws RegistryGap

 private:
  std::map<PairKey, RegularPair> pairs_;
  std::function<OperatorSpec(Comp, int)> contraction_;
};

// The sequent-rule vocabulary. Axiom and the weakenings have no operator and
// are rejected; the additive rules come from derive_operator at use sites.
OperatorSpec rule_operator(RuleId r);

// Merges n copies of one shape into a fresh copy, identity leaf by leaf.
OperatorSpec contraction_op(Comp c, int copies);

// Disjoint-union join over plain sets, any arity and argument layout.
OperatorSpec plain_op(std::string name, std::vector<std::pair<int, int>> arg_counts,
                      Comp value_comp);

// Connective pairs plus contraction: the vocabulary interpolation draws on.
RegularPairRegistry logic_registry();

// Union pairs for plain demonstrations.
RegularPairRegistry plain_registry();

}  // namespace craig

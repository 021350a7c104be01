#pragma once

#include <json.hpp>

#include <set>
#include <variant>

#include "craig/maehara.hpp"
#include "craig/operators.hpp"
#include "craig/proof.hpp"

namespace craig {

// One starting structured set together with its triviality witness.
struct InitialSet {
  StructuredSet sets;
  Embedding witness;
};

// A recorded operator application: the consumed space entries, the argument
// selection, and the materialized value with its embeddings.
struct OpStep {
  std::string op;
  std::vector<std::pair<int, int>> arg_counts;
  Comp value_comp = Comp::First;
  bool surjective = false;
  std::vector<int> inputs;  // space positions at application time
  std::vector<std::vector<ArgPick>> picks;
  int value_id = -1;
  std::vector<Embedding> arg_embeddings;
};

// A set joining a space entry with no history, the way weakening introduces a
// formula from nowhere.
struct AdjoinStep {
  int input = 0;
  Comp comp = Comp::First;
  int set_id = -1;
};

using DerivStep = std::variant<OpStep, AdjoinStep>;

struct NonReplayableDerivation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Derivation {
  bool bipartite = true;
  SetTable table;
  std::vector<InitialSet> initial;
  std::vector<DerivStep> steps;
  Space final_space;
  std::map<int, Part> final_colors;
  std::set<int> pads;                 // empty filler sets, invisible to decoding
  std::map<int, OccRef> occurrences;  // encoded proofs: end occurrence per final set
  IdAlloc alloc;
};

struct ResolvedStep {
  bool adjoin = false;
  std::vector<int> arg_ids;
  int value_id = -1;
  StructuredSet output;
};

struct ReplayLog {
  std::vector<ResolvedStep> steps;
  Space final_space;
};

// Runs the recorded steps from the initial space and checks everything:
// witness triviality, pick bounds and components, embedding legality, the
// recorded surjectivity, and the stored final space. Deterministic, so two
// replays of one derivation agree bit for bit.
ReplayLog replay(const Derivation& d);

// Applies op to the numbered space entries, records the step, and returns the
// output's position (the back of the space).
int push_step(Derivation& d, Space& space, const OperatorSpec& op,
              std::vector<int> inputs, std::vector<std::vector<ArgPick>> picks);

// Same, but around a prebuilt value, so one value can be shared by steps of
// several derivations.
int push_built(Derivation& d, Space& space, const OperatorSpec& shape,
               std::vector<int> inputs, std::vector<std::vector<ArgPick>> picks,
               const PointSet& value, std::vector<Embedding> embeddings);

int push_adjoin(Derivation& d, Space& space, int input, Comp comp, PointSet set);

// Starts a derivation: registers the member sets and appends the entry.
int push_initial(Derivation& d, Space& space, std::vector<PointSet> first,
                 std::vector<PointSet> second, Embedding witness);

// Ancestry coloring: extends the final-space colors backward through every
// step, so each table id ends up on the A or the B side.
std::map<int, Part> chase_colors(const Derivation& d);

nlohmann::json derivation_to_json(const Derivation& d);

// Throws std::runtime_error on malformed input. Plain derivations reload with
// full fidelity; formula shapes are rebuilt from their rendered text.
Derivation derivation_from_json(const nlohmann::json& j);

// Graphviz rendering of the final space: one cluster per structured set split
// into components, plus every witness and step embedding as an edge.
std::string space_dot(const Derivation& d);

// Encodes a checked sequent proof: occurrences become formula-shaped point
// sets, axioms become trivial structured sets, rule instances become operator
// steps (weakening adjoins). Single-succedent proofs come out restricted.
Derivation lk_as_operators(const ProofPtr& p, const Partition& part);

Formula decode_formula(const PointSet& s);
Sequent decode_sequent(const StructuredSet& s, const Derivation& d);

}  // namespace craig

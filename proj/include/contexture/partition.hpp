#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "contexture/logic.hpp"
#include "contexture/rational.hpp"
#include "contexture/states.hpp"

namespace contexture {

/// Partition logic: one partition of the ground set {1..r} per block,
/// cells identified with atoms.  Cell labels are 1-based state labels.
struct PartitionLogic {
  std::size_t num_states = 0;  // r
  std::vector<std::string> atom_names;
  std::vector<std::vector<std::size_t>> cells;  // per atom, sorted 1-based labels
  std::vector<std::string> block_names;
  std::vector<std::vector<std::size_t>> blocks;  // per partition, atom indices

  void validate() const;  // cells nonempty, disjoint, covering per partition
};

/// Generalized urn model: lookup table ball type x color -> symbol.
struct UrnModel {
  std::vector<std::string> ball_types;
  std::vector<std::string> colors;
  std::vector<std::string> symbols;
  std::vector<std::vector<std::string>> lookup;  // [ball][color]
};

/// Mealy automaton with state-erasing transition function.
struct MealyAutomaton {
  std::vector<std::string> states;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::vector<std::size_t>> delta;   // [state][input] -> state index
  std::vector<std::vector<std::string>> lambda;  // [state][input] -> output
};

/// Convex weight vector over the ground set; nonnegative, sums to 1.
struct ProbVector {
  std::vector<Rational> weights;
  void validate() const;
};

/// Inversion step: cells p(a) = labels of the states that are 1 on a,
/// in the order the states are given (label = position + 1).
/// Throws if ss is empty or two atoms of one block get identical cells.
PartitionLogic partition_from_states(const Logic& l,
                                     const std::vector<TwoValuedState>& states);

enum class SymbolScheme {
  AtomLabels,   // symbol printed on a ball is the atom name
  CompactRank,  // per color, cells ranked by least state label; symbol = rank
};

UrnModel urn_from_partition(const PartitionLogic& pl,
                            SymbolScheme scheme = SymbolScheme::AtomLabels);

/// r automaton states, one input per partition, outputs = atom labels,
/// delta constant to the first state.  star_form additionally fills the
/// per-atom output table (entries atom-or-"*").
MealyAutomaton automaton_from_partition(const PartitionLogic& pl);

/// Per-atom output table of the star form: [input][state][atom-in-block]
/// is the atom label when the state is 1 on it, "*" otherwise.
std::vector<std::vector<std::vector<std::string>>> automaton_star_outputs(
    const PartitionLogic& pl);

/// Direct conversions (index bijections on states/colors/symbols).
MealyAutomaton urn_to_automaton(const UrnModel& u);
UrnModel automaton_to_urn(const MealyAutomaton& a);

/// Empirical logic of a model: per color (input), group ball types
/// (states) by emitted symbol; cells become atoms, equal cells across
/// colors are identified.
Logic logic_from_urn(const UrnModel& u);
Logic logic_from_automaton(const MealyAutomaton& a);

/// P(a) = sum of weights over the cell of a.
std::vector<Rational> state_probabilities(const PartitionLogic& pl,
                                          const ProbVector& kappa);

/// Joint probability on identically prepared copies:
/// P(a_i and a_j and ...) = sum_k kappa_k * prod m_k(a).
Rational singlet_joint_probability(const PartitionLogic& pl,
                                   const ProbVector& kappa,
                                   const std::vector<std::size_t>& atoms);

// Text formats.
std::string partition_text(const PartitionLogic& pl);
std::string urn_tsv(const UrnModel& u);
UrnModel parse_urn_tsv(const std::string& text);
std::string automaton_tsv(const MealyAutomaton& a);
MealyAutomaton parse_automaton_tsv(const std::string& text);

}  // namespace contexture

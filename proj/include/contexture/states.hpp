#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contexture/logic.hpp"
#include "contexture/ray.hpp"

namespace contexture {

/// A two-valued (dispersion-free) state: 0/1 per atom, exactly one 1
/// per block.
using TwoValuedState = std::vector<std::uint8_t>;

enum class StateClass {
  Empty,
  NonUnital,    // nonempty but some atom is 0 in every state
  Unital,       // unital but not separating
  Separating,   // separating (treated as synonymous with "full")
};

std::string to_string(StateClass c);

struct StateSet {
  std::vector<TwoValuedState> states;  // lexicographic order, deduplicated
  StateClass classification = StateClass::Empty;
};

/// Complete enumeration of two-valued states by backtracking over
/// blocks (most-constrained block first, unit propagation on links).
/// threads > 1 fans the top-level branches out to a worker pool; the
/// result is sorted so the schedule cannot affect output.
StateSet enumerate_states(const Logic& l, unsigned threads = 1);

/// Two-valued states on a ray orthogonality graph: no two orthogonal
/// rays are both 1, and every complete context (maximal clique of size
/// dim) has exactly one 1.  Incomplete cliques are at-most-one.
StateSet enumerate_ray_states(const OrthoGraph& g, std::size_t dim,
                              unsigned threads = 1);

struct ParityCertificate {
  bool applies = false;
  std::string detail;
};

/// The parity obstruction: if every atom lies in an even number (>= 2)
/// of blocks and the number of blocks is odd, no two-valued state can
/// exist (each state would mark an even number of atom occurrences,
/// but one per block gives an odd count).
ParityCertificate parity_certificate(const Logic& l);

StateClass classify(const std::vector<TwoValuedState>& states,
                    std::size_t n_atoms);

/// CSV: header row of atom names, one 0/1 row per state, trailing
/// `# classification: ...` comment.
std::string states_csv(const StateSet& ss, const std::vector<std::string>& names);

}  // namespace contexture

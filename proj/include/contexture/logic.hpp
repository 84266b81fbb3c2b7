#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace contexture {

/// A pasted logic (Greechie diagram): named atoms and blocks of atom
/// indices.  The tautology and absurdity are implicit and never appear
/// as atoms.  Invariants: every atom occurs in at least one block,
/// atoms within a block are distinct, and no block is a subset of
/// another.
struct Logic {
  std::vector<std::string> atoms;
  std::vector<std::string> block_names;
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t atom_index(const std::string& name) const;  // throws if absent
  void validate() const;                                  // throws on violation
};

struct LinkReport {
  // blocks_of[i] lists the blocks containing atom i.
  std::vector<std::vector<std::size_t>> blocks_of;
  // Atoms occurring in >= 2 blocks.
  std::vector<std::size_t> link_atoms;
};

/// `.gdl` text format: one block per line, `blockname : atom atom ...`;
/// atom names match [A-Za-z0-9_]+; `#` comments; blank lines ignored.
Logic parse_logic(const std::string& text);
std::string render_logic(const Logic& l);

/// Pasting construction: disjoint union of the inputs with the listed
/// atom identifications merged.  Each identification is a pair of
/// (logic index, atom name) referring to atoms of distinct inputs.
/// With no identifications this is the horizontal sum.
struct Identification {
  std::size_t logic_a;
  std::string atom_a;
  std::size_t logic_b;
  std::string atom_b;
};
Logic paste(const std::vector<Logic>& logics,
            const std::vector<Identification>& identify);

/// Built-in fixtures: mo2, l12, bug, cabello, pentagon, triangle,
/// quadrangle.  Throws on an unknown name.
Logic builtin(const std::string& name);

LinkReport link_report(const Logic& l);

}  // namespace contexture

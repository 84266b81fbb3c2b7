#include "contexture/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace contexture {

void PartitionLogic::validate() const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::vector<bool> covered(num_states, false);
    for (auto a : blocks[b]) {
      if (cells[a].empty())
        throw std::logic_error("partition: empty cell for atom " + atom_names[a]);
      for (auto k : cells[a]) {
        if (k < 1 || k > num_states)
          throw std::logic_error("partition: cell label out of range");
        if (covered[k - 1])
          throw std::logic_error("partition: cells of block " + block_names[b] +
                                 " are not disjoint");
        covered[k - 1] = true;
      }
    }
    for (bool c : covered)
      if (!c)
        throw std::logic_error("partition: cells of block " + block_names[b] +
                               " do not cover the ground set");
  }
}

void ProbVector::validate() const {
  Rational sum;
  for (const auto& w : weights) {
    if (w.sign() < 0)
      throw std::invalid_argument("probability vector: negative weight");
    sum += w;
  }
  if (sum != Rational(1))
    throw std::invalid_argument("probability vector: weights sum to " +
                                sum.str() + ", not 1");
}

PartitionLogic partition_from_states(const Logic& l,
                                     const std::vector<TwoValuedState>& states) {
  if (states.empty())
    throw std::invalid_argument(
        "partition_from_states: no two-valued states; no partition logic "
        "exists");
  PartitionLogic pl;
  pl.num_states = states.size();
  pl.atom_names = l.atoms;
  pl.block_names = l.block_names;
  pl.blocks = l.blocks;
  pl.cells.resize(l.atoms.size());
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t a = 0; a < l.atoms.size(); ++a)
      if (states[k][a]) pl.cells[a].push_back(k + 1);

  for (std::size_t b = 0; b < l.blocks.size(); ++b)
    for (std::size_t i = 0; i < l.blocks[b].size(); ++i)
      for (std::size_t j = i + 1; j < l.blocks[b].size(); ++j)
        if (pl.cells[l.blocks[b][i]] == pl.cells[l.blocks[b][j]])
          throw std::runtime_error(
              "partition_from_states: atoms " + l.atoms[l.blocks[b][i]] +
              " and " + l.atoms[l.blocks[b][j]] + " of block " +
              l.block_names[b] + " have identical cells; the state set does "
              "not separate them");
  pl.validate();
  return pl;
}

namespace {

std::size_t cell_min(const std::vector<std::size_t>& cell) {
  return *std::min_element(cell.begin(), cell.end());
}

// Atom indices of one partition, ranked by the least state label of
// their cells.
std::vector<std::size_t> rank_by_min(const PartitionLogic& pl, std::size_t b) {
  auto atoms = pl.blocks[b];
  std::sort(atoms.begin(), atoms.end(), [&](std::size_t x, std::size_t y) {
    return cell_min(pl.cells[x]) < cell_min(pl.cells[y]);
  });
  return atoms;
}

}  // namespace

UrnModel urn_from_partition(const PartitionLogic& pl, SymbolScheme scheme) {
  UrnModel u;
  for (std::size_t k = 1; k <= pl.num_states; ++k)
    u.ball_types.push_back(std::to_string(k));
  u.colors = pl.block_names;

  // symbol_of[b][a] = symbol printed for atom a under color b.
  std::vector<std::map<std::size_t, std::string>> symbol_of(pl.blocks.size());
  if (scheme == SymbolScheme::AtomLabels) {
    u.symbols = pl.atom_names;
    for (std::size_t b = 0; b < pl.blocks.size(); ++b)
      for (auto a : pl.blocks[b]) symbol_of[b][a] = pl.atom_names[a];
  } else {
    std::size_t max_cells = 0;
    for (std::size_t b = 0; b < pl.blocks.size(); ++b) {
      auto ranked = rank_by_min(pl, b);
      for (std::size_t r = 0; r < ranked.size(); ++r)
        symbol_of[b][ranked[r]] = std::to_string(r + 1);
      max_cells = std::max(max_cells, ranked.size());
    }
    for (std::size_t s = 1; s <= max_cells; ++s)
      u.symbols.push_back(std::to_string(s));
  }

  u.lookup.assign(pl.num_states, std::vector<std::string>(pl.blocks.size()));
  for (std::size_t b = 0; b < pl.blocks.size(); ++b)
    for (auto a : pl.blocks[b])
      for (auto k : pl.cells[a]) u.lookup[k - 1][b] = symbol_of[b][a];
  return u;
}

MealyAutomaton automaton_from_partition(const PartitionLogic& pl) {
  MealyAutomaton m;
  for (std::size_t k = 1; k <= pl.num_states; ++k)
    m.states.push_back(std::to_string(k));
  m.inputs = pl.block_names;
  m.outputs = pl.atom_names;
  m.delta.assign(pl.num_states,
                 std::vector<std::size_t>(pl.blocks.size(), 0));
  m.lambda.assign(pl.num_states, std::vector<std::string>(pl.blocks.size()));
  for (std::size_t b = 0; b < pl.blocks.size(); ++b)
    for (auto a : pl.blocks[b])
      for (auto k : pl.cells[a]) m.lambda[k - 1][b] = pl.atom_names[a];
  return m;
}

std::vector<std::vector<std::vector<std::string>>> automaton_star_outputs(
    const PartitionLogic& pl) {
  std::vector<std::vector<std::vector<std::string>>> out(pl.blocks.size());
  for (std::size_t b = 0; b < pl.blocks.size(); ++b) {
    out[b].assign(pl.num_states,
                  std::vector<std::string>(pl.blocks[b].size(), "*"));
    for (std::size_t q = 0; q < pl.blocks[b].size(); ++q) {
      auto a = pl.blocks[b][q];
      for (auto k : pl.cells[a]) out[b][k - 1][q] = pl.atom_names[a];
    }
  }
  return out;
}

MealyAutomaton urn_to_automaton(const UrnModel& u) {
  MealyAutomaton m;
  m.states = u.ball_types;
  for (std::size_t i = 0; i < u.colors.size(); ++i)
    m.inputs.push_back(std::to_string(i));
  m.outputs = u.symbols;
  m.delta.assign(u.ball_types.size(),
                 std::vector<std::size_t>(u.colors.size(), 0));
  m.lambda = u.lookup;
  return m;
}

UrnModel automaton_to_urn(const MealyAutomaton& a) {
  UrnModel u;
  u.ball_types = a.states;
  u.colors = a.inputs;
  u.symbols = a.outputs;
  u.lookup = a.lambda;  // transition function intentionally discarded
  return u;
}

Logic logic_from_urn(const UrnModel& u) {
  Logic l;
  std::map<std::vector<std::size_t>, std::size_t> cell_atom;
  std::set<std::vector<std::size_t>> seen_blocks;
  for (std::size_t c = 0; c < u.colors.size(); ++c) {
    // Group ball types by the symbol this color reveals.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < u.ball_types.size(); ++k)
      groups[u.lookup[k][c]].push_back(k + 1);

    std::vector<std::vector<std::size_t>> cells;
    for (auto& [sym, cell] : groups) cells.push_back(cell);
    std::sort(cells.begin(), cells.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });

    std::vector<std::size_t> block;
    for (auto& cell : cells) {
      auto it = cell_atom.find(cell);
      if (it == cell_atom.end()) {
        std::string name = "s";
        for (std::size_t i = 0; i < cell.size(); ++i)
          name += (i ? "_" : "") + std::to_string(cell[i]);
        it = cell_atom.emplace(cell, l.atoms.size()).first;
        l.atoms.push_back(name);
      }
      block.push_back(it->second);
    }
    auto key = block;
    std::sort(key.begin(), key.end());
    if (!seen_blocks.insert(key).second) continue;  // identical partition
    l.block_names.push_back(u.colors[c]);
    l.blocks.push_back(std::move(block));
  }
  l.validate();
  return l;
}

Logic logic_from_automaton(const MealyAutomaton& a) {
  return logic_from_urn(automaton_to_urn(a));
}

std::vector<Rational> state_probabilities(const PartitionLogic& pl,
                                          const ProbVector& kappa) {
  kappa.validate();
  if (kappa.weights.size() != pl.num_states)
    throw std::invalid_argument("state_probabilities: weight count mismatch");
  std::vector<Rational> p(pl.atom_names.size());
  for (std::size_t a = 0; a < pl.atom_names.size(); ++a)
    for (auto k : pl.cells[a]) p[a] += kappa.weights[k - 1];
  return p;
}

Rational singlet_joint_probability(const PartitionLogic& pl,
                                   const ProbVector& kappa,
                                   const std::vector<std::size_t>& atoms) {
  kappa.validate();
  Rational p;
  for (std::size_t k = 1; k <= pl.num_states; ++k) {
    bool all = true;
    for (auto a : atoms) {
      if (a >= pl.cells.size())
        throw std::invalid_argument("singlet_joint_probability: bad atom index");
      all = all && std::binary_search(pl.cells[a].begin(), pl.cells[a].end(), k);
    }
    if (all) p += kappa.weights[k - 1];
  }
  return p;
}

std::string partition_text(const PartitionLogic& pl) {
  std::ostringstream os;
  for (std::size_t b = 0; b < pl.blocks.size(); ++b) {
    os << pl.block_names[b] << " :";
    for (auto a : pl.blocks[b]) {
      os << " {";
      for (std::size_t i = 0; i < pl.cells[a].size(); ++i)
        os << (i ? "," : "") << pl.cells[a][i];
      os << "}=" << pl.atom_names[a];
    }
    os << '\n';
  }
  return os.str();
}

std::string urn_tsv(const UrnModel& u) {
  std::ostringstream os;
  os << "ball";
  for (const auto& c : u.colors) os << '\t' << c;
  os << '\n';
  for (std::size_t k = 0; k < u.ball_types.size(); ++k) {
    os << u.ball_types[k];
    for (const auto& sym : u.lookup[k]) os << '\t' << sym;
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

UrnModel parse_urn_tsv(const std::string& text) {
  UrnModel u;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (header) {
      u.colors.assign(cols.begin() + 1, cols.end());
      header = false;
      continue;
    }
    if (cols.size() != u.colors.size() + 1)
      throw std::runtime_error("urn tsv: ragged row '" + line + "'");
    u.ball_types.push_back(cols[0]);
    u.lookup.emplace_back(cols.begin() + 1, cols.end());
    for (std::size_t i = 1; i < cols.size(); ++i)
      if (seen.insert(cols[i]).second) u.symbols.push_back(cols[i]);
  }
  if (u.ball_types.empty()) throw std::runtime_error("urn tsv: no ball types");
  return u;
}

std::string automaton_tsv(const MealyAutomaton& a) {
  std::ostringstream os;
  os << "# delta\nstate";
  for (const auto& i : a.inputs) os << '\t' << i;
  os << '\n';
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    os << a.states[s];
    for (auto t : a.delta[s]) os << '\t' << a.states[t];
    os << '\n';
  }
  os << "# lambda\nstate";
  for (const auto& i : a.inputs) os << '\t' << i;
  os << '\n';
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    os << a.states[s];
    for (const auto& o : a.lambda[s]) os << '\t' << o;
    os << '\n';
  }
  return os.str();
}

MealyAutomaton parse_automaton_tsv(const std::string& text) {
  MealyAutomaton m;
  std::istringstream in(text);
  std::string line;
  int section = 0;  // 1 = delta, 2 = lambda
  bool header = false;
  std::vector<std::vector<std::string>> delta_names;
  while (std::getline(in, line)) {
    if (line.rfind("# delta", 0) == 0) {
      section = 1;
      header = true;
      continue;
    }
    if (line.rfind("# lambda", 0) == 0) {
      section = 2;
      header = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (header) {
      if (section == 1) m.inputs.assign(cols.begin() + 1, cols.end());
      header = false;
      continue;
    }
    if (cols.size() != m.inputs.size() + 1)
      throw std::runtime_error("automaton tsv: ragged row '" + line + "'");
    if (section == 1) {
      m.states.push_back(cols[0]);
      delta_names.emplace_back(cols.begin() + 1, cols.end());
    } else if (section == 2) {
      m.lambda.emplace_back(cols.begin() + 1, cols.end());
    }
  }
  if (m.states.empty() || m.lambda.size() != m.states.size())
    throw std::runtime_error("automaton tsv: missing delta or lambda table");
  std::set<std::string> seen;
  for (const auto& row : m.lambda)
    for (const auto& o : row)
      if (seen.insert(o).second) m.outputs.push_back(o);
  for (const auto& row : delta_names) {
    std::vector<std::size_t> r;
    for (const auto& name : row) {
      auto it = std::find(m.states.begin(), m.states.end(), name);
      if (it == m.states.end())
        throw std::runtime_error("automaton tsv: unknown target state '" +
                                 name + "'");
      r.push_back(static_cast<std::size_t>(it - m.states.begin()));
    }
    m.delta.push_back(std::move(r));
  }
  return m;
}

}  // namespace contexture

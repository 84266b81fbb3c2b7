#include "contexture/logic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace contexture {

std::size_t Logic::atom_index(const std::string& name) const {
  auto it = std::find(atoms.begin(), atoms.end(), name);
  if (it == atoms.end())
    throw std::invalid_argument("logic: unknown atom '" + name + "'");
  return static_cast<std::size_t>(it - atoms.begin());
}

void Logic::validate() const {
  std::vector<bool> seen(atoms.size(), false);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::set<std::size_t> members;
    for (auto a : blocks[b]) {
      if (a >= atoms.size())
        throw std::invalid_argument("logic: atom index out of range");
      if (!members.insert(a).second)
        throw std::invalid_argument("logic: duplicate atom '" + atoms[a] +
                                    "' in block " + block_names[b]);
      seen[a] = true;
    }
  }
  for (std::size_t a = 0; a < atoms.size(); ++a)
    if (!seen[a])
      throw std::invalid_argument("logic: atom '" + atoms[a] +
                                  "' occurs in no block");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (i == j) continue;
      std::set<std::size_t> bi(blocks[i].begin(), blocks[i].end());
      bool subset = true;
      for (auto a : blocks[j]) subset = subset && bi.count(a);
      if (subset && blocks[j].size() <= blocks[i].size())
        throw std::invalid_argument("logic: block " + block_names[j] +
                                    " is a subset of block " + block_names[i]);
    }
}

namespace {

bool valid_atom_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

Logic parse_logic(const std::string& text) {
  Logic l;
  std::map<std::string, std::size_t> index;
  std::set<std::vector<std::size_t>> block_sets;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error("gdl: line " + std::to_string(lineno) + ": " + msg);
    };
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'blockname : atoms'");
    std::string name = line.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (!valid_atom_name(name)) fail("bad block name '" + name + "'");

    std::vector<std::size_t> block;
    std::istringstream atoms(line.substr(colon + 1));
    std::string tok;
    while (atoms >> tok) {
      if (!valid_atom_name(tok)) fail("bad atom name '" + tok + "'");
      auto [it, fresh] = index.try_emplace(tok, l.atoms.size());
      if (fresh) l.atoms.push_back(tok);
      if (std::find(block.begin(), block.end(), it->second) != block.end())
        fail("duplicate atom '" + tok + "' in block");
      block.push_back(it->second);
    }
    if (block.size() < 2) fail("block needs at least 2 atoms");
    std::vector<std::size_t> key = block;
    std::sort(key.begin(), key.end());
    if (!block_sets.insert(key).second) fail("duplicate block");
    l.block_names.push_back(std::move(name));
    l.blocks.push_back(std::move(block));
  }
  l.validate();
  return l;
}

std::string render_logic(const Logic& l) {
  std::ostringstream os;
  for (std::size_t b = 0; b < l.blocks.size(); ++b) {
    os << l.block_names[b] << " :";
    for (auto a : l.blocks[b]) os << ' ' << l.atoms[a];
    os << '\n';
  }
  return os.str();
}

Logic paste(const std::vector<Logic>& logics,
            const std::vector<Identification>& identify) {
  // Union-find over (logic, atom) pairs.
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& l : logics) {
    offset.push_back(total);
    total += l.atoms.size();
  }
  std::vector<std::size_t> parent(total);
  for (std::size_t i = 0; i < total; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (const auto& id : identify) {
    if (id.logic_a >= logics.size() || id.logic_b >= logics.size())
      throw std::invalid_argument("paste: logic index out of range");
    if (id.logic_a == id.logic_b)
      throw std::invalid_argument(
          "paste: identifications must join distinct logics");
    std::size_t a = offset[id.logic_a] + logics[id.logic_a].atom_index(id.atom_a);
    std::size_t b = offset[id.logic_b] + logics[id.logic_b].atom_index(id.atom_b);
    parent[find(a)] = find(b);
  }

  Logic out;
  std::map<std::size_t, std::size_t> root_to_atom;
  auto atom_of = [&](std::size_t li, std::size_t ai) {
    std::size_t root = find(offset[li] + ai);
    auto it = root_to_atom.find(root);
    if (it != root_to_atom.end()) return it->second;
    std::size_t fresh = out.atoms.size();
    out.atoms.push_back(logics[li].atoms[ai]);
    root_to_atom.emplace(root, fresh);
    return fresh;
  };

  for (std::size_t li = 0; li < logics.size(); ++li)
    for (std::size_t bi = 0; bi < logics[li].blocks.size(); ++bi) {
      std::vector<std::size_t> block;
      std::set<std::size_t> members;
      for (auto ai : logics[li].blocks[bi]) {
        std::size_t a = atom_of(li, ai);
        if (!members.insert(a).second)
          throw std::invalid_argument(
              "paste: identification merges two atoms of block " +
              logics[li].block_names[bi]);
        block.push_back(a);
      }
      out.block_names.push_back(logics[li].block_names[bi]);
      out.blocks.push_back(std::move(block));
    }
  out.validate();
  return out;
}

Logic builtin(const std::string& name) {
  if (name == "mo2") return parse_logic("b1 : E Ep\nb2 : F Fp\n");
  if (name == "l12") return parse_logic("b1 : a1 a2 a5\nb2 : a3 a4 a5\n");
  if (name == "bug")
    return parse_logic(
        "b1 : a1 a2 a3\n"
        "b2 : a3 a4 a5\n"
        "b3 : a5 a6 a7\n"
        "b4 : a7 a8 a9\n"
        "b5 : a9 a10 a11\n"
        "b6 : a11 a12 a1\n"
        "b7 : a4 a13 a10\n");
  if (name == "cabello")
    return parse_logic(
        "a : A B C D\n"
        "b : D E F G\n"
        "c : G H I J\n"
        "d : J K L M\n"
        "e : M N O P\n"
        "f : P Q R A\n"
        "g : B I K R\n"
        "h : C E L N\n"
        "i : F H O Q\n");
  if (name == "pentagon")
    return parse_logic(
        "b1 : A B C\nb2 : C D E\nb3 : E F G\nb4 : G H I\nb5 : I J A\n");
  if (name == "triangle")
    return parse_logic("b1 : A B C\nb2 : C D E\nb3 : E F A\n");
  if (name == "quadrangle")
    return parse_logic("b1 : A B C\nb2 : C D E\nb3 : E F G\nb4 : G H A\n");
  throw std::invalid_argument("builtin: unknown logic '" + name + "'");
}

LinkReport link_report(const Logic& l) {
  LinkReport r;
  r.blocks_of.resize(l.atoms.size());
  for (std::size_t b = 0; b < l.blocks.size(); ++b)
    for (auto a : l.blocks[b]) r.blocks_of[a].push_back(b);
  for (std::size_t a = 0; a < l.atoms.size(); ++a)
    if (r.blocks_of[a].size() >= 2) r.link_atoms.push_back(a);
  return r;
}

}  // namespace contexture

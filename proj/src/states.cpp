#include "contexture/states.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace contexture {

std::string to_string(StateClass c) {
  switch (c) {
    case StateClass::Empty: return "empty";
    case StateClass::NonUnital: return "nonempty-not-unital";
    case StateClass::Unital: return "unital-not-separating";
    case StateClass::Separating: return "separating";
  }
  return "?";
}

namespace {

constexpr std::int8_t kUnset = -1;

// Shared backtracking core: "blocks" that need exactly one true atom,
// plus pairwise exclusion edges (used for ray graphs; empty for logics,
// where exclusion is implied by block membership).
struct Search {
  std::size_t n;
  const std::vector<std::vector<std::size_t>>& blocks;
  std::vector<std::vector<std::size_t>> blocks_of;   // atom -> block ids
  std::vector<std::vector<std::size_t>> neighbors;   // extra exclusions
  std::vector<TwoValuedState> out;

  Search(std::size_t n_atoms,
         const std::vector<std::vector<std::size_t>>& blks,
         std::vector<std::vector<std::size_t>> nbrs)
      : n(n_atoms), blocks(blks), neighbors(std::move(nbrs)) {
    blocks_of.resize(n);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (auto a : blocks[b]) blocks_of[a].push_back(b);
    if (neighbors.empty()) neighbors.resize(n);
  }

  // Returns false on contradiction.
  bool assign(std::vector<std::int8_t>& val, std::size_t atom, std::int8_t v) {
    std::vector<std::pair<std::size_t, std::int8_t>> queue{{atom, v}};
    while (!queue.empty()) {
      auto [a, x] = queue.back();
      queue.pop_back();
      if (val[a] == x) continue;
      if (val[a] != kUnset) return false;
      val[a] = x;
      if (x == 1) {
        for (auto b : blocks_of[a])
          for (auto other : blocks[b])
            if (other != a) queue.push_back({other, 0});
        for (auto other : neighbors[a]) queue.push_back({other, 0});
      } else {
        // Unit propagation: a block whose atoms are all 0 but one
        // forces the last one to 1.
        for (auto b : blocks_of[a]) {
          std::size_t unset = 0, ones = 0;
          std::size_t last = 0;
          for (auto other : blocks[b]) {
            std::int8_t ov = other == a ? x : val[other];
            if (ov == kUnset) {
              ++unset;
              last = other;
            } else if (ov == 1) {
              ++ones;
            }
          }
          if (ones == 0) {
            if (unset == 0) return false;
            if (unset == 1) queue.push_back({last, 1});
          }
        }
      }
    }
    return true;
  }

  // Most-constrained open block: most assigned atoms, ties by index.
  long pick_block(const std::vector<std::int8_t>& val) const {
    long best = -1;
    std::size_t best_assigned = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      bool satisfied = false;
      std::size_t assigned = 0;
      for (auto a : blocks[b]) {
        if (val[a] == 1) satisfied = true;
        if (val[a] != kUnset) ++assigned;
      }
      if (satisfied) continue;
      if (best < 0 || assigned > best_assigned) {
        best = static_cast<long>(b);
        best_assigned = assigned;
      }
    }
    return best;
  }

  void emit(const std::vector<std::int8_t>& val) {
    TwoValuedState s(n, 0);
    for (std::size_t a = 0; a < n; ++a) s[a] = val[a] == 1 ? 1 : 0;
    // Exactly-one per block must hold on every emitted state.
    for (const auto& blk : blocks) {
      std::size_t ones = 0;
      for (auto a : blk) ones += s[a];
      if (ones != 1) throw std::logic_error("state enumeration: block constraint violated");
    }
    out.push_back(std::move(s));
  }

  void run(std::vector<std::int8_t> val) {
    long b = pick_block(val);
    if (b < 0) {
      // All blocks satisfied; branch any free atoms (possible only for
      // ray graphs whose rays lie outside every complete context).
      for (std::size_t a = 0; a < n; ++a)
        if (val[a] == kUnset) {
          auto v0 = val;
          if (assign(v0, a, 0)) run(std::move(v0));
          auto v1 = val;
          if (assign(v1, a, 1)) run(std::move(v1));
          return;
        }
      emit(val);
      return;
    }
    for (auto a : blocks[static_cast<std::size_t>(b)]) {
      if (val[a] != kUnset) continue;
      auto next = val;
      if (assign(next, a, 1)) run(std::move(next));
    }
  }

  std::vector<TwoValuedState> solve(unsigned threads) {
    std::vector<std::int8_t> root(n, kUnset);
    if (threads <= 1 || blocks.empty()) {
      run(root);
    } else {
      // Fan the first branching block out to futures; the final sort
      // makes the result schedule-independent.
      long b = pick_block(root);
      if (b < 0) {
        run(root);
      } else {
        std::vector<std::future<std::vector<TwoValuedState>>> jobs;
        for (auto a : blocks[static_cast<std::size_t>(b)]) {
          jobs.push_back(std::async(std::launch::async, [this, root, a]() {
            Search sub(n, blocks, neighbors);
            auto val = root;
            if (sub.assign(val, a, 1)) sub.run(std::move(val));
            return std::move(sub.out);
          }));
        }
        for (auto& j : jobs) {
          auto part = j.get();
          out.insert(out.end(), part.begin(), part.end());
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return std::move(out);
  }
};

}  // namespace

StateClass classify(const std::vector<TwoValuedState>& states,
                    std::size_t n_atoms) {
  if (states.empty()) return StateClass::Empty;
  for (std::size_t a = 0; a < n_atoms; ++a) {
    bool hit = false;
    for (const auto& s : states) hit = hit || s[a];
    if (!hit) return StateClass::NonUnital;
  }
  for (std::size_t a = 0; a < n_atoms; ++a)
    for (std::size_t b = a + 1; b < n_atoms; ++b) {
      bool differ = false;
      for (const auto& s : states) differ = differ || (s[a] != s[b]);
      if (!differ) return StateClass::Unital;
    }
  return StateClass::Separating;
}

StateSet enumerate_states(const Logic& l, unsigned threads) {
  Search search(l.atoms.size(), l.blocks, {});
  StateSet ss;
  ss.states = search.solve(threads);
  ss.classification = classify(ss.states, l.atoms.size());
  return ss;
}

StateSet enumerate_ray_states(const OrthoGraph& g, std::size_t dim,
                              unsigned threads) {
  auto cliques = contexts_from_rays(g, dim);
  std::vector<std::vector<std::size_t>> complete;
  for (auto& c : cliques)
    if (c.size() == dim) complete.push_back(std::move(c));

  std::vector<std::vector<std::size_t>> neighbors(g.rays.size());
  for (const auto& [i, j] : g.edges) {
    neighbors[i].push_back(j);
    neighbors[j].push_back(i);
  }
  Search search(g.rays.size(), complete, std::move(neighbors));
  StateSet ss;
  ss.states = search.solve(threads);
  ss.classification = classify(ss.states, g.rays.size());
  return ss;
}

ParityCertificate parity_certificate(const Logic& l) {
  auto links = link_report(l);
  ParityCertificate pc;
  std::ostringstream os;
  for (std::size_t a = 0; a < l.atoms.size(); ++a) {
    auto m = links.blocks_of[a].size();
    if (m < 2 || m % 2 != 0) {
      os << "atom " << l.atoms[a] << " occurs in " << m
         << " block(s); parity argument does not apply";
      pc.detail = os.str();
      return pc;
    }
  }
  if (l.blocks.size() % 2 == 0) {
    os << "block count " << l.blocks.size()
       << " is even; parity argument does not apply";
    pc.detail = os.str();
    return pc;
  }
  pc.applies = true;
  os << "every atom occurs in an even number of blocks, but the "
     << l.blocks.size()
     << " blocks require an odd total of true occurrences; no two-valued "
        "state exists";
  pc.detail = os.str();
  return pc;
}

std::string states_csv(const StateSet& ss, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ',';
    os << names[i];
  }
  os << '\n';
  for (const auto& s : ss.states) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) os << ',';
      os << int(s[i]);
    }
    os << '\n';
  }
  os << "# classification: " << to_string(ss.classification) << '\n';
  return os.str();
}

}  // namespace contexture

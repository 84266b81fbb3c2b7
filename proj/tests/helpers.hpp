#pragma once

// Shared test utilities: brute-force oracles, random fixtures, and an
// isomorphism check for logics up to atom relabeling.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "contexture/logic.hpp"
#include "contexture/polytope.hpp"
#include "contexture/states.hpp"

namespace testutil {

using namespace contexture;

// All two-valued states by filtering every 0/1 assignment.
inline std::vector<TwoValuedState> brute_force_states(const Logic& l) {
  std::vector<TwoValuedState> out;
  const std::size_t n = l.atoms.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& blk : l.blocks) {
      int ones = 0;
      for (auto a : blk) ones += (mask >> a) & 1u;
      if (ones != 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    TwoValuedState s(n);
    for (std::size_t a = 0; a < n; ++a) s[a] = (mask >> a) & 1u;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random valid logic with <= max_atoms atoms and <= max_blocks blocks.
inline Logic random_logic(std::mt19937& rng, std::size_t max_atoms = 12,
                          std::size_t max_blocks = 6) {
  for (;;) {
    std::size_t n = 4 + rng() % (max_atoms - 3);
    std::size_t nb = 2 + rng() % (max_blocks - 1);
    Logic l;
    for (std::size_t a = 0; a < n; ++a) l.atoms.push_back("x" + std::to_string(a));
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t b = 0; b < nb; ++b) {
      std::size_t sz = 2 + rng() % 3;
      std::set<std::size_t> members;
      while (members.size() < sz) members.insert(rng() % n);
      std::vector<std::size_t> blk(members.begin(), members.end());
      if (!seen.insert(blk).second) continue;
      l.block_names.push_back("b" + std::to_string(l.blocks.size() + 1));
      l.blocks.push_back(std::move(blk));
    }
    // Drop atoms that ended up in no block.
    std::vector<bool> used(n, false);
    for (const auto& blk : l.blocks)
      for (auto a : blk) used[a] = true;
    std::vector<std::size_t> remap(n);
    Logic out;
    for (std::size_t a = 0; a < n; ++a)
      if (used[a]) {
        remap[a] = out.atoms.size();
        out.atoms.push_back(l.atoms[a]);
      }
    for (std::size_t b = 0; b < l.blocks.size(); ++b) {
      std::vector<std::size_t> blk;
      for (auto a : l.blocks[b]) blk.push_back(remap[a]);
      out.block_names.push_back(l.block_names[b]);
      out.blocks.push_back(std::move(blk));
    }
    try {
      out.validate();
    } catch (...) {
      continue;
    }
    return out;
  }
}

// Isomorphism up to atom relabeling: block sets must correspond under
// some atom bijection.  Backtracks over block matchings with degree
// pruning.
inline bool isomorphic(const Logic& x, const Logic& y) {
  if (x.atoms.size() != y.atoms.size() || x.blocks.size() != y.blocks.size())
    return false;
  auto degrees = [](const Logic& l) {
    std::vector<std::size_t> deg(l.atoms.size(), 0);
    for (const auto& blk : l.blocks)
      for (auto a : blk) ++deg[a];
    return deg;
  };
  auto dx = degrees(x), dy = degrees(y);
  {
    auto sx = dx, sy = dy;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return false;
  }
  std::vector<std::set<std::size_t>> yb;
  for (const auto& blk : y.blocks) yb.emplace_back(blk.begin(), blk.end());

  std::vector<long> atom_map(x.atoms.size(), -1);
  std::vector<bool> atom_used(y.atoms.size(), false);
  std::vector<bool> block_used(y.blocks.size(), false);

  std::function<bool(std::size_t)> place = [&](std::size_t bi) -> bool {
    if (bi == x.blocks.size()) return true;
    const auto& blk = x.blocks[bi];
    for (std::size_t bj = 0; bj < y.blocks.size(); ++bj) {
      if (block_used[bj] || y.blocks[bj].size() != blk.size()) continue;
      // Try to extend the atom map so blk maps onto y.blocks[bj].
      std::vector<std::size_t> fresh;
      std::set<std::size_t> needed = yb[bj];
      bool feasible = true;
      for (auto a : blk) {
        if (atom_map[a] >= 0) {
          if (!needed.erase(std::size_t(atom_map[a]))) {
            feasible = false;
            break;
          }
        } else {
          fresh.push_back(a);
        }
      }
      if (!feasible) continue;
      std::vector<std::size_t> targets(needed.begin(), needed.end());
      std::sort(fresh.begin(), fresh.end());
      // Try all assignments of fresh atoms to remaining targets.
      std::vector<std::size_t> perm(targets);
      std::sort(perm.begin(), perm.end());
      do {
        bool ok = true;
        for (std::size_t k = 0; k < fresh.size() && ok; ++k)
          ok = !atom_used[perm[k]] && dx[fresh[k]] == dy[perm[k]];
        if (!ok) continue;
        for (std::size_t k = 0; k < fresh.size(); ++k) {
          atom_map[fresh[k]] = long(perm[k]);
          atom_used[perm[k]] = true;
        }
        block_used[bj] = true;
        if (place(bi + 1)) return true;
        block_used[bj] = false;
        for (std::size_t k = 0; k < fresh.size(); ++k) {
          atom_map[fresh[k]] = -1;
          atom_used[perm[k]] = false;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return false;
  };
  return place(0);
}

// Brute-force facet oracle for low dimension: every affinely
// independent vertex subset of size dim_aff spans a candidate
// hyperplane; keep the valid, tight-enough ones.
inline std::vector<LinearForm> brute_force_facets(const Polytope& p) {
  std::vector<LinearForm> out;
  const std::size_t d = p.labels.size();
  const std::size_t k = p.dim_aff;
  if (k == 0) return out;
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                          std::size_t from) {
    if (pos == k) {
      // Solve for (b, a) with b + a.v = 0 on the chosen vertices plus
      // the affine-hull equalities; the solution space modulo
      // equalities must be one-dimensional to define a hyperplane.
      std::vector<std::vector<Rational>> rows;
      for (auto i : idx) {
        std::vector<Rational> r;
        r.push_back(Rational(1));
        for (const auto& c : p.vertices[i]) r.push_back(c);
        rows.push_back(std::move(r));
      }
      for (const auto& e : p.equalities) {
        std::vector<Rational> r;
        r.push_back(e.b);
        for (const auto& c : e.a) r.push_back(c);
        rows.push_back(std::move(r));
      }
      // Nullspace of rows (as linear functionals on (1, x)).
      std::size_t cols = d + 1;
      // Gaussian elimination.
      std::vector<std::vector<Rational>> m = rows;
      std::vector<long> pivot_of_col(cols, -1);
      std::size_t rank = 0;
      for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t sel = m.size();
        for (std::size_t i = rank; i < m.size(); ++i)
          if (!m[i][c].is_zero()) {
            sel = i;
            break;
          }
        if (sel == m.size()) continue;
        std::swap(m[rank], m[sel]);
        Rational inv = m[rank][c];
        for (auto& x : m[rank]) x /= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (i == rank || m[i][c].is_zero()) continue;
          Rational f = m[i][c];
          for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_of_col[c] = long(rank);
        ++rank;
      }
      if (cols - rank != 1) return;  // not a unique hyperplane
      // Build the single nullspace vector.
      std::vector<Rational> nv(cols);
      std::size_t free_col = 0;
      for (std::size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] < 0) free_col = c;
      nv[free_col] = Rational(1);
      for (std::size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] >= 0)
          nv[c] = -m[std::size_t(pivot_of_col[c])][free_col];
      LinearForm f;
      f.b = nv[0];
      f.a.assign(nv.begin() + 1, nv.end());
      // Orient toward the vertices; reject if cut.
      int pos_side = 0, neg_side = 0;
      for (const auto& v : p.vertices) {
        int s = f.eval(v).sign();
        if (s > 0) ++pos_side;
        if (s < 0) ++neg_side;
      }
      if (pos_side && neg_side) return;
      if (pos_side == 0 && neg_side == 0) return;  // improper
      if (neg_side) {
        f.b = -f.b;
        for (auto& c : f.a) c = -c;
      }
      // Tight set must affinely span the hyperplane (k vertices, rank
      // k-1 of differences): require >= k tight vertices and recheck
      // dimension by counting independent tight rows.
      std::vector<std::vector<Rational>> tight;
      for (const auto& v : p.vertices)
        if (f.eval(v).is_zero()) {
          std::vector<Rational> r;
          r.push_back(Rational(1));
          for (const auto& c : v) r.push_back(c);
          tight.push_back(std::move(r));
        }
      std::vector<std::vector<Rational>> tcopy = tight;
      std::vector<std::vector<Rational>> reduced = tcopy;
      // rank of tight rows
      std::size_t trank = 0;
      {
        auto mm = tight;
        for (std::size_t c = 0; c < cols && trank < mm.size(); ++c) {
          std::size_t sel = mm.size();
          for (std::size_t i = trank; i < mm.size(); ++i)
            if (!mm[i][c].is_zero()) {
              sel = i;
              break;
            }
          if (sel == mm.size()) continue;
          std::swap(mm[trank], mm[sel]);
          Rational inv = mm[trank][c];
          for (auto& x : mm[trank]) x /= inv;
          for (std::size_t i = 0; i < mm.size(); ++i) {
            if (i == trank || mm[i][c].is_zero()) continue;
            Rational fq = mm[i][c];
            for (std::size_t j = 0; j < cols; ++j) mm[i][j] -= fq * mm[trank][j];
          }
          ++trank;
        }
      }
      if (trank < k) return;  // not a facet
      // Canonical coprime integers.
      std::vector<Rational> all;
      all.push_back(f.b);
      for (const auto& c : f.a) all.push_back(c);
      mpz_class l(1);
      for (const auto& x : all)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
      if (l != 1) {
        Rational lf{l};
        for (auto& x : all) x *= lf;
      }
      mpz_class g(0);
      for (const auto& x : all)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.num().get_mpz_t());
      if (g > 1) {
        Rational gf{g};
        for (auto& x : all) x /= gf;
      }
      f.b = all[0];
      f.a.assign(all.begin() + 1, all.end());
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t i = from; i + (k - pos) <= p.vertices.size(); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// The 14 bug states as true-atom name sets, in the row order used for
// the urn table below.
inline std::vector<std::set<std::string>> bug_state_rows() {
  return {
      {"a1", "a5", "a9", "a13"},
      {"a1", "a4", "a6", "a9"},
      {"a1", "a5", "a8", "a10"},
      {"a2", "a5", "a9", "a12", "a13"},
      {"a2", "a5", "a8", "a11", "a13"},
      {"a2", "a4", "a6", "a9", "a12"},
      {"a2", "a4", "a7", "a11"},
      {"a2", "a4", "a6", "a8", "a11"},
      {"a2", "a5", "a8", "a10", "a12"},
      {"a3", "a7", "a11", "a13"},
      {"a3", "a6", "a8", "a11", "a13"},
      {"a3", "a6", "a9", "a12", "a13"},
      {"a3", "a7", "a10", "a12"},
      {"a3", "a6", "a8", "a10", "a12"},
  };
}

// Symbols of the bug urn model, rows matching bug_state_rows, columns
// the blocks b1..b7.
inline std::vector<std::vector<int>> bug_urn_rows() {
  return {
      {1, 1, 1, 1, 1, 1, 1},
      {1, 2, 2, 1, 1, 1, 2},
      {1, 1, 1, 2, 2, 1, 3},
      {2, 1, 1, 1, 1, 2, 1},
      {2, 1, 1, 2, 3, 3, 1},
      {2, 2, 2, 1, 1, 2, 2},
      {2, 2, 3, 3, 3, 3, 2},
      {2, 2, 2, 2, 3, 3, 2},
      {2, 1, 1, 2, 2, 2, 3},
      {3, 3, 3, 3, 3, 3, 1},
      {3, 3, 2, 2, 3, 3, 1},
      {3, 3, 2, 1, 1, 2, 1},
      {3, 3, 3, 3, 2, 2, 3},
      {3, 3, 2, 2, 2, 2, 3},
  };
}

// Reorder enumerated bug states into the frozen row order above.
inline std::vector<TwoValuedState> bug_states_in_row_order(const Logic& l) {
  auto ss = enumerate_states(l);
  auto rows = bug_state_rows();
  std::vector<TwoValuedState> ordered;
  for (const auto& row : rows) {
    TwoValuedState want(l.atoms.size(), 0);
    for (const auto& name : row) want[l.atom_index(name)] = 1;
    auto it = std::find(ss.states.begin(), ss.states.end(), want);
    if (it == ss.states.end())
      throw std::runtime_error("expected bug state missing");
    ordered.push_back(*it);
  }
  return ordered;
}

}  // namespace testutil

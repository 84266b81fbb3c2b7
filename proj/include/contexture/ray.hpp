#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "contexture/qsqrt2.hpp"

namespace contexture {

/// Canonical projective representative of a 1-D subspace of R^d with
/// coordinates in Q(sqrt 2).  Canonical form: the first nonzero
/// coordinate has positive sign and the integer content of all (a,b)
/// component pairs is 1.
struct Ray {
  std::vector<QSqrt2> coords;
  std::string label;  // optional

  std::size_t dim() const { return coords.size(); }

  bool operator==(const Ray& o) const { return coords == o.coords; }
  bool operator<(const Ray& o) const;

  std::string str() const;
};

/// Returns the canonical representative of span(v).  Throws on the zero
/// vector.  canonicalize(lambda * v) == canonicalize(v) for every
/// nonzero rational lambda.
Ray canonicalize(std::vector<QSqrt2> v, std::string label = {});

/// Exact scalar product; throws on dimension mismatch.
QSqrt2 inner_product(const Ray& x, const Ray& y);

/// Cross product, d = 3 only.
std::vector<QSqrt2> cross_product(const Ray& x, const Ray& y);

/// The Peres 33-ray Kochen-Specker set in R^3: closure of the seed
/// vectors (0,0,1), (0,±1,1), (0,±1,√2), (±1,±1,√2) under coordinate
/// permutations and per-axis sign reversals, canonicalized and sorted.
std::vector<Ray> peres_rays();

struct CabelloSet {
  std::vector<Ray> rays;                         // 18 rays labeled A..R, d = 4
  std::vector<std::vector<std::size_t>> contexts;  // 9 blocks of 4 ray indices
  std::vector<std::string> context_names;          // a..i
};

/// The Cabello 18-vector / 9-context Kochen-Specker set in R^4.
CabelloSet cabello_rays();

/// Closure of a d=3 seed set under canonicalized cross products of
/// distinct non-collinear ray pairs.  Stops at a fixpoint or after
/// max_rounds.  If nonorthogonal_only is set, orthogonal pairs are
/// skipped when generating.
std::vector<Ray> nor_closure(std::vector<Ray> seeds, int max_rounds,
                             bool nonorthogonal_only = false);

/// Exact orthogonality graph on a ray list.
struct OrthoGraph {
  std::vector<Ray> rays;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // i < j

  bool adjacent(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return edges.count({i, j}) != 0;
  }
};

OrthoGraph ortho_graph(std::vector<Ray> rays);

/// All maximal mutually-orthogonal cliques, each of size <= dim, in
/// deterministic lexicographic order.  Throws if a clique exceeds dim
/// (impossible for exact orthogonality; signals an arithmetic bug).
std::vector<std::vector<std::size_t>> contexts_from_rays(const OrthoGraph& g,
                                                         std::size_t dim);

/// `.rays` text format: one ray per line, `label : c1 c2 ... cd`;
/// each coordinate is `a` or `a:b` meaning a + b*sqrt(2), slots may be
/// rationals `p/q`.  `#` starts a comment.
std::vector<Ray> parse_rays(const std::string& text);
std::string render_rays(const std::vector<Ray>& rays);

}  // namespace contexture

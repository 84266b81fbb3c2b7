#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "contexture/logic.hpp"
#include "contexture/rational.hpp"
#include "contexture/states.hpp"

namespace contexture {

/// Coordinate scheme of a correlation polytope: a set of 0/1 events and
/// an ordered list of monomials (index sets into the events).
struct EventScheme {
  std::vector<std::string> event_labels;
  std::vector<std::vector<std::size_t>> monomials;  // size >= 1 each
  std::vector<std::string> monomial_labels;

  void validate() const;
};

/// n_left events p_i, n_right events q_j; monomials: all singles in
/// event order, then all pairwise products p_i q_j (i major).
EventScheme two_party_scheme(std::size_t n_left, std::size_t n_right);

using Point = std::vector<Rational>;

/// b + sum a_i x_i, compared against 0.
struct LinearForm {
  Rational b;
  std::vector<Rational> a;

  Rational eval(const Point& x) const;
  bool operator<(const LinearForm& o) const;
  bool operator==(const LinearForm& o) const { return b == o.b && a == o.a; }
};

struct Polytope {
  std::vector<std::string> labels;
  std::vector<Point> vertices;      // lexicographic order
  std::vector<LinearForm> equalities;  // affine hull, each = 0 on all vertices
  std::vector<LinearForm> facets;      // each >= 0 on all vertices
  std::size_t dim_aff = 0;
};

/// Monomial vectors of all 2^n truth assignments, deduplicated, sorted.
std::vector<Point> scheme_vertices(const EventScheme& s);

/// Hull problem: affine hull by rational elimination, then exact double
/// description on the full-dimensional restriction.  Facets and
/// equalities come back with coprime integer coefficients, sorted.
Polytope hull(std::vector<Point> vertices, std::vector<std::string> labels);

/// Hull of the two-valued states viewed as 0/1 vectors over atoms.
Polytope state_polytope(const Logic& l, const StateSet& ss);

struct CheckItem {
  Rational margin;  // value of b + sum a_i x_i
  bool satisfied = false;
  bool tight = false;
};

std::vector<CheckItem> check(const std::vector<LinearForm>& forms,
                             const Point& x);

// Text formats.
std::string form_str(const LinearForm& f, const std::vector<std::string>& labels,
                     bool equality);
std::string vertices_csv(const Polytope& p);
std::string facets_text(const Polytope& p);

/// Inverse of facets_text; labels recovered from the `# labels:` header.
Polytope parse_facets_text(const std::string& text);

}  // namespace contexture

#include "contexture/polytope.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace contexture {

namespace {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Scale to coprime integer entries; positive scaling only.
void integerize(Vec& v) {
  mpz_class l(1);
  for (const auto& x : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  if (l != 1) {
    Rational lf{l};
    for (auto& x : v) x *= lf;
  }
  mpz_class g(0);
  for (const auto& x : v)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.num().get_mpz_t());
  if (g > 1) {
    Rational gf{g};
    for (auto& x : v) x /= gf;
  }
}

// In-place reduced row echelon form; returns the pivot column of each
// surviving row.
std::vector<std::size_t> rref(std::vector<Vec>& rows) {
  std::vector<std::size_t> pivots;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (!rows[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Rational inv = rows[r][c];
    for (auto& x : rows[r]) x /= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
      rows[i][c] = Rational();
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

constexpr std::size_t kMaxVertices = 256;
using Mask = std::bitset<kMaxVertices>;

struct DDRay {
  Vec y;
  Mask zero;  // tight processed constraints
};

// Extreme rays of { y in R^{d+1} : (1, p) . y >= 0 for all points p }.
// The cone is pointed because the points affinely span R^d; its extreme
// rays are exactly the facets (b, a) of the convex hull.
std::vector<Vec> dual_rays(const std::vector<Vec>& pts) {
  const std::size_t d = pts[0].size();
  const std::size_t D = d + 1;
  if (pts.size() > kMaxVertices)
    throw std::invalid_argument("hull: too many vertices");

  std::vector<Vec> cons;
  cons.reserve(pts.size());
  for (const auto& p : pts) {
    Vec c;
    c.reserve(D);
    c.push_back(Rational(1));
    c.insert(c.end(), p.begin(), p.end());
    cons.push_back(std::move(c));
  }

  // Greedy linearly independent start basis, in input order.
  std::vector<std::size_t> basis;
  std::vector<bool> in_basis(cons.size(), false);
  {
    std::vector<Vec> elim;
    for (std::size_t i = 0; i < cons.size() && basis.size() < D; ++i) {
      auto trial = elim;
      trial.push_back(cons[i]);
      rref(trial);
      if (trial.size() > elim.size()) {
        elim = std::move(trial);
        basis.push_back(i);
        in_basis[i] = true;
      }
    }
    if (basis.size() < D)
      throw std::logic_error("hull: points do not span the space");
  }

  // Rays of the simplicial start cone: columns of the inverse of the
  // basis constraint matrix (A_i . r_j = delta_ij).
  std::vector<DDRay> rays;
  {
    std::vector<Vec> aug;
    for (std::size_t t = 0; t < D; ++t) {
      Vec row = cons[basis[t]];
      for (std::size_t j = 0; j < D; ++j)
        row.push_back(Rational(t == j ? 1 : 0));
      aug.push_back(std::move(row));
    }
    rref(aug);
    for (std::size_t j = 0; j < D; ++j) {
      DDRay r;
      r.y.resize(D);
      for (std::size_t i = 0; i < D; ++i) r.y[i] = aug[i][D + j];
      integerize(r.y);
      for (std::size_t t = 0; t < D; ++t)
        if (t != j) r.zero.set(t);
      rays.push_back(std::move(r));
    }
  }

  std::size_t processed = D;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (in_basis[i]) continue;
    const std::size_t t = processed++;
    std::vector<Rational> vals(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      vals[r] = dot(cons[i], rays[r].y);
      int s = vals[r].sign();
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else
        zero.push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zero) rays[r].zero.set(t);
      continue;
    }

    std::vector<DDRay> next;
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zero) {
      auto kept = rays[r];
      kept.zero.set(t);
      next.push_back(std::move(kept));
    }
    for (auto p : pos)
      for (auto n : neg) {
        Mask common = rays[p].zero & rays[n].zero;
        if (common.count() + 2 < D) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if ((common & ~rays[r].zero).none()) adjacent = false;
        }
        if (!adjacent) continue;
        DDRay combo;
        combo.y.resize(D);
        for (std::size_t k = 0; k < D; ++k)
          combo.y[k] = vals[p] * rays[n].y[k] - vals[n] * rays[p].y[k];
        integerize(combo.y);
        combo.zero = common;
        combo.zero.set(t);
        next.push_back(std::move(combo));
      }
    rays = std::move(next);
  }

  std::vector<Vec> out;
  for (auto& r : rays) {
    bool has_a = false;
    for (std::size_t k = 1; k < D; ++k) has_a = has_a || !r.y[k].is_zero();
    if (has_a) out.push_back(std::move(r.y));
  }
  return out;
}

}  // namespace

void EventScheme::validate() const {
  if (monomials.size() != monomial_labels.size())
    throw std::invalid_argument("scheme: monomial/label count mismatch");
  std::set<std::string> labels(monomial_labels.begin(), monomial_labels.end());
  if (labels.size() != monomial_labels.size())
    throw std::invalid_argument("scheme: duplicate monomial label");
  std::set<std::vector<std::size_t>> singles;
  for (const auto& m : monomials)
    if (m.size() == 1) singles.insert(m);
  for (const auto& m : monomials) {
    if (m.empty()) throw std::invalid_argument("scheme: empty monomial");
    for (auto e : m) {
      if (e >= event_labels.size())
        throw std::invalid_argument("scheme: monomial event out of range");
      if (m.size() > 1 && !singles.count({e}))
        throw std::invalid_argument(
            "scheme: product references an undeclared single event");
    }
  }
}

EventScheme two_party_scheme(std::size_t n_left, std::size_t n_right) {
  EventScheme s;
  bool plain = n_left == 1 && n_right == 1;
  auto pname = [&](std::size_t i) {
    return plain ? std::string("p") : "p" + std::to_string(i + 1);
  };
  auto qname = [&](std::size_t j) {
    return plain ? std::string("q") : "q" + std::to_string(j + 1);
  };
  for (std::size_t i = 0; i < n_left; ++i) s.event_labels.push_back(pname(i));
  for (std::size_t j = 0; j < n_right; ++j) s.event_labels.push_back(qname(j));
  for (std::size_t e = 0; e < s.event_labels.size(); ++e) {
    s.monomials.push_back({e});
    s.monomial_labels.push_back(s.event_labels[e]);
  }
  for (std::size_t i = 0; i < n_left; ++i)
    for (std::size_t j = 0; j < n_right; ++j) {
      s.monomials.push_back({i, n_left + j});
      s.monomial_labels.push_back(pname(i) + qname(j));
    }
  s.validate();
  return s;
}

Rational LinearForm::eval(const Point& x) const {
  if (x.size() != a.size())
    throw std::invalid_argument("linear form: dimension mismatch");
  return b + dot(a, x);
}

bool LinearForm::operator<(const LinearForm& o) const {
  if (a != o.a) return a < o.a;
  return b < o.b;
}

std::vector<Point> scheme_vertices(const EventScheme& s) {
  s.validate();
  const std::size_t n = s.event_labels.size();
  if (n > 24) throw std::invalid_argument("scheme: too many events");
  std::vector<Point> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Point v;
    v.reserve(s.monomials.size());
    for (const auto& m : s.monomials) {
      int bit = 1;
      for (auto e : m) bit &= (mask >> e) & 1u;
      v.push_back(Rational(bit));
    }
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polytope hull(std::vector<Point> vertices, std::vector<std::string> labels) {
  if (vertices.empty()) throw std::invalid_argument("hull: no vertices");
  const std::size_t d = labels.size();
  for (const auto& v : vertices)
    if (v.size() != d) throw std::invalid_argument("hull: ragged vertex");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());

  Polytope p;
  p.labels = std::move(labels);
  p.vertices = std::move(vertices);
  const Point& v0 = p.vertices[0];

  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    Vec r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = p.vertices[i][j] - v0[j];
    diffs.push_back(std::move(r));
  }
  auto pivots = rref(diffs);
  p.dim_aff = pivots.size();

  // Affine hull: one equality per non-pivot coordinate, from the
  // nullspace of the difference span; re-echelonized for a canonical
  // basis.
  {
    std::vector<bool> is_pivot(d, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> eqs;
    for (std::size_t f = 0; f < d; ++f) {
      if (is_pivot[f]) continue;
      Vec c(d + 1);
      c[f] = Rational(1);
      for (std::size_t r = 0; r < pivots.size(); ++r)
        c[pivots[r]] = -diffs[r][f];
      Rational b;
      for (std::size_t j = 0; j < d; ++j) b -= c[j] * v0[j];
      c[d] = b;
      eqs.push_back(std::move(c));
    }
    rref(eqs);
    for (auto& e : eqs) {
      integerize(e);
      LinearForm lf;
      lf.b = e[d];
      lf.a.assign(e.begin(), e.begin() + d);
      p.equalities.push_back(std::move(lf));
    }
    std::sort(p.equalities.begin(), p.equalities.end());
  }

  if (p.dim_aff > 0) {
    std::vector<Vec> proj;
    for (const auto& v : p.vertices) {
      Vec q;
      q.reserve(pivots.size());
      for (auto c : pivots) q.push_back(v[c]);
      proj.push_back(std::move(q));
    }
    for (auto& y : dual_rays(proj)) {
      LinearForm lf;
      lf.b = y[0];
      lf.a.assign(d, Rational());
      for (std::size_t k = 0; k < pivots.size(); ++k) lf.a[pivots[k]] = y[k + 1];
      p.facets.push_back(std::move(lf));
    }
    std::sort(p.facets.begin(), p.facets.end());
  }

  for (const auto& v : p.vertices) {
    for (const auto& e : p.equalities)
      if (!e.eval(v).is_zero())
        throw std::logic_error("hull: equality not tight on a vertex");
    for (const auto& f : p.facets)
      if (f.eval(v).sign() < 0)
        throw std::logic_error("hull: facet violated by a vertex");
  }
  return p;
}

Polytope state_polytope(const Logic& l, const StateSet& ss) {
  if (ss.states.empty())
    throw std::invalid_argument("state polytope: empty state set");
  std::vector<Point> verts;
  for (const auto& s : ss.states) {
    Point v;
    v.reserve(s.size());
    for (auto bit : s) v.push_back(Rational(bit));
    verts.push_back(std::move(v));
  }
  return hull(std::move(verts), l.atoms);
}

std::vector<CheckItem> check(const std::vector<LinearForm>& forms,
                             const Point& x) {
  std::vector<CheckItem> out;
  for (const auto& f : forms) {
    CheckItem item;
    item.margin = f.eval(x);
    item.satisfied = item.margin.sign() >= 0;
    item.tight = item.margin.is_zero();
    out.push_back(std::move(item));
  }
  return out;
}

std::string vertices_csv(const Polytope& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    if (i) os << ',';
    os << p.labels[i];
  }
  os << '\n';
  for (const auto& v : p.vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i];
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void render_form(std::ostream& os, const LinearForm& f,
                 const std::vector<std::string>& labels) {
  os << f.b;
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    if (f.a[i].is_zero()) continue;
    if (f.a[i].sign() > 0)
      os << " + " << f.a[i];
    else
      os << " - " << -f.a[i];
    os << '*' << labels[i];
  }
}

}  // namespace

std::string form_str(const LinearForm& f, const std::vector<std::string>& labels,
                     bool equality) {
  std::ostringstream os;
  if (equality) os << "= ";
  render_form(os, f, labels);
  if (!equality) os << " >= 0";
  return os.str();
}

std::string facets_text(const Polytope& p) {
  std::ostringstream os;
  os << "# labels:";
  for (const auto& l : p.labels) os << ' ' << l;
  os << '\n';
  for (const auto& e : p.equalities) {
    os << "= ";
    render_form(os, e, p.labels);
    os << '\n';
  }
  for (const auto& f : p.facets) {
    render_form(os, f, p.labels);
    os << " >= 0\n";
  }
  return os.str();
}

Polytope parse_facets_text(const std::string& text) {
  Polytope p;
  std::map<std::string, std::size_t> index;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# labels:", 0) == 0) {
      std::istringstream ls(line.substr(9));
      std::string lab;
      while (ls >> lab) {
        index.emplace(lab, p.labels.size());
        p.labels.push_back(lab);
      }
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (p.labels.empty())
      throw std::runtime_error("facet file: missing '# labels:' header");

    bool equality = line.rfind("= ", 0) == 0;
    std::string body = equality ? line.substr(2) : line;
    if (!equality) {
      auto tail = body.rfind(" >= 0");
      if (tail == std::string::npos || tail + 5 != body.size())
        throw std::runtime_error("facet file: expected ' >= 0' in '" + line + "'");
      body.erase(tail);
    }

    std::istringstream ts(body);
    std::string tok;
    if (!(ts >> tok))
      throw std::runtime_error("facet file: empty inequality line");
    LinearForm f;
    f.b = Rational::parse(tok);
    f.a.assign(p.labels.size(), Rational());
    std::string sign;
    while (ts >> sign >> tok) {
      if (sign != "+" && sign != "-")
        throw std::runtime_error("facet file: bad sign '" + sign + "'");
      auto star = tok.find('*');
      if (star == std::string::npos)
        throw std::runtime_error("facet file: bad term '" + tok + "'");
      Rational c = Rational::parse(tok.substr(0, star));
      if (sign == "-") c = -c;
      auto it = index.find(tok.substr(star + 1));
      if (it == index.end())
        throw std::runtime_error("facet file: unknown label in '" + tok + "'");
      f.a[it->second] += c;
    }
    (equality ? p.equalities : p.facets).push_back(std::move(f));
  }
  return p;
}

}  // namespace contexture

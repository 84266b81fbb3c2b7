#include "contexture/ray.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

namespace contexture {

namespace {

// gcd of the numerators and lcm of the denominators over every (a,b)
// component of the vector; used to strip the rational content.
mpz_class content_gcd(const std::vector<QSqrt2>& v) {
  mpz_class g = 0;
  for (const auto& c : v) {
    g = gcd(g, c.a().num());
    g = gcd(g, c.b().num());
  }
  return g;
}

mpz_class denom_lcm(const std::vector<QSqrt2>& v) {
  mpz_class l = 1;
  for (const auto& c : v) {
    l = lcm(l, c.a().den());
    l = lcm(l, c.b().den());
  }
  return l;
}

}  // namespace

bool Ray::operator<(const Ray& o) const {
  const std::size_t n = std::min(coords.size(), o.coords.size());
  for (std::size_t i = 0; i < n; ++i) {
    int s = (coords[i] - o.coords[i]).sign();
    if (s != 0) return s < 0;
  }
  return coords.size() < o.coords.size();
}

std::string Ray::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

Ray canonicalize(std::vector<QSqrt2> v, std::string label) {
  bool nonzero = false;
  for (const auto& c : v) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw std::domain_error("canonicalize: zero vector");

  Rational scale(Rational(mpz_class(denom_lcm(v))) /
                 Rational(mpz_class(content_gcd(v))));
  for (auto& c : v) c = scale * c;

  for (const auto& c : v) {
    int s = c.sign();
    if (s != 0) {
      if (s < 0)
        for (auto& d : v) d = -d;
      break;
    }
  }
  Ray r;
  r.coords = std::move(v);
  r.label = std::move(label);
  return r;
}

QSqrt2 inner_product(const Ray& x, const Ray& y) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("inner_product: dimension mismatch");
  QSqrt2 s;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x.coords[i] * y.coords[i];
  return s;
}

std::vector<QSqrt2> cross_product(const Ray& x, const Ray& y) {
  if (x.dim() != 3 || y.dim() != 3)
    throw std::invalid_argument("cross_product: d = 3 required");
  const auto& a = x.coords;
  const auto& b = y.coords;
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

namespace {

// Compact coordinate code in the style of the 33-ray figure:
// 0, 1, ! (-1), 2 (sqrt 2), ~ (-sqrt 2).
std::string compact_label(const Ray& r) {
  static const std::map<std::pair<long, long>, char> code = {
      {{0, 0}, '0'}, {{1, 0}, '1'}, {{-1, 0}, '!'}, {{0, 1}, '2'}, {{0, -1}, '~'}};
  std::string out;
  for (const auto& c : r.coords) {
    if (!c.a().is_integer() || !c.b().is_integer()) return {};
    if (!c.a().num().fits_slong_p() || !c.b().num().fits_slong_p()) return {};
    auto it = code.find({c.a().num().get_si(), c.b().num().get_si()});
    if (it == code.end()) return {};
    out += it->second;
  }
  return out;
}

}  // namespace

std::vector<Ray> peres_rays() {
  const QSqrt2 s2 = QSqrt2::sqrt2();
  std::vector<std::vector<QSqrt2>> seeds = {
      {0, 0, 1},        {0, 1, 1},         {0, -1, 1},
      {QSqrt2(0), QSqrt2(1), s2},  {QSqrt2(0), QSqrt2(-1), s2},
      {QSqrt2(1), QSqrt2(1), s2},  {QSqrt2(1), QSqrt2(-1), s2},
      {QSqrt2(-1), QSqrt2(1), s2}, {QSqrt2(-1), QSqrt2(-1), s2}};

  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  std::set<Ray> out;
  for (const auto& seed : seeds)
    for (const auto& p : perms)
      for (int signs = 0; signs < 8; ++signs) {
        std::vector<QSqrt2> v(3);
        for (int i = 0; i < 3; ++i) {
          v[i] = seed[p[i]];
          if (signs & (1 << i)) v[i] = -v[i];
        }
        out.insert(canonicalize(std::move(v)));
      }

  std::vector<Ray> rays(out.begin(), out.end());
  for (auto& r : rays) r.label = compact_label(r);
  return rays;
}

CabelloSet cabello_rays() {
  struct Seed {
    const char* label;
    std::array<int, 4> v;
  };
  static const std::vector<Seed> seeds = {
      {"A", {0, 0, 1, -1}}, {"B", {1, -1, 0, 0}}, {"C", {1, 1, -1, -1}},
      {"D", {1, 1, 1, 1}},  {"E", {1, -1, 1, -1}}, {"F", {1, 0, -1, 0}},
      {"G", {0, 1, 0, -1}}, {"H", {1, 0, 1, 0}},  {"I", {1, 1, -1, 1}},
      {"J", {-1, 1, 1, 1}}, {"K", {1, 1, 1, -1}}, {"L", {1, 0, 0, 1}},
      {"M", {0, 1, -1, 0}}, {"N", {0, 1, 1, 0}},  {"O", {0, 0, 0, 1}},
      {"P", {1, 0, 0, 0}},  {"Q", {0, 1, 0, 0}},  {"R", {0, 0, 1, 1}}};

  CabelloSet cs;
  std::map<std::string, std::size_t> index;
  for (const auto& s : seeds) {
    std::vector<QSqrt2> v(s.v.begin(), s.v.end());
    index[s.label] = cs.rays.size();
    cs.rays.push_back(canonicalize(std::move(v), s.label));
  }
  static const std::vector<std::pair<const char*, const char*>> blocks = {
      {"a", "ABCD"}, {"b", "DEFG"}, {"c", "GHIJ"}, {"d", "JKLM"}, {"e", "MNOP"},
      {"f", "PQRA"}, {"g", "BIKR"}, {"h", "CELN"}, {"i", "FHOQ"}};
  for (const auto& [name, members] : blocks) {
    std::vector<std::size_t> blk;
    for (const char* p = members; *p; ++p) blk.push_back(index.at(std::string(1, *p)));
    cs.contexts.push_back(std::move(blk));
    cs.context_names.push_back(name);
  }
  return cs;
}

std::vector<Ray> nor_closure(std::vector<Ray> seeds, int max_rounds,
                             bool nonorthogonal_only) {
  std::set<Ray> current;
  for (auto& s : seeds) {
    if (s.dim() != 3) throw std::invalid_argument("nor_closure: d = 3 required");
    current.insert(canonicalize(s.coords, s.label));
  }

  for (int round = 0; round < max_rounds; ++round) {
    std::vector<Ray> snapshot(current.begin(), current.end());
    std::set<Ray> fresh;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        if (nonorthogonal_only &&
            inner_product(snapshot[i], snapshot[j]).is_zero())
          continue;
        auto c = cross_product(snapshot[i], snapshot[j]);
        bool zero = c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
        if (zero) continue;  // collinear pair
        Ray r = canonicalize(std::move(c));
        if (!current.count(r)) fresh.insert(std::move(r));
      }
    if (fresh.empty()) break;
    current.insert(fresh.begin(), fresh.end());
  }
  return {current.begin(), current.end()};
}

OrthoGraph ortho_graph(std::vector<Ray> rays) {
  OrthoGraph g;
  g.rays = std::move(rays);
  for (std::size_t i = 0; i < g.rays.size(); ++i)
    for (std::size_t j = i + 1; j < g.rays.size(); ++j)
      if (inner_product(g.rays[i], g.rays[j]).is_zero()) g.edges.insert({i, j});
  return g;
}

namespace {

struct CliqueSearch {
  const std::vector<uint64_t>& adj;
  std::size_t dim;
  std::vector<std::vector<std::size_t>> out;

  static int popcount(uint64_t x) { return __builtin_popcountll(x); }

  void expand(uint64_t r, uint64_t p, uint64_t x) {
    if (p == 0 && x == 0) {
      std::vector<std::size_t> clique;
      for (std::size_t i = 0; i < 64; ++i)
        if (r & (uint64_t(1) << i)) clique.push_back(i);
      if (clique.size() > dim)
        throw std::logic_error(
            "contexts_from_rays: orthogonal clique larger than the ambient "
            "dimension");
      out.push_back(std::move(clique));
      return;
    }
    // Pivot on the candidate dominating most of P; ties go to the lowest
    // index so the recursion order is deterministic.
    uint64_t pux = p | x;
    int best = -1;
    std::size_t pivot = 0;
    for (std::size_t u = 0; u < adj.size(); ++u)
      if (pux & (uint64_t(1) << u)) {
        int c = popcount(p & adj[u]);
        if (c > best) {
          best = c;
          pivot = u;
        }
      }
    uint64_t cand = p & ~adj[pivot];
    for (std::size_t v = 0; v < adj.size(); ++v) {
      uint64_t bit = uint64_t(1) << v;
      if (!(cand & bit)) continue;
      expand(r | bit, p & adj[v], x & adj[v]);
      p &= ~bit;
      x |= bit;
    }
  }
};

}  // namespace

std::vector<std::vector<std::size_t>> contexts_from_rays(const OrthoGraph& g,
                                                         std::size_t dim) {
  const std::size_t n = g.rays.size();
  if (n > 64)
    throw std::invalid_argument("contexts_from_rays: at most 64 rays supported");
  std::vector<uint64_t> adj(n, 0);
  for (const auto& [i, j] : g.edges) {
    adj[i] |= uint64_t(1) << j;
    adj[j] |= uint64_t(1) << i;
  }
  CliqueSearch search{adj, dim, {}};
  if (n > 0) search.expand(0, n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1, 0);
  std::sort(search.out.begin(), search.out.end());
  return search.out;
}

namespace {

QSqrt2 parse_coord(const std::string& tok) {
  auto colon = tok.find(':');
  if (colon == std::string::npos) return QSqrt2(Rational::parse(tok));
  return QSqrt2(Rational::parse(tok.substr(0, colon)),
                Rational::parse(tok.substr(colon + 1)));
}

}  // namespace

std::vector<Ray> parse_rays(const std::string& text) {
  std::vector<Ray> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    auto colon = line.find(" : ");
    std::string label;
    std::string body = line;
    if (colon != std::string::npos) {
      label = line.substr(0, colon);
      // trim
      label.erase(0, label.find_first_not_of(" \t"));
      label.erase(label.find_last_not_of(" \t") + 1);
      body = line.substr(colon + 3);
    }
    std::istringstream ls(body);
    std::vector<QSqrt2> coords;
    std::string tok;
    try {
      while (ls >> tok) coords.push_back(parse_coord(tok));
    } catch (const std::domain_error& e) {
      throw std::runtime_error("rays: line " + std::to_string(lineno) + ": " +
                               e.what());
    }
    if (coords.empty())
      throw std::runtime_error("rays: line " + std::to_string(lineno) +
                               ": no coordinates");
    out.push_back(canonicalize(std::move(coords), std::move(label)));
  }
  return out;
}

std::string render_rays(const std::vector<Ray>& rays) {
  std::ostringstream os;
  for (const auto& r : rays) {
    if (!r.label.empty()) os << r.label << " : ";
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
      if (i) os << ' ';
      os << r.coords[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace contexture

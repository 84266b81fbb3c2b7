#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contexture/partition.hpp"
#include "helpers.hpp"

using namespace contexture;

namespace {

PartitionLogic l12_partition() {
  Logic l = builtin("l12");
  auto ss = enumerate_states(l);
  return partition_from_states(l, ss.states);
}

std::vector<std::size_t> cell(const PartitionLogic& pl, const Logic& l,
                              const std::string& atom) {
  return pl.cells[l.atom_index(atom)];
}

// Wright's urn: five ball types, colors red/green, symbols 1..5.
UrnModel wright_urn() {
  return parse_urn_tsv(
      "ball\tred\tgreen\n"
      "1\t1\t3\n"
      "2\t1\t4\n"
      "3\t2\t3\n"
      "4\t2\t4\n"
      "5\t5\t5\n");
}

}  // namespace

TEST_CASE("l12 cells match the known partition") {
  Logic l = builtin("l12");
  auto pl = l12_partition();
  CHECK(cell(pl, l, "a1") == std::vector<std::size_t>{4, 5});
  CHECK(cell(pl, l, "a2") == std::vector<std::size_t>{2, 3});
  CHECK(cell(pl, l, "a3") == std::vector<std::size_t>{3, 5});
  CHECK(cell(pl, l, "a4") == std::vector<std::size_t>{2, 4});
  CHECK(cell(pl, l, "a5") == std::vector<std::size_t>{1});
  CHECK_NOTHROW(pl.validate());
}

TEST_CASE("l12 urn with atom-label symbols") {
  auto pl = l12_partition();
  auto u = urn_from_partition(pl);
  REQUIRE(u.ball_types.size() == 5);
  REQUIRE(u.colors == std::vector<std::string>{"b1", "b2"});
  // Ball k shows the atom its state makes true in each block:
  // ball 1 -> a5/a5, 2 -> a2/a4, 3 -> a2/a3, 4 -> a1/a4, 5 -> a1/a3.
  std::vector<std::vector<std::string>> expect = {
      {"a5", "a5"}, {"a2", "a4"}, {"a2", "a3"}, {"a1", "a4"}, {"a1", "a3"}};
  CHECK(u.lookup == expect);
}

TEST_CASE("l12 star-form output tables") {
  Logic l = builtin("l12");
  auto pl = l12_partition();
  auto tables = automaton_star_outputs(pl);
  REQUIRE(tables.size() == 2);
  // Input b1 (atoms a1 a2 a5): state 1 shows a5 only, state 4 shows a1.
  auto idx_in_block = [&](std::size_t b, const std::string& atom) {
    const auto& blk = pl.blocks[b];
    for (std::size_t i = 0; i < blk.size(); ++i)
      if (pl.atom_names[blk[i]] == atom) return i;
    throw std::logic_error("atom not in block");
  };
  CHECK(tables[0][0][idx_in_block(0, "a5")] == "a5");
  CHECK(tables[0][0][idx_in_block(0, "a1")] == "*");
  CHECK(tables[0][0][idx_in_block(0, "a2")] == "*");
  CHECK(tables[0][3][idx_in_block(0, "a1")] == "a1");
  CHECK(tables[1][0][idx_in_block(1, "a3")] == "*");
  // Exactly one non-star entry per state and input.
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t k = 0; k < 5; ++k) {
      int shown = 0;
      for (const auto& e : tables[b][k]) shown += e != "*";
      CHECK(shown == 1);
    }
  (void)l;
}

TEST_CASE("wright urn to automaton reproduces the known tables") {
  auto u = wright_urn();
  auto m = urn_to_automaton(u);
  CHECK(m.states == std::vector<std::string>{"1", "2", "3", "4", "5"});
  CHECK(m.inputs == std::vector<std::string>{"0", "1"});
  // delta is constant to the first state.
  for (const auto& row : m.delta)
    for (auto t : row) CHECK(t == 0);
  // lambda columns: input 0 (red) gives 1,1,2,2,5; input 1 (green)
  // gives 3,4,3,4,5.
  std::vector<std::string> red, green;
  for (const auto& row : m.lambda) {
    red.push_back(row[0]);
    green.push_back(row[1]);
  }
  CHECK(red == std::vector<std::string>{"1", "1", "2", "2", "5"});
  CHECK(green == std::vector<std::string>{"3", "4", "3", "4", "5"});
}

TEST_CASE("urn and automaton logics are both l12") {
  auto u = wright_urn();
  CHECK(testutil::isomorphic(logic_from_urn(u), builtin("l12")));
  CHECK(testutil::isomorphic(logic_from_automaton(urn_to_automaton(u)),
                             builtin("l12")));
}

TEST_CASE("model round trips") {
  auto u = wright_urn();
  CHECK(parse_urn_tsv(urn_tsv(u)).lookup == u.lookup);
  auto m = urn_to_automaton(u);
  auto m2 = parse_automaton_tsv(automaton_tsv(m));
  CHECK(m2.states == m.states);
  CHECK(m2.inputs == m.inputs);
  CHECK(m2.delta == m.delta);
  CHECK(m2.lambda == m.lambda);
  auto u2 = automaton_to_urn(m);
  CHECK(u2.lookup == u.lookup);
  CHECK(u2.ball_types == u.ball_types);
}

TEST_CASE("bug partition in the frozen row order") {
  Logic l = builtin("bug");
  auto states = testutil::bug_states_in_row_order(l);
  auto pl = partition_from_states(l, states);
  auto want = [&](const char* atom, std::vector<std::size_t> labels) {
    CHECK(cell(pl, l, atom) == labels);
  };
  want("a1", {1, 2, 3});
  want("a2", {4, 5, 6, 7, 8, 9});
  want("a3", {10, 11, 12, 13, 14});
  want("a4", {2, 6, 7, 8});
  want("a5", {1, 3, 4, 5, 9});
  want("a6", {2, 6, 8, 11, 12, 14});
  want("a7", {7, 10, 13});
  want("a8", {3, 5, 8, 9, 11, 14});
  want("a9", {1, 2, 4, 6, 12});
  want("a10", {3, 9, 13, 14});
  want("a11", {5, 7, 8, 10, 11});
  want("a12", {4, 6, 9, 12, 13, 14});
  want("a13", {1, 4, 5, 10, 11, 12});
}

TEST_CASE("bug urn with rank symbols matches the frozen table") {
  Logic l = builtin("bug");
  auto states = testutil::bug_states_in_row_order(l);
  auto pl = partition_from_states(l, states);
  auto u = urn_from_partition(pl, SymbolScheme::CompactRank);
  auto table = testutil::bug_urn_rows();
  REQUIRE(u.lookup.size() == 14);
  for (std::size_t k = 0; k < 14; ++k)
    for (std::size_t c = 0; c < 7; ++c)
      CHECK(u.lookup[k][c] == std::to_string(table[k][c]));
}

TEST_CASE("bug logic is recovered from its own urn") {
  Logic l = builtin("bug");
  auto states = testutil::bug_states_in_row_order(l);
  auto pl = partition_from_states(l, states);
  for (auto scheme : {SymbolScheme::AtomLabels, SymbolScheme::CompactRank}) {
    auto u = urn_from_partition(pl, scheme);
    CHECK(testutil::isomorphic(logic_from_urn(u), l));
  }
  auto m = automaton_from_partition(pl);
  CHECK(testutil::isomorphic(logic_from_automaton(m), l));
}

TEST_CASE("partition_from_states rejects degenerate inputs") {
  Logic l = builtin("l12");
  CHECK_THROWS(partition_from_states(l, {}));
  // Two atoms of one block with identical cells: single state making
  // a fixed choice everywhere cannot separate the others.
  auto ss = enumerate_states(l);
  CHECK_THROWS(partition_from_states(l, {ss.states[0]}));
}

TEST_CASE("probabilities on the bug logic") {
  Logic l = builtin("bug");
  auto states = testutil::bug_states_in_row_order(l);
  auto pl = partition_from_states(l, states);
  ProbVector uniform;
  for (int i = 0; i < 14; ++i) uniform.weights.push_back(Rational(1, 14));
  auto p = state_probabilities(pl, uniform);
  CHECK(p[l.atom_index("a1")] == Rational(3, 14));
  CHECK(p[l.atom_index("a13")] == Rational(6, 14));
  // Each block sums to one.
  for (const auto& blk : pl.blocks) {
    Rational sum;
    for (auto a : blk) sum += p[a];
    CHECK(sum == Rational(1));
  }
  CHECK(singlet_joint_probability(
            pl, uniform, {l.atom_index("a1"), l.atom_index("a13")}) ==
        Rational(1, 14));
  CHECK(singlet_joint_probability(
            pl, uniform, {l.atom_index("a1"), l.atom_index("a2")}) ==
        Rational(0));
}

TEST_CASE("probability vector validation") {
  ProbVector bad;
  bad.weights = {Rational(1, 2), Rational(1, 3)};
  CHECK_THROWS(bad.validate());
  bad.weights = {Rational(3, 2), Rational(-1, 2)};
  CHECK_THROWS(bad.validate());
  ProbVector ok;
  ok.weights = {Rational(1, 2), Rational(1, 2)};
  CHECK_NOTHROW(ok.validate());
  Logic l = builtin("l12");
  auto pl = l12_partition();
  CHECK_THROWS(state_probabilities(pl, bad));
  CHECK_THROWS(state_probabilities(pl, ok));  // wrong length
}

TEST_CASE("partition text rendering") {
  auto pl = l12_partition();
  auto text = partition_text(pl);
  CHECK(text.find("b1 :") != std::string::npos);
  CHECK(text.find("{1}=a5") != std::string::npos);
  CHECK(text.find("{4,5}=a1") != std::string::npos);
}

TEST_CASE("logic_from_urn merges identical colors") {
  UrnModel u;
  u.ball_types = {"1", "2"};
  u.colors = {"c1", "c2"};
  u.symbols = {"x", "y"};
  u.lookup = {{"x", "y"}, {"y", "x"}};
  Logic l = logic_from_urn(u);
  // Both colors induce the same partition {1}{2}; one block survives.
  CHECK(l.blocks.size() == 1);
  CHECK(l.atoms.size() == 2);
}

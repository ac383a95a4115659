#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "wsync/automaton.hpp"
#include "wsync/corpus.hpp"
#include "wsync/oracle.hpp"
#include "wsync/powerset.hpp"

using namespace wsync;

namespace {

StateSet make(std::initializer_list<std::uint32_t> states) {
  StateSet s;
  for (std::uint32_t q : states) s.insert(q);
  return s;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
  return out;
}

std::uint64_t expected_nodes(std::uint32_t n, std::uint32_t m) {
  std::uint64_t total = 0;
  for (std::uint32_t i = 1; i <= m; ++i) total += binomial(n, i);
  return total;
}

Automaton random_synchronizing(SplitMix64& seeds, std::uint32_t max_states) {
  for (;;) {
    GeneratorSpec spec;
    spec.states = 2 + static_cast<std::uint32_t>(seeds.bounded(max_states - 1));
    spec.letter_count = 1 + static_cast<std::uint32_t>(seeds.bounded(4));
    spec.max_weight = 1 + static_cast<std::uint32_t>(seeds.bounded(9));
    spec.seed = seeds.next();
    Automaton aut = random_automaton(spec);
    if (is_synchronizing(aut)) return aut;
  }
}

}  // namespace

TEST_CASE("subset automaton sizes") {
  Automaton aut = paper_automaton_A();
  CHECK(build_subset_automaton(aut, 2).node_count() == 10);
  CHECK(build_subset_automaton(aut, 3).node_count() == 14);
  CHECK(build_subset_automaton(aut, 4).node_count() == 15);

  SplitMix64 seeds(3);
  for (int i = 0; i < 10; ++i) {
    GeneratorSpec spec;
    spec.states = 2 + static_cast<std::uint32_t>(seeds.bounded(8));
    spec.letter_count = 1 + static_cast<std::uint32_t>(seeds.bounded(3));
    spec.seed = seeds.next();
    Automaton r = random_automaton(spec);
    std::uint32_t m = 2 + static_cast<std::uint32_t>(seeds.bounded(spec.states - 1));
    CHECK(build_subset_automaton(r, m).node_count() == expected_nodes(spec.states, m));
  }
}

TEST_CASE("subset automaton rejects m outside 2..n") {
  Automaton aut = paper_automaton_A();
  CHECK_THROWS_AS(build_subset_automaton(aut, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_subset_automaton(aut, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_subset_automaton(aut, 5), std::invalid_argument);
}

TEST_CASE("node order is cardinality-major, canonical within a cardinality") {
  SubsetAutomaton sub = build_subset_automaton(paper_automaton_A(), 3);
  // Singleton {q} is node q.
  for (std::uint32_t q = 0; q < 4; ++q) {
    CHECK(sub.node(q) == StateSet::single(q));
    CHECK(sub.node_id(StateSet::single(q)) == q);
  }
  std::vector<StateSet> pairs = {make({0, 1}), make({0, 2}), make({0, 3}),
                                 make({1, 2}), make({1, 3}), make({2, 3})};
  for (std::size_t i = 0; i < pairs.size(); ++i)
    CHECK(sub.node(4 + static_cast<std::uint32_t>(i)) == pairs[i]);
  CHECK(sub.node(10) == make({0, 1, 2}));
  CHECK(sub.node(13) == make({1, 2, 3}));

  // Subsets above the cardinality bound are not nodes.
  CHECK(sub.node_id(make({0, 1, 2, 3})) == sub.node_count());
}

TEST_CASE("lifted edges agree with apply_letter") {
  Automaton aut = paper_automaton_A();
  SubsetAutomaton sub = build_subset_automaton(aut, 3);
  for (std::uint32_t id = 0; id < sub.node_count(); ++id)
    for (std::uint32_t a = 0; a < aut.letter_count(); ++a) {
      StateSet image = apply_letter(aut, sub.node(id), a);
      CHECK(sub.target(id, a) == sub.node_id(image));
      // Cardinality never grows, so the image is always a node.
      CHECK(sub.target(id, a) < sub.node_count());
    }
}

TEST_CASE("reverse_dijkstra distances and witness letters") {
  Automaton aut = paper_automaton_A();
  SubsetAutomaton sub = build_subset_automaton(aut, 2);
  ReverseSearch search = reverse_dijkstra(sub, 0);

  CHECK(search.target == 0);
  CHECK(search.distance[0] == 0);
  CHECK(search.first_letter[0] == -1);

  std::uint32_t pair03 = sub.node_id(make({0, 3}));
  CHECK(search.distance[pair03] == 1);
  CHECK(search.first_letter[pair03] == 1);  // letter b
  CHECK(path_word(sub, search, pair03) == "b");

  // Dijkstra invariant: each reached node's distance is realized by one
  // step plus the successor's distance.
  for (std::uint32_t id = 0; id < sub.node_count(); ++id) {
    if (search.distance[id] == kInfiniteDistance || id == 0) continue;
    std::int32_t letter = search.first_letter[id];
    REQUIRE(letter >= 0);
    std::uint32_t next = sub.target(id, static_cast<std::uint32_t>(letter));
    CHECK(search.distance[id] ==
          aut.letter_weight(static_cast<std::uint32_t>(letter)) + search.distance[next]);
  }

  CHECK_THROWS_AS(reverse_dijkstra(sub, sub.node_id(make({0, 1}))), std::invalid_argument);
}

TEST_CASE("word table for the reference automaton, m = 2") {
  Automaton aut = paper_automaton_A();
  WordTable table = compute_words(aut, 2);
  REQUIRE(table.size() == 6);

  struct Expected {
    StateSet set;
    const char* word;
    std::uint64_t weight;
  };
  const Expected expected[] = {
      {make({0, 1}), "aaab", 4}, {make({0, 2}), "abaaab", 6}, {make({0, 3}), "b", 1},
      {make({1, 2}), "aab", 3},  {make({1, 3}), "baaab", 5},  {make({2, 3}), "ab", 2},
  };
  for (const auto& row : expected) {
    const WordTableEntry* entry = table.find(row.set);
    REQUIRE(entry != nullptr);
    CHECK(entry->word == row.word);
    CHECK(entry->weight == row.weight);
    CHECK(entry->weight == word_weight(aut, entry->word));
    StateSet image = apply_set(aut, row.set, entry->word);
    CHECK(image.is_singleton());
    CHECK(image.min_state() == entry->target);
  }

  // Entries iterate by (cardinality, canonical order).
  for (std::size_t i = 0; i + 1 < table.entries().size(); ++i) {
    const StateSet& here = table.entries()[i].first;
    const StateSet& next = table.entries()[i + 1].first;
    bool ordered = here.size() < next.size() ||
                   (here.size() == next.size() && here.canonical_less(next));
    CHECK(ordered);
  }

  CHECK(table.find(make({0, 1, 2})) == nullptr);
  CHECK(table.find(StateSet::single(0)) == nullptr);
}

TEST_CASE("word table dump") {
  WordTable table = compute_words(paper_automaton_A(), 2);
  CHECK(dump_word_table_tsv(table) ==
        "0,1\taaab\t4\n"
        "0,2\tabaaab\t6\n"
        "0,3\tb\t1\n"
        "1,2\taab\t3\n"
        "1,3\tbaaab\t5\n"
        "2,3\tab\t2\n");
}

TEST_CASE("word table entries are minimal and complete") {
  SplitMix64 seeds(19);
  for (int round = 0; round < 40; ++round) {
    Automaton aut = random_synchronizing(seeds, 7);
    std::uint32_t n = aut.state_count();
    std::uint32_t m = 2 + static_cast<std::uint32_t>(seeds.bounded(n - 1));
    SubsetAutomaton sub = build_subset_automaton(aut, m);
    WordTable table = compute_words(sub);

    // A synchronizing automaton merges every subset, so the table holds
    // exactly the subsets with 2 <= |P| <= m.
    CHECK(table.size() == expected_nodes(n, m) - n);

    std::uint64_t pair_bound_unit =
        static_cast<std::uint64_t>(aut.max_letter_weight()) * n * (n - 1) / 2;
    for (const auto& [set, entry] : table.entries()) {
      CHECK(set.size() >= 2);
      CHECK(set.size() <= m);
      StateSet image = apply_set(aut, set, entry.word);
      CHECK(image.is_singleton());
      CHECK(image.min_state() == entry.target);
      CHECK(entry.weight == word_weight(aut, entry.word));

      // Weight bound (|P| - 1) * k * C(n, 2), and the walk visits each
      // subset node at most once.
      CHECK(entry.weight <= (set.size() - 1) * pair_bound_unit);
      CHECK(entry.word.size() <= sub.node_count());

      // Minimality against the exhaustive search.
      auto oracle = exhaustive_merge_weight(aut, set);
      REQUIRE(oracle.has_value());
      CHECK(entry.weight == oracle->value);
    }
  }
}

TEST_CASE("word table of a permutation automaton is empty") {
  Automaton swap = parse_automaton("states 2\nletters 1\nletter a 1\ntrans a 1 0\n");
  CHECK(compute_words(swap, 2).empty());

  Automaton rot =
      parse_automaton("states 4\nletters 2\nletter a 1\nletter b 1\n"
                      "trans a 1 2 3 0\ntrans b 0 1 2 3\n");
  CHECK(compute_words(rot, 3).empty());
}

TEST_CASE("subset automaton size guard") {
  // 40 states at m = 8 is about 96 million nodes, past the sanity limit.
  GeneratorSpec spec;
  spec.states = 40;
  spec.letter_count = 2;
  spec.seed = 5;
  Automaton big = random_automaton(spec);
  CHECK_THROWS_AS(build_subset_automaton(big, 8), std::length_error);
}

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wsync/automaton.hpp"
#include "wsync/state_set.hpp"

namespace wsync {

inline constexpr std::uint64_t kInfiniteDistance = std::numeric_limits<std::uint64_t>::max();

/*
 * Bounded subset automaton: one node per nonempty subset of states with
 * cardinality <= m, transitions lifted setwise, edge cost = letter weight.
 *
 * Node order is cardinality-major, then canonical (lexicographic on the
 * ascending member sequence) within one cardinality. Singleton {q} is node
 * q. Holds a pointer to the source automaton, which must outlive it.
 */
class SubsetAutomaton {
public:
  SubsetAutomaton(const Automaton& origin, std::uint32_t m,
                  std::vector<StateSet> nodes,
                  std::vector<std::vector<std::uint32_t>> edges,
                  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index)
      : origin_(&origin), m_(m), nodes_(std::move(nodes)),
        edges_(std::move(edges)), index_(std::move(index)) {}

  const Automaton& origin() const { return *origin_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  const StateSet& node(std::uint32_t id) const { return nodes_[id]; }
  const std::vector<StateSet>& nodes() const { return nodes_; }

  // Target node of the lifted transition.
  std::uint32_t target(std::uint32_t node_id, std::uint32_t letter) const {
    return edges_[letter][node_id];
  }

  // Node id of a subset, or node_count() when the subset is not a node.
  std::uint32_t node_id(const StateSet& set) const {
    auto it = index_.find(set);
    return it == index_.end() ? node_count() : it->second;
  }

private:
  const Automaton* origin_;
  std::uint32_t m_;
  std::vector<StateSet> nodes_;
  std::vector<std::vector<std::uint32_t>> edges_;  // [letter][node] -> node
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index_;
};

// Requires 2 <= m <= n. Node count is sum of C(n, i) for i = 1..m; throws
// std::length_error when that would exceed an internal sanity limit instead
// of letting the allocator die.
SubsetAutomaton build_subset_automaton(const Automaton& aut, std::uint32_t m);

// Shortest paths from every node *to* one singleton, over reversed edges.
struct ReverseSearch {
  std::uint32_t target = 0;
  std::vector<std::uint64_t> distance;    // kInfiniteDistance when unreachable
  // Letter taken by a minimal-weight path's first step; -1 at the target and
  // at unreachable nodes. Among optimal steps the declaration-smallest
  // letter is chosen, which makes the materialized word the
  // lexicographically least minimal-weight word to this target.
  std::vector<std::int32_t> first_letter;
};

ReverseSearch reverse_dijkstra(const SubsetAutomaton& sub, std::uint32_t target_node);

// Word read off by walking first_letter links from a node to the target.
// The node must be reachable (finite distance).
Word path_word(const SubsetAutomaton& sub, const ReverseSearch& search, std::uint32_t from_node);

struct WordTableEntry {
  Word word;
  std::uint64_t weight = 0;
  std::uint32_t target = 0;  // the singleton state the word collapses to
};

// Per subset P with 2 <= |P| <= m: a minimal-weight word with |P.word| = 1.
// Subsets from which no singleton is reachable are absent. Entries are
// ordered by (|P|, canonical order) for deterministic iteration.
class WordTable {
public:
  WordTable() = default;
  explicit WordTable(std::vector<std::pair<StateSet, WordTableEntry>> entries);

  const std::vector<std::pair<StateSet, WordTableEntry>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const WordTableEntry* find(const StateSet& set) const;

private:
  std::vector<std::pair<StateSet, WordTableEntry>> entries_;
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index_;
};

// One reverse Dijkstra per singleton, then the per-subset minimum across
// singletons. Ties break toward the smaller singleton state index; the word
// for a fixed singleton is already deterministic (see ReverseSearch).
WordTable compute_words(const Automaton& aut, std::uint32_t m);
WordTable compute_words(const SubsetAutomaton& sub);

// Debug dump: one line per entry, "subset<TAB>word<TAB>weight", subsets as
// comma-joined state indices, in table order.
std::string dump_word_table_tsv(const WordTable& table);

}  // namespace wsync

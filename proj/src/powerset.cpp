#include "wsync/powerset.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace wsync {

namespace {

// Largest subset-automaton we will try to materialize. Past this the edge
// arrays alone would be gigabytes; refuse with a real message instead.
constexpr std::uint64_t kMaxNodes = 50'000'000;

std::uint64_t checked_node_count(std::uint32_t n, std::uint32_t m) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, 0)
  for (std::uint32_t i = 1; i <= m; ++i) {
    // C(n, i) = C(n, i-1) * (n-i+1) / i, exact at every step.
    unsigned __int128 next = static_cast<unsigned __int128>(binom) * (n - i + 1) / i;
    if (next > kMaxNodes) return kMaxNodes + 1;
    binom = static_cast<std::uint64_t>(next);
    total += binom;
    if (total > kMaxNodes) return kMaxNodes + 1;
  }
  return total;
}

}  // namespace

SubsetAutomaton build_subset_automaton(const Automaton& aut, std::uint32_t m) {
  const std::uint32_t n = aut.state_count();
  if (m < 2 || m > n)
    throw std::invalid_argument("m out of range: need 2 <= m <= state count");
  std::uint64_t expected = checked_node_count(n, m);
  if (expected > kMaxNodes)
    throw std::length_error("subset automaton too large (more than " +
                            std::to_string(kMaxNodes) + " nodes)");

  std::vector<StateSet> nodes;
  nodes.reserve(expected);
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index;
  index.reserve(expected * 2);

  // Cardinality-major, lexicographic combinations within one cardinality.
  for (std::uint32_t size = 1; size <= m; ++size) {
    std::vector<std::uint32_t> comb(size);
    for (std::uint32_t i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      StateSet set;
      for (std::uint32_t q : comb) set.insert(q);
      index.emplace(set, static_cast<std::uint32_t>(nodes.size()));
      nodes.push_back(std::move(set));

      // Advance to the next combination.
      std::uint32_t i = size;
      while (i > 0 && comb[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::uint32_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  std::vector<std::vector<std::uint32_t>> edges(aut.letter_count());
  for (std::uint32_t a = 0; a < aut.letter_count(); ++a) {
    edges[a].resize(nodes.size());
    for (std::uint32_t id = 0; id < nodes.size(); ++id) {
      StateSet image = apply_letter(aut, nodes[id], a);
      auto it = index.find(image);
      // |image| <= |node| <= m, so the image is always a node.
      edges[a][id] = it->second;
    }
  }

  return SubsetAutomaton(aut, m, std::move(nodes), std::move(edges), std::move(index));
}

namespace {

// Reversed edge set in CSR form: for each node, the (predecessor, letter)
// pairs of edges arriving at it. Shared across the per-singleton searches.
struct ReverseEdges {
  std::vector<std::uint32_t> offsets;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
};

ReverseEdges build_reverse_edges(const SubsetAutomaton& sub) {
  const std::uint32_t nodes = sub.node_count();
  const std::uint32_t letters = sub.origin().letter_count();
  ReverseEdges rev;
  rev.offsets.assign(nodes + 1, 0);
  for (std::uint32_t a = 0; a < letters; ++a)
    for (std::uint32_t u = 0; u < nodes; ++u) ++rev.offsets[sub.target(u, a) + 1];
  for (std::uint32_t i = 0; i < nodes; ++i) rev.offsets[i + 1] += rev.offsets[i];
  rev.arcs.resize(static_cast<std::size_t>(nodes) * letters);
  std::vector<std::uint32_t> cursor(rev.offsets.begin(), rev.offsets.end() - 1);
  for (std::uint32_t a = 0; a < letters; ++a)
    for (std::uint32_t u = 0; u < nodes; ++u) {
      std::uint32_t v = sub.target(u, a);
      rev.arcs[cursor[v]++] = {u, a};
    }
  return rev;
}

ReverseSearch run_reverse_dijkstra(const SubsetAutomaton& sub, std::uint32_t target_node,
                                   const ReverseEdges& rev) {
  const Automaton& aut = sub.origin();
  ReverseSearch search;
  search.target = target_node;
  search.distance.assign(sub.node_count(), kInfiniteDistance);
  search.first_letter.assign(sub.node_count(), -1);

  using Item = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  search.distance[target_node] = 0;
  heap.push({0, target_node});
  while (!heap.empty()) {
    auto [dist, node] = heap.top();
    heap.pop();
    if (dist != search.distance[node]) continue;
    for (std::uint32_t i = rev.offsets[node]; i < rev.offsets[node + 1]; ++i) {
      auto [pred, letter] = rev.arcs[i];
      std::uint64_t candidate = dist + aut.letter_weight(letter);
      if (candidate < search.distance[pred]) {
        search.distance[pred] = candidate;
        heap.push({candidate, pred});
      }
    }
  }

  // First-step letters, scanned in declaration order so the walk reads off
  // the lexicographically least minimal-weight word. Distances strictly
  // decrease along these links (weights are positive), so walks terminate.
  for (std::uint32_t u = 0; u < sub.node_count(); ++u) {
    if (u == target_node || search.distance[u] == kInfiniteDistance) continue;
    for (std::uint32_t a = 0; a < aut.letter_count(); ++a) {
      std::uint32_t v = sub.target(u, a);
      if (search.distance[v] != kInfiniteDistance &&
          search.distance[u] == search.distance[v] + aut.letter_weight(a)) {
        search.first_letter[u] = static_cast<std::int32_t>(a);
        break;
      }
    }
  }
  return search;
}

}  // namespace

ReverseSearch reverse_dijkstra(const SubsetAutomaton& sub, std::uint32_t target_node) {
  if (target_node >= sub.node_count() || !sub.node(target_node).is_singleton())
    throw std::invalid_argument("reverse_dijkstra target must be a singleton node");
  return run_reverse_dijkstra(sub, target_node, build_reverse_edges(sub));
}

Word path_word(const SubsetAutomaton& sub, const ReverseSearch& search, std::uint32_t from_node) {
  if (search.distance[from_node] == kInfiniteDistance)
    throw std::invalid_argument("path_word: node cannot reach the target");
  Word word;
  std::uint32_t node = from_node;
  while (node != search.target) {
    std::int32_t letter = search.first_letter[node];
    word.push_back(sub.origin().letter_symbol(static_cast<std::uint32_t>(letter)));
    node = sub.target(node, static_cast<std::uint32_t>(letter));
  }
  return word;
}

WordTable::WordTable(std::vector<std::pair<StateSet, WordTableEntry>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first.canonical_less(b.first);
  });
  index_.reserve(entries_.size() * 2);
  for (std::uint32_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].first, i);
}

const WordTableEntry* WordTable::find(const StateSet& set) const {
  auto it = index_.find(set);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

WordTable compute_words(const SubsetAutomaton& sub) {
  const std::uint32_t n = sub.origin().state_count();
  ReverseEdges rev = build_reverse_edges(sub);

  // Singletons are nodes 0..n-1 by construction.
  std::vector<ReverseSearch> searches;
  searches.reserve(n);
  for (std::uint32_t p = 0; p < n; ++p)
    searches.push_back(run_reverse_dijkstra(sub, p, rev));

  std::vector<std::pair<StateSet, WordTableEntry>> entries;
  for (std::uint32_t id = n; id < sub.node_count(); ++id) {
    std::uint64_t best = kInfiniteDistance;
    std::uint32_t best_p = 0;
    // Equal weights break toward the smaller singleton index; the word per
    // singleton is unique, so no word-level tie remains.
    for (std::uint32_t p = 0; p < n; ++p)
      if (searches[p].distance[id] < best) {
        best = searches[p].distance[id];
        best_p = p;
      }
    if (best == kInfiniteDistance) continue;
    entries.push_back({sub.node(id), {path_word(sub, searches[best_p], id), best, best_p}});
  }
  return WordTable(std::move(entries));
}

WordTable compute_words(const Automaton& aut, std::uint32_t m) {
  return compute_words(build_subset_automaton(aut, m));
}

std::string dump_word_table_tsv(const WordTable& table) {
  std::string out;
  for (const auto& [set, entry] : table.entries()) {
    out += set.to_string();
    out.push_back('\t');
    out += entry.word;
    out.push_back('\t');
    out += std::to_string(entry.weight);
    out.push_back('\n');
  }
  return out;
}

}  // namespace wsync

#include "wsync/heuristics.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace wsync {

std::string_view heuristic_name(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::H1: return "H1";
    case HeuristicKind::H2: return "H2";
    case HeuristicKind::H3: return "H3";
    case HeuristicKind::H4: return "H4";
  }
  return "?";
}

std::optional<HeuristicKind> heuristic_from_name(std::string_view name) {
  if (name.size() != 2 || (name[0] != 'H' && name[0] != 'h')) return std::nullopt;
  switch (name[1]) {
    case '1': return HeuristicKind::H1;
    case '2': return HeuristicKind::H2;
    case '3': return HeuristicKind::H3;
    case '4': return HeuristicKind::H4;
  }
  return std::nullopt;
}

Score score(HeuristicKind kind, const StateSet& subset, const StateSet& tracked, const Word& word,
            const Automaton& aut, std::uint32_t m) {
  Score out;
  if (!subset.is_subset_of(tracked)) return out;
  const std::uint32_t p_size = subset.size();
  const std::uint32_t t_size = tracked.size();
  if (kind == HeuristicKind::H3) {
    if (p_size != std::min(m, t_size)) return out;
  } else {
    if (p_size <= 1) return out;
  }
  out.admissible = true;
  out.num = word_weight(aut, word);
  switch (kind) {
    case HeuristicKind::H1:
      out.den = p_size - apply_set(aut, subset, word).size();
      break;
    case HeuristicKind::H2:
      out.den = t_size - apply_set(aut, tracked, word).size();
      break;
    case HeuristicKind::H3:
      out.den = 1;
      break;
    case HeuristicKind::H4: {
      std::uint64_t drop = t_size - apply_set(aut, tracked, word).size();
      out.den = drop * drop;
      break;
    }
  }
  // Table entries collapse P inside T, so the drop is at least 1; anything
  // else is a contract violation by the caller.
  if (out.den == 0) throw std::logic_error("score: candidate word merges nothing");
  return out;
}

std::uint64_t sync_weight_bound(const Automaton& aut) {
  const unsigned __int128 n = aut.state_count();
  if (n < 2) return 0;
  unsigned __int128 bound = static_cast<unsigned __int128>(aut.max_letter_weight());
  bound *= n - 1;
  bound *= n * (n - 1) / 2;
  constexpr unsigned __int128 max64 = ~0ull;
  return bound > max64 ? ~0ull : static_cast<std::uint64_t>(bound);
}

namespace {

// num/den compared by cross-multiplication; 128-bit products so arbitrary
// uint64 weights cannot overflow.
bool rational_less(std::uint64_t num_a, std::uint64_t den_a, std::uint64_t num_b,
                   std::uint64_t den_b) {
  return static_cast<unsigned __int128>(num_a) * den_b <
         static_cast<unsigned __int128>(num_b) * den_a;
}

struct Candidate {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  std::uint32_t drop = 0;  // |T| - |T.w|
  std::uint64_t weight = 0;
  std::uint32_t entry_index = 0;
  StateSet after;  // T.w
};

// Selection order: smaller score, then larger drop, then smaller weight,
// then smaller canonical subset, then smaller word in declaration order.
bool candidate_better(const Automaton& aut, const WordTable& table, const Candidate& a,
                      const Candidate& b) {
  if (rational_less(a.num, a.den, b.num, b.den)) return true;
  if (rational_less(b.num, b.den, a.num, a.den)) return false;
  if (a.drop != b.drop) return a.drop > b.drop;
  if (a.weight != b.weight) return a.weight < b.weight;
  const auto& entry_a = table.entries()[a.entry_index];
  const auto& entry_b = table.entries()[b.entry_index];
  if (!(entry_a.first == entry_b.first))
    return entry_a.first.canonical_less(entry_b.first);
  return word_less(aut, entry_a.second.word, entry_b.second.word);
}

}  // namespace

SyncResult approximate_weight_synch(const Automaton& aut, std::uint32_t m, HeuristicKind kind,
                                    const WordTable& table) {
  const std::uint32_t n = aut.state_count();
  if (m < 2 || m > n)
    throw std::invalid_argument("m out of range: need 2 <= m <= state count");

  // State maps of the entry words, computed once. f[s] = s.word.
  const auto& entries = table.entries();
  std::vector<std::vector<std::uint32_t>> word_map(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    word_map[i].resize(n);
    for (std::uint32_t s = 0; s < n; ++s) word_map[i][s] = apply(aut, s, entries[i].second.word);
  }

  SyncResult result;
  StateSet tracked = StateSet::full(n);
  while (tracked.size() > 1) {
    std::optional<Candidate> best;
    for (std::uint32_t i = 0; i < entries.size(); ++i) {
      const StateSet& subset = entries[i].first;
      if (!subset.is_subset_of(tracked)) continue;
      if (kind == HeuristicKind::H3 && subset.size() != std::min(m, tracked.size())) continue;

      StateSet after;
      tracked.for_each([&](std::uint32_t s) { after.insert(word_map[i][s]); });
      Candidate cand;
      cand.drop = tracked.size() - after.size();
      cand.weight = entries[i].second.weight;
      cand.entry_index = i;
      cand.after = std::move(after);
      cand.num = cand.weight;
      switch (kind) {
        case HeuristicKind::H1: cand.den = subset.size() - 1; break;
        case HeuristicKind::H2: cand.den = cand.drop; break;
        case HeuristicKind::H3: cand.den = 1; break;
        case HeuristicKind::H4: cand.den = static_cast<std::uint64_t>(cand.drop) * cand.drop; break;
      }
      assert(cand.den > 0);
      if (!best || candidate_better(aut, table, cand, *best)) best = std::move(cand);
    }

    if (!best) {
      // No admissible entry: some pair in T can never merge, so there is no
      // synchronizing word at all. Report the empty result.
      return SyncResult{};
    }

    const auto& chosen = entries[best->entry_index];
    result.steps.push_back({chosen.first, chosen.second.word, tracked, best->after});
    result.word += chosen.second.word;
    tracked = std::move(best->after);
  }

  result.synchronized = true;
  result.weight = word_weight(aut, result.word);
  result.length = result.word.size();
  return result;
}

SyncResult approximate_weight_synch(const Automaton& aut, std::uint32_t m, HeuristicKind kind) {
  return approximate_weight_synch(aut, m, kind, compute_words(aut, m));
}

std::vector<GridRow> run_grid(const Automaton& aut, const std::vector<std::uint32_t>& m_values,
                              const std::vector<HeuristicKind>& kinds) {
  std::map<std::uint32_t, WordTable> tables;
  for (std::uint32_t m : m_values)
    if (!tables.count(m)) tables.emplace(m, compute_words(aut, m));

  std::vector<GridRow> rows;
  rows.reserve(m_values.size() * kinds.size());
  for (HeuristicKind kind : kinds)
    for (std::uint32_t m : m_values)
      rows.push_back({kind, m, approximate_weight_synch(aut, m, kind, tables.at(m))});
  return rows;
}

}  // namespace wsync

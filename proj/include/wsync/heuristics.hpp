#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wsync/automaton.hpp"
#include "wsync/powerset.hpp"
#include "wsync/state_set.hpp"

namespace wsync {

/*
 * Scoring rules for picking the next table entry (P, w) while tracking the
 * shrinking set T. Each kind fixes an admissibility predicate t and a score
 * h; the loop takes an admissible entry with minimal h.
 *
 *   H1: t = (P subset of T and |P| > 1);        h = weight / (|P| - |P.w|)
 *   H2: t as H1;                                h = weight / (|T| - |T.w|)
 *   H3: t = (P subset of T, |P| = min(m,|T|));  h = weight
 *   H4: t as H1;                                h = weight / (|T| - |T.w|)^2
 */
enum class HeuristicKind : std::uint8_t { H1, H2, H3, H4 };

inline constexpr std::array<HeuristicKind, 4> kAllHeuristics = {
    HeuristicKind::H1, HeuristicKind::H2, HeuristicKind::H3, HeuristicKind::H4};

std::string_view heuristic_name(HeuristicKind kind);
// Accepts "H1".."H4", case-insensitive.
std::optional<HeuristicKind> heuristic_from_name(std::string_view name);

// Exact rational num/den; no floating point anywhere in score comparisons.
struct Score {
  bool admissible = false;
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

// Reference scoring of one candidate. (P, w) is expected to be a word-table
// entry for a table built with parameter m; T is the currently tracked set.
// For H3 the predicate depends on m, which is why it is a parameter here.
Score score(HeuristicKind kind, const StateSet& subset, const StateSet& tracked, const Word& word,
            const Automaton& aut, std::uint32_t m);

struct SyncStep {
  StateSet chosen_subset;
  Word word;
  StateSet before;
  StateSet after;
};

struct SyncResult {
  Word word;
  std::uint64_t weight = 0;
  std::uint64_t length = 0;
  bool synchronized = false;
  // Replayable: apply_set(before, word) == after for every step, and the
  // result word is the concatenation of step words.
  std::vector<SyncStep> steps;
};

// Greedy synthesis: start from the full state set, repeatedly apply the
// best admissible table entry until one state remains. A synchronizing
// input yields a verified word of weight <= k*(n-1)*C(n,2); otherwise the
// empty result with synchronized = false. Requires 2 <= m <= n.
SyncResult approximate_weight_synch(const Automaton& aut, std::uint32_t m, HeuristicKind kind);
SyncResult approximate_weight_synch(const Automaton& aut, std::uint32_t m, HeuristicKind kind,
                                    const WordTable& table);

// k * (n-1) * C(n,2); saturates at uint64 max for absurd inputs.
std::uint64_t sync_weight_bound(const Automaton& aut);

struct GridRow {
  HeuristicKind kind = HeuristicKind::H1;
  std::uint32_t m = 2;
  SyncResult result;
};

// One row per (kind, m), kind-major, reusing one word table per m.
std::vector<GridRow> run_grid(const Automaton& aut, const std::vector<std::uint32_t>& m_values,
                              const std::vector<HeuristicKind>& kinds);

}  // namespace wsync

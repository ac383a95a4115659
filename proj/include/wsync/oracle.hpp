#pragma once

#include <cstdint>
#include <optional>

#include "wsync/automaton.hpp"
#include "wsync/errors.hpp"
#include "wsync/state_set.hpp"

namespace wsync {

// Exact searches walk the full power automaton (2^n subsets, built lazily),
// so they refuse automata above this many states unless the caller raises
// the cap. 64 is a hard ceiling regardless: subsets are single-word masks.
inline constexpr std::uint32_t kDefaultOracleCap = 16;

struct OracleResult {
  Word word;
  std::uint64_t value = 0;  // weight or length, per query
  bool optimal = true;
};

// Minimum-weight synchronizing word (Dijkstra over the power automaton from
// the full set to any singleton). Empty optional: not synchronizing.
// Among minimal-weight words the witness is the lexicographically least in
// letter declaration order.
std::optional<OracleResult> min_weight_sync(const Automaton& aut,
                                            std::uint32_t cap = kDefaultOracleCap);

// Minimum-length synchronizing word; same contract with unit letter costs.
std::optional<OracleResult> min_length_sync(const Automaton& aut,
                                            std::uint32_t cap = kDefaultOracleCap);

// Minimal gamma(w) over all w collapsing P to one state, with witness.
// Requires |P| >= 2. Empty optional: no word merges P.
std::optional<OracleResult> exhaustive_merge_weight(const Automaton& aut, const StateSet& set,
                                                    std::uint32_t cap = kDefaultOracleCap);

}  // namespace wsync

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsync/errors.hpp"
#include "wsync/state_set.hpp"

namespace wsync {

// A word is the bare concatenation of letter symbols; the empty string is
// the empty word. On the command line the empty word is spelled "-".
using Word = std::string;

/*
 * Weighted deterministic finite automaton: n states 0..n-1, an ordered
 * alphabet of single lowercase ASCII letters, one positive integer weight
 * per letter, and a total transition function per letter.
 *
 * Text format (UTF-8, lines whose first non-blank character is '#' and
 * blank lines are ignored):
 *
 *   states <n>
 *   letters <k>
 *   letter <sym> <weight>                 exactly k lines, declaration order
 *   trans <sym> <t0> <t1> ... <t(n-1)>    exactly k lines, ti = target of i
 *
 * Immutable after construction; the constructor validates every invariant.
 */
class Automaton {
public:
  Automaton(std::uint32_t state_count, std::string letters,
            std::vector<std::uint32_t> weights,
            std::vector<std::vector<std::uint32_t>> transitions);

  std::uint32_t state_count() const { return state_count_; }
  std::uint32_t letter_count() const { return static_cast<std::uint32_t>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  char letter_symbol(std::uint32_t letter) const { return letters_[letter]; }
  std::uint32_t letter_weight(std::uint32_t letter) const { return weights_[letter]; }

  // k = max letter weight.
  std::uint32_t max_letter_weight() const { return max_weight_; }

  std::uint32_t step(std::uint32_t state, std::uint32_t letter) const {
    return transitions_[letter][state];
  }
  const std::vector<std::uint32_t>& transition_row(std::uint32_t letter) const {
    return transitions_[letter];
  }

  // Declaration index of a symbol, or -1 when it is not in the alphabet.
  int letter_index(char symbol) const {
    return index_of_symbol_[static_cast<unsigned char>(symbol)];
  }
  // Same, but throws std::invalid_argument for symbols outside the alphabet.
  std::uint32_t letter_index_checked(char symbol) const;

private:
  std::uint32_t state_count_;
  std::string letters_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::vector<std::uint32_t>> transitions_;
  std::array<std::int16_t, 256> index_of_symbol_;
  std::uint32_t max_weight_;
};

// Reads the text format above. Errors carry the 1-based line number.
Automaton parse_automaton(std::istream& in);
Automaton parse_automaton(const std::string& text);

// Canonical form: field order as in the format block, single spaces, one
// trailing newline, no comments. parse(serialize(a)) reproduces a exactly.
std::string serialize_automaton(const Automaton& aut);

// Graphviz rendering of the transition graph; edge labels are "sym/weight".
std::string to_dot(const Automaton& aut);

// q.w by left-to-right application; apply(aut, q, "") == q.
std::uint32_t apply(const Automaton& aut, std::uint32_t q, std::string_view word);

// Image T.w; |T.w| <= |T|, and cardinality is non-increasing over prefixes.
StateSet apply_set(const Automaton& aut, const StateSet& set, std::string_view word);
StateSet apply_letter(const Automaton& aut, const StateSet& set, std::uint32_t letter);

// Sum of letter weights over the word; 0 for the empty word.
std::uint64_t word_weight(const Automaton& aut, std::string_view word);

// Lexicographic comparison in letter *declaration* order, which is the order
// that matters everywhere determinism is promised. Falls back to length for
// prefix pairs.
bool word_less(const Automaton& aut, std::string_view a, std::string_view b);

struct VerifyOutcome {
  bool synchronizing = false;
  // Populated only when synchronizing.
  std::uint32_t target = 0;
  // Length of the shortest prefix whose image is already a single state.
  std::optional<std::size_t> earliest_sync_prefix;
};

// True iff the word maps every state to one common target.
VerifyOutcome verify_sync_word(const Automaton& aut, std::string_view word);

// Backward reachability over unordered state pairs: every pair must reach a
// merged pair. O(letters * n^2).
bool is_synchronizing(const Automaton& aut);

}  // namespace wsync

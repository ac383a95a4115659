#include "wsync/automaton.hpp"

#include <charconv>
#include <istream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace wsync {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint32_t parse_number(const std::string& token, std::size_t line, const char* what) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected a nonnegative integer for ") + what +
                               ", got '" + token + "'");
  return value;
}

}  // namespace

Automaton::Automaton(std::uint32_t state_count, std::string letters,
                     std::vector<std::uint32_t> weights,
                     std::vector<std::vector<std::uint32_t>> transitions)
    : state_count_(state_count),
      letters_(std::move(letters)),
      weights_(std::move(weights)),
      transitions_(std::move(transitions)) {
  if (state_count_ == 0) throw std::invalid_argument("state count must be >= 1");
  if (letters_.empty()) throw std::invalid_argument("at least one letter is required");
  if (weights_.size() != letters_.size() || transitions_.size() != letters_.size())
    throw std::invalid_argument("weights and transitions must match the letter count");
  index_of_symbol_.fill(-1);
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    char sym = letters_[i];
    if (sym < 'a' || sym > 'z')
      throw std::invalid_argument("letter symbols must be lowercase ASCII letters");
    auto& slot = index_of_symbol_[static_cast<unsigned char>(sym)];
    if (slot != -1) throw std::invalid_argument(std::string("duplicate letter '") + sym + "'");
    slot = static_cast<std::int16_t>(i);
  }
  max_weight_ = 0;
  for (std::uint32_t w : weights_) {
    if (w == 0) throw std::invalid_argument("letter weights must be >= 1");
    if (w > max_weight_) max_weight_ = w;
  }
  for (const auto& row : transitions_) {
    if (row.size() != state_count_)
      throw std::invalid_argument("transition rows must have one target per state");
    for (std::uint32_t target : row)
      if (target >= state_count_) throw std::invalid_argument("transition target out of range");
  }
}

std::uint32_t Automaton::letter_index_checked(char symbol) const {
  int idx = letter_index(symbol);
  if (idx < 0)
    throw std::invalid_argument(std::string("symbol '") + symbol + "' is not in the alphabet");
  return static_cast<std::uint32_t>(idx);
}

Automaton parse_automaton(std::istream& in) {
  enum class Stage { Header, LetterCount, Letters, Trans, Done };
  Stage stage = Stage::Header;

  std::uint32_t state_count = 0;
  std::uint32_t letter_count = 0;
  std::string letters;
  std::vector<std::uint32_t> weights;
  std::vector<std::vector<std::uint32_t>> transitions;
  std::vector<bool> row_seen;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty() || tok[0][0] == '#') continue;

    switch (stage) {
      case Stage::Header: {
        if (tok[0] != "states" || tok.size() != 2)
          throw ParseError(lineno, "expected 'states <n>'");
        state_count = parse_number(tok[1], lineno, "the state count");
        if (state_count == 0) throw ParseError(lineno, "state count must be >= 1");
        stage = Stage::LetterCount;
        break;
      }
      case Stage::LetterCount: {
        if (tok[0] != "letters" || tok.size() != 2)
          throw ParseError(lineno, "expected 'letters <k>'");
        letter_count = parse_number(tok[1], lineno, "the letter count");
        if (letter_count == 0) throw ParseError(lineno, "letter count must be >= 1");
        stage = Stage::Letters;
        break;
      }
      case Stage::Letters: {
        if (tok[0] != "letter" || tok.size() != 3)
          throw ParseError(lineno, "expected 'letter <symbol> <weight>'");
        if (tok[1].size() != 1 || tok[1][0] < 'a' || tok[1][0] > 'z')
          throw ParseError(lineno, "letter symbol must be a single lowercase ASCII character");
        char sym = tok[1][0];
        if (letters.find(sym) != std::string::npos)
          throw ParseError(lineno, std::string("duplicate letter '") + sym + "'");
        std::uint32_t weight = parse_number(tok[2], lineno, "the letter weight");
        if (weight == 0) throw ParseError(lineno, "letter weight must be >= 1");
        letters.push_back(sym);
        weights.push_back(weight);
        if (letters.size() == letter_count) {
          transitions.assign(letter_count, {});
          row_seen.assign(letter_count, false);
          stage = Stage::Trans;
        }
        break;
      }
      case Stage::Trans: {
        if (tok[0] != "trans" || tok.size() < 2)
          throw ParseError(lineno, "expected 'trans <symbol> <t0> ... <t(n-1)>'");
        if (tok[1].size() != 1)
          throw ParseError(lineno, "letter symbol must be a single character");
        std::size_t letter = letters.find(tok[1][0]);
        if (letter == std::string::npos)
          throw ParseError(lineno, std::string("unknown letter '") + tok[1] + "'");
        if (row_seen[letter])
          throw ParseError(lineno, std::string("duplicate transition row for letter '") + tok[1] + "'");
        if (tok.size() - 2 != state_count)
          throw ParseError(lineno, "expected " + std::to_string(state_count) +
                                       " transition targets, got " + std::to_string(tok.size() - 2));
        std::vector<std::uint32_t> row;
        row.reserve(state_count);
        for (std::size_t i = 2; i < tok.size(); ++i) {
          std::uint32_t target = parse_number(tok[i], lineno, "a transition target");
          if (target >= state_count)
            throw ParseError(lineno, "target out of range: " + tok[i]);
          row.push_back(target);
        }
        transitions[letter] = std::move(row);
        row_seen[letter] = true;
        bool all = true;
        for (bool seen : row_seen) all = all && seen;
        if (all) stage = Stage::Done;
        break;
      }
      case Stage::Done:
        throw ParseError(lineno, "unexpected content after the automaton definition");
    }
  }

  if (stage != Stage::Done) {
    std::string missing;
    switch (stage) {
      case Stage::Header: missing = "expected 'states <n>'"; break;
      case Stage::LetterCount: missing = "expected 'letters <k>'"; break;
      case Stage::Letters: missing = "expected more 'letter' lines"; break;
      case Stage::Trans: {
        missing = "missing transition row";
        for (std::size_t i = 0; i < row_seen.size(); ++i)
          if (!row_seen[i]) {
            missing = std::string("missing transition row for letter '") + letters[i] + "'";
            break;
          }
        break;
      }
      case Stage::Done: break;
    }
    throw ParseError(lineno + 1, "unexpected end of input: " + missing);
  }

  return Automaton(state_count, std::move(letters), std::move(weights), std::move(transitions));
}

Automaton parse_automaton(const std::string& text) {
  std::istringstream stream(text);
  return parse_automaton(stream);
}

std::string serialize_automaton(const Automaton& aut) {
  std::string out;
  out += "states " + std::to_string(aut.state_count()) + "\n";
  out += "letters " + std::to_string(aut.letter_count()) + "\n";
  for (std::uint32_t i = 0; i < aut.letter_count(); ++i) {
    out += "letter ";
    out.push_back(aut.letter_symbol(i));
    out += " " + std::to_string(aut.letter_weight(i)) + "\n";
  }
  for (std::uint32_t i = 0; i < aut.letter_count(); ++i) {
    out += "trans ";
    out.push_back(aut.letter_symbol(i));
    for (std::uint32_t q = 0; q < aut.state_count(); ++q)
      out += " " + std::to_string(aut.step(q, i));
    out += "\n";
  }
  return out;
}

std::string to_dot(const Automaton& aut) {
  std::string out = "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::uint32_t q = 0; q < aut.state_count(); ++q)
    for (std::uint32_t a = 0; a < aut.letter_count(); ++a) {
      out += "  " + std::to_string(q) + " -> " + std::to_string(aut.step(q, a));
      out += " [label=\"";
      out.push_back(aut.letter_symbol(a));
      out += "/" + std::to_string(aut.letter_weight(a)) + "\"];\n";
    }
  out += "}\n";
  return out;
}

std::uint32_t apply(const Automaton& aut, std::uint32_t q, std::string_view word) {
  if (q >= aut.state_count()) throw std::invalid_argument("state index out of range");
  for (char sym : word) q = aut.step(q, aut.letter_index_checked(sym));
  return q;
}

StateSet apply_letter(const Automaton& aut, const StateSet& set, std::uint32_t letter) {
  StateSet out;
  set.for_each([&](std::uint32_t q) { out.insert(aut.step(q, letter)); });
  return out;
}

StateSet apply_set(const Automaton& aut, const StateSet& set, std::string_view word) {
  StateSet current = set;
  for (char sym : word) current = apply_letter(aut, current, aut.letter_index_checked(sym));
  return current;
}

std::uint64_t word_weight(const Automaton& aut, std::string_view word) {
  std::uint64_t total = 0;
  for (char sym : word) total += aut.letter_weight(aut.letter_index_checked(sym));
  return total;
}

bool word_less(const Automaton& aut, std::string_view a, std::string_view b) {
  std::size_t common = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < common; ++i) {
    std::uint32_t ia = aut.letter_index_checked(a[i]);
    std::uint32_t ib = aut.letter_index_checked(b[i]);
    if (ia != ib) return ia < ib;
  }
  return a.size() < b.size();
}

VerifyOutcome verify_sync_word(const Automaton& aut, std::string_view word) {
  VerifyOutcome outcome;
  StateSet image = StateSet::full(aut.state_count());
  std::size_t consumed = 0;
  if (image.is_singleton()) outcome.earliest_sync_prefix = 0;
  for (char sym : word) {
    image = apply_letter(aut, image, aut.letter_index_checked(sym));
    ++consumed;
    if (!outcome.earliest_sync_prefix && image.is_singleton())
      outcome.earliest_sync_prefix = consumed;
  }
  // The whole word must be consumed; the earliest prefix is a diagnostic,
  // not a short-circuit.
  outcome.synchronizing = image.is_singleton();
  if (outcome.synchronizing) outcome.target = image.min_state();
  if (!outcome.synchronizing) outcome.earliest_sync_prefix.reset();
  return outcome;
}

bool is_synchronizing(const Automaton& aut) {
  const std::uint32_t n = aut.state_count();
  if (n == 1) return true;

  // Unordered pair {p,q}, p < q, keyed as p*n+q. Backward BFS from every
  // pair some letter merges outright; a pair is mergeable iff it reaches
  // such a seed through reversed pair-automaton edges.
  auto pair_id = [n](std::uint32_t p, std::uint32_t q) { return p * n + q; };
  std::vector<std::vector<std::uint32_t>> preds(static_cast<std::size_t>(n) * n);
  std::vector<bool> mergeable(static_cast<std::size_t>(n) * n, false);
  std::queue<std::uint32_t> queue;

  for (std::uint32_t p = 0; p < n; ++p)
    for (std::uint32_t q = p + 1; q < n; ++q) {
      std::uint32_t id = pair_id(p, q);
      for (std::uint32_t a = 0; a < aut.letter_count(); ++a) {
        std::uint32_t tp = aut.step(p, a);
        std::uint32_t tq = aut.step(q, a);
        if (tp == tq) {
          if (!mergeable[id]) {
            mergeable[id] = true;
            queue.push(id);
          }
        } else {
          if (tp > tq) std::swap(tp, tq);
          preds[pair_id(tp, tq)].push_back(id);
        }
      }
    }

  std::size_t reached = 0;
  const std::size_t total_pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  // Count seeds once.
  for (std::uint32_t p = 0; p < n; ++p)
    for (std::uint32_t q = p + 1; q < n; ++q)
      if (mergeable[pair_id(p, q)]) ++reached;

  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop();
    for (std::uint32_t src : preds[id])
      if (!mergeable[src]) {
        mergeable[src] = true;
        ++reached;
        queue.push(src);
      }
  }
  return reached == total_pairs;
}

}  // namespace wsync

#include "wsync/corpus.hpp"

#include <stdexcept>

namespace wsync {

Automaton paper_automaton_A() {
  return Automaton(4, "abc", {1, 1, 6},
                   {{1, 2, 3, 0},
                    {0, 1, 2, 0},
                    {0, 1, 0, 3}});
}

Automaton paper_automaton_B() {
  std::vector<std::uint32_t> a(12), b(12), c(12), d(12);
  for (std::uint32_t i = 0; i < 12; ++i) {
    a[i] = (i + 1) % 12;
    b[i] = i;
    c[i] = i;
    d[i] = i;
  }
  b[11] = 0;
  c[0] = 1;
  d[4] = 3;
  return Automaton(12, "abcd", {1, 6, 2, 7}, {a, b, c, d});
}

Automaton cerny(std::uint32_t n, std::uint32_t weight_a, std::uint32_t weight_b) {
  if (n < 2) throw std::invalid_argument("cerny family needs at least 2 states");
  std::vector<std::uint32_t> a(n), b(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    a[i] = (i + 1) % n;
    b[i] = i;
  }
  b[n - 1] = 0;
  return Automaton(n, "ab", {weight_a, weight_b}, {a, b});
}

Automaton lift_uniform(const Automaton& dfa, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("lift_uniform needs a weight of at least 1");
  std::vector<std::uint32_t> weights(dfa.letter_count(), k);
  std::vector<std::vector<std::uint32_t>> transitions;
  transitions.reserve(dfa.letter_count());
  for (std::uint32_t a = 0; a < dfa.letter_count(); ++a)
    transitions.push_back(dfa.transition_row(a));
  return Automaton(dfa.state_count(), dfa.letters(), std::move(weights), std::move(transitions));
}

Automaton random_automaton(const GeneratorSpec& spec) {
  if (spec.states < 1) throw std::invalid_argument("random_automaton needs at least one state");
  if (spec.letter_count < 1 || spec.letter_count > 26)
    throw std::invalid_argument("random_automaton needs between 1 and 26 letters");
  if (spec.max_weight < 1) throw std::invalid_argument("random_automaton needs max weight >= 1");

  SplitMix64 rng(spec.seed);
  std::string letters;
  for (std::uint32_t i = 0; i < spec.letter_count; ++i)
    letters.push_back(static_cast<char>('a' + i));

  std::vector<std::uint32_t> weights(spec.letter_count);
  for (std::uint32_t i = 0; i < spec.letter_count; ++i)
    weights[i] = 1 + static_cast<std::uint32_t>(rng.bounded(spec.max_weight));

  std::vector<std::vector<std::uint32_t>> transitions(spec.letter_count);
  for (std::uint32_t a = 0; a < spec.letter_count; ++a) {
    transitions[a].resize(spec.states);
    for (std::uint32_t q = 0; q < spec.states; ++q)
      transitions[a][q] = static_cast<std::uint32_t>(rng.bounded(spec.states));
  }
  return Automaton(spec.states, std::move(letters), std::move(weights), std::move(transitions));
}

Automaton generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Random: return random_automaton(spec);
    case Family::Cerny: return cerny(spec.states);
    case Family::PaperA: return paper_automaton_A();
    case Family::PaperB: return paper_automaton_B();
  }
  throw std::invalid_argument("unknown generator family");
}

}  // namespace wsync

#pragma once

#include <cstdint>

#include "wsync/automaton.hpp"

namespace wsync {

/*
 * Deterministic 64-bit generator (splitmix64). Fixed algorithm, so seeds
 * mean the same thing in any reimplementation:
 *
 *   state += 0x9E3779B97F4A7C15
 *   z = state
 *   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *   return z ^ (z >> 31)
 *
 * bounded(b) draws uniformly from [0, b) by rejection: draw x = next()
 * until x >= 2^64 mod b, then return x mod b. No modulo bias, and the
 * accepted sequence is part of the documented contract.
 */
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t bounded(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return x % bound;
  }

private:
  std::uint64_t state_;
};

enum class Family : std::uint8_t { Random, Cerny, PaperA, PaperB };

struct GeneratorSpec {
  Family family = Family::Random;
  std::uint32_t states = 1;
  std::uint32_t letter_count = 1;
  std::uint32_t max_weight = 1;
  std::uint64_t seed = 0;
};

// Four states; letters a (cycle 0->1->2->3->0, weight 1), b (identity
// except 3->0, weight 1), c (identity except 2->0, weight 6).
Automaton paper_automaton_A();

// Twelve states; letters a (cycle i -> i+1 mod 12, weight 1), b (identity
// except 11->0, weight 6), c (identity except 0->1, weight 2), d (identity
// except 4->3, weight 7).
Automaton paper_automaton_B();

// Classic n-state two-letter family: a is the cyclic shift, b is the
// identity except n-1 -> 0. Requires n >= 2.
Automaton cerny(std::uint32_t n, std::uint32_t weight_a = 1, std::uint32_t weight_b = 1);

// Same states, letters, and transitions; every letter weight replaced by k.
// Turns any DFA into a uniformly weighted instance, where minimal weight is
// exactly k times minimal length. Requires k >= 1.
Automaton lift_uniform(const Automaton& dfa, std::uint32_t k);

// Uniform transitions and weights from the seeded generator. Draw order is
// part of the contract: first one weight per letter in declaration order
// (1 + bounded(max_weight)), then targets letter-major, state-minor
// (bounded(states)). Letters are 'a', 'b', ... so letter_count <= 26.
Automaton random_automaton(const GeneratorSpec& spec);

// Dispatch on spec.family; the non-random families ignore the random
// fields except where documented (Cerny uses spec.states).
Automaton generate(const GeneratorSpec& spec);

}  // namespace wsync

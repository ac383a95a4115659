#include "wsync/oracle.hpp"

#include <bit>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace wsync {

namespace {

constexpr std::uint64_t kUnreached = ~0ull;

// Per-letter successor of a subset encoded as a bit mask.
struct MaskStepper {
  // target_bit[letter][state] = 1 << step(state, letter)
  std::vector<std::vector<std::uint64_t>> target_bit;

  explicit MaskStepper(const Automaton& aut) {
    target_bit.resize(aut.letter_count());
    for (std::uint32_t a = 0; a < aut.letter_count(); ++a) {
      target_bit[a].resize(aut.state_count());
      for (std::uint32_t q = 0; q < aut.state_count(); ++q)
        target_bit[a][q] = 1ull << aut.step(q, a);
    }
  }

  std::uint64_t step(std::uint64_t mask, std::uint32_t letter) const {
    std::uint64_t out = 0;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
      out |= target_bit[letter][std::countr_zero(rest)];
    return out;
  }
};

// Cheapest path from source_mask to any singleton mask; cost per letter is
// its weight, or 1 when unit_costs is set. The witness is recovered as the
// lexicographically least optimal word: a backward cost-to-go pass over the
// explored region followed by a greedy smallest-letter walk.
std::optional<OracleResult> cheapest_to_singleton(const Automaton& aut, std::uint64_t source_mask,
                                                  bool unit_costs) {
  const std::uint32_t letters = aut.letter_count();
  MaskStepper stepper(aut);
  auto cost = [&](std::uint32_t a) -> std::uint64_t {
    return unit_costs ? 1 : aut.letter_weight(a);
  };

  if (std::popcount(source_mask) == 1) return OracleResult{Word(), 0, true};

  std::unordered_map<std::uint64_t, std::uint64_t> dist;
  dist.reserve(1u << (aut.state_count() < 20 ? aut.state_count() : 20));
  using Item = std::pair<std::uint64_t, std::uint64_t>;  // (distance, mask)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source_mask] = 0;
  heap.push({0, source_mask});

  std::uint64_t best = kUnreached;
  while (!heap.empty()) {
    auto [d, mask] = heap.top();
    // Everything at distance <= best must be settled before the backward
    // pass, so drain until the frontier is strictly past the optimum.
    if (d > best) break;
    heap.pop();
    auto it = dist.find(mask);
    if (it == dist.end() || it->second != d) continue;
    if (std::popcount(mask) == 1 && d < best) best = d;
    for (std::uint32_t a = 0; a < letters; ++a) {
      std::uint64_t next = stepper.step(mask, a);
      std::uint64_t nd = d + cost(a);
      if (nd > best) continue;
      auto [slot, inserted] = dist.try_emplace(next, nd);
      if (!inserted && slot->second <= nd) continue;
      slot->second = nd;
      heap.push({nd, next});
    }
  }
  if (best == kUnreached) return std::nullopt;

  // Cost-to-go h over the explored region (all nodes with dist <= best,
  // which includes every node of every optimal path). h is exact on those
  // paths, so the greedy walk below never leaves them.
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint32_t>>> radj;
  std::unordered_map<std::uint64_t, std::uint64_t> h;
  radj.reserve(dist.size());
  for (const auto& [mask, d] : dist) {
    if (d > best) continue;
    if (std::popcount(mask) == 1) h[mask] = 0;
    for (std::uint32_t a = 0; a < letters; ++a) {
      std::uint64_t next = stepper.step(mask, a);
      auto it = dist.find(next);
      if (it != dist.end() && it->second <= best) radj[next].push_back({mask, cost(a)});
    }
  }
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> back;
  for (const auto& [mask, value] : h) back.push({value, mask});
  while (!back.empty()) {
    auto [value, mask] = back.top();
    back.pop();
    auto it = h.find(mask);
    if (it == h.end() || it->second != value) continue;
    auto arcs = radj.find(mask);
    if (arcs == radj.end()) continue;
    for (auto [pred, c] : arcs->second) {
      std::uint64_t candidate = value + c;
      auto [slot, inserted] = h.try_emplace(pred, candidate);
      if (!inserted && slot->second <= candidate) continue;
      slot->second = candidate;
      back.push({candidate, pred});
    }
  }

  Word word;
  std::uint64_t mask = source_mask;
  while (std::popcount(mask) != 1) {
    std::uint64_t remaining = h.at(mask);
    for (std::uint32_t a = 0; a < letters; ++a) {
      std::uint64_t next = stepper.step(mask, a);
      auto it = h.find(next);
      if (it != h.end() && cost(a) + it->second == remaining) {
        word.push_back(aut.letter_symbol(a));
        mask = next;
        break;
      }
    }
  }
  return OracleResult{std::move(word), best, true};
}

void check_cap(const Automaton& aut, std::uint32_t cap) {
  std::uint32_t effective = cap < 64 ? cap : 64;
  if (aut.state_count() > effective) throw CapExceededError(aut.state_count(), effective);
}

std::uint64_t full_mask(std::uint32_t n) {
  return n == 64 ? ~0ull : ((1ull << n) - 1);
}

}  // namespace

std::optional<OracleResult> min_weight_sync(const Automaton& aut, std::uint32_t cap) {
  check_cap(aut, cap);
  return cheapest_to_singleton(aut, full_mask(aut.state_count()), false);
}

std::optional<OracleResult> min_length_sync(const Automaton& aut, std::uint32_t cap) {
  check_cap(aut, cap);
  return cheapest_to_singleton(aut, full_mask(aut.state_count()), true);
}

std::optional<OracleResult> exhaustive_merge_weight(const Automaton& aut, const StateSet& set,
                                                    std::uint32_t cap) {
  check_cap(aut, cap);
  if (set.size() < 2)
    throw std::invalid_argument("exhaustive_merge_weight requires a set of at least two states");
  std::uint64_t mask = 0;
  bool in_range = true;
  set.for_each([&](std::uint32_t q) {
    if (q >= aut.state_count()) in_range = false;
    else mask |= 1ull << q;
  });
  if (!in_range) throw std::invalid_argument("state index out of range for this automaton");
  return cheapest_to_singleton(aut, mask, false);
}

}  // namespace wsync

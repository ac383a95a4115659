#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace wsync {

// A subset of automaton states. States 0..63 live in one machine word;
// larger state indices spill into extra words, so any universe size works
// while the common case (n <= 64) stays a single uint64 compare/hash.
//
// There is no erase operation, so the word sequence never ends in a stale
// zero word and equality/hashing on the raw words is canonical.
class StateSet {
public:
  StateSet() = default;

  static StateSet single(std::uint32_t q) {
    StateSet s;
    s.insert(q);
    return s;
  }

  // {0, 1, ..., n-1}
  static StateSet full(std::uint32_t n) {
    StateSet s;
    if (n == 0) return s;
    if (n <= 64) {
      s.low_ = (n == 64) ? ~0ull : ((1ull << n) - 1);
      return s;
    }
    s.low_ = ~0ull;
    std::uint32_t rest = n - 64;
    s.high_.assign((rest + 63) / 64, ~0ull);
    std::uint32_t tail = rest % 64;
    if (tail != 0) s.high_.back() = (1ull << tail) - 1;
    return s;
  }

  void insert(std::uint32_t q) {
    if (q < 64) {
      low_ |= 1ull << q;
      return;
    }
    std::size_t word = (q - 64) / 64;
    if (word >= high_.size()) high_.resize(word + 1, 0);
    high_[word] |= 1ull << ((q - 64) % 64);
  }

  bool contains(std::uint32_t q) const {
    if (q < 64) return (low_ >> q) & 1;
    std::size_t word = (q - 64) / 64;
    if (word >= high_.size()) return false;
    return (high_[word] >> ((q - 64) % 64)) & 1;
  }

  std::uint32_t size() const {
    std::uint32_t total = static_cast<std::uint32_t>(std::popcount(low_));
    for (std::uint64_t w : high_) total += static_cast<std::uint32_t>(std::popcount(w));
    return total;
  }

  bool empty() const {
    if (low_ != 0) return false;
    for (std::uint64_t w : high_)
      if (w != 0) return false;
    return true;
  }

  bool is_singleton() const { return size() == 1; }

  // Smallest member; meaningless on an empty set.
  std::uint32_t min_state() const {
    if (low_ != 0) return static_cast<std::uint32_t>(std::countr_zero(low_));
    for (std::size_t i = 0; i < high_.size(); ++i)
      if (high_[i] != 0)
        return 64 + static_cast<std::uint32_t>(i * 64 + std::countr_zero(high_[i]));
    return 0;
  }

  // Visits members in ascending order.
  template <typename Fn>
  void for_each(Fn fn) const {
    for (std::uint64_t w = low_; w != 0; w &= w - 1)
      fn(static_cast<std::uint32_t>(std::countr_zero(w)));
    for (std::size_t i = 0; i < high_.size(); ++i)
      for (std::uint64_t w = high_[i]; w != 0; w &= w - 1)
        fn(64 + static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
  }

  std::vector<std::uint32_t> states() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    for_each([&](std::uint32_t q) { out.push_back(q); });
    return out;
  }

  bool is_subset_of(const StateSet& other) const {
    if ((low_ & ~other.low_) != 0) return false;
    for (std::size_t i = 0; i < high_.size(); ++i) {
      std::uint64_t cover = i < other.high_.size() ? other.high_[i] : 0;
      if ((high_[i] & ~cover) != 0) return false;
    }
    return true;
  }

  bool operator==(const StateSet& other) const {
    return low_ == other.low_ && high_ == other.high_;
  }

  // Canonical order: lexicographic on the ascending member sequence, e.g.
  // {0,3} < {0,3,5} < {0,4} < {1}. Used wherever determinism requires a
  // total order on subsets.
  bool canonical_less(const StateSet& other) const {
    std::size_t words = 1 + (high_.size() > other.high_.size() ? high_.size() : other.high_.size());
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t a = word(i);
      std::uint64_t b = other.word(i);
      std::uint64_t diff = a ^ b;
      if (diff == 0) continue;
      // j = smallest member of the symmetric difference. Members below j are
      // common, so the sequences share a prefix up to j. The set holding j is
      // lexicographically smaller unless the other set has nothing at or
      // beyond j, in which case the other set is a proper prefix.
      int j = std::countr_zero(diff);
      bool j_in_a = (a >> j) & 1;
      std::uint64_t above = ~((j == 63) ? ~0ull : ((2ull << j) - 1));
      const StateSet& rest = j_in_a ? other : *this;
      bool rest_has_later = ((j_in_a ? b : a) & above) != 0;
      if (!rest_has_later)
        for (std::size_t t = i + 1; t < words && !rest_has_later; ++t)
          rest_has_later = rest.word(t) != 0;
      // Owner of j is smaller when the other side continues past the shared
      // prefix; otherwise the other side is a proper prefix and smaller.
      return j_in_a == rest_has_later;
    }
    return false;  // equal
  }

  // "0,1,5"
  std::string to_string() const {
    std::string out;
    for_each([&](std::uint32_t q) {
      if (!out.empty()) out.push_back(',');
      out += std::to_string(q);
    });
    return out;
  }

  std::uint64_t hash() const {
    std::uint64_t h = mix(low_ ^ 0x9e3779b97f4a7c15ull);
    for (std::uint64_t w : high_) h = mix(h ^ w);
    return h;
  }

private:
  std::uint64_t word(std::size_t i) const {
    if (i == 0) return low_;
    return i - 1 < high_.size() ? high_[i - 1] : 0;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t low_ = 0;
  std::vector<std::uint64_t> high_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const {
    return static_cast<std::size_t>(s.hash());
  }
};

}  // namespace wsync

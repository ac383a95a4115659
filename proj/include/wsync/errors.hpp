#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wsync {

// Failure while reading the automaton file format. line() is 1-based and
// points at the offending input line (or the line where input ended).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Thrown by the exact oracles when the automaton is larger than the
// configured state cap. The oracles refuse instead of silently degrading.
class CapExceededError : public std::runtime_error {
public:
  CapExceededError(std::uint32_t state_count, std::uint32_t cap)
      : std::runtime_error("state count " + std::to_string(state_count) +
                           " exceeds the oracle cap of " + std::to_string(cap) +
                           " states"),
        state_count_(state_count),
        cap_(cap) {}

  std::uint32_t state_count() const { return state_count_; }
  std::uint32_t cap() const { return cap_; }

private:
  std::uint32_t state_count_;
  std::uint32_t cap_;
};

}  // namespace wsync

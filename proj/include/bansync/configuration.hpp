#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bansync {

/// Packed configuration or automaton set: bit i holds automaton i.
using State = std::uint32_t;

/// Networks larger than this are rejected outright.
inline constexpr int kHardMaxSize = 20;

constexpr State automaton_bit(int i) noexcept { return State{1} << i; }

constexpr State full_mask(int n) noexcept {
  return n >= 32 ? ~State{0} : (State{1} << n) - 1;
}

inline int popcount(State s) noexcept { return std::popcount(s); }

/// Ascending automaton indices of a mask.
std::vector<int> mask_indices(State mask);

/// Mask of an index set; throws std::out_of_range for indices outside [0, n).
State indices_mask(std::span<const int> indices, int n);

/// Rank of a state in the lexicographic order of its string form
/// (automaton 0 is the leftmost, most significant character).
constexpr State lex_rank(State s, int n) noexcept {
  State r = 0;
  for (int i = 0; i < n; ++i) {
    r = (r << 1) | ((s >> i) & 1u);
  }
  return r;
}

/// Inverse of lex_rank.
constexpr State lex_state(State rank, int n) noexcept { return lex_rank(rank, n); }

/// Binary string x_0 x_1 ... x_{n-1}.
std::string format_state(State s, int n);

/// Sorts states by their lexicographic string order.
void sort_lexicographic(std::vector<State>& states, int n);

/// A point of B^n. Serialized as x_0 x_1 ... x_{n-1}, index 0 leftmost.
class Configuration {
 public:
  Configuration() = default;
  Configuration(int n, State bits);

  /// Parses a string of '0'/'1'. Throws InputError on anything else.
  static Configuration parse(std::string_view text);

  int size() const noexcept { return n_; }
  State bits() const noexcept { return bits_; }
  bool operator[](int i) const;
  std::string str() const { return format_state(bits_, n_); }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return lex_rank(a.bits_, a.n_) <=> lex_rank(b.bits_, b.n_);
  }

 private:
  int n_ = 0;
  State bits_ = 0;
};

/// x with the automata of w switched.
Configuration flip(const Configuration& x, std::span<const int> w);

struct HammingDiff {
  std::vector<int> diff;
  int dist = 0;
};

/// Differing automata and their count. Throws InputError on length mismatch.
HammingDiff hamming(const Configuration& x, const Configuration& y);

}  // namespace bansync

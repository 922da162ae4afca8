#include "bansync/configuration.hpp"

#include "bansync/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace bansync {

ParseError::ParseError(const std::string& message, int line, int column)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                 message),
      reason_(message),
      line_(line),
      column_(column) {}

SizeCeilingError::SizeCeilingError(const std::string& what, int size, int limit)
    : InputError(what + ": network size " + std::to_string(size) + " exceeds the limit of " +
                 std::to_string(limit)),
      size_(size),
      limit_(limit) {}

std::vector<int> mask_indices(State mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount(mask)));
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

State indices_mask(std::span<const int> indices, int n) {
  State mask = 0;
  for (int i : indices) {
    if (i < 0 || i >= n) {
      throw std::out_of_range("automaton index " + std::to_string(i) + " outside [0, " +
                              std::to_string(n) + ")");
    }
    mask |= automaton_bit(i);
  }
  return mask;
}

std::string format_state(State s, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((s >> i) & 1u) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

void sort_lexicographic(std::vector<State>& states, int n) {
  std::sort(states.begin(), states.end(),
            [n](State a, State b) { return lex_rank(a, n) < lex_rank(b, n); });
}

Configuration::Configuration(int n, State bits) : n_(n), bits_(bits & full_mask(n)) {
  if (n < 0 || n > kHardMaxSize) {
    throw SizeCeilingError("configuration", n, kHardMaxSize);
  }
}

Configuration Configuration::parse(std::string_view text) {
  if (text.empty()) throw InputError("empty configuration string");
  if (text.size() > static_cast<std::size_t>(kHardMaxSize)) {
    throw SizeCeilingError("configuration", static_cast<int>(text.size()), kHardMaxSize);
  }
  State bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= automaton_bit(static_cast<int>(i));
    } else if (text[i] != '0') {
      throw InputError("configuration '" + std::string(text) + "' must contain only 0 and 1");
    }
  }
  return Configuration(static_cast<int>(text.size()), bits);
}

bool Configuration::operator[](int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("automaton index out of range");
  return (bits_ >> i) & 1u;
}

Configuration flip(const Configuration& x, std::span<const int> w) {
  return Configuration(x.size(), x.bits() ^ indices_mask(w, x.size()));
}

HammingDiff hamming(const Configuration& x, const Configuration& y) {
  if (x.size() != y.size()) {
    throw InputError("configurations " + x.str() + " and " + y.str() + " differ in length");
  }
  HammingDiff out;
  out.diff = mask_indices(x.bits() ^ y.bits());
  out.dist = static_cast<int>(out.diff.size());
  return out;
}

}  // namespace bansync

#pragma once

#include "bansync/configuration.hpp"

#include <cstddef>
#include <vector>

namespace bansync {

/// Soft size ceilings. Analyses over the elementary transition graph (and the
/// cycle searches that scan every configuration) use eig_max; analyses that
/// only need the asynchronous graph use sig_max. kHardMaxSize cannot be raised.
struct Limits {
  int eig_max = 10;
  int sig_max = 16;

  void require_eig(int n, const char* what) const;
  void require_sig(int n, const char* what) const;
};

/// A Boolean automata network of size n, stored as its global map
/// F(x) = f_0(x) ... f_{n-1}(x) over all 2^n configurations.
class Network {
 public:
  Network() = default;

  /// One truth table per automaton, each listing f_i over B^n in
  /// lexicographic configuration order (00..0, 00..1, ..., 11..1).
  static Network from_tables(const std::vector<std::vector<bool>>& tables);

  /// image[x] = F(x) for every packed state x.
  static Network from_image(int n, std::vector<State> image);

  int size() const noexcept { return n_; }
  std::size_t state_count() const noexcept { return image_.size(); }

  bool value(int i, State x) const noexcept { return (image_[x] >> i) & 1u; }
  State image(State x) const noexcept { return image_[x]; }
  /// U(x) as a mask.
  State unstable(State x) const noexcept { return image_[x] ^ x; }

  /// Truth table of f_i in lexicographic configuration order.
  std::vector<bool> table(int i) const;
  const std::vector<State>& images() const noexcept { return image_; }

  friend bool operator==(const Network&, const Network&) = default;

 private:
  int n_ = 0;
  std::vector<State> image_;
};

}  // namespace bansync

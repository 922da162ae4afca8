#pragma once

#include "bansync/configuration.hpp"
#include "bansync/network.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace bansync {

/// Sign of an existing arc. Absent arcs have no sign at all.
enum class ArcSign { Positive, Negative, NonMonotone };

/// +1 or -1; throws NonMonotoneNetworkError for NonMonotone.
int sign_value(ArcSign sign);
const char* to_string(ArcSign sign);

/// s: B -> {-1, 1}, b |-> b - !b.
constexpr int switch_sign(bool b) noexcept { return b ? 1 : -1; }

/// An arc (from, to): automaton `from` influences automaton `to`.
struct ArcId {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const ArcId&, const ArcId&) = default;
};

struct Arc {
  int from = 0;
  int to = 0;
  ArcSign sign = ArcSign::Positive;
  ArcId id() const noexcept { return {from, to}; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Interaction digraph with per-arc signs, decided by exhaustive scan of B^n.
/// Arcs are ordered by target, then source.
class SignedStructure {
 public:
  SignedStructure() = default;
  explicit SignedStructure(const Network& net);

  int size() const noexcept { return n_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::optional<ArcSign> sign(int from, int to) const;
  bool has_arc(int from, int to) const { return (in_[static_cast<std::size_t>(to)] >> from) & 1u; }
  bool has_positive_loop(int i) const { return (positive_[static_cast<std::size_t>(i)] >> i) & 1u; }
  bool has_negative_loop(int i) const { return (negative_[static_cast<std::size_t>(i)] >> i) & 1u; }

  /// V_in(i) as a mask and as an ascending list.
  State in_mask(int i) const { return in_[static_cast<std::size_t>(i)]; }
  std::vector<int> in_neighbours(int i) const { return mask_indices(in_mask(i)); }
  State positive_sources(int i) const { return positive_[static_cast<std::size_t>(i)]; }
  State negative_sources(int i) const { return negative_[static_cast<std::size_t>(i)]; }

  bool monotone() const noexcept { return non_monotone_.empty(); }
  const std::vector<ArcId>& non_monotone_arcs() const noexcept { return non_monotone_; }

  /// Sources j with (j, i) frustrated in x. Only meaningful when monotone().
  State frustrated_sources(int i, State x) const noexcept {
    const State pos = positive_[static_cast<std::size_t>(i)];
    const State neg = negative_[static_cast<std::size_t>(i)];
    return ((x >> i) & 1u) ? ((pos & ~x) | (neg & x)) : ((pos & x) | (neg & ~x));
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<State> in_;
  std::vector<State> positive_;
  std::vector<State> negative_;
  std::vector<ArcId> non_monotone_;
};

SignedStructure signed_structure(const Network& net);

struct MonotonyReport {
  bool monotone = true;
  std::vector<ArcId> violations;
};

MonotonyReport is_locally_monotone(const Network& net);

struct InstabilityReport {
  Configuration configuration;
  std::vector<int> unstable;
  std::vector<int> stable;
  int momentum = 0;
};

/// U(x), its complement and u(x). Throws InputError on length mismatch.
InstabilityReport instabilities(const Network& net, const Configuration& x);

struct FrustrationSet {
  Configuration configuration;
  std::vector<ArcId> frustrated;
};

/// FRUS(x): arcs (j, i) with s(x_j) s(x_i) = -sign(j, i).
/// Throws NonMonotoneNetworkError if any arc is non-monotone.
FrustrationSet frustrations(const Network& net, const Configuration& x);
FrustrationSet frustrations(const SignedStructure& structure, const Configuration& x);

/// True if some simple cycle of the structure has an odd number of negative
/// arcs. Requires a monotone structure.
bool has_negative_cycle(const SignedStructure& structure);

}  // namespace bansync

#pragma once

#include "bansync/configuration.hpp"
#include "bansync/graph.hpp"
#include "bansync/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bansync {

enum class TransitionKind { Asynchronous, Synchronous };

/// An elementary transition x -> y: the automata in Δ(x, y) ⊆ U(x) switch at once.
struct Transition {
  Configuration from;
  Configuration to;

  State changed_mask() const noexcept { return from.bits() ^ to.bits(); }
  std::vector<int> changed() const { return mask_indices(changed_mask()); }
  int size() const noexcept { return popcount(changed_mask()); }
  TransitionKind kind() const noexcept {
    return size() == 1 ? TransitionKind::Asynchronous : TransitionKind::Synchronous;
  }
  /// "1100->0000"
  std::string str() const { return from.str() + "->" + to.str(); }

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// True iff ∅ != Δ(from, to) ⊆ U(from).
bool is_elementary(const Network& net, State from, State to) noexcept;

/// Validates and builds a transition. Throws InvalidTransitionError.
Transition make_transition(const Network& net, const Configuration& from, const Configuration& to);

/// Same, additionally requiring size >= 2.
Transition make_synchronous(const Network& net, const Configuration& from, const Configuration& to);

/// Nonempty subsets of `mask` with min_size <= |W| <= max_size, ordered by
/// size, then lexicographically by their ascending index lists.
std::vector<State> ordered_subsets(State mask, int min_size, int max_size);

/// Transitions leaving x of size at most max_size (unlimited when empty), in
/// the order of ordered_subsets over U(x).
std::vector<Transition> outgoing_transitions(const Network& net, const Configuration& x,
                                             std::optional<int> max_size = std::nullopt);

enum class GraphVariant { SIG, EIG, AugmentedSIG };
const char* to_string(GraphVariant variant);

enum class AttractorKind { Stable, Unstable };
const char* to_string(AttractorKind kind);

/// A terminal strongly connected component. States are in lexicographic order.
struct Attractor {
  std::vector<State> states;
  AttractorKind kind = AttractorKind::Stable;
};

/// Explicit transition graph over B^n with its attractor decomposition.
/// Attractors are ordered by their lexicographically smallest configuration.
class TransitionGraph {
 public:
  /// Asynchronous transition graph (size-1 transitions only).
  static TransitionGraph asynchronous(const Network& net, const Limits& limits = {});
  /// Elementary transition graph (all elementary transitions).
  static TransitionGraph elementary(const Network& net, const Limits& limits = {});
  /// Asynchronous graph plus one synchronous transition.
  static TransitionGraph augmented(const Network& net, const Transition& added,
                                   const Limits& limits = {});

  /// This graph plus one synchronous transition. Must be an SIG.
  TransitionGraph augment(const Network& net, const Transition& added) const;

  int size() const noexcept { return n_; }
  GraphVariant variant() const noexcept { return variant_; }
  const std::optional<Transition>& added() const noexcept { return added_; }

  std::size_t state_count() const noexcept { return edges_.node_count(); }
  std::size_t edge_count() const noexcept { return edges_.edge_count(); }
  std::span<const std::uint32_t> successors(State x) const noexcept { return edges_.successors(x); }
  const Digraph& edges() const noexcept { return edges_; }

  const std::vector<Attractor>& attractors() const noexcept { return attractors_; }
  /// Index into attractors(), or -1 for a transient configuration.
  int attractor_index(State x) const noexcept { return attractor_of_[x]; }
  bool recurrent(State x) const noexcept { return attractor_of_[x] >= 0; }
  std::size_t transient_count() const noexcept { return transient_count_; }
  int component(State x) const noexcept { return component_[x]; }

 private:
  TransitionGraph(int n, GraphVariant variant, Digraph edges, std::optional<Transition> added);
  void analyse();

  int n_ = 0;
  GraphVariant variant_ = GraphVariant::SIG;
  std::optional<Transition> added_;
  Digraph edges_;
  std::vector<int> component_;
  std::vector<int> attractor_of_;
  std::vector<Attractor> attractors_;
  std::size_t transient_count_ = 0;
};

/// Builds any variant. `added` is required for AugmentedSIG and ignored otherwise.
TransitionGraph build_graph(const Network& net, GraphVariant variant,
                            const std::optional<Transition>& added = std::nullopt,
                            const Limits& limits = {});

/// Dense membership set over the states of a graph.
using StateSet = std::vector<char>;

/// O(z): states reachable from z, z included.
StateSet forward_closure(const TransitionGraph& graph, State z);

/// Indices of the attractors reachable from z, ascending.
std::vector<int> reachable_attractors(const TransitionGraph& graph, State z);

struct ReachabilitySets {
  State origin = 0;
  std::vector<State> orbit;     ///< O(z), lexicographic
  std::vector<State> backward;  ///< B(z) = {y : y ->* z}, z included, lexicographic
  std::vector<int> reachable;   ///< A(z) as attractor indices
  bool recurrent = false;
  std::optional<int> attractor;  ///< att(z) when recurrent
  /// Basin of att(z): B(z) minus att(z). Excludes the attractor itself.
  std::vector<State> basin;
};

ReachabilitySets reachability(const TransitionGraph& graph, State z);

enum class AttractorFate { Preserved, Grown, Destroyed };
const char* to_string(AttractorFate fate);

/// How the attractors of an asynchronous graph relate to those of the same
/// graph with one added transition. Attractors are identified by configuration sets.
struct AttractorCorrespondence {
  std::vector<AttractorFate> fate;      ///< per base attractor
  std::vector<int> image;               ///< per base attractor: augmented attractor containing it, or -1
  std::vector<std::vector<int>> contains;  ///< per augmented attractor: base attractors inside it
  std::vector<int> from_scratch;        ///< augmented attractors holding no base-recurrent state
  std::vector<State> became_transient;  ///< recurrent in base, transient after
  std::vector<State> became_recurrent;  ///< transient in base, recurrent after
};

AttractorCorrespondence compare_attractors(const TransitionGraph& base, const TransitionGraph& augmented);

/// Builds SIG and SIG + t and reports how attractors carry over. The returned
/// correspondence never has from_scratch entries for a valid t.
AttractorCorrespondence check_attractor_preservation(const Network& net, const Transition& t,
                                                     const Limits& limits = {});

}  // namespace bansync

#pragma once

#include "bansync/dynamics.hpp"
#include "bansync/network.hpp"
#include "bansync/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bansync {

/// A chain of elementary transitions x^0 -> x^1 -> ... -> x^l.
struct Derivation {
  std::vector<Transition> steps;

  bool empty() const noexcept { return steps.empty(); }
  const Configuration& source() const { return steps.front().from; }
  const Configuration& target() const { return steps.back().to; }
  int max_step_size() const;
};

/// True if the steps chain and each one is an elementary transition of net.
bool replays(const Network& net, const Derivation& d);

/// Result of the block construction: Δ(x, y) split into blocks flipped one
/// after another. A single block means the construction cannot split the
/// transition.
struct Decomposition {
  std::vector<std::vector<int>> blocks;
  Derivation derivation;

  bool split() const noexcept { return blocks.size() >= 2; }
};

/// Orders Δ(x, y) by the strongly connected components of
/// H = (Δ(x, y), FRUS(x) ∩ Δ×Δ) so that a frustrated arc (j, i) puts i's
/// block no later than j's, then replays the blocks as a derivation.
/// Throws NonMonotoneNetworkError, InvalidTransitionError, or
/// StepInvalidError if a step fails to be a transition.
Decomposition decompose(const Network& net, const Transition& t);
Decomposition decompose(const Network& net, const SignedStructure& structure, const Transition& t);

/// What "broken into smaller transitions" means for a derivation witness.
enum class Reading {
  StrictlySmaller,  ///< every step smaller than the transition itself
  SmallerThanSize,  ///< every step smaller than n, at least two steps
  WithinSubcube,    ///< strictly smaller steps that only switch automata of Δ(x, y)
};
const char* to_string(Reading reading);

enum class Verdict { Sequentialisable, Normal };
enum class Method { Decomposition, Search, Both };
const char* to_string(Verdict verdict);
const char* to_string(Method method);

struct SequentialisationVerdict {
  Transition transition;
  Verdict verdict = Verdict::Normal;
  std::optional<Derivation> witness;
  /// The endpoints are connected by asynchronous transitions alone.
  bool totally = false;
  Method method = Method::Search;
};

/// Breadth-first search over elementary transitions allowed by `reading`.
/// The witness is a shortest derivation; when an asynchronous one exists it is
/// returned instead and `totally` is set. Valid for non-monotone networks.
SequentialisationVerdict is_sequentialisable(const Network& net, const Transition& t,
                                             Reading reading = Reading::StrictlySmaller,
                                             const Limits& limits = {});

/// Every normal transition, ordered by source (lexicographic), size, then
/// the changed automata.
std::vector<SequentialisationVerdict> normal_transitions(const Network& net,
                                                         Reading reading = Reading::StrictlySmaller,
                                                         const Limits& limits = {});

/// Memoized bounded-step reachability for many queries on one network.
/// reaches(x, y, k): y is reachable from x with transitions of size <= k.
class ReachOracle {
 public:
  explicit ReachOracle(const Network& net);

  bool reaches(State x, State y, int max_step);
  /// A shortest such derivation with at least two steps, if any.
  std::optional<Derivation> witness(State x, State y, int max_step) const;

 private:
  const Network* net_;
  std::vector<std::vector<char>> cache_;  // indexed x * (n + 1) + k
};

/// One asserted item of a lemma or proposition check.
struct LemmaCheck {
  std::string name;
  bool holds = true;
  std::string detail;
};

struct LemmaReport {
  bool applicable = true;
  std::vector<LemmaCheck> checks;

  bool holds() const;
};

/// Checks for networks whose critical cycles all pass through every
/// automaton: at most the normal transitions x => y and y => x exist; with a
/// single one, every automaton stable in y has a positive loop; targets of
/// normal transitions have no asynchronous predecessor. Includes the
/// full-size checks of check_lemma_full_size when they apply.
/// Throws PreconditionError if some critical cycle is shorter than n.
LemmaReport check_lemma_hamiltonian(const Network& net, const Limits& limits = {});

/// Checks for networks without normal transitions smaller than n: each
/// normal x => y has no impact or F-impact, and in the F case y is stable,
/// has no asynchronous predecessor, and every automaton carries a positive
/// loop. Not applicable (no checks) when a smaller normal transition exists.
LemmaReport check_lemma_full_size(const Network& net, const Limits& limits = {});

}  // namespace bansync

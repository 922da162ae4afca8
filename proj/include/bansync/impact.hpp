#pragma once

#include "bansync/dynamics.hpp"
#include "bansync/network.hpp"
#include "bansync/sequential.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bansync {

enum class ImpactLabel { NoImpact, F, G, D, Extended };
const char* to_string(ImpactLabel label);
inline constexpr std::size_t kImpactLabelCount = 5;

/// What the label of x => y depends on, all read off the asynchronous graph.
/// Attractors are SIG attractor indices.
struct ImpactFacts {
  bool x_recurrent = false;
  bool y_recurrent = false;
  std::vector<int> Aa_x;
  std::vector<int> Aa_y;
  int att_x = -1;
  int att_y = -1;
};

struct LabelResult {
  ImpactLabel label = ImpactLabel::NoImpact;
  std::string detail;
};

/// The four impact cases, plus NoImpact for a transition inside one
/// attractor and Extended for whatever matches no case.
LabelResult impact_label(const ImpactFacts& facts);

struct ImpactReport {
  Transition transition;
  ImpactFacts facts;
  ImpactLabel label = ImpactLabel::NoImpact;
  std::string detail;
  /// Attractors of the asynchronous graph; facts and evidence index into it.
  std::vector<Attractor> sig_attractors;
  /// Attractors of the asynchronous graph plus the transition.
  std::vector<Attractor> augmented_attractors;
  AttractorCorrespondence evidence;
  std::vector<int> destroyed;
  std::vector<int> grown;
};

/// Shares one asynchronous graph and its reachable-attractor sets across
/// many transitions of the same network.
class ImpactAnalyzer {
 public:
  explicit ImpactAnalyzer(const Network& net, const Limits& limits = {});

  const Network& network() const noexcept { return *net_; }
  const TransitionGraph& sig() const noexcept { return sig_; }
  /// A_a(z), ascending.
  const std::vector<int>& reachable(State z) const;

  /// Label only, without building the augmented graph.
  ImpactFacts facts(const Transition& t) const;
  ImpactReport classify(const Transition& t) const;

 private:
  const Network* net_;
  TransitionGraph sig_;
  std::vector<std::vector<int>> reach_by_component_;
};

/// Throws InvalidTransitionError, SizeCeilingError.
ImpactReport classify_impact(const Network& net, const Transition& t, const Limits& limits = {});

enum class Sensitivity { F, G, D, M };
const char* to_string(Sensitivity s);

/// Two D-impact normal transitions x => y and y' => x' with
/// att_a(x) = att_a(x') and att_a(y) = att_a(y'), listed once per pair.
struct MergePair {
  Transition first;
  Transition second;
};

struct SensitivityWitness {
  Sensitivity sensitivity;
  Transition transition;
};

struct SensitivityReport {
  int n = 0;
  std::vector<ImpactReport> impacts;  ///< one per normal transition, in normal_transitions order
  std::array<std::size_t, kImpactLabelCount> per_label{};
  std::vector<Sensitivity> sensitivities;  ///< ascending F, G, D, M
  bool very_sensitive = false;
  std::vector<MergePair> merge_pairs;
  std::vector<SensitivityWitness> witnesses;  ///< first transition per sensitivity

  std::size_t normal_count() const noexcept { return impacts.size(); }
  bool has(Sensitivity s) const;
  std::size_t count(ImpactLabel label) const { return per_label[static_cast<std::size_t>(label)]; }
};

SensitivityReport classify_sensitivity(const Network& net, Reading reading = Reading::StrictlySmaller,
                                       const Limits& limits = {});

/// Same, from an existing analyzer and normal-transition list.
SensitivityReport classify_sensitivity(const ImpactAnalyzer& analyzer,
                                       const std::vector<SequentialisationVerdict>& normals);

/// Structural requirements of sensitivity: (1) any sensitivity needs a
/// critical cycle; (2) G, D or M need a critical cycle shorter than n and a
/// negative structural cycle; (3) F needs a critical cycle shorter than n
/// unless there is a Hamiltonian critical cycle and every automaton has a
/// positive loop; (4) an unstable asynchronous attractor needs a negative
/// cycle. Throws NonMonotoneNetworkError.
LemmaReport check_structural_prerequisites(const Network& net, const SensitivityReport& report,
                                           const Limits& limits = {});

}  // namespace bansync

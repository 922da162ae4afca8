#include "bansync/cycles.hpp"
#include "bansync/errors.hpp"
#include "bansync/impact.hpp"
#include "bansync/sequential.hpp"
#include "bansync/structure.hpp"

#include <algorithm>

namespace bansync {

namespace {

bool has_async_predecessor(const Network& net, State x) {
  for (int i = 0; i < net.size(); ++i) {
    const State z = x ^ automaton_bit(i);
    if (net.unstable(z) & automaton_bit(i)) return true;
  }
  return false;
}

std::string list_transitions(const std::vector<SequentialisationVerdict>& normals) {
  std::string s;
  for (const auto& v : normals) {
    if (!s.empty()) s += ", ";
    s += v.transition.str();
  }
  return s;
}

void append_full_size_checks(const Network& net, const SignedStructure& s,
                             const std::vector<SequentialisationVerdict>& normals, const Limits& limits,
                             LemmaReport& out) {
  const ImpactAnalyzer analyzer(net, limits);
  bool all_loops = true;
  for (int i = 0; i < net.size(); ++i) all_loops = all_loops && s.has_positive_loop(i);
  LemmaCheck impact{"full-size-impact-none-or-f", true, ""};
  LemmaCheck stable{"full-size-f-target-stable", true, ""};
  LemmaCheck basin{"full-size-f-target-empty-basin", true, ""};
  LemmaCheck loops{"full-size-f-positive-loops", true, ""};
  for (const auto& v : normals) {
    const ImpactLabel label = impact_label(analyzer.facts(v.transition)).label;
    if (label != ImpactLabel::NoImpact && label != ImpactLabel::F) {
      impact.holds = false;
      impact.detail = v.transition.str() + " has impact " + to_string(label);
    }
    if (label != ImpactLabel::F) continue;
    const State y = v.transition.to.bits();
    if (net.unstable(y) != 0) {
      stable.holds = false;
      stable.detail = v.transition.str();
    }
    if (has_async_predecessor(net, y)) {
      basin.holds = false;
      basin.detail = v.transition.str();
    }
    if (!all_loops) {
      loops.holds = false;
      loops.detail = v.transition.str();
    }
  }
  out.checks.push_back(impact);
  out.checks.push_back(stable);
  out.checks.push_back(basin);
  out.checks.push_back(loops);
}

}  // namespace

LemmaReport check_lemma_full_size(const Network& net, const Limits& limits) {
  const SignedStructure s(net);
  const auto normals = normal_transitions(net, Reading::StrictlySmaller, limits);
  LemmaReport out;
  for (const auto& v : normals) {
    if (v.transition.size() < net.size()) {
      out.applicable = false;
      return out;
    }
  }
  append_full_size_checks(net, s, normals, limits, out);
  return out;
}

LemmaReport check_lemma_hamiltonian(const Network& net, const Limits& limits) {
  const SignedStructure s(net);
  if (!s.monotone()) throw NonMonotoneNetworkError("the Hamiltonian case needs a monotone network");
  const int n = net.size();
  if (const auto shortest = min_critical_size(net, limits); shortest && *shortest < n) {
    throw PreconditionError("critical cycle of length " + std::to_string(*shortest) + " < " +
                            std::to_string(n));
  }
  const auto normals = normal_transitions(net, Reading::StrictlySmaller, limits);
  LemmaReport out;

  bool shape = normals.size() <= 1;
  if (normals.size() == 2) {
    const Transition& a = normals[0].transition;
    const Transition& b = normals[1].transition;
    shape = a.from == b.to && a.to == b.from;
  }
  out.checks.push_back({"normal-set-shape", shape, list_transitions(normals)});

  LemmaCheck loops{"unique-case-positive-loops", true, ""};
  if (normals.size() == 1) {
    const State y = normals[0].transition.to.bits();
    const State stable = full_mask(n) & ~net.unstable(y);
    for (int i : mask_indices(stable)) {
      if (!s.has_positive_loop(i)) {
        loops.holds = false;
        loops.detail = "automaton " + std::to_string(i) + " lacks a positive loop";
      }
    }
  }
  out.checks.push_back(loops);

  LemmaCheck targets{"targets-unreachable-async", true, ""};
  LemmaCheck sources{"sources-unreachable-async", true, ""};
  for (const auto& v : normals) {
    if (has_async_predecessor(net, v.transition.to.bits())) {
      targets.holds = false;
      targets.detail = v.transition.to.str();
    }
    if (has_async_predecessor(net, v.transition.from.bits())) {
      sources.holds = false;
      sources.detail = v.transition.from.str();
    }
  }
  out.checks.push_back(targets);
  out.checks.push_back(sources);

  // Every normal transition here has size n, so the full-size checks apply.
  append_full_size_checks(net, s, normals, limits, out);
  return out;
}

}  // namespace bansync

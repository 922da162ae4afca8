#include "bansync/impact.hpp"

#include "bansync/cycles.hpp"
#include "bansync/errors.hpp"
#include "bansync/structure.hpp"

#include <algorithm>

namespace bansync {

const char* to_string(ImpactLabel label) {
  switch (label) {
    case ImpactLabel::NoImpact:
      return "none";
    case ImpactLabel::F:
      return "F";
    case ImpactLabel::G:
      return "G";
    case ImpactLabel::D:
      return "D";
    case ImpactLabel::Extended:
      return "extended";
  }
  return "?";
}

const char* to_string(Sensitivity s) {
  switch (s) {
    case Sensitivity::F:
      return "F";
    case Sensitivity::G:
      return "G";
    case Sensitivity::D:
      return "D";
    case Sensitivity::M:
      return "M";
  }
  return "?";
}

LabelResult impact_label(const ImpactFacts& f) {
  if (!f.x_recurrent) {
    if (std::includes(f.Aa_x.begin(), f.Aa_x.end(), f.Aa_y.begin(), f.Aa_y.end())) {
      return {ImpactLabel::NoImpact, ""};
    }
    return {ImpactLabel::F, ""};
  }
  if (f.y_recurrent) {
    if (f.att_y == f.att_x) return {ImpactLabel::NoImpact, "both endpoints in the same attractor"};
    return {ImpactLabel::D, ""};
  }
  if (f.Aa_y.size() == 1 && f.Aa_y.front() == f.att_x) return {ImpactLabel::G, ""};
  return {ImpactLabel::Extended, "x recurrent, y transient, A_a(y) != {att_a(x)}"};
}

ImpactAnalyzer::ImpactAnalyzer(const Network& net, const Limits& limits)
    : net_(&net), sig_(TransitionGraph::asynchronous(net, limits)) {
  int components = 0;
  for (State x = 0; x < sig_.state_count(); ++x) components = std::max(components, sig_.component(x) + 1);
  std::vector<std::vector<State>> members(static_cast<std::size_t>(components));
  for (State x = 0; x < sig_.state_count(); ++x) members[static_cast<std::size_t>(sig_.component(x))].push_back(x);
  // Components are numbered sinks first, so successors are always done.
  reach_by_component_.assign(static_cast<std::size_t>(components), {});
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& out = reach_by_component_[c];
    const State probe = members[c].front();
    if (sig_.recurrent(probe)) {
      out.push_back(sig_.attractor_index(probe));
      continue;
    }
    for (State x : members[c]) {
      for (auto v : sig_.successors(x)) {
        const auto d = static_cast<std::size_t>(sig_.component(v));
        if (d == c) continue;
        std::vector<int> merged;
        std::set_union(out.begin(), out.end(), reach_by_component_[d].begin(), reach_by_component_[d].end(),
                       std::back_inserter(merged));
        out.swap(merged);
      }
    }
  }
}

const std::vector<int>& ImpactAnalyzer::reachable(State z) const {
  return reach_by_component_[static_cast<std::size_t>(sig_.component(z))];
}

ImpactFacts ImpactAnalyzer::facts(const Transition& t) const {
  const State x = t.from.bits();
  const State y = t.to.bits();
  ImpactFacts f;
  f.x_recurrent = sig_.recurrent(x);
  f.y_recurrent = sig_.recurrent(y);
  f.Aa_x = reachable(x);
  f.Aa_y = reachable(y);
  f.att_x = sig_.attractor_index(x);
  f.att_y = sig_.attractor_index(y);
  return f;
}

ImpactReport ImpactAnalyzer::classify(const Transition& t) const {
  make_synchronous(*net_, t.from, t.to);
  ImpactReport r;
  r.transition = t;
  r.facts = facts(t);
  const LabelResult l = impact_label(r.facts);
  r.label = l.label;
  r.detail = l.detail;
  const TransitionGraph aug = sig_.augment(*net_, t);
  r.sig_attractors = sig_.attractors();
  r.augmented_attractors = aug.attractors();
  r.evidence = compare_attractors(sig_, aug);
  for (std::size_t a = 0; a < r.evidence.fate.size(); ++a) {
    if (r.evidence.fate[a] == AttractorFate::Destroyed) r.destroyed.push_back(static_cast<int>(a));
    if (r.evidence.fate[a] == AttractorFate::Grown) r.grown.push_back(static_cast<int>(a));
  }
  return r;
}

ImpactReport classify_impact(const Network& net, const Transition& t, const Limits& limits) {
  make_synchronous(net, t.from, t.to);
  return ImpactAnalyzer(net, limits).classify(t);
}

bool SensitivityReport::has(Sensitivity s) const {
  return std::find(sensitivities.begin(), sensitivities.end(), s) != sensitivities.end();
}

SensitivityReport classify_sensitivity(const ImpactAnalyzer& analyzer,
                                       const std::vector<SequentialisationVerdict>& normals) {
  SensitivityReport r;
  r.n = analyzer.network().size();
  for (const auto& v : normals) {
    r.impacts.push_back(analyzer.classify(v.transition));
    ++r.per_label[static_cast<std::size_t>(r.impacts.back().label)];
  }

  std::array<std::optional<Transition>, 4> first;
  auto note = [&first](Sensitivity s, const Transition& t) {
    auto& slot = first[static_cast<std::size_t>(s)];
    if (!slot) slot = t;
  };
  for (std::size_t k = 0; k < r.impacts.size(); ++k) {
    const ImpactReport& a = r.impacts[k];
    if (a.label == ImpactLabel::F) note(Sensitivity::F, a.transition);
    if (a.label == ImpactLabel::G) note(Sensitivity::G, a.transition);
    if (a.label != ImpactLabel::D) continue;
    bool counterpart = false;
    for (std::size_t m = 0; m < r.impacts.size(); ++m) {
      const ImpactReport& b = r.impacts[m];
      if (b.label != ImpactLabel::D) continue;
      if (b.facts.att_x != a.facts.att_y || b.facts.att_y != a.facts.att_x) continue;
      counterpart = true;
      if (k < m) r.merge_pairs.push_back({a.transition, b.transition});
    }
    note(counterpart ? Sensitivity::M : Sensitivity::D, a.transition);
  }
  for (std::size_t s = 0; s < first.size(); ++s) {
    if (!first[s]) continue;
    r.sensitivities.push_back(static_cast<Sensitivity>(s));
    r.witnesses.push_back({static_cast<Sensitivity>(s), *first[s]});
  }
  r.very_sensitive = r.has(Sensitivity::D) || r.has(Sensitivity::M);
  return r;
}

SensitivityReport classify_sensitivity(const Network& net, Reading reading, const Limits& limits) {
  const auto normals = normal_transitions(net, reading, limits);
  return classify_sensitivity(ImpactAnalyzer(net, limits), normals);
}

LemmaReport check_structural_prerequisites(const Network& net, const SensitivityReport& report,
                                           const Limits& limits) {
  const SignedStructure s(net);
  if (!s.monotone()) throw NonMonotoneNetworkError("structural prerequisites need a monotone network");
  const int n = net.size();
  const auto shortest = min_critical_size(net, limits);
  const bool short_cycle = shortest && *shortest < n;
  const bool negative = has_negative_cycle(s);

  LemmaReport out;
  const bool any = !report.sensitivities.empty();
  out.checks.push_back({"sensitive-needs-critical-cycle", !any || shortest.has_value(),
                        any ? "sensitive network" : "insensitive"});

  const bool strong = report.has(Sensitivity::G) || report.has(Sensitivity::D) || report.has(Sensitivity::M);
  std::string detail;
  if (strong) {
    detail = std::string("shortest critical cycle ") + (shortest ? std::to_string(*shortest) : "none") +
             ", negative cycle " + (negative ? "present" : "absent");
  }
  out.checks.push_back({"gdm-needs-short-critical-and-negative-cycle", !strong || (short_cycle && negative),
                        detail});

  bool f_ok = true;
  if (report.has(Sensitivity::F) && !short_cycle) {
    bool loops = true;
    for (int i = 0; i < n; ++i) loops = loops && s.has_positive_loop(i);
    f_ok = loops && has_hamiltonian_critical_cycle(net, limits);
  }
  out.checks.push_back({"f-needs-short-critical-cycle", f_ok, ""});

  const TransitionGraph sig = TransitionGraph::asynchronous(net, limits);
  const bool unstable = std::any_of(sig.attractors().begin(), sig.attractors().end(),
                                    [](const Attractor& a) { return a.kind == AttractorKind::Unstable; });
  out.checks.push_back({"unstable-attractor-needs-negative-cycle", !unstable || negative, ""});
  return out;
}

}  // namespace bansync

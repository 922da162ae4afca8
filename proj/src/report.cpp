#include "bansync/report.hpp"

#include "bansync/expression.hpp"

#include <sstream>

namespace bansync {

namespace {

std::string cfg(State x, int n) { return format_state(x, n); }

Json configs(const std::vector<State>& states, int n) {
  Json out = Json::array();
  for (State x : states) out.push_back(cfg(x, n));
  return out;
}

Json attractor_sets(const std::vector<int>& indices, const std::vector<Attractor>& attractors, int n) {
  Json out = Json::array();
  for (int a : indices) out.push_back(configs(attractors[static_cast<std::size_t>(a)].states, n));
  return out;
}

Json transition_json(const Transition& t) { return {{"from", t.from.str()}, {"to", t.to.str()}}; }

std::string set_text(const std::vector<State>& states, int n) {
  std::string s = "{";
  for (std::size_t k = 0; k < states.size(); ++k) s += (k ? "," : "") + cfg(states[k], n);
  return s + "}";
}

std::string attractor_sets_text(const std::vector<int>& indices, const std::vector<Attractor>& attractors, int n) {
  std::string s = "{";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    s += (k ? ", " : "") + set_text(attractors[static_cast<std::size_t>(indices[k])].states, n);
  }
  return s + "}";
}

}  // namespace

Json analysis_json(const Network& net) {
  const int n = net.size();
  const SignedStructure s(net);
  Json j;
  j["n"] = n;
  j["functions"] = Json::array();
  for (int i = 0; i < n; ++i) j["functions"].push_back(format_function(net, i));
  j["arcs"] = Json::array();
  for (const Arc& a : s.arcs()) j["arcs"].push_back({{"from", a.from}, {"to", a.to}, {"sign", to_string(a.sign)}});
  j["monotone"] = s.monotone();
  j["non_monotone"] = Json::array();
  for (const ArcId& a : s.non_monotone_arcs()) j["non_monotone"].push_back({a.from, a.to});
  j["instabilities"] = Json::array();
  for (State r = 0; r < net.state_count(); ++r) {
    const State x = lex_state(r, n);
    j["instabilities"].push_back(
        {{"config", cfg(x, n)}, {"unstable", mask_indices(net.unstable(x))}, {"momentum", popcount(net.unstable(x))}});
  }
  return j;
}

std::string analysis_text(const Network& net) {
  const Json j = analysis_json(net);
  std::ostringstream out;
  out << "n = " << j["n"].get<int>() << "\n";
  for (std::size_t i = 0; i < j["functions"].size(); ++i) {
    out << "f" << i << " = " << j["functions"][i].get<std::string>() << "\n";
  }
  out << "arcs (" << j["arcs"].size() << "):\n";
  for (const auto& a : j["arcs"]) {
    out << "  " << a["from"].get<int>() << " -> " << a["to"].get<int>() << "  " << a["sign"].get<std::string>()
        << "\n";
  }
  out << "locally monotone: " << (j["monotone"].get<bool>() ? "yes" : "no") << "\n";
  out << "config  U(x)  u(x)\n";
  for (const auto& row : j["instabilities"]) {
    std::string u = "{";
    for (std::size_t k = 0; k < row["unstable"].size(); ++k) {
      u += (k ? "," : "") + std::to_string(row["unstable"][k].get<int>());
    }
    out << row["config"].get<std::string>() << "  " << u << "}  " << row["momentum"].get<int>() << "\n";
  }
  return out.str();
}

Json graph_json(const TransitionGraph& g) {
  Json j;
  j["n"] = g.size();
  j["variant"] = to_string(g.variant());
  if (g.added()) j["added"] = transition_json(*g.added());
  j["attractors"] = Json::array();
  for (const Attractor& a : g.attractors()) {
    j["attractors"].push_back({{"configs", configs(a.states, g.size())}, {"kind", to_string(a.kind)}});
  }
  j["transient_count"] = g.transient_count();
  j["edges_count"] = g.edge_count();
  return j;
}

std::string graph_text(const TransitionGraph& g) {
  std::ostringstream out;
  out << to_string(g.variant()) << " over " << g.state_count() << " configurations, " << g.edge_count()
      << " edges\n";
  out << g.attractors().size() << " attractors, " << g.transient_count() << " transient configurations\n";
  for (const Attractor& a : g.attractors()) {
    out << "  " << to_string(a.kind) << " (" << a.states.size() << "): " << set_text(a.states, g.size()) << "\n";
  }
  return out.str();
}

Json cycle_json(const CriticalCycle& c) {
  Json arcs = Json::array();
  for (const ArcId& a : c.arcs) arcs.push_back({a.from, a.to});
  return {{"nodes", c.nodes}, {"arcs", arcs}, {"length", c.length}, {"sign", c.sign}, {"witness", c.witness.str()}};
}

std::string cycles_text(const std::vector<CriticalCycle>& cycles) {
  std::ostringstream out;
  out << cycles.size() << " critical cycles\n";
  for (const auto& c : cycles) {
    out << "  ";
    for (int v : c.nodes) out << v << " -> ";
    out << c.nodes.front() << "  length " << c.length << "  sign " << (c.sign > 0 ? "+1" : "-1") << "  at "
        << c.witness.str() << "\n";
  }
  return out.str();
}

Json verdict_json(const SequentialisationVerdict& v) {
  Json j{{"from", v.transition.from.str()},
         {"to", v.transition.to.str()},
         {"size", v.transition.size()},
         {"verdict", to_string(v.verdict)},
         {"totally", v.totally}};
  if (v.witness) {
    j["witness"] = Json::array();
    for (const Transition& s : v.witness->steps) j["witness"].push_back(transition_json(s));
  }
  return j;
}

std::string verdicts_text(const std::vector<SequentialisationVerdict>& verdicts) {
  std::ostringstream out;
  out << verdicts.size() << " normal transitions\n";
  for (const auto& v : verdicts) {
    out << "  " << v.transition.from.str() << " => " << v.transition.to.str() << "  size " << v.transition.size();
    if (v.verdict != Verdict::Normal) out << "  " << to_string(v.verdict) << (v.totally ? " (totally)" : "");
    out << "\n";
  }
  return out.str();
}

Json impact_json(const ImpactReport& r) {
  const int n = r.transition.from.size();
  Json j{{"from", r.transition.from.str()}, {"to", r.transition.to.str()}, {"label", to_string(r.label)}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["x_recurrent"] = r.facts.x_recurrent;
  j["y_recurrent"] = r.facts.y_recurrent;
  j["Aa_x"] = attractor_sets(r.facts.Aa_x, r.sig_attractors, n);
  j["Aa_y"] = attractor_sets(r.facts.Aa_y, r.sig_attractors, n);
  j["destroyed"] = attractor_sets(r.destroyed, r.sig_attractors, n);
  j["grown"] = attractor_sets(r.grown, r.sig_attractors, n);
  j["became_transient"] = configs(r.evidence.became_transient, n);
  j["became_recurrent"] = configs(r.evidence.became_recurrent, n);
  return j;
}

std::string impact_text(const ImpactReport& r) {
  const int n = r.transition.from.size();
  std::ostringstream out;
  out << r.transition.from.str() << " => " << r.transition.to.str() << ": impact " << to_string(r.label);
  if (!r.detail.empty()) out << " (" << r.detail << ")";
  out << "\n";
  out << "  x " << (r.facts.x_recurrent ? "recurrent" : "transient") << ", y "
      << (r.facts.y_recurrent ? "recurrent" : "transient") << "\n";
  out << "  A_a(x) = " << attractor_sets_text(r.facts.Aa_x, r.sig_attractors, n) << "\n";
  out << "  A_a(y) = " << attractor_sets_text(r.facts.Aa_y, r.sig_attractors, n) << "\n";
  out << "  destroyed " << attractor_sets_text(r.destroyed, r.sig_attractors, n) << ", grown "
      << attractor_sets_text(r.grown, r.sig_attractors, n) << "\n";
  return out.str();
}

Json sensitivity_json(const SensitivityReport& r) {
  Json j;
  j["sensitivities"] = Json::array();
  for (Sensitivity s : r.sensitivities) j["sensitivities"].push_back(to_string(s));
  j["very_sensitive"] = r.very_sensitive;
  j["normal_count"] = r.normal_count();
  Json labels = Json::object();
  for (std::size_t l = 0; l < kImpactLabelCount; ++l) labels[to_string(static_cast<ImpactLabel>(l))] = r.per_label[l];
  j["per_label"] = labels;
  j["merge_pairs"] = Json::array();
  for (const MergePair& p : r.merge_pairs) {
    j["merge_pairs"].push_back({{"first", transition_json(p.first)}, {"second", transition_json(p.second)}});
  }
  Json witnesses = Json::object();
  for (const auto& w : r.witnesses) witnesses[to_string(w.sensitivity)] = transition_json(w.transition);
  j["witnesses"] = witnesses;
  j["impacts"] = Json::array();
  for (const ImpactReport& i : r.impacts) j["impacts"].push_back(impact_json(i));
  return j;
}

std::string sensitivity_text(const SensitivityReport& r) {
  std::ostringstream out;
  out << "sensitivities: {";
  for (std::size_t k = 0; k < r.sensitivities.size(); ++k) out << (k ? "," : "") << to_string(r.sensitivities[k]);
  out << "}" << (r.very_sensitive ? "  very sensitive" : "") << "\n";
  out << "normal transitions: " << r.normal_count() << "\n";
  for (std::size_t l = 0; l < kImpactLabelCount; ++l) {
    out << "  " << to_string(static_cast<ImpactLabel>(l)) << ": " << r.per_label[l] << "\n";
  }
  for (const MergePair& p : r.merge_pairs) {
    out << "merge pair: " << p.first.from.str() << " => " << p.first.to.str() << " and " << p.second.from.str()
        << " => " << p.second.to.str() << "\n";
  }
  for (const ImpactReport& i : r.impacts) {
    out << "  " << i.transition.from.str() << " => " << i.transition.to.str() << "  " << to_string(i.label) << "\n";
  }
  return out.str();
}

Json ledger_json(const VerificationLedger& ledger) {
  Json j;
  j["domain"] = ledger.domain;
  j["networks"] = ledger.networks;
  if (ledger.seed) j["seed"] = *ledger.seed;
  j["refuted"] = ledger.refuted();
  j["claims"] = Json::array();
  auto witness_list = [](const std::vector<Witness>& ws) {
    Json out = Json::array();
    for (const Witness& w : ws) {
      Json e{{"index", w.index}};
      if (w.network.size() > 0) e["network"] = format_network(w.network);
      if (!w.trace.empty()) e["trace"] = w.trace;
      out.push_back(e);
    }
    return out;
  };
  for (const ClaimRecord& c : ledger.claims) {
    Json counts = Json::object();
    for (const auto& [k, v] : c.counts) counts[k] = v;
    j["claims"].push_back({{"id", c.id},
                           {"statement", c.statement},
                           {"domain", c.domain},
                           {"advisory", c.advisory},
                           {"verdict", to_string(c.verdict)},
                           {"networks", c.networks},
                           {"instances", c.instances},
                           {"violating_networks", c.violating_networks},
                           {"counts", counts},
                           {"witnesses", witness_list(c.witnesses)},
                           {"examples", witness_list(c.examples)}});
  }
  return j;
}

std::string ledger_text(const VerificationLedger& ledger) {
  std::ostringstream out;
  out << ledger.domain << ": " << ledger.networks << " networks";
  if (ledger.seed) out << ", seed " << *ledger.seed;
  out << "\n";
  for (const ClaimRecord& c : ledger.claims) {
    out << "  " << to_string(c.verdict) << (c.advisory ? " (advisory)" : "") << "  " << c.id << "  networks "
        << c.networks << ", instances " << c.instances << ", violating " << c.violating_networks << "\n";
    for (const auto& [k, v] : c.counts) out << "      " << k << ": " << v << "\n";
    for (const Witness& w : c.witnesses) out << "      witness #" << w.index << ": " << w.trace << "\n";
  }
  return out.str();
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string graph_dot(const TransitionGraph& g) {
  const int n = g.size();
  std::ostringstream out;
  out << "digraph " << quoted(to_string(g.variant())) << " {\n  node [shape=box, fontname=monospace];\n";
  for (std::size_t a = 0; a < g.attractors().size(); ++a) {
    const Attractor& att = g.attractors()[a];
    out << "  subgraph cluster_" << a << " {\n    label=" << quoted(to_string(att.kind))
        << ";\n    style=filled; color=lightgrey;\n";
    for (State x : att.states) out << "    " << quoted(cfg(x, n)) << ";\n";
    out << "  }\n";
  }
  for (State r = 0; r < g.state_count(); ++r) {
    const State x = lex_state(r, n);
    if (!g.recurrent(x)) out << "  " << quoted(cfg(x, n)) << ";\n";
  }
  for (State r = 0; r < g.state_count(); ++r) {
    const State x = lex_state(r, n);
    for (auto v : g.successors(x)) {
      out << "  " << quoted(cfg(x, n)) << " -> " << quoted(cfg(v, n));
      const bool added = g.added() && g.added()->from.bits() == x && g.added()->to.bits() == v;
      if (added) {
        out << " [style=bold, penwidth=3, color=\"black:invis:black\"]";
      } else if (popcount(x ^ v) > 1) {
        out << " [style=dashed]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string structure_dot(const Network& net, std::optional<State> at) {
  const SignedStructure s(net);
  std::ostringstream out;
  out << "digraph structure {\n  node [shape=circle];\n";
  const State unstable = at ? net.unstable(*at) : 0;
  for (int i = 0; i < net.size(); ++i) {
    out << "  " << i;
    if (unstable & automaton_bit(i)) out << " [style=filled, fillcolor=lightblue]";
    out << ";\n";
  }
  for (const Arc& a : s.arcs()) {
    const char* label = a.sign == ArcSign::Positive ? "+" : a.sign == ArcSign::Negative ? "-" : "+/-";
    out << "  " << a.from << " -> " << a.to << " [label=" << quoted(label);
    if (at && s.monotone() && (s.frustrated_sources(a.to, *at) & automaton_bit(a.from))) {
      out << ", color=red, penwidth=2";
    }
    out << "];\n";
  }
  if (at) out << "  label=" << quoted("at " + cfg(*at, net.size())) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace bansync

// One pass/fail line per acceptance criterion. With an argument N only
// criterion N runs; the exit status is nonzero if any criterion fails.

#include "bansync/dynamics.hpp"
#include "bansync/expression.hpp"
#include "bansync/impact.hpp"
#include "bansync/report.hpp"
#include "bansync/search.hpp"
#include "bansync/sequential.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace bansync;

namespace {

// Wall-clock budgets in seconds.
constexpr double kBudget1 = 1.0;
constexpr double kBudget2 = 1.0;
constexpr double kBudget3 = 5.0;
constexpr double kBudget4 = 10.0;
constexpr double kBudget5 = 600.0;  // single worker
constexpr double kBudget6 = 900.0;
constexpr double kBudget7 = 900.0;
constexpr double kBudget8 = 900.0;

constexpr std::size_t kSampleSize = 10000;
constexpr std::uint64_t kSampleSeed = 1;

std::string data(const std::string& name) { return std::string(BANSYNC_TEST_DATA) + "/" + name; }

State st(const char* s) { return Configuration::parse(s).bits(); }

std::string states_text(const std::vector<State>& xs, int n) {
  std::string out = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "," : "") + format_state(xs[k], n);
  return out + "}";
}

/// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

bool golden_free(Check& c) {
  const Network net = load_network(data("exfree.ban"));
  const TransitionGraph sig = TransitionGraph::asynchronous(net);
  c.expect(sig.attractors().size() == 3, "three attractors");
  const std::vector<const char*> expected{"00", "01", "10"};
  for (std::size_t a = 0; a < sig.attractors().size() && a < 3; ++a) {
    const auto& att = sig.attractors()[a];
    c.expect(att.kind == AttractorKind::Stable && att.states == std::vector<State>{st(expected[a])},
             std::string("attractor {") + expected[a] + "}");
  }
  c.expect(sig.transient_count() == 1 && !sig.recurrent(st("11")), "11 is the only transient configuration");
  std::vector<State> succ(sig.successors(st("11")).begin(), sig.successors(st("11")).end());
  sort_lexicographic(succ, 2);
  c.expect(succ == std::vector<State>{st("01"), st("10")}, "edges 11->01 and 11->10, got " + states_text(succ, 2));
  c.expect(sig.edge_count() == 2, "no other edges");

  const auto normals = normal_transitions(net);
  c.expect(normals.size() == 1 && normals[0].transition.str() == "11->00", "11 => 00 is the unique normal transition");
  const ImpactReport r = classify_impact(net, make_synchronous(net, Configuration::parse("11"), Configuration::parse("00")));
  c.expect(r.label == ImpactLabel::F, std::string("impact F, got ") + to_string(r.label));
  const SensitivityReport s = classify_sensitivity(net);
  c.expect(s.sensitivities == std::vector<Sensitivity>{Sensitivity::F}, "sensitivity {F}");
  return c.ok();
}

bool golden_d(Check& c) {
  const Network net = load_network(data("contrex.ban"));
  const TransitionGraph sig = TransitionGraph::asynchronous(net);
  std::vector<State> expected;
  for (State r = 0; r < 16; ++r) {
    const State x = lex_state(r, 4);
    if ((x & 0b11u) != 0) expected.push_back(x);
  }
  c.expect(expected.size() == 12, "x0 | x1 holds on 12 configurations");
  c.expect(sig.attractors().size() == 2, "two attractors");
  if (sig.attractors().size() == 2) {
    const auto& a0 = sig.attractors()[0];
    const auto& a1 = sig.attractors()[1];
    c.expect(a0.kind == AttractorKind::Stable && a0.states == std::vector<State>{st("0000")}, "stable {0000}");
    c.expect(a1.kind == AttractorKind::Unstable && a1.states == expected,
             "unstable attractor {x : x0 | x1}, got " + std::to_string(a1.states.size()) + " configurations");
  }
  const auto normals = normal_transitions(net);
  bool listed = false;
  for (const auto& v : normals) listed |= v.transition.str() == "1100->0000";
  c.expect(listed, "1100 => 0000 is normal");
  const ImpactReport r =
      classify_impact(net, make_synchronous(net, Configuration::parse("1100"), Configuration::parse("0000")));
  c.expect(r.label == ImpactLabel::D, std::string("impact D, got ") + to_string(r.label));
  c.expect(classify_sensitivity(net).has(Sensitivity::D), "D-sensitive");
  return c.ok();
}

bool golden_g(Check& c) {
  const Network net = load_network(data("contrex5.ban"));
  const Transition t = make_synchronous(net, Configuration::parse("11000"), Configuration::parse("00000"));
  const ImpactReport r = classify_impact(net, t);
  c.expect(r.label == ImpactLabel::G, std::string("impact G, got ") + to_string(r.label));
  c.expect(r.facts.x_recurrent, "11000 recurrent");
  c.expect(!r.facts.y_recurrent, "00000 transient");
  c.expect(r.facts.Aa_y == std::vector<int>{r.facts.att_x}, "A_a(00000) = {att_a(11000)}");
  c.expect(is_sequentialisable(net, t).verdict == Verdict::Normal, "11000 => 00000 is normal");
  return c.ok();
}

void expect_claim(Check& c, const VerificationLedger& l, const std::string& id) {
  const ClaimRecord* r = l.find(id);
  if (!r) {
    c.expect(false, id + " missing");
    return;
  }
  std::string why = id + " " + to_string(r->verdict) + " over " + r->domain;
  if (!r->witnesses.empty()) why += ": " + r->witnesses.front().trace;
  c.expect(r->verdict == ClaimVerdict::Confirmed, why);
}

bool size2(Check& c) {
  const VerificationLedger l = verify_size2_claims();
  c.expect(l.networks == 256, "256 networks");
  for (const char* id : {"size2-monotone-not-very-sensitive", "size2-xor-d-sensitive"}) expect_claim(c, l, id);
  const ClaimRecord* census = l.find("size2-census");
  c.expect(census && census->count("very-sensitive-monotone") == 0, "zero monotone very-sensitive networks");
  c.expect(census && census->count("very-sensitive") == 4, "exactly four very-sensitive networks");
  const ClaimRecord* x = l.find("size2-xor-d-sensitive");
  c.expect(x && x->instances == 4, "four XOR/XNOR networks checked");
  return c.ok();
}

bool size3(Check& c) {
  const VerificationLedger l = verify_size3_claims(1);
  for (const char* id : {"size3-very-sensitive-is-d", "size3-very-sensitive-size2-normal", "size3-named-instance"}) {
    expect_claim(c, l, id);
  }
  const ClaimRecord* census = l.find("size3-census");
  c.expect(census && census->count("very-sensitive") > 0, "some very-sensitive monotone size-3 network");
  c.expect(census && census->count("sensitive-M") == 0, "no M-sensitive monotone size-3 network");
  return c.ok();
}

EnumerationSpec exhaustive(int n, std::vector<std::string> claims) {
  EnumerationSpec spec;
  spec.n = n;
  spec.monotone_only = true;
  spec.predicates = std::move(claims);
  return spec;
}

EnumerationSpec sampled(std::vector<std::string> claims) {
  EnumerationSpec spec = exhaustive(4, std::move(claims));
  spec.sample = kSampleSize;
  spec.seed = kSampleSeed;
  return spec;
}

/// Exhaustive domains must confirm; the sample must not refute. Every
/// refutation prints its first witness and is replayed.
void gate(Check& c, const VerificationLedger& l, bool sample) {
  for (const ClaimRecord& r : l.claims) {
    const bool ok = sample ? r.verdict != ClaimVerdict::Refuted : r.verdict == ClaimVerdict::Confirmed;
    if (ok) continue;
    std::ostringstream why;
    why << r.id << " " << to_string(r.verdict) << " over " << r.domain << " (" << r.violating_networks
        << " violating networks)";
    for (const Witness& w : r.witnesses) {
      if (w.network.size() == 0) continue;
      const VerificationLedger again = replay(w.network, {r.id});
      why << "\n      witness #" << w.index << ": " << w.trace << "\n      replay: "
          << to_string(again.claims.front().verdict) << "\n";
      std::istringstream lines(format_network(w.network));
      for (std::string line; std::getline(lines, line);) why << "        " << line << "\n";
      break;
    }
    c.expect(false, why.str());
  }
}

const std::vector<std::string> kPropertyClaims = {
    "lemma1-loops",     "lemma2-subset",    "prop1-sign-parity", "prop2-corollary-total", "lemma3-hamiltonian",
    "lemma4-full-size", "prop3-structural", "impact-coverage"};

bool properties(Check& c) {
  for (int n = 1; n <= 3; ++n) gate(c, verify_lemmas_and_propositions(exhaustive(n, kPropertyClaims)), false);
  gate(c, verify_lemmas_and_propositions(sampled(kPropertyClaims)), true);
  return c.ok();
}

bool oracle(Check& c) {
  const std::vector<std::string> claims{"oracle-agreement", "prop2-decomposition-valid"};
  for (int n = 1; n <= 3; ++n) {
    const VerificationLedger l = verify_lemmas_and_propositions(exhaustive(n, claims));
    gate(c, l, false);
    const ClaimRecord* r = l.find("oracle-agreement");
    if (n >= 2) c.expect(r && r->instances > 0, "synchronous transitions checked at n = " + std::to_string(n));
  }
  return c.ok();
}

bool conservation(Check& c) {
  const std::vector<std::string> claims{"conservation", "no-merge"};
  const VerificationLedger two = verify_size2_claims();
  for (const auto& id : claims) expect_claim(c, two, id);
  for (int n = 1; n <= 3; ++n) gate(c, verify_lemmas_and_propositions(exhaustive(n, claims)), false);
  const VerificationLedger s = verify_lemmas_and_propositions(sampled(claims));
  for (const auto& r : s.claims) c.expect(r.violating_networks == 0, r.id + " violated in the n = 4 sample");
  return c.ok();
}

struct Criterion {
  int id;
  const char* title;
  double budget;
  std::function<bool(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "two-automaton golden run", kBudget1, golden_free},
      {2, "four-automaton D-impact golden run", kBudget2, golden_d},
      {3, "five-automaton G-impact golden run", kBudget3, golden_g},
      {4, "exhaustive size-2 verification", kBudget4, size2},
      {5, "exhaustive monotone size-3 verification", kBudget5, size3},
      {6, "property suite, monotone n <= 3 and an n = 4 sample", kBudget6, properties},
      {7, "decomposition and search oracle agree, monotone n <= 3", kBudget7, oracle},
      {8, "conservation over the verification domains", kBudget8, conservation},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (const Criterion& k : criteria) {
    if (only != 0 && k.id != only) continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = k.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > k.budget) {
      check.expect(false, "took " + std::to_string(seconds) + " s, budget " + std::to_string(k.budget) + " s");
    }
    ok = ok && check.ok();
    all = all && ok;
    std::printf("criterion %d: %s  %s (%.2f s)\n", k.id, ok ? "PASS" : "FAIL", k.title, seconds);
    for (const auto& f : check.failures()) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

#include "bansync/errors.hpp"
#include "bansync/expression.hpp"
#include "bansync/impact.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bansync;

namespace {

Transition tr(const Network& net, const char* from, const char* to) {
  return make_synchronous(net, Configuration::parse(from), Configuration::parse(to));
}

std::vector<Transition> synchronous(const Network& net) {
  std::vector<Transition> out;
  for (State x = 0; x < net.state_count(); ++x) {
    for (const auto& t : outgoing_transitions(net, Configuration(net.size(), x))) {
      if (t.size() >= 2) out.push_back(t);
    }
  }
  return out;
}

ImpactFacts facts(bool xr, bool yr, std::vector<int> ax, std::vector<int> ay, int attx, int atty) {
  return {xr, yr, std::move(ax), std::move(ay), attx, atty};
}

}  // namespace

TEST_CASE("impact label cases") {
  CHECK(impact_label(facts(false, false, {0, 1}, {1}, -1, -1)).label == ImpactLabel::NoImpact);
  CHECK(impact_label(facts(false, false, {1}, {0, 1}, -1, -1)).label == ImpactLabel::F);
  CHECK(impact_label(facts(false, true, {1}, {0}, -1, 0)).label == ImpactLabel::F);
  CHECK(impact_label(facts(true, true, {0}, {1}, 0, 1)).label == ImpactLabel::D);
  CHECK(impact_label(facts(true, true, {0}, {0}, 0, 0)).label == ImpactLabel::NoImpact);
  CHECK(impact_label(facts(true, false, {0}, {0}, 0, -1)).label == ImpactLabel::G);
  CHECK(impact_label(facts(true, false, {0}, {0, 1}, 0, -1)).label == ImpactLabel::Extended);
  CHECK(impact_label(facts(true, false, {0}, {1}, 0, -1)).label == ImpactLabel::Extended);
}

TEST_CASE("F impact on the two-automaton example") {
  const Network net = test::exfree();
  const ImpactReport r = classify_impact(net, tr(net, "11", "00"));
  CHECK(r.label == ImpactLabel::F);
  CHECK_FALSE(r.facts.x_recurrent);
  CHECK(r.facts.Aa_x == std::vector<int>{1, 2});
  CHECK(r.facts.Aa_y == std::vector<int>{0});
  CHECK(r.destroyed.empty());
  CHECK(r.grown.empty());

  const SensitivityReport s = classify_sensitivity(net);
  CHECK(s.sensitivities == std::vector<Sensitivity>{Sensitivity::F});
  CHECK_FALSE(s.very_sensitive);
  CHECK(s.count(ImpactLabel::F) == 1);
  CHECK(check_structural_prerequisites(net, s).holds());
}

TEST_CASE("D impact on the four-automaton example") {
  const Network net = test::contrex();
  const ImpactReport r = classify_impact(net, tr(net, "1100", "0000"));
  CHECK(r.label == ImpactLabel::D);
  CHECK(r.facts.att_x == 1);
  CHECK(r.facts.att_y == 0);
  CHECK(r.destroyed == std::vector<int>{1});

  const SensitivityReport s = classify_sensitivity(net);
  CHECK(s.sensitivities == std::vector<Sensitivity>{Sensitivity::D});
  CHECK(s.very_sensitive);
  CHECK(s.merge_pairs.empty());
  CHECK(check_structural_prerequisites(net, s).holds());
}

TEST_CASE("G impact on the five-automaton extension") {
  const Network net = load_network(test::data("contrex5.ban"));
  const ImpactReport r = classify_impact(net, tr(net, "11000", "00000"));
  CHECK(r.label == ImpactLabel::G);
  CHECK(r.facts.x_recurrent);
  CHECK_FALSE(r.facts.y_recurrent);
  CHECK(r.grown.size() == 1);
  CHECK(r.destroyed.empty());
}

TEST_CASE("three-automaton instance with a D and an extended transition") {
  const Network net = load_network(test::data("fignew.ban"));
  CHECK(classify_impact(net, tr(net, "110", "000")).label == ImpactLabel::D);
  const ImpactReport ext = classify_impact(net, tr(net, "110", "001"));
  CHECK(ext.label == ImpactLabel::Extended);
  CHECK(ext.destroyed.size() == 1);
  const SensitivityReport s = classify_sensitivity(net);
  CHECK(s.has(Sensitivity::D));
  CHECK(s.very_sensitive);
}

TEST_CASE("xor is D-sensitive") {
  const SensitivityReport s = classify_sensitivity(test::xor2());
  CHECK(s.sensitivities == std::vector<Sensitivity>{Sensitivity::D});
  CHECK_THROWS_AS(check_structural_prerequisites(test::xor2(), s), NonMonotoneNetworkError);
}

TEST_CASE("classify rejects asynchronous transitions") {
  const Network net = test::exfree();
  CHECK_THROWS_AS(classify_impact(net, Transition{Configuration::parse("11"), Configuration::parse("01")}),
                  InvalidTransitionError);
}

TEST_CASE("labels agree with what happens to the attractors") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 150; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const Network net = test::random_network(rng, n);
    const ImpactAnalyzer analyzer(net);
    for (const auto& t : synchronous(net)) {
      const ImpactReport r = analyzer.classify(t);
      const auto& fate = r.evidence.fate;
      const bool all_kept = std::all_of(fate.begin(), fate.end(), [](AttractorFate f) { return f == AttractorFate::Preserved; });
      CHECK(r.evidence.from_scratch.empty());
      switch (r.label) {
        case ImpactLabel::NoImpact:
        case ImpactLabel::F:
          CHECK(all_kept);
          break;
        case ImpactLabel::G:
          CHECK(fate[static_cast<std::size_t>(r.facts.att_x)] == AttractorFate::Grown);
          CHECK(r.destroyed.empty());
          break;
        case ImpactLabel::D:
        case ImpactLabel::Extended:
          CHECK(r.destroyed == std::vector<int>{r.facts.att_x});
          break;
      }
      // Reachable attractors match an explicit closure.
      const auto& g = analyzer.sig();
      CHECK(analyzer.reachable(t.to.bits()) == reachable_attractors(g, t.to.bits()));
    }
  }
}

TEST_CASE("merge pairs come from D transitions in opposite directions") {
  std::mt19937_64 rng(43);
  bool found = false;
  for (int k = 0; k < 5000 && !found; ++k) {
    const Network net = test::random_network(rng, 3);
    const ImpactAnalyzer analyzer(net);
    std::vector<Transition> d;
    for (const auto& t : synchronous(net)) {
      if (impact_label(analyzer.facts(t)).label == ImpactLabel::D) d.push_back(t);
    }
    for (std::size_t a = 0; a < d.size() && !found; ++a) {
      for (std::size_t b = 0; b < d.size() && !found; ++b) {
        const auto fa = analyzer.facts(d[a]);
        const auto fb = analyzer.facts(d[b]);
        if (fa.att_x != fb.att_y || fa.att_y != fb.att_x) continue;
        found = true;
        std::vector<SequentialisationVerdict> normals(2);
        normals[0].transition = d[a];
        normals[1].transition = d[b];
        const SensitivityReport s = classify_sensitivity(analyzer, normals);
        CHECK(s.sensitivities == std::vector<Sensitivity>{Sensitivity::M});
        CHECK(s.very_sensitive);
        REQUIRE(s.merge_pairs.size() == 1);
        CHECK(s.merge_pairs[0].first == d[a]);
        CHECK(s.merge_pairs[0].second == d[b]);

        // Alone, the first transition is only D.
        normals.pop_back();
        CHECK(classify_sensitivity(analyzer, normals).sensitivities == std::vector<Sensitivity>{Sensitivity::D});
      }
    }
  }
  CHECK(found);
}

TEST_CASE("sensitivity bookkeeping") {
  std::mt19937_64 rng(47);
  for (int k = 0; k < 100; ++k) {
    const Network net = test::random_network(rng, 3);
    const SensitivityReport s = classify_sensitivity(net);
    std::size_t total = 0;
    for (auto c : s.per_label) total += c;
    CHECK(total == s.normal_count());
    CHECK(std::is_sorted(s.sensitivities.begin(), s.sensitivities.end()));
    CHECK(s.witnesses.size() == s.sensitivities.size());
    CHECK(s.has(Sensitivity::F) == (s.count(ImpactLabel::F) > 0));
    CHECK(s.has(Sensitivity::G) == (s.count(ImpactLabel::G) > 0));
    CHECK((s.has(Sensitivity::D) || s.has(Sensitivity::M)) == (s.count(ImpactLabel::D) > 0));
  }
}

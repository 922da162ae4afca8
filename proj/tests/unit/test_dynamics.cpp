#include "bansync/dynamics.hpp"
#include "bansync/errors.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace bansync;

namespace {

State s(const char* text) { return Configuration::parse(text).bits(); }

std::vector<std::string> strings(const std::vector<State>& states, int n) {
  std::vector<std::string> out;
  for (State x : states) out.push_back(format_state(x, n));
  return out;
}

}  // namespace

TEST_CASE("transitions") {
  const Network net = test::exfree();
  const Transition t = make_transition(net, Configuration::parse("11"), Configuration::parse("00"));
  CHECK(t.size() == 2);
  CHECK(t.kind() == TransitionKind::Synchronous);
  CHECK(t.changed() == std::vector<int>{0, 1});
  CHECK(t.str() == "11->00");
  CHECK(make_transition(net, Configuration::parse("11"), Configuration::parse("01")).kind() ==
        TransitionKind::Asynchronous);
  CHECK_THROWS_AS(make_transition(net, Configuration::parse("10"), Configuration::parse("00")),
                  InvalidTransitionError);
  CHECK_THROWS_AS(make_transition(net, Configuration::parse("11"), Configuration::parse("11")),
                  InvalidTransitionError);
  CHECK_THROWS_AS(make_transition(net, Configuration::parse("11"), Configuration::parse("000")),
                  InvalidTransitionError);
  CHECK_THROWS_AS(make_synchronous(net, Configuration::parse("11"), Configuration::parse("10")),
                  InvalidTransitionError);
}

TEST_CASE("outgoing transitions are ordered by size then index list") {
  const Network all = build_network(3, {"!x0", "!x1", "!x2"});
  std::vector<std::string> got;
  for (const auto& t : outgoing_transitions(all, Configuration::parse("000"))) got.push_back(t.to.str());
  CHECK(got == std::vector<std::string>{"100", "010", "001", "110", "101", "011", "111"});
  CHECK(outgoing_transitions(all, Configuration::parse("000"), 1).size() == 3);
  CHECK(ordered_subsets(0b1010, 1, 4) == std::vector<State>{0b0010, 0b1000, 0b1010});
}

TEST_CASE("asynchronous graph of the two-automaton example") {
  const auto g = TransitionGraph::asynchronous(test::exfree());
  CHECK(g.edge_count() == 2);
  REQUIRE(g.attractors().size() == 3);
  for (const auto& a : g.attractors()) CHECK(a.kind == AttractorKind::Stable);
  CHECK(strings(g.attractors()[0].states, 2) == std::vector<std::string>{"00"});
  CHECK(strings(g.attractors()[1].states, 2) == std::vector<std::string>{"01"});
  CHECK(strings(g.attractors()[2].states, 2) == std::vector<std::string>{"10"});
  CHECK(g.transient_count() == 1);
  CHECK(reachable_attractors(g, s("11")) == std::vector<int>{1, 2});

  const auto e = TransitionGraph::elementary(test::exfree());
  CHECK(e.edge_count() == 3);
  CHECK(reachable_attractors(e, s("11")) == std::vector<int>{0, 1, 2});
  const auto r = reachability(e, s("00"));
  CHECK(r.recurrent);
  CHECK(r.attractor == 0);
  CHECK(strings(r.backward, 2) == std::vector<std::string>{"00", "11"});
  CHECK(strings(r.basin, 2) == std::vector<std::string>{"11"});
  CHECK(reachability(g, s("00")).basin.empty());
  CHECK(strings(reachability(g, s("11")).orbit, 2) == std::vector<std::string>{"01", "10", "11"});
}

TEST_CASE("asynchronous graph of the four-automaton example") {
  const auto g = TransitionGraph::asynchronous(test::contrex());
  REQUIRE(g.attractors().size() == 2);
  CHECK(g.attractors()[0].kind == AttractorKind::Stable);
  CHECK(strings(g.attractors()[0].states, 4) == std::vector<std::string>{"0000"});
  CHECK(g.attractors()[1].kind == AttractorKind::Unstable);
  CHECK(g.attractors()[1].states.size() == 12);
  CHECK(g.attractor_index(s("1100")) == 1);
  CHECK(g.transient_count() == 3);
}

TEST_CASE("adding a synchronous transition") {
  const Network net = test::contrex();
  const Transition t = make_synchronous(net, Configuration::parse("1100"), Configuration::parse("0000"));
  const auto c = check_attractor_preservation(net, t);
  CHECK(c.fate == std::vector<AttractorFate>{AttractorFate::Preserved, AttractorFate::Destroyed});
  CHECK(c.became_transient.size() == 12);
  CHECK(c.became_recurrent.empty());
  CHECK(c.from_scratch.empty());

  const auto g = build_graph(net, GraphVariant::AugmentedSIG, t);
  CHECK(g.variant() == GraphVariant::AugmentedSIG);
  CHECK(g.attractors().size() == 1);
  CHECK_THROWS_AS(build_graph(net, GraphVariant::AugmentedSIG), InvalidTransitionError);
  CHECK_THROWS_AS(TransitionGraph::elementary(net).augment(net, t), InvalidTransitionError);
}

TEST_CASE("size ceilings") {
  Limits tight;
  tight.eig_max = 3;
  tight.sig_max = 3;
  CHECK_THROWS_AS(TransitionGraph::elementary(test::contrex(), tight), SizeCeilingError);
  CHECK_THROWS_AS(TransitionGraph::asynchronous(test::contrex(), tight), SizeCeilingError);
  CHECK_NOTHROW(TransitionGraph::asynchronous(test::exfree(), tight));
}

TEST_CASE("attractor invariants on random networks") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Network net = test::random_network(rng, n);
    for (const auto& g : {TransitionGraph::asynchronous(net), TransitionGraph::elementary(net)}) {
      REQUIRE_FALSE(g.attractors().empty());
      std::size_t recurrent = 0;
      for (std::size_t a = 0; a < g.attractors().size(); ++a) {
        const auto& att = g.attractors()[a];
        recurrent += att.states.size();
        // Closed under successors and strongly connected.
        for (State x : att.states) {
          CHECK(g.attractor_index(x) == static_cast<int>(a));
          for (auto y : g.successors(x)) CHECK(g.attractor_index(y) == static_cast<int>(a));
          const StateSet orbit = forward_closure(g, x);
          for (State y : att.states) CHECK(orbit[y]);
        }
        CHECK((att.kind == AttractorKind::Stable) == (att.states.size() == 1 && net.unstable(att.states[0]) == 0));
        if (a > 0) {
          CHECK(lex_rank(g.attractors()[a - 1].states[0], n) < lex_rank(att.states[0], n));
        }
      }
      CHECK(recurrent + g.transient_count() == g.state_count());
      for (State x = 0; x < g.state_count(); ++x) {
        CHECK_FALSE(reachable_attractors(g, x).empty());
        if (net.unstable(x) == 0) CHECK(g.recurrent(x));
      }
    }
  }
}

TEST_CASE("attractors of SIG plus one transition") {
  // Base attractors are kept, grown or destroyed, never created from nothing.
  std::mt19937_64 rng(8);
  int tried = 0;
  while (tried < 300) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const Network net = test::random_network(rng, n);
    const State x = static_cast<State>(rng() % net.state_count());
    const auto out = outgoing_transitions(net, Configuration(n, x));
    std::vector<Transition> sync;
    std::copy_if(out.begin(), out.end(), std::back_inserter(sync), [](const Transition& t) { return t.size() >= 2; });
    if (sync.empty()) continue;
    ++tried;
    const Transition& t = sync[rng() % sync.size()];
    const auto c = check_attractor_preservation(net, t);
    CHECK(c.from_scratch.empty());
    CHECK(c.became_recurrent.empty() == (std::find(c.fate.begin(), c.fate.end(), AttractorFate::Grown) == c.fate.end()));
  }
}

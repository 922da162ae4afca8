#include "bansync/errors.hpp"
#include "bansync/expression.hpp"
#include "bansync/sequential.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace bansync;

namespace {

Transition tr(const Network& net, const char* from, const char* to) {
  return make_transition(net, Configuration::parse(from), Configuration::parse(to));
}

// Reachability with steps that switch at most k automata, all inside `allowed`.
bool reach(const Network& net, State x, State y, int k, State allowed) {
  std::set<State> seen{x};
  std::vector<State> todo{x};
  while (!todo.empty()) {
    const State z = todo.back();
    todo.pop_back();
    const State u = net.unstable(z) & allowed;
    for (State w = 1; w < net.state_count(); ++w) {
      if ((w & ~u) != 0 || std::popcount(w) > k) continue;
      if (seen.insert(z ^ w).second) todo.push_back(z ^ w);
    }
  }
  return seen.count(y) != 0;
}

// Same, with at least two steps: x -> z -> w ->* y.
bool reach_two(const Network& net, State x, State y, int k) {
  auto step = [&](State z) {
    std::vector<State> out;
    for (State w = 1; w < net.state_count(); ++w) {
      if ((w & ~net.unstable(z)) == 0 && std::popcount(w) <= k) out.push_back(z ^ w);
    }
    return out;
  };
  for (State z : step(x)) {
    for (State w : step(z)) {
      if (reach(net, w, y, k, full_mask(net.size()))) return true;
    }
  }
  return false;
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

}  // namespace

TEST_CASE("the two-automaton example has exactly one normal transition") {
  const Network net = test::exfree();
  const auto normals = normal_transitions(net);
  REQUIRE(normals.size() == 1);
  CHECK(normals[0].transition.str() == "11->00");
  const auto v = is_sequentialisable(net, tr(net, "11", "00"));
  CHECK(v.verdict == Verdict::Normal);
  CHECK_FALSE(v.witness);
}

TEST_CASE("xor transition is normal") {
  const Network net = test::xor2();
  const auto normals = normal_transitions(net);
  REQUIRE(normals.size() == 1);
  CHECK(normals[0].transition.str() == "11->00");
}

TEST_CASE("block decomposition order") {
  // The frustrated arc (0, 1) forces automaton 1 to switch before automaton 0.
  const Network net = build_network(2, {"1", "!x0"});
  const Decomposition d = decompose(net, tr(net, "00", "11"));
  CHECK(d.blocks == std::vector<std::vector<int>>{{1}, {0}});
  REQUIRE(d.derivation.steps.size() == 2);
  CHECK(d.derivation.steps[0].str() == "00->01");
  CHECK(d.derivation.steps[1].str() == "01->11");
  CHECK(replays(net, d.derivation));
  CHECK_FALSE(is_elementary(net, Configuration::parse("10").bits(), Configuration::parse("11").bits()));

  const auto v = is_sequentialisable(net, tr(net, "00", "11"));
  CHECK(v.verdict == Verdict::Sequentialisable);
  CHECK(v.totally);
  CHECK(v.method == Method::Both);
}

TEST_CASE("a mutually frustrated pair stays in one block") {
  const Network net = test::exfree();
  const Decomposition d = decompose(net, tr(net, "11", "00"));
  CHECK(d.blocks == std::vector<std::vector<int>>{{0, 1}});
  CHECK_FALSE(d.split());
  CHECK_THROWS_AS(decompose(test::xor2(), tr(test::xor2(), "11", "00")), NonMonotoneNetworkError);
  CHECK_THROWS_AS(decompose(net, tr(net, "11", "01")), InvalidTransitionError);
}

TEST_CASE("replays rejects broken chains") {
  const Network net = test::exfree();
  Derivation d;
  d.steps.push_back({Configuration::parse("11"), Configuration::parse("01")});
  CHECK(replays(net, d));
  d.steps.push_back({Configuration::parse("11"), Configuration::parse("10")});
  CHECK_FALSE(replays(net, d));
  Derivation stable;
  stable.steps.push_back({Configuration::parse("01"), Configuration::parse("00")});
  CHECK_FALSE(replays(net, stable));
}

TEST_CASE("verdicts match bounded reachability") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 150; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const Network net = test::random_network(rng, n);
    const State all = full_mask(n);
    std::set<std::pair<State, State>> normal;
    for (const auto& v : normal_transitions(net)) normal.insert({v.transition.from.bits(), v.transition.to.bits()});
    ReachOracle oracle(net);
    for (const auto& t : synchronous(net)) {
      const State x = t.from.bits(), y = t.to.bits();
      const bool strict = reach(net, x, y, t.size() - 1, all);
      CHECK(normal.count({x, y}) == (strict ? 0u : 1u));
      CHECK(oracle.reaches(x, y, t.size() - 1) == strict);

      const auto v = is_sequentialisable(net, t);
      CHECK((v.verdict == Verdict::Sequentialisable) == strict);
      CHECK(v.totally == reach(net, x, y, 1, all));
      if (v.witness) {
        CHECK(replays(net, *v.witness));
        CHECK(v.witness->source() == t.from);
        CHECK(v.witness->target() == t.to);
        CHECK(v.witness->steps.size() >= 2);
        CHECK(v.witness->max_step_size() < t.size());
      }

      const auto sub = is_sequentialisable(net, t, Reading::WithinSubcube);
      CHECK((sub.verdict == Verdict::Sequentialisable) == reach(net, x, y, t.size() - 1, t.changed_mask()));
      if (sub.witness) {
        for (const auto& s : sub.witness->steps) CHECK((s.changed_mask() & ~t.changed_mask()) == 0);
      }
      const auto below_n = is_sequentialisable(net, t, Reading::SmallerThanSize);
      CHECK((below_n.verdict == Verdict::Sequentialisable) == reach_two(net, x, y, n - 1));
      if (sub.verdict == Verdict::Sequentialisable) CHECK(v.verdict == Verdict::Sequentialisable);
      if (v.verdict == Verdict::Sequentialisable) CHECK(below_n.verdict == Verdict::Sequentialisable);
    }
  }
}

TEST_CASE("decomposition replays on monotone networks up to three automata") {
  std::mt19937_64 rng(37);
  int checked = 0;
  while (checked < 200) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const Network net = test::random_network(rng, n);
    if (!SignedStructure(net).monotone()) continue;
    ++checked;
    for (const auto& t : synchronous(net)) {
      const Decomposition d = decompose(net, t);
      CHECK(replays(net, d.derivation));
      CHECK(d.derivation.target() == t.to);
      std::vector<int> flat;
      for (const auto& b : d.blocks) flat.insert(flat.end(), b.begin(), b.end());
      std::sort(flat.begin(), flat.end());
      CHECK(flat == t.changed());
      // A split decomposition is itself a sequentialisation.
      if (d.split()) CHECK(is_sequentialisable(net, t).verdict == Verdict::Sequentialisable);
    }
  }
}

TEST_CASE("lemma checks on small examples") {
  const LemmaReport full = check_lemma_full_size(test::exfree());
  CHECK(full.applicable);
  CHECK(full.holds());
  CHECK_FALSE(full.checks.empty());

  const LemmaReport ham = check_lemma_hamiltonian(test::exfree());
  CHECK(ham.applicable);
  CHECK(ham.holds());

  CHECK_THROWS_AS(check_lemma_hamiltonian(test::xor2()), NonMonotoneNetworkError);
  // A critical 2-cycle in a network of size 4.
  CHECK_THROWS_AS(check_lemma_hamiltonian(test::contrex()), PreconditionError);
  // 1100 => 0000 is normal and smaller than n.
  const LemmaReport smaller = check_lemma_full_size(test::contrex());
  CHECK_FALSE(smaller.applicable);
  CHECK(smaller.checks.empty());
}

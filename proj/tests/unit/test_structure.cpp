#include "bansync/errors.hpp"
#include "bansync/structure.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace bansync;

namespace {

// Arc scan straight from the definition: j influences i if flipping x_j
// changes f_i somewhere; the sign records the direction of every change.
std::map<std::pair<int, int>, ArcSign> scan_arcs(const Network& net) {
  std::map<std::pair<int, int>, ArcSign> out;
  const int n = net.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool up = false, down = false;
      for (State x = 0; x < net.state_count(); ++x) {
        if (test::bit(x, j)) continue;
        const bool lo = net.value(i, x), hi = net.value(i, x | (State{1} << j));
        up |= !lo && hi;
        down |= lo && !hi;
      }
      if (up && down) out[{j, i}] = ArcSign::NonMonotone;
      else if (up) out[{j, i}] = ArcSign::Positive;
      else if (down) out[{j, i}] = ArcSign::Negative;
    }
  }
  return out;
}

// Odd number of negative arcs on some simple cycle, by trying every node sequence.
bool brute_negative_cycle(const std::map<std::pair<int, int>, ArcSign>& arcs, int n) {
  std::vector<int> path;
  std::function<bool(int, int)> extend = [&](int start, int parity) -> bool {
    const int last = path.back();
    for (int next = start; next < n; ++next) {
      auto it = arcs.find({last, next});
      if (it == arcs.end()) continue;
      const int p = parity ^ (it->second == ArcSign::Negative ? 1 : 0);
      if (next == start) {
        if (p == 1) return true;
        continue;
      }
      if (std::find(path.begin(), path.end(), next) != path.end()) continue;
      path.push_back(next);
      const bool found = extend(start, p);
      path.pop_back();
      if (found) return true;
    }
    return false;
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    if (extend(s, 0)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("signed structure of the four-automaton example") {
  const SignedStructure s(test::contrex());
  CHECK(s.arcs().size() == 10);
  CHECK(s.monotone());
  CHECK(s.sign(2, 0) == ArcSign::Positive);
  CHECK(s.sign(1, 0) == ArcSign::Negative);
  CHECK(s.sign(0, 1) == ArcSign::Negative);
  CHECK(s.sign(3, 0) == std::nullopt);
  CHECK(s.has_positive_loop(0));
  CHECK(s.has_positive_loop(1));
  CHECK_FALSE(s.has_positive_loop(2));
  CHECK(s.in_neighbours(2) == std::vector<int>{0, 1});
  // Arcs ordered by target, then source.
  CHECK(std::is_sorted(s.arcs().begin(), s.arcs().end(),
                       [](const Arc& a, const Arc& b) { return std::pair(a.to, a.from) < std::pair(b.to, b.from); }));
}

TEST_CASE("arc scan agrees with a direct definition") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Network net = test::random_network(rng, n);
    const auto expected = scan_arcs(net);
    const SignedStructure s(net);
    CHECK(s.arcs().size() == expected.size());
    for (const Arc& a : s.arcs()) {
      auto it = expected.find({a.from, a.to});
      REQUIRE(it != expected.end());
      CHECK(it->second == a.sign);
    }
    const bool monotone = std::none_of(expected.begin(), expected.end(),
                                       [](const auto& e) { return e.second == ArcSign::NonMonotone; });
    CHECK(s.monotone() == monotone);
    CHECK(is_locally_monotone(net).monotone == monotone);
    if (monotone) CHECK(has_negative_cycle(s) == brute_negative_cycle(expected, n));
  }
}

TEST_CASE("xor is non-monotone") {
  const auto report = is_locally_monotone(test::xor2());
  CHECK_FALSE(report.monotone);
  CHECK(report.violations.size() == 4);
  CHECK_THROWS_AS(frustrations(test::xor2(), Configuration::parse("11")), NonMonotoneNetworkError);
  CHECK_THROWS_AS(sign_value(ArcSign::NonMonotone), NonMonotoneNetworkError);
}

TEST_CASE("instabilities") {
  const auto r = instabilities(test::contrex(), Configuration::parse("1100"));
  CHECK(r.unstable == std::vector<int>{0, 1});
  CHECK(r.stable == std::vector<int>{2, 3});
  CHECK(r.momentum == 2);
  CHECK(instabilities(test::exfree(), Configuration::parse("10")).momentum == 0);
  CHECK_THROWS_AS(instabilities(test::exfree(), Configuration::parse("100")), InputError);
}

TEST_CASE("frustrated arcs") {
  // s(x_j) s(x_i) = -sign(j, i), worked out by hand at 1100.
  auto f = frustrations(test::contrex(), Configuration::parse("1100")).frustrated;
  std::sort(f.begin(), f.end());
  const std::vector<ArcId> expected{{0, 1}, {0, 3}, {1, 0}, {1, 2}, {2, 0}, {3, 1}};
  CHECK(f == expected);

  // Positive loops are never frustrated, negative loops always are.
  const Network loops = build_network(2, {"x0", "!x1"});
  for (State x = 0; x < 4; ++x) {
    const auto fr = frustrations(loops, Configuration(2, x)).frustrated;
    CHECK(std::find(fr.begin(), fr.end(), ArcId{0, 0}) == fr.end());
    CHECK(std::find(fr.begin(), fr.end(), ArcId{1, 1}) != fr.end());
  }
}

TEST_CASE("an automaton is unstable iff one of its in-arcs is frustrated") {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 100) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Network net = test::random_network(rng, n);
    const SignedStructure s(net);
    if (!s.monotone()) continue;
    ++checked;
    for (State x = 0; x < net.state_count(); ++x) {
      for (int i = 0; i < n; ++i) {
        // A non-constant unate f_i only leaves its extreme points through a frustrated arc.
        if (test::bit(net.unstable(x), i) && s.in_mask(i) != 0) CHECK(s.frustrated_sources(i, x) != 0);
      }
    }
  }
}

TEST_CASE("negative cycles") {
  CHECK(has_negative_cycle(SignedStructure(build_network(1, {"!x0"}))));
  CHECK_FALSE(has_negative_cycle(SignedStructure(test::exfree())));
  CHECK(has_negative_cycle(SignedStructure(test::contrex())));
  CHECK_FALSE(has_negative_cycle(SignedStructure(build_network(2, {"!x1", "!x0"}))));
  CHECK(has_negative_cycle(SignedStructure(build_network(2, {"!x1", "x0"}))));
}

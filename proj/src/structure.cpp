#include "bansync/structure.hpp"

#include "bansync/errors.hpp"
#include "bansync/graph.hpp"

#include <algorithm>
#include <deque>

namespace bansync {

int sign_value(ArcSign sign) {
  switch (sign) {
    case ArcSign::Positive:
      return 1;
    case ArcSign::Negative:
      return -1;
    case ArcSign::NonMonotone:
      break;
  }
  throw NonMonotoneNetworkError("non-monotone arc has no sign");
}

const char* to_string(ArcSign sign) {
  switch (sign) {
    case ArcSign::Positive:
      return "+";
    case ArcSign::Negative:
      return "-";
    case ArcSign::NonMonotone:
      return "nonmonotone";
  }
  return "?";
}

SignedStructure::SignedStructure(const Network& net)
    : n_(net.size()),
      in_(static_cast<std::size_t>(n_), 0),
      positive_(static_cast<std::size_t>(n_), 0),
      negative_(static_cast<std::size_t>(n_), 0) {
  // For every (j, i) record which of s(x_j) s(f_i(x)) = +1 / -1 occur over
  // the configurations where flipping j changes f_i.
  std::vector<State> seen_pos(static_cast<std::size_t>(n_), 0);
  std::vector<State> seen_neg(static_cast<std::size_t>(n_), 0);
  for (State x = 0; x < net.state_count(); ++x) {
    const State fx = net.image(x);
    for (int j = 0; j < n_; ++j) {
      const State changed = fx ^ net.image(x ^ automaton_bit(j));
      if (changed == 0) continue;
      const bool xj = (x >> j) & 1u;
      // s(x_j) s(f_i(x)) = +1 iff x_j == f_i(x).
      const State agree = xj ? fx : ~fx;
      for (State m = changed; m != 0; m &= m - 1) {
        const int i = std::countr_zero(m);
        if ((agree >> i) & 1u) {
          seen_pos[static_cast<std::size_t>(i)] |= automaton_bit(j);
        } else {
          seen_neg[static_cast<std::size_t>(i)] |= automaton_bit(j);
        }
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    in_[ui] = seen_pos[ui] | seen_neg[ui];
    positive_[ui] = seen_pos[ui] & ~seen_neg[ui];
    negative_[ui] = seen_neg[ui] & ~seen_pos[ui];
    for (int j = 0; j < n_; ++j) {
      if (!((in_[ui] >> j) & 1u)) continue;
      ArcSign s = ArcSign::NonMonotone;
      if ((positive_[ui] >> j) & 1u) s = ArcSign::Positive;
      if ((negative_[ui] >> j) & 1u) s = ArcSign::Negative;
      arcs_.push_back({j, i, s});
      if (s == ArcSign::NonMonotone) non_monotone_.push_back({j, i});
    }
  }
}

std::optional<ArcSign> SignedStructure::sign(int from, int to) const {
  if (from < 0 || to < 0 || from >= n_ || to >= n_) return std::nullopt;
  if (!has_arc(from, to)) return std::nullopt;
  if ((positive_[static_cast<std::size_t>(to)] >> from) & 1u) return ArcSign::Positive;
  if ((negative_[static_cast<std::size_t>(to)] >> from) & 1u) return ArcSign::Negative;
  return ArcSign::NonMonotone;
}

SignedStructure signed_structure(const Network& net) { return SignedStructure(net); }

MonotonyReport is_locally_monotone(const Network& net) {
  SignedStructure s(net);
  return {s.monotone(), s.non_monotone_arcs()};
}

InstabilityReport instabilities(const Network& net, const Configuration& x) {
  if (x.size() != net.size()) {
    throw InputError("configuration " + x.str() + " does not match network size " +
                     std::to_string(net.size()));
  }
  const State u = net.unstable(x.bits());
  InstabilityReport r;
  r.configuration = x;
  r.unstable = mask_indices(u);
  r.stable = mask_indices(~u & full_mask(net.size()));
  r.momentum = popcount(u);
  return r;
}

FrustrationSet frustrations(const SignedStructure& structure, const Configuration& x) {
  if (!structure.monotone()) {
    throw NonMonotoneNetworkError("frustration is undefined: the network has non-monotone arcs");
  }
  if (x.size() != structure.size()) {
    throw InputError("configuration " + x.str() + " does not match network size " +
                     std::to_string(structure.size()));
  }
  FrustrationSet out;
  out.configuration = x;
  for (const Arc& a : structure.arcs()) {
    const int product = switch_sign(x[a.from]) * switch_sign(x[a.to]);
    if (product == -sign_value(a.sign)) out.frustrated.push_back(a.id());
  }
  return out;
}

FrustrationSet frustrations(const Network& net, const Configuration& x) {
  return frustrations(SignedStructure(net), x);
}

bool has_negative_cycle(const SignedStructure& structure) {
  if (!structure.monotone()) {
    throw NonMonotoneNetworkError("cycle signs are undefined: the network has non-monotone arcs");
  }
  const int n = structure.size();
  std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(n));
  for (const Arc& a : structure.arcs()) {
    out[static_cast<std::size_t>(a.from)].push_back(static_cast<std::uint32_t>(a.to));
  }
  const SccResult scc = strongly_connected_components(Digraph::from_lists(out));

  // Inside a strongly connected component every cycle is positive iff the
  // arcs admit a potential p with sign(j, i) = p(j) p(i).
  std::vector<int> potential(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n; ++root) {
    if (potential[static_cast<std::size_t>(root)] != 0) continue;
    potential[static_cast<std::size_t>(root)] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int j = queue.front();
      queue.pop_front();
      for (const Arc& a : structure.arcs()) {
        if (a.from != j && a.to != j) continue;
        if (scc.component[static_cast<std::size_t>(a.from)] != scc.component[static_cast<std::size_t>(a.to)]) continue;
        const int other = a.from == j ? a.to : a.from;
        const int expected = potential[static_cast<std::size_t>(j)] * sign_value(a.sign);
        int& p = potential[static_cast<std::size_t>(other)];
        if (p == 0) {
          p = expected;
          queue.push_back(other);
        } else if (p != expected) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace bansync

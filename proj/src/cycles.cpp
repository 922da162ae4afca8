#include "bansync/cycles.hpp"

#include "bansync/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace bansync {

std::vector<State> critical_graph(const Network& net, const SignedStructure& structure, State x) {
  const int n = net.size();
  const State u = net.unstable(x);
  std::vector<State> succ(static_cast<std::size_t>(n), 0);
  for (State m = u; m != 0; m &= m - 1) {
    const int i = std::countr_zero(m);
    for (State src = structure.frustrated_sources(i, x) & u; src != 0; src &= src - 1) {
      succ[static_cast<std::size_t>(std::countr_zero(src))] |= automaton_bit(i);
    }
  }
  return succ;
}

namespace {

State reach_within(std::span<const State> succ, int from, State allowed) {
  State seen = automaton_bit(from);
  State frontier = seen;
  while (frontier != 0) {
    State next = 0;
    for (State m = frontier; m != 0; m &= m - 1) next |= succ[static_cast<std::size_t>(std::countr_zero(m))];
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

class Johnson {
 public:
  explicit Johnson(std::span<const State> succ) : succ_(succ), n_(static_cast<int>(succ.size())) {}

  std::vector<std::vector<int>> run() {
    for (int s = 0; s < n_; ++s) {
      const State allowed = ~State{0} << s;
      // Strongly connected component of s inside the nodes >= s.
      const State fwd = reach_within(succ_, s, allowed);
      State bwd = 0;
      for (State m = fwd; m != 0; m &= m - 1) {
        const int v = std::countr_zero(m);
        if (reach_within(succ_, v, allowed) >> s & 1u) bwd |= automaton_bit(v);
      }
      component_ = fwd & bwd;
      start_ = s;
      blocked_ = 0;
      std::fill(std::begin(b_), std::end(b_), State{0});
      circuit(s);
    }
    std::sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return std::move(out_);
  }

 private:
  void unblock(int u) {
    blocked_ &= ~automaton_bit(u);
    State waiting = b_[u];
    b_[u] = 0;
    for (; waiting != 0; waiting &= waiting - 1) {
      const int w = std::countr_zero(waiting);
      if (blocked_ >> w & 1u) unblock(w);
    }
  }

  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_ |= automaton_bit(v);
    const State next = succ_[static_cast<std::size_t>(v)] & component_;
    for (State m = next; m != 0; m &= m - 1) {
      const int w = std::countr_zero(m);
      if (w == start_) {
        out_.push_back(path_);
        found = true;
      } else if (!(blocked_ >> w & 1u) && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (State m = next; m != 0; m &= m - 1) b_[std::countr_zero(m)] |= automaton_bit(v);
    }
    path_.pop_back();
    return found;
  }

  std::span<const State> succ_;
  int n_;
  int start_ = 0;
  State component_ = 0;
  State blocked_ = 0;
  State b_[32] = {};
  std::vector<int> path_;
  std::vector<std::vector<int>> out_;
};

void require_monotone(const SignedStructure& s) {
  if (!s.monotone()) {
    throw NonMonotoneNetworkError("critical cycles are undefined: the network has non-monotone arcs");
  }
}

CriticalCycle make_cycle(const std::vector<int>& nodes, const SignedStructure& s, const Configuration& x) {
  CriticalCycle c;
  c.nodes = nodes;
  c.length = static_cast<int>(nodes.size());
  c.witness = x;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const ArcId arc{nodes[k], nodes[(k + 1) % nodes.size()]};
    c.arcs.push_back(arc);
    c.sign *= sign_value(*s.sign(arc.from, arc.to));
  }
  return c;
}

}  // namespace

std::vector<std::vector<int>> simple_cycles(std::span<const State> successors) {
  if (successors.size() > 32) throw SizeCeilingError("cycle enumeration", static_cast<int>(successors.size()), 32);
  return Johnson(successors).run();
}

std::optional<int> shortest_cycle(std::span<const State> successors) {
  const int n = static_cast<int>(successors.size());
  std::optional<int> best;
  const State all = full_mask(n);
  for (int s = 0; s < n; ++s) {
    // BFS layers from s; the first layer that reaches s again closes a cycle.
    State seen = 0;
    State frontier = automaton_bit(s);
    for (int len = 1; len <= n && frontier != 0; ++len) {
      if (best && len >= *best) break;
      State next = 0;
      for (State m = frontier; m != 0; m &= m - 1) next |= successors[static_cast<std::size_t>(std::countr_zero(m))];
      if (next >> s & 1u) {
        best = len;
        break;
      }
      next &= all & ~seen;
      seen |= next;
      frontier = next;
    }
  }
  return best;
}

bool has_hamiltonian_cycle(std::span<const State> successors) {
  const int n = static_cast<int>(successors.size());
  if (n == 0) return false;
  if (n == 1) return successors[0] & 1u;
  // ends[mask]: nodes v such that some path from 0 visits exactly `mask` and ends at v.
  std::vector<State> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (State mask = 1; mask < ends.size(); mask += 2) {
    for (State e = ends[mask]; e != 0; e &= e - 1) {
      const int v = std::countr_zero(e);
      for (State nx = successors[static_cast<std::size_t>(v)] & ~mask; nx != 0; nx &= nx - 1) {
        const int w = std::countr_zero(nx);
        ends[mask | automaton_bit(w)] |= automaton_bit(w);
      }
    }
  }
  for (State e = ends.back(); e != 0; e &= e - 1) {
    if (successors[static_cast<std::size_t>(std::countr_zero(e))] & 1u) return true;
  }
  return false;
}

bool covered_by_closed_trail(std::span<const State> successors, State nodes) {
  const int n = static_cast<int>(successors.size());
  if (n > 8) throw SizeCeilingError("closed trail search", n, 8);
  if (nodes == 0) return true;
  // A closed trail is a connected union of arc-disjoint simple cycles.
  const auto cycles = simple_cycles(successors);
  struct Piece {
    std::uint64_t arcs = 0;
    State nodes = 0;
  };
  std::vector<Piece> pieces;
  for (const auto& c : cycles) {
    Piece p;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int from = c[k];
      const int to = c[(k + 1) % c.size()];
      p.arcs |= std::uint64_t{1} << (from * 8 + to);
      p.nodes |= automaton_bit(from);
    }
    pieces.push_back(p);
  }
  std::unordered_set<std::uint64_t> visited;
  std::vector<Piece> stack;
  const int anchor = std::countr_zero(nodes);
  for (const Piece& p : pieces) {
    if ((p.nodes >> anchor & 1u) && visited.insert(p.arcs).second) stack.push_back(p);
  }
  while (!stack.empty()) {
    const Piece cur = stack.back();
    stack.pop_back();
    if ((nodes & ~cur.nodes) == 0) return true;
    for (const Piece& p : pieces) {
      if ((p.arcs & cur.arcs) != 0 || (p.nodes & cur.nodes) == 0) continue;
      if ((p.nodes & ~cur.nodes) == 0) continue;
      const Piece merged{cur.arcs | p.arcs, cur.nodes | p.nodes};
      if (visited.insert(merged.arcs).second) stack.push_back(merged);
    }
  }
  return false;
}

std::vector<CriticalCycle> x_critical_cycles(const Network& net, const Configuration& x) {
  if (x.size() != net.size()) throw InputError("configuration does not match network size");
  const SignedStructure s(net);
  require_monotone(s);
  const auto h = critical_graph(net, s, x.bits());
  std::vector<CriticalCycle> out;
  for (const auto& nodes : simple_cycles(h)) out.push_back(make_cycle(nodes, s, x));
  return out;
}

std::vector<CriticalCycle> critical_cycles(const Network& net, const Limits& limits) {
  limits.require_eig(net.size(), "critical cycle search");
  const SignedStructure s(net);
  require_monotone(s);
  const int n = net.size();
  std::map<std::vector<ArcId>, CriticalCycle> unique;
  for (State r = 0; r < net.state_count(); ++r) {
    const State x = lex_state(r, n);
    const auto h = critical_graph(net, s, x);
    for (const auto& nodes : simple_cycles(h)) {
      CriticalCycle c = make_cycle(nodes, s, Configuration(n, x));
      std::vector<ArcId> key = c.arcs;
      std::sort(key.begin(), key.end());
      unique.try_emplace(std::move(key), std::move(c));
    }
  }
  std::vector<CriticalCycle> out;
  for (auto& [key, c] : unique) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const CriticalCycle& a, const CriticalCycle& b) {
    return a.length != b.length ? a.length < b.length : a.nodes < b.nodes;
  });
  return out;
}

std::optional<int> min_critical_size(const Network& net, const Limits& limits) {
  limits.require_eig(net.size(), "critical cycle search");
  const SignedStructure s(net);
  require_monotone(s);
  std::optional<int> best;
  for (State x = 0; x < net.state_count(); ++x) {
    if (popcount(net.unstable(x)) == 0) continue;
    const auto len = shortest_cycle(critical_graph(net, s, x));
    if (len && (!best || *len < *best)) best = len;
    if (best == 1) break;
  }
  return best;
}

bool has_hamiltonian_critical_cycle(const Network& net, const Limits& limits) {
  limits.require_eig(net.size(), "critical cycle search");
  const SignedStructure s(net);
  require_monotone(s);
  const State all = full_mask(net.size());
  for (State x = 0; x < net.state_count(); ++x) {
    if (net.unstable(x) != all) continue;
    if (has_hamiltonian_cycle(critical_graph(net, s, x))) return true;
  }
  return false;
}

}  // namespace bansync

#include "bansync/dynamics.hpp"

#include "bansync/errors.hpp"

#include <algorithm>
#include <deque>

namespace bansync {

bool is_elementary(const Network& net, State from, State to) noexcept {
  const State delta = from ^ to;
  return delta != 0 && (delta & ~net.unstable(from)) == 0;
}

Transition make_transition(const Network& net, const Configuration& from, const Configuration& to) {
  if (from.size() != net.size() || to.size() != net.size()) {
    throw InvalidTransitionError("transition " + from.str() + "->" + to.str() +
                                 " does not match network size " + std::to_string(net.size()));
  }
  if (from == to) throw InvalidTransitionError("transition " + from.str() + "->" + to.str() + " changes nothing");
  if (!is_elementary(net, from.bits(), to.bits())) {
    throw InvalidTransitionError("transition " + from.str() + "->" + to.str() +
                                 " switches automata that are stable in " + from.str());
  }
  return {from, to};
}

Transition make_synchronous(const Network& net, const Configuration& from, const Configuration& to) {
  Transition t = make_transition(net, from, to);
  if (t.size() < 2) {
    throw InvalidTransitionError("transition " + t.str() + " is asynchronous, expected size >= 2");
  }
  return t;
}

std::vector<State> ordered_subsets(State mask, int min_size, int max_size) {
  const std::vector<int> items = mask_indices(mask);
  const int m = static_cast<int>(items.size());
  std::vector<State> out;
  min_size = std::max(min_size, 1);
  max_size = std::min(max_size, m);
  std::vector<int> pick;
  for (int k = min_size; k <= max_size; ++k) {
    pick.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      State w = 0;
      for (int p : pick) w |= automaton_bit(items[static_cast<std::size_t>(p)]);
      out.push_back(w);
      int i = k - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
    }
  }
  return out;
}

std::vector<Transition> outgoing_transitions(const Network& net, const Configuration& x,
                                             std::optional<int> max_size) {
  if (x.size() != net.size()) throw InputError("configuration does not match network size");
  const int limit = max_size.value_or(net.size());
  std::vector<Transition> out;
  for (State w : ordered_subsets(net.unstable(x.bits()), 1, limit)) {
    out.push_back({x, Configuration(net.size(), x.bits() ^ w)});
  }
  return out;
}

const char* to_string(GraphVariant variant) {
  switch (variant) {
    case GraphVariant::SIG:
      return "sig";
    case GraphVariant::EIG:
      return "eig";
    case GraphVariant::AugmentedSIG:
      return "augmented-sig";
  }
  return "?";
}

const char* to_string(AttractorKind kind) {
  return kind == AttractorKind::Stable ? "stable" : "unstable";
}

const char* to_string(AttractorFate fate) {
  switch (fate) {
    case AttractorFate::Preserved:
      return "preserved";
    case AttractorFate::Grown:
      return "grown";
    case AttractorFate::Destroyed:
      return "destroyed";
  }
  return "?";
}

TransitionGraph::TransitionGraph(int n, GraphVariant variant, Digraph edges,
                                 std::optional<Transition> added)
    : n_(n), variant_(variant), added_(std::move(added)), edges_(std::move(edges)) {
  analyse();
}

void TransitionGraph::analyse() {
  const std::size_t count = edges_.node_count();
  SccResult scc = strongly_connected_components(edges_);
  component_ = std::move(scc.component);
  std::vector<char> terminal(static_cast<std::size_t>(scc.count), 1);
  std::vector<int> members(static_cast<std::size_t>(scc.count), 0);
  for (std::size_t u = 0; u < count; ++u) {
    const int c = component_[u];
    ++members[static_cast<std::size_t>(c)];
    for (auto v : edges_.successors(u)) {
      if (component_[v] != c) terminal[static_cast<std::size_t>(c)] = 0;
    }
  }
  // Attractors ordered by their lexicographically smallest state.
  std::vector<int> attractor_of_component(static_cast<std::size_t>(scc.count), -1);
  attractor_of_.assign(count, -1);
  for (State r = 0; r < count; ++r) {
    const State x = lex_state(r, n_);
    const int c = component_[x];
    if (!terminal[static_cast<std::size_t>(c)]) continue;
    int& a = attractor_of_component[static_cast<std::size_t>(c)];
    if (a < 0) {
      a = static_cast<int>(attractors_.size());
      attractors_.push_back({{}, members[static_cast<std::size_t>(c)] == 1 && edges_.successors(x).empty()
                                     ? AttractorKind::Stable
                                     : AttractorKind::Unstable});
    }
    attractors_[static_cast<std::size_t>(a)].states.push_back(x);
    attractor_of_[x] = a;
  }
  transient_count_ = static_cast<std::size_t>(
      std::count(attractor_of_.begin(), attractor_of_.end(), -1));
}

namespace {

Digraph build_edges(const Network& net, int max_size) {
  const std::size_t count = net.state_count();
  std::vector<std::uint32_t> offsets(count + 1, 0);
  std::vector<std::uint32_t> targets;
  for (State x = 0; x < count; ++x) {
    const State u = net.unstable(x);
    if (max_size == 1) {
      for (State m = u; m != 0; m &= m - 1) targets.push_back(x ^ (m & (~m + 1)));
    } else {
      for (State w : ordered_subsets(u, 1, max_size)) targets.push_back(x ^ w);
    }
    offsets[x + 1] = static_cast<std::uint32_t>(targets.size());
  }
  return Digraph(std::move(offsets), std::move(targets));
}

}  // namespace

TransitionGraph TransitionGraph::asynchronous(const Network& net, const Limits& limits) {
  limits.require_sig(net.size(), "asynchronous transition graph");
  return TransitionGraph(net.size(), GraphVariant::SIG, build_edges(net, 1), std::nullopt);
}

TransitionGraph TransitionGraph::elementary(const Network& net, const Limits& limits) {
  limits.require_eig(net.size(), "elementary transition graph");
  return TransitionGraph(net.size(), GraphVariant::EIG, build_edges(net, net.size()), std::nullopt);
}

TransitionGraph TransitionGraph::augmented(const Network& net, const Transition& added,
                                           const Limits& limits) {
  return asynchronous(net, limits).augment(net, added);
}

TransitionGraph TransitionGraph::augment(const Network& net, const Transition& added) const {
  if (variant_ != GraphVariant::SIG) {
    throw InvalidTransitionError("only an asynchronous transition graph can be augmented");
  }
  make_synchronous(net, added.from, added.to);
  return TransitionGraph(n_, GraphVariant::AugmentedSIG,
                         edges_.with_edge(added.from.bits(), added.to.bits()), added);
}

TransitionGraph build_graph(const Network& net, GraphVariant variant,
                            const std::optional<Transition>& added, const Limits& limits) {
  switch (variant) {
    case GraphVariant::SIG:
      return TransitionGraph::asynchronous(net, limits);
    case GraphVariant::EIG:
      return TransitionGraph::elementary(net, limits);
    case GraphVariant::AugmentedSIG:
      if (!added) throw InvalidTransitionError("an augmented graph needs a synchronous transition");
      return TransitionGraph::augmented(net, *added, limits);
  }
  throw InputError("unknown graph variant");
}

namespace {

StateSet closure(const Digraph& g, State z) {
  StateSet seen(g.node_count(), 0);
  std::vector<std::uint32_t> stack{z};
  seen[z] = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : g.successors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<State> members_lexicographic(const StateSet& set, int n) {
  std::vector<State> out;
  for (State r = 0; r < set.size(); ++r) {
    const State x = lex_state(r, n);
    if (set[x]) out.push_back(x);
  }
  return out;
}

}  // namespace

StateSet forward_closure(const TransitionGraph& graph, State z) { return closure(graph.edges(), z); }

std::vector<int> reachable_attractors(const TransitionGraph& graph, State z) {
  const StateSet orbit = forward_closure(graph, z);
  std::vector<char> hit(graph.attractors().size(), 0);
  for (State x = 0; x < orbit.size(); ++x) {
    if (orbit[x] && graph.recurrent(x)) hit[static_cast<std::size_t>(graph.attractor_index(x))] = 1;
  }
  std::vector<int> out;
  for (std::size_t a = 0; a < hit.size(); ++a) {
    if (hit[a]) out.push_back(static_cast<int>(a));
  }
  return out;
}

ReachabilitySets reachability(const TransitionGraph& graph, State z) {
  if (z >= graph.state_count()) throw InputError("configuration outside the graph");
  ReachabilitySets r;
  r.origin = z;
  const StateSet orbit = forward_closure(graph, z);
  StateSet backward = closure(graph.edges().reversed(), z);
  r.orbit = members_lexicographic(orbit, graph.size());
  r.backward = members_lexicographic(backward, graph.size());
  r.reachable = reachable_attractors(graph, z);
  r.recurrent = graph.recurrent(z);
  if (r.recurrent) {
    r.attractor = graph.attractor_index(z);
    for (State x : r.backward) {
      if (graph.attractor_index(x) != *r.attractor) r.basin.push_back(x);
    }
  }
  return r;
}

AttractorCorrespondence compare_attractors(const TransitionGraph& base, const TransitionGraph& augmented) {
  AttractorCorrespondence c;
  const auto& before = base.attractors();
  const auto& after = augmented.attractors();
  c.fate.assign(before.size(), AttractorFate::Destroyed);
  c.image.assign(before.size(), -1);
  c.contains.assign(after.size(), {});
  for (std::size_t a = 0; a < before.size(); ++a) {
    const State probe = before[a].states.front();
    const int b = augmented.attractor_index(probe);
    if (b < 0) continue;
    // Every state of a base attractor lands in the same augmented SCC.
    c.image[a] = b;
    c.contains[static_cast<std::size_t>(b)].push_back(static_cast<int>(a));
    c.fate[a] = after[static_cast<std::size_t>(b)].states.size() == before[a].states.size()
                    ? AttractorFate::Preserved
                    : AttractorFate::Grown;
  }
  for (std::size_t b = 0; b < after.size(); ++b) {
    if (c.contains[b].empty()) c.from_scratch.push_back(static_cast<int>(b));
  }
  for (State r = 0; r < base.state_count(); ++r) {
    const State x = lex_state(r, base.size());
    if (base.recurrent(x) && !augmented.recurrent(x)) c.became_transient.push_back(x);
    if (!base.recurrent(x) && augmented.recurrent(x)) c.became_recurrent.push_back(x);
  }
  return c;
}

AttractorCorrespondence check_attractor_preservation(const Network& net, const Transition& t,
                                                     const Limits& limits) {
  const TransitionGraph sig = TransitionGraph::asynchronous(net, limits);
  return compare_attractors(sig, sig.augment(net, t));
}

}  // namespace bansync

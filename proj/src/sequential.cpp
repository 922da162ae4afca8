#include "bansync/sequential.hpp"

#include "bansync/errors.hpp"
#include "bansync/structure.hpp"

#include <algorithm>
#include <deque>

namespace bansync {

int Derivation::max_step_size() const {
  int best = 0;
  for (const auto& s : steps) best = std::max(best, s.size());
  return best;
}

bool replays(const Network& net, const Derivation& d) {
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const Transition& s = d.steps[k];
    if (s.from.size() != net.size() || s.to.size() != net.size()) return false;
    if (!is_elementary(net, s.from.bits(), s.to.bits())) return false;
    if (k > 0 && !(d.steps[k - 1].to == s.from)) return false;
  }
  return true;
}

const char* to_string(Reading reading) {
  switch (reading) {
    case Reading::StrictlySmaller:
      return "strictly-smaller";
    case Reading::SmallerThanSize:
      return "smaller-than-n";
    case Reading::WithinSubcube:
      return "within-subcube";
  }
  return "?";
}

const char* to_string(Verdict verdict) {
  return verdict == Verdict::Normal ? "normal" : "sequentialisable";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Decomposition:
      return "decomposition";
    case Method::Search:
      return "search";
    case Method::Both:
      return "both";
  }
  return "?";
}

Decomposition decompose(const Network& net, const Transition& t) {
  return decompose(net, SignedStructure(net), t);
}

Decomposition decompose(const Network& net, const SignedStructure& structure, const Transition& t) {
  if (!structure.monotone()) {
    throw NonMonotoneNetworkError("block decomposition needs a monotone network");
  }
  make_synchronous(net, t.from, t.to);
  const int n = net.size();
  const State x = t.from.bits();
  const State delta = t.changed_mask();
  const std::vector<int> nodes = mask_indices(delta);
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < nodes.size(); ++p) position[static_cast<std::size_t>(nodes[p])] = static_cast<int>(p);

  // H: j -> i for frustrated arcs (j, i) with i, j in Δ.
  std::vector<std::vector<std::uint32_t>> lists(nodes.size());
  for (int i : nodes) {
    for (State src = structure.frustrated_sources(i, x) & delta; src != 0; src &= src - 1) {
      const int j = std::countr_zero(src);
      if (j == i) continue;
      lists[static_cast<std::size_t>(position[static_cast<std::size_t>(j)])].push_back(
          static_cast<std::uint32_t>(position[static_cast<std::size_t>(i)]));
    }
  }
  for (auto& l : lists) std::sort(l.begin(), l.end());
  const SccResult scc = strongly_connected_components(Digraph::from_lists(lists));

  // Tarjan numbers sink components first, so an arc j -> i gives
  // component(i) <= component(j): heads are flipped no later than tails.
  Decomposition out;
  out.blocks.assign(static_cast<std::size_t>(scc.count), {});
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    out.blocks[static_cast<std::size_t>(scc.component[p])].push_back(nodes[p]);
  }
  State current = x;
  for (const auto& block : out.blocks) {
    const State w = indices_mask(block, n);
    if ((w & ~net.unstable(current)) != 0) {
      throw StepInvalidError("block decomposition of " + t.str() + " produced an invalid step from " +
                             format_state(current, n));
    }
    out.derivation.steps.push_back({Configuration(n, current), Configuration(n, current ^ w)});
    current ^= w;
  }
  return out;
}

namespace {

/// Shortest derivation of at least two steps from x to y using transitions
/// of size <= max_step that only switch automata in `allowed`.
std::optional<std::vector<State>> search_path(const Network& net, State x, State y, int max_step,
                                              State allowed) {
  const std::size_t count = net.state_count();
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  // Node (z, phase): phase = min(steps taken, 2).
  std::vector<std::uint32_t> parent(3 * count, kNone);
  auto id = [count](State z, int phase) { return static_cast<std::size_t>(phase) * count + z; };
  std::deque<std::pair<State, int>> queue;
  parent[id(x, 0)] = static_cast<std::uint32_t>(id(x, 0));
  queue.emplace_back(x, 0);
  std::optional<std::size_t> goal;
  while (!queue.empty() && !goal) {
    const auto [z, phase] = queue.front();
    queue.pop_front();
    const int next_phase = std::min(phase + 1, 2);
    for (State w : ordered_subsets(net.unstable(z) & allowed, 1, max_step)) {
      const State v = z ^ w;
      const std::size_t vid = id(v, next_phase);
      if (parent[vid] != kNone) continue;
      parent[vid] = static_cast<std::uint32_t>(id(z, phase));
      if (v == y && next_phase == 2) {
        goal = vid;
        break;
      }
      queue.emplace_back(v, next_phase);
    }
  }
  if (!goal) return std::nullopt;
  std::vector<State> path;
  for (std::size_t cur = *goal;; cur = parent[cur]) {
    path.push_back(static_cast<State>(cur % count));
    if (parent[cur] == cur) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Derivation to_derivation(const std::vector<State>& path, int n) {
  Derivation d;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    d.steps.push_back({Configuration(n, path[k]), Configuration(n, path[k + 1])});
  }
  return d;
}

/// States reachable from x with transitions of size <= max_step.
std::vector<char> reach_set(const Network& net, State x, int max_step) {
  std::vector<char> seen(net.state_count(), 0);
  std::vector<State> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    const State z = stack.back();
    stack.pop_back();
    const State u = net.unstable(z);
    for (State w = u; w != 0; w = (w - 1) & u) {
      if (popcount(w) > max_step) continue;
      const State v = z ^ w;
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

ReachOracle::ReachOracle(const Network& net)
    : net_(&net), cache_(net.state_count() * static_cast<std::size_t>(net.size() + 1)) {}

bool ReachOracle::reaches(State x, State y, int max_step) {
  max_step = std::clamp(max_step, 0, net_->size());
  auto& slot = cache_[x * static_cast<std::size_t>(net_->size() + 1) + static_cast<std::size_t>(max_step)];
  if (slot.empty()) slot = reach_set(*net_, x, max_step);
  return slot[y] != 0;
}

std::optional<Derivation> ReachOracle::witness(State x, State y, int max_step) const {
  if (max_step < 1) return std::nullopt;
  auto path = search_path(*net_, x, y, max_step, full_mask(net_->size()));
  if (!path) return std::nullopt;
  return to_derivation(*path, net_->size());
}

SequentialisationVerdict is_sequentialisable(const Network& net, const Transition& t, Reading reading,
                                             const Limits& limits) {
  limits.require_eig(net.size(), "sequentialisation search");
  make_synchronous(net, t.from, t.to);
  const int n = net.size();
  const State x = t.from.bits();
  const State y = t.to.bits();
  const State allowed = reading == Reading::WithinSubcube ? t.changed_mask() : full_mask(n);
  const int max_step = reading == Reading::SmallerThanSize ? n - 1 : t.size() - 1;

  SequentialisationVerdict v;
  v.transition = t;
  if (auto path = search_path(net, x, y, 1, allowed)) {
    v.verdict = Verdict::Sequentialisable;
    v.totally = true;
    v.witness = to_derivation(*path, n);
  } else if (max_step >= 2) {
    if (auto longer = search_path(net, x, y, max_step, allowed)) {
      v.verdict = Verdict::Sequentialisable;
      v.witness = to_derivation(*longer, n);
    }
  }
  if (v.verdict == Verdict::Sequentialisable && SignedStructure(net).monotone()) {
    try {
      if (decompose(net, t).split()) v.method = Method::Both;
    } catch (const StepInvalidError&) {
      // Some blocks are not transitions once n >= 4; the search witness still holds.
    }
  }
  return v;
}

std::vector<SequentialisationVerdict> normal_transitions(const Network& net, Reading reading,
                                                         const Limits& limits) {
  limits.require_eig(net.size(), "normal transition enumeration");
  const int n = net.size();
  std::vector<SequentialisationVerdict> out;
  for (State r = 0; r < net.state_count(); ++r) {
    const State x = lex_state(r, n);
    const State u = net.unstable(x);
    const int m = popcount(u);
    if (m < 2) continue;
    // Reach sets per step bound, shared by every transition of one size.
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(m) + 1);
    for (State w : ordered_subsets(u, 2, m)) {
      const Transition t{Configuration(n, x), Configuration(n, x ^ w)};
      bool normal = false;
      if (reading == Reading::StrictlySmaller) {
        const int k = popcount(w);
        auto& rs = reach[static_cast<std::size_t>(k)];
        if (rs.empty()) rs = reach_set(net, x, k - 1);
        normal = !rs[x ^ w];
      } else {
        normal = is_sequentialisable(net, t, reading, limits).verdict == Verdict::Normal;
      }
      if (normal) out.push_back({t, Verdict::Normal, std::nullopt, false, Method::Search});
    }
  }
  return out;
}

bool LemmaReport::holds() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.holds; });
}

}  // namespace bansync

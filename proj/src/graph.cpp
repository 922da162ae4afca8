#include "bansync/graph.hpp"

#include <algorithm>
#include <limits>

namespace bansync {

Digraph Digraph::from_lists(const std::vector<std::vector<std::uint32_t>>& lists) {
  std::vector<std::uint32_t> offsets(lists.size() + 1, 0);
  std::vector<std::uint32_t> targets;
  for (std::size_t u = 0; u < lists.size(); ++u) {
    targets.insert(targets.end(), lists[u].begin(), lists[u].end());
    offsets[u + 1] = static_cast<std::uint32_t>(targets.size());
  }
  return Digraph(std::move(offsets), std::move(targets));
}

Digraph Digraph::reversed() const {
  const std::size_t n = node_count();
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (auto v : targets_) ++offsets[v + 1];
  for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
  std::vector<std::uint32_t> targets(targets_.size());
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : successors(u)) targets[fill[v]++] = static_cast<std::uint32_t>(u);
  }
  return Digraph(std::move(offsets), std::move(targets));
}

Digraph Digraph::with_edge(std::uint32_t u, std::uint32_t v) const {
  auto succ = successors(u);
  if (std::find(succ.begin(), succ.end(), v) != succ.end()) return *this;
  std::vector<std::uint32_t> offsets(offsets_);
  std::vector<std::uint32_t> targets;
  targets.reserve(targets_.size() + 1);
  targets.insert(targets.end(), targets_.begin(), targets_.begin() + offsets_[u + 1]);
  targets.push_back(v);
  targets.insert(targets.end(), targets_.begin() + offsets_[u + 1], targets_.end());
  for (std::size_t w = u + 1; w < offsets.size(); ++w) ++offsets[w];
  return Digraph(std::move(offsets), std::move(targets));
}

SccResult strongly_connected_components(const Digraph& g) {
  constexpr int kUnvisited = -1;
  const std::size_t n = g.node_count();
  SccResult out;
  out.component.assign(n, -1);
  std::vector<int> index(n, kUnvisited);
  std::vector<int> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t node;
    std::uint32_t next;
  };
  std::vector<Frame> call;
  int counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({static_cast<std::uint32_t>(root), 0});
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto succ = g.successors(f.node);
      if (f.next < succ.size()) {
        const std::uint32_t v = succ[f.next++];
        if (index[v] == kUnvisited) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[f.node] = std::min(low[f.node], index[v]);
        }
        continue;
      }
      const std::uint32_t u = f.node;
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[u]);
      }
      if (low[u] == index[u]) {
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.component[w] = out.count;
        } while (w != u);
        ++out.count;
      }
    }
  }
  return out;
}

}  // namespace bansync

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bansync {

/// Compressed adjacency lists over nodes 0..node_count()-1.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::vector<std::uint32_t> offsets, std::vector<std::uint32_t> targets)
      : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

  static Digraph from_lists(const std::vector<std::vector<std::uint32_t>>& lists);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const std::uint32_t> successors(std::size_t u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

  Digraph reversed() const;

  /// Copy with one extra edge appended to u's list (a no-op if already present).
  Digraph with_edge(std::uint32_t u, std::uint32_t v) const;

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

/// Components are numbered in completion order of Tarjan's algorithm, so an
/// edge u -> v always satisfies component[u] >= component[v].
struct SccResult {
  std::vector<int> component;
  int count = 0;
};

/// Iterative Tarjan; roots and successors are visited in index order.
SccResult strongly_connected_components(const Digraph& g);

}  // namespace bansync

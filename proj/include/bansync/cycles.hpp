#pragma once

#include "bansync/configuration.hpp"
#include "bansync/network.hpp"
#include "bansync/structure.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bansync {

/// A simple structural cycle that is critical at `witness`: all its nodes are
/// unstable and all its arcs frustrated there.
struct CriticalCycle {
  std::vector<int> nodes;  ///< visiting order, starting at the smallest node
  std::vector<ArcId> arcs; ///< arcs in visiting order
  int length = 0;
  int sign = 1;
  Configuration witness;
};

/// Successor masks of H_x: j -> i iff i, j ∈ U(x) and (j, i) ∈ FRUS(x).
/// Requires a monotone structure.
std::vector<State> critical_graph(const Network& net, const SignedStructure& structure, State x);

/// Simple directed cycles (Johnson's algorithm) of the digraph given by
/// successor masks. Loops count as cycles of length 1. Each cycle is listed
/// from its smallest node; output is ordered by length, then node sequence.
std::vector<std::vector<int>> simple_cycles(std::span<const State> successors);

/// Length of a shortest directed cycle, or nullopt if acyclic.
std::optional<int> shortest_cycle(std::span<const State> successors);

/// True if the digraph has a Hamiltonian cycle (a loop when it has one node).
bool has_hamiltonian_cycle(std::span<const State> successors);

/// True if some closed walk without repeated arcs visits every node in
/// `nodes`. Limited to 8 nodes.
bool covered_by_closed_trail(std::span<const State> successors, State nodes);

/// All simple x-critical cycles. Throws NonMonotoneNetworkError.
std::vector<CriticalCycle> x_critical_cycles(const Network& net, const Configuration& x);

/// Critical cycles of the network, deduplicated by arc set; each keeps its
/// lexicographically first witness. Throws NonMonotoneNetworkError, SizeCeilingError.
std::vector<CriticalCycle> critical_cycles(const Network& net, const Limits& limits = {});

/// Smallest length of a critical cycle, nullopt if there is none.
std::optional<int> min_critical_size(const Network& net, const Limits& limits = {});

/// True if some critical cycle passes through every automaton.
bool has_hamiltonian_critical_cycle(const Network& net, const Limits& limits = {});

}  // namespace bansync

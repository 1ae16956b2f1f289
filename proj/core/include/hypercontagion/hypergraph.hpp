#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hypercontagion/rng.hpp"

namespace hc {

using NodeId = std::uint32_t;

/// A k-th order hyperedge joins k+1 distinct nodes. Canonical form: members
/// sorted ascending.
struct Hyperedge {
  std::vector<NodeId> members;

  int order() const { return static_cast<int>(members.size()) - 1; }
  bool operator==(const Hyperedge&) const = default;
};

/// Immutable hypergraph: node count plus hyperedges grouped by order 1..K.
///
/// Edges of each order are stored as a flat member array with stride
/// (order + 1), sorted lexicographically; this is the canonical form used for
/// equality, hashing and serialization. Instances are safe to share read-only
/// across threads.
class Hypergraph {
 public:
  Hypergraph() = default;

  std::uint32_t n_nodes() const { return n_nodes_; }
  int max_order() const { return static_cast<int>(flat_.size()); }

  std::size_t edge_count(int order) const {
    if (order < 1 || order > max_order()) return 0;
    return flat_[order - 1].size() / (order + 1);
  }
  std::size_t total_edges() const;

  /// N_k for k = 1..max_order, zero for absent orders.
  std::vector<std::size_t> hyperedge_counts() const;

  std::span<const NodeId> edge(int order, std::size_t index) const {
    const auto stride = static_cast<std::size_t>(order) + 1;
    return {flat_[order - 1].data() + index * stride, stride};
  }

  struct EdgeRef {
    int order;
    std::span<const NodeId> members;
  };
  /// Addresses edges of all orders through one flat index in
  /// [0, total_edges()); used for uniform hyperedge selection.
  EdgeRef edge_at(std::size_t flat_index) const;

  /// Flat member array for one order, stride = order + 1.
  const std::vector<NodeId>& flat(int order) const { return flat_[order - 1]; }

  bool operator==(const Hypergraph&) const = default;

 private:
  friend class HypergraphBuilder;

  std::uint32_t n_nodes_ = 0;
  std::vector<std::vector<NodeId>> flat_;  // index k-1 -> members of order-k edges
};

/// Accumulates edges, then canonicalizes and validates on build().
/// Duplicate hyperedges within an order are rejected.
class HypergraphBuilder {
 public:
  HypergraphBuilder(std::uint32_t n_nodes, int max_order);

  /// Copies, sorts and validates the member list.
  void add_edge(std::span<const NodeId> members);
  void add_edge(std::initializer_list<NodeId> members);

  /// Fast path for generators that already emit sorted distinct members.
  void add_sorted_edge(std::span<const NodeId> members);

  Hypergraph build();

 private:
  Hypergraph g_;
};

// Generators -----------------------------------------------------------------

/// Complete pairwise graph on n nodes, n >= 2.
Hypergraph generate_complete(std::uint32_t n);

/// G(n, p) pairwise graph; each unordered pair kept independently with
/// probability p. Deterministic given the seed.
Hypergraph generate_er(std::uint32_t n, double p, std::uint64_t seed);

/// rows x cols triangular lattice (square grid plus one diagonal per cell).
/// With periodic boundaries every node has degree exactly 6 and there are
/// 3 * rows * cols edges. Requires rows, cols >= 3.
Hypergraph generate_triangular_lattice(int rows, int cols, bool periodic);

/// Lifts a pairwise graph to its clique complex up to max_order: one order-k
/// hyperedge per (k+1)-clique, k = 1..max_order. Order-1 edges equal g's.
Hypergraph clique_complex(const Hypergraph& g, int max_order);

/// The order-1 restriction of g (same nodes, only pairwise edges).
Hypergraph order1_restriction(const Hypergraph& g);

// Serialization ---------------------------------------------------------------
//
// Line-oriented text format: '#' comment lines, a header line
// "<n_nodes> <max_order>", then one hyperedge per line as space-separated
// sorted node indices.

void save_hypergraph(const Hypergraph& g, const std::filesystem::path& path);
Hypergraph load_hypergraph(const std::filesystem::path& path);

}  // namespace hc

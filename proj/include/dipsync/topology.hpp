#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace dipsync {

using NodeId = std::uint16_t;
using Tick = std::int64_t;

struct Edge {
  NodeId u;
  NodeId v;  // always u < v

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Corner { TopLeft, TopRight, BottomLeft, BottomRight };

/// Undirected network with a distinguished gateway node.
///
/// Edges are stored in canonical order (sorted by (u, v) with u < v); that
/// order is also the order in which link realizations consume random draws.
/// A Topology may be disconnected; connectivity is checked by
/// connectivity_layers() and by the simulation kernel.
class Topology {
 public:
  /// Throws std::invalid_argument on self-loops, out-of-range endpoints,
  /// fewer than two nodes, more than 65536 nodes, or a gateway outside [0, N).
  /// Duplicate edges are collapsed.
  Topology(std::size_t node_count, NodeId gateway, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  NodeId gateway() const noexcept { return gateway_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId n) const { return adjacency_.at(n); }

  /// Index of edge {a, b} in edges(), or -1 if absent.
  std::ptrdiff_t edge_index(NodeId a, NodeId b) const;
  /// Edge indices parallel to neighbors(n).
  std::span<const std::size_t> incident_edges(NodeId n) const { return incident_.at(n); }

  bool adjacent(NodeId a, NodeId b) const { return edge_index(a, b) >= 0; }

 private:
  NodeId gateway_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// 4-neighbour grid, gateway at the chosen corner, ids in BFS order from the
/// gateway with row-major tie-breaking.
Topology make_grid(std::size_t rows, std::size_t cols, Corner gateway_corner = Corner::TopLeft);

/// Path graph 0 - 1 - ... - (n-1) with the gateway at node 0.
Topology make_line(std::size_t n);

/// Star with the gateway at the centre (id 0) and leaves 1..n-1.
Topology make_star(std::size_t n);

/// Ten-node irregular mesh used for the link-availability experiments.
Topology make_channel_test_mesh();

/// Plain-text edge list: first line "N gateway_id", then one "u v" per line.
/// Blank lines and lines starting with '#' are skipped.
Topology load_edge_list(const std::filesystem::path& path);
Topology parse_edge_list(const std::string& text);

struct LayerAssignment {
  std::vector<int> layer;  // indexed by NodeId; 0 for the gateway
  int max_layer = 0;       // L
};

/// BFS hop distance from the gateway. Throws UnreachableNode naming the
/// lowest-id node with no path to the gateway.
LayerAssignment connectivity_layers(const Topology& topo);

struct LinkRealization {
  std::vector<bool> active;  // parallel to Topology::edges()
};

/// Each edge active independently with probability p; one uniform draw per
/// edge in canonical edge order. Throws std::invalid_argument for p outside
/// [0, 1].
LinkRealization sample_links(const Topology& topo, double p, std::mt19937_64& rng);

}  // namespace dipsync

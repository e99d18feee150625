#include "dipsync/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dipsync/errors.hpp"

namespace dipsync {

Topology::Topology(std::size_t node_count, NodeId gateway, std::vector<Edge> edges)
    : gateway_(gateway) {
  if (node_count < 2) throw std::invalid_argument("topology needs at least two nodes");
  if (node_count > 65536) throw std::invalid_argument("node ids must fit in two bytes");
  if (gateway >= node_count) throw std::invalid_argument("gateway id out of range");

  for (auto& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    }
    if (e.u >= node_count || e.v >= node_count) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + " " +
                                  std::to_string(e.v));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.resize(node_count);
  incident_.resize(node_count);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adjacency_[edges_[i].u].push_back(edges_[i].v);
    adjacency_[edges_[i].v].push_back(edges_[i].u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  for (std::size_t n = 0; n < node_count; ++n) {
    for (NodeId m : adjacency_[n]) {
      incident_[n].push_back(static_cast<std::size_t>(edge_index(static_cast<NodeId>(n), m)));
    }
  }
}

std::ptrdiff_t Topology::edge_index(NodeId a, NodeId b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

Topology make_grid(std::size_t rows, std::size_t cols, Corner gateway_corner) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be positive");
  if (rows * cols < 2) throw std::invalid_argument("grid needs at least two nodes");

  const std::size_t gr = (gateway_corner == Corner::BottomLeft || gateway_corner == Corner::BottomRight) ? rows - 1 : 0;
  const std::size_t gc = (gateway_corner == Corner::TopRight || gateway_corner == Corner::BottomRight) ? cols - 1 : 0;
  auto hop = [&](std::size_t r, std::size_t c) {
    return (r > gr ? r - gr : gr - r) + (c > gc ? c - gc : gc - c);
  };

  // Cells sorted by (distance from gateway, row, col); position in that order is the id.
  std::vector<std::size_t> cells(rows * cols);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  std::stable_sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) {
    return hop(a / cols, a % cols) < hop(b / cols, b % cols);
  });
  std::vector<NodeId> id_of(rows * cols);
  for (std::size_t i = 0; i < cells.size(); ++i) id_of[cells[i]] = static_cast<NodeId>(i);

  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto here = id_of[r * cols + c];
      if (c + 1 < cols) edges.push_back({here, id_of[r * cols + c + 1]});
      if (r + 1 < rows) edges.push_back({here, id_of[(r + 1) * cols + c]});
    }
  }
  return Topology(rows * cols, id_of[gr * cols + gc], std::move(edges));
}

Topology make_line(std::size_t n) {
  if (n < 2) throw std::invalid_argument("line needs at least two nodes");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
  }
  return Topology(n, 0, std::move(edges));
}

Topology make_star(std::size_t n) {
  if (n < 2) throw std::invalid_argument("star needs at least two nodes");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, static_cast<NodeId>(i)});
  return Topology(n, 0, std::move(edges));
}

Topology make_channel_test_mesh() {
  // Two-wide ladder with a gateway apex: every node has at least two
  // neighbours and two disjoint paths towards the gateway.
  return Topology(10, 0,
                  {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5},
                   {4, 6}, {5, 6}, {5, 7}, {6, 8}, {7, 8}, {7, 9}, {8, 9}});
}

Topology parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::size_t n = 0;
  long long gateway = 0;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long a = 0, b = 0;
    if (!(fields >> a >> b)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected two integers");
    }
    std::string rest;
    if (fields >> rest) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": trailing data");
    }
    if (!have_header) {
      if (a < 2 || a > 65536) throw std::invalid_argument("edge list: bad node count");
      n = static_cast<std::size_t>(a);
      gateway = b;
      have_header = true;
      continue;
    }
    if (a < 0 || b < 0 || a >= static_cast<long long>(n) || b >= static_cast<long long>(n)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": node out of range");
    }
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
  }
  if (!have_header) throw std::invalid_argument("edge list: missing header line");
  if (gateway < 0 || gateway >= static_cast<long long>(n)) {
    throw std::invalid_argument("edge list: gateway out of range");
  }
  return Topology(n, static_cast<NodeId>(gateway), std::move(edges));
}

Topology load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

LayerAssignment connectivity_layers(const Topology& topo) {
  LayerAssignment out;
  out.layer.assign(topo.node_count(), -1);
  out.layer[topo.gateway()] = 0;
  std::deque<NodeId> frontier{topo.gateway()};
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : topo.neighbors(u)) {
      if (out.layer[v] < 0) {
        out.layer[v] = out.layer[u] + 1;
        out.max_layer = std::max(out.max_layer, out.layer[v]);
        frontier.push_back(v);
      }
    }
  }
  for (std::size_t n = 0; n < out.layer.size(); ++n) {
    if (out.layer[n] < 0) {
      throw UnreachableNode(static_cast<unsigned>(n),
                            "node " + std::to_string(n) + " has no path to the gateway");
    }
  }
  return out;
}

LinkRealization sample_links(const Topology& topo, double p, std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("link probability must lie in [0, 1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinkRealization out;
  out.active.resize(topo.edges().size());
  for (std::size_t i = 0; i < out.active.size(); ++i) out.active[i] = unit(rng) < p;
  return out;
}

}  // namespace dipsync

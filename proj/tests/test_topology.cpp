#include <algorithm>
#include <random>

#include "doctest.h"
#include "dipsync/errors.hpp"
#include "dipsync/topology.hpp"

using namespace dipsync;

namespace {

// Independent BFS by repeated relaxation over the edge list.
std::vector<int> relax_distances(const Topology& t) {
  std::vector<int> d(t.node_count(), 1 << 20);
  d[t.gateway()] = 0;
  for (std::size_t pass = 0; pass < t.node_count(); ++pass) {
    for (const auto& e : t.edges()) {
      d[e.u] = std::min(d[e.u], d[e.v] + 1);
      d[e.v] = std::min(d[e.v], d[e.u] + 1);
    }
  }
  return d;
}

}  // namespace

TEST_CASE("grid 4x4 has 24 edges and gateway 0") {
  const auto g = make_grid(4, 4);
  CHECK(g.node_count() == 16);
  CHECK(g.edges().size() == 24);
  CHECK(g.gateway() == 0);
}

TEST_CASE("grid 3x3 layers") {
  const auto g = make_grid(3, 3);
  const auto l = connectivity_layers(g);
  CHECK(l.max_layer == 4);
  std::vector<int> non_gw;
  for (std::size_t i = 0; i < 9; ++i) {
    if (i != g.gateway()) non_gw.push_back(l.layer[i]);
  }
  std::sort(non_gw.begin(), non_gw.end());
  CHECK(non_gw == std::vector<int>{1, 1, 2, 2, 2, 3, 3, 4});
}

TEST_CASE("grid ids follow hop distance") {
  for (auto corner : {Corner::TopLeft, Corner::TopRight, Corner::BottomLeft, Corner::BottomRight}) {
    const auto g = make_grid(3, 5, corner);
    CHECK(g.gateway() == 0);
    const auto l = connectivity_layers(g);
    for (std::size_t i = 1; i < g.node_count(); ++i) CHECK(l.layer[i - 1] <= l.layer[i]);
    CHECK(l.max_layer == 2 + 4);
  }
}

TEST_CASE("grid L = (r-1)+(c-1) for corner gateway") {
  for (std::size_t r = 1; r <= 6; ++r) {
    for (std::size_t c = 1; c <= 6; ++c) {
      if (r * c < 2) continue;
      CHECK(connectivity_layers(make_grid(r, c)).max_layer == static_cast<int>(r + c - 2));
    }
  }
}

TEST_CASE("minimal grid and bad dimensions") {
  const auto g = make_grid(1, 2);
  CHECK(g.node_count() == 2);
  CHECK(g.edges().size() == 1);
  CHECK_THROWS_AS(make_grid(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 1), std::invalid_argument);
}

TEST_CASE("line") {
  const auto l16 = make_line(16);
  CHECK(l16.edges().size() == 15);
  CHECK(connectivity_layers(l16).max_layer == 15);

  const auto l2 = make_line(2);
  CHECK(l2.edges().size() == 1);
  CHECK(connectivity_layers(l2).layer[1] == 1);

  const auto l5 = make_line(5);
  const auto nb = l5.neighbors(3);
  CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{2, 4});

  const auto l4 = connectivity_layers(make_line(4));
  CHECK(l4.layer == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(make_line(1), std::invalid_argument);
}

TEST_CASE("star layers are all one") {
  const auto s = make_star(7);
  const auto l = connectivity_layers(s);
  CHECK(l.max_layer == 1);
  for (std::size_t i = 1; i < 7; ++i) CHECK(l.layer[i] == 1);
}

TEST_CASE("layers agree with relaxation and are edge-Lipschitz") {
  std::vector<Topology> nets{make_grid(4, 4), make_grid(3, 7, Corner::BottomRight), make_line(9),
                             make_star(5), make_channel_test_mesh()};
  for (const auto& t : nets) {
    const auto l = connectivity_layers(t);
    CHECK(l.layer == relax_distances(t));
    for (const auto& e : t.edges()) CHECK(std::abs(l.layer[e.u] - l.layer[e.v]) <= 1);
    for (std::size_t i = 0; i < t.node_count(); ++i) {
      if (i == t.gateway()) continue;
      CHECK((l.layer[i] == 1) == t.adjacent(static_cast<NodeId>(i), t.gateway()));
    }
  }
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(Topology(3, 0, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(3, 0, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(3, 5, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(1, 0, {}), std::invalid_argument);
  const Topology dup(3, 0, {{1, 0}, {0, 1}, {2, 1}});
  CHECK(dup.edges().size() == 2);
  CHECK(dup.edges()[0] == Edge{0, 1});
  CHECK(dup.edge_index(2, 1) == 1);
  CHECK(dup.edge_index(0, 2) == -1);
}

TEST_CASE("disconnected node is named") {
  const Topology t(4, 0, {{0, 1}, {1, 2}});
  try {
    connectivity_layers(t);
    FAIL("expected UnreachableNode");
  } catch (const UnreachableNode& e) {
    CHECK(e.node() == 3);
  }
}

TEST_CASE("edge list parsing") {
  const auto t = parse_edge_list("# comment\n4 2\n0 1\n\n1 2\n2 3\n");
  CHECK(t.node_count() == 4);
  CHECK(t.gateway() == 2);
  CHECK(t.edges().size() == 3);
  CHECK_THROWS_AS(parse_edge_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("3 0\n0 7\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("3 0\n0 x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("3 0\n0 1 2\n"), std::invalid_argument);
}

TEST_CASE("channel test mesh") {
  const auto m = make_channel_test_mesh();
  CHECK(m.node_count() == 10);
  CHECK(m.edges().size() == 14);
  for (std::size_t i = 0; i < 10; ++i) CHECK(m.neighbors(static_cast<NodeId>(i)).size() >= 2);
  CHECK(connectivity_layers(m).max_layer == 5);
}

TEST_CASE("sample_links") {
  const auto m = make_channel_test_mesh();
  std::mt19937_64 rng(1);
  const auto all = sample_links(m, 1.0, rng);
  CHECK(std::all_of(all.active.begin(), all.active.end(), [](bool b) { return b; }));
  const auto none = sample_links(m, 0.0, rng);
  CHECK(std::none_of(none.active.begin(), none.active.end(), [](bool b) { return b; }));
  CHECK_THROWS_AS(sample_links(m, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_links(m, 1.5, rng), std::invalid_argument);

  SUBCASE("law of large numbers on a 10-edge graph") {
    const Topology ten(11, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}});
    REQUIRE(ten.edges().size() == 10);
    std::mt19937_64 r(42);
    std::size_t on = 0;
    for (int k = 0; k < 10000; ++k) {
      for (bool b : sample_links(ten, 0.5, r).active) on += b ? 1 : 0;
    }
    CHECK(std::abs(static_cast<double>(on) / 1e5 - 0.5) < 0.02);
  }

  SUBCASE("same seed, same sequence") {
    std::mt19937_64 a(9), b(9);
    for (int k = 0; k < 50; ++k) CHECK(sample_links(m, 0.3, a).active == sample_links(m, 0.3, b).active);
  }
}

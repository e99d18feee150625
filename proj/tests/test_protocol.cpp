#include <random>
#include <vector>

#include "doctest.h"
#include "dipsync/errors.hpp"
#include "dipsync/protocol.hpp"

using namespace dipsync;

namespace {

NodeState node(NodeId id, double t, std::size_t N = 16) {
  NodeClocks c;
  c.tau0 = c.t_c = t;
  return make_node_state(id, c, id, N);
}

SyncMessage msg(ProtocolKind k, double t, std::uint8_t s = 0, std::uint16_t c = 0, NodeId from = 1) {
  return SyncMessage{k, from, t, s, c};
}

}  // namespace

TEST_CASE("neighborhood_average") {
  CHECK(neighborhood_average(std::vector<double>{0.5, 0.5, 0.5}) == 0.5);
  CHECK(neighborhood_average(std::vector<double>{0.0, 1.0}) == 0.5);
  CHECK(neighborhood_average(std::vector<double>{0.2, 0.4, 0.9}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(neighborhood_average(std::vector<double>{}), std::invalid_argument);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 9);
    for (auto& x : v) x = u(rng);
    const double m = neighborhood_average(v);
    CHECK(m >= *std::min_element(v.begin(), v.end()));
    CHECK(m <= *std::max_element(v.begin(), v.end()));
  }
}

TEST_CASE("tsau receive accumulates") {
  auto st = node(3, 0.9);
  begin_tick(st);
  tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.4));
  CHECK(st.clockSum == 0.4);
  CHECK(st.totalReceived == 1);
  CHECK(st.t_av == 0.4);
  tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.6));
  CHECK(st.t_av == doctest::Approx(0.5).epsilon(1e-15));

  auto three = node(3, 0.9);
  begin_tick(three);
  for (double t : {0.1, 0.2, 0.6}) tsau_on_receive(three, msg(ProtocolKind::TSAU, t));
  CHECK(three.t_av == doctest::Approx(0.3).epsilon(1e-15));

  CHECK_THROWS_AS(tsau_on_receive(st, msg(ProtocolKind::UAF, 0.1)), ProtocolViolation);
}

TEST_CASE("tsau slot schedule") {
  auto st = node(3, 0.9, 16);
  CHECK(st.next_slot == 3);
  for (Tick k = 1; k < 3; ++k) {
    begin_tick(st);
    tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.1));
    tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.3));
    CHECK_FALSE(tsau_on_slot(st, k));
  }
  begin_tick(st);
  tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.1));
  tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.3));
  CHECK(tsau_on_slot(st, 3));
  CHECK(st.estimate() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(st.next_slot == 18);
  CHECK(st.totalReceived == 0);

  SUBCASE("a single message leaves t_i unchanged") {
    auto one = node(3, 0.9, 16);
    begin_tick(one);
    tsau_on_receive(one, msg(ProtocolKind::TSAU, 0.1));
    CHECK_FALSE(tsau_on_slot(one, 3));
    CHECK(one.estimate() == 0.9);
    CHECK(one.next_slot == 18);
  }
}

TEST_CASE("tsau slots partition ticks") {
  const std::size_t N = 16;
  std::vector<NodeState> nodes;
  for (NodeId i = 1; i < N; ++i) nodes.push_back(node(i, 0.5, N));
  for (Tick k = 1; k <= 200; ++k) {
    int fired = 0;
    for (auto& st : nodes) {
      begin_tick(st);
      tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.1));
      tsau_on_receive(st, msg(ProtocolKind::TSAU, 0.2));
      fired += tsau_on_slot(st, k) ? 1 : 0;
    }
    CHECK(fired == 1);
  }
}

TEST_CASE("uaf receive") {
  SUBCASE("opposite status triggers and adopts status") {
    auto st = node(2, 0.1);
    begin_tick(st);
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.7, 1));
    CHECK(st.s == 1);
    CHECK(st.triggered);
    CHECK(uaf_on_boundary(st, 5));
    CHECK(st.estimate() == 0.7);
    CHECK(st.last_flip == 5);
  }
  SUBCASE("same status leaves the node alone") {
    auto st = node(2, 0.1);
    st.s = 1;
    begin_tick(st);
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.7, 1));
    CHECK(st.s == 1);
    CHECK(st.t_av == st.estimate());
    CHECK_FALSE(uaf_on_boundary(st, 5));
    CHECK(st.estimate() == 0.1);
  }
  SUBCASE("two opposite messages in one tick") {
    auto st = node(2, 0.1);
    begin_tick(st);
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.2, 1));
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.6, 1));
    CHECK(st.t_av == doctest::Approx(0.4).epsilon(1e-15));
  }
  SUBCASE("a trigger averages the whole neighbourhood heard that tick") {
    auto st = node(2, 0.1);
    begin_tick(st);
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.3, 0));
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.6, 1));
    CHECK(uaf_on_boundary(st, 1));
    CHECK(st.estimate() == doctest::Approx(0.45).epsilon(1e-15));
  }
  SUBCASE("status comparisons use the start-of-tick status") {
    auto st = node(2, 0.1);
    begin_tick(st);
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.2, 1));
    uaf_on_receive(st, msg(ProtocolKind::UAF, 0.4, 1));  // still opposite to window_status
    CHECK(st.s == 1);
    CHECK(st.triggered);
  }
  auto st = node(2, 0.1);
  CHECK_THROWS_AS(uaf_on_receive(st, msg(ProtocolKind::BAF, 0.7, 1)), ProtocolViolation);
}

TEST_CASE("listening after a flip") {
  auto st = node(2, 0.1);
  CHECK(listening(st, 1));
  st.last_flip = 7;
  CHECK_FALSE(listening(st, 8));
  CHECK(listening(st, 9));
}

TEST_CASE("uaf gateway cycle") {
  CHECK(uaf_gateway_cycle(0.0045, 4, 0.001));
  CHECK_FALSE(uaf_gateway_cycle(0.004, 4, 0.001));
  CHECK_THROWS_AS(uaf_gateway_cycle(0.1, 0, 0.001), std::invalid_argument);

  GatewayState gw(ProtocolKind::UAF, 6, 0.001);
  std::vector<int> status;
  for (Tick k = 1; k <= 22; ++k) status.push_back(gw.beacon(0, k).s);
  // Status toggles every L + 1 = 7 ticks, starting at 1 on tick 1.
  const std::vector<int> want{1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0};
  CHECK(status == want);
}

TEST_CASE("gateway beacons carry delta k") {
  for (auto kind : {ProtocolKind::SyncBaseline, ProtocolKind::TSAU, ProtocolKind::UAF, ProtocolKind::BAF}) {
    GatewayState gw(kind, 3, 0.001);
    for (Tick k = 1; k < 20; ++k) {
      const auto m = gw.beacon(4, k);
      CHECK(m.kind == kind);
      CHECK(m.sender == 4);
      CHECK(m.time == gateway_time(k, 0.001));
      CHECK(m.c == 0);
      if (kind == ProtocolKind::BAF) CHECK(m.s == 1);
    }
  }
}

TEST_CASE("baf receive") {
  SUBCASE("forward flood sets c = c_j + 1") {
    auto st = node(2, 0.1);
    begin_tick(st);
    baf_on_receive(st, msg(ProtocolKind::BAF, 0.5, 1, 2));
    CHECK(baf_on_boundary(st, 4));
    CHECK(st.s == 1);
    CHECK(st.c == 3);
  }
  SUBCASE("counter is one above the smallest opposite counter") {
    auto st = node(2, 0.1);
    begin_tick(st);
    baf_on_receive(st, msg(ProtocolKind::BAF, 0.5, 1, 4));
    baf_on_receive(st, msg(ProtocolKind::BAF, 0.5, 1, 2));
    baf_on_receive(st, msg(ProtocolKind::BAF, 0.5, 0, 0));
    CHECK(baf_on_boundary(st, 4));
    CHECK(st.c == 3);
  }
  SUBCASE("end node reverses") {
    auto st = node(3, 0.1);
    st.s = 1;
    st.c = 3;
    begin_tick(st);
    baf_on_receive(st, msg(ProtocolKind::BAF, 0.5, 1, 2));
    const double before = st.estimate();
    CHECK_FALSE(baf_on_boundary(st, 9));
    CHECK(st.c == 0);
    CHECK(st.s == 0);
    CHECK(st.last_flip == 9);
    CHECK(st.estimate() == before);
  }
  SUBCASE("larger neighbour counter blocks the reversal") {
    auto st = node(3, 0.1);
    st.s = 1;
    st.c = 2;
    begin_tick(st);
    baf_on_receive(st, msg(ProtocolKind::BAF, 0.5, 1, 5));
    CHECK_FALSE(baf_on_boundary(st, 9));
    CHECK(st.c == 2);
    CHECK(st.s == 1);
  }
  SUBCASE("silence does not reverse") {
    auto st = node(3, 0.1);
    st.s = 1;
    st.c = 7;
    begin_tick(st);
    CHECK_FALSE(baf_on_boundary(st, 9));
    CHECK(st.s == 1);
    CHECK(st.c == 7);
  }
  auto st = node(2, 0.1);
  CHECK_THROWS_AS(baf_on_receive(st, msg(ProtocolKind::TSAU, 0.7)), ProtocolViolation);
}

TEST_CASE("frozen nodes relay status but keep their time") {
  auto st = node(2, 0.25);
  st.frozen = true;
  begin_tick(st);
  uaf_on_receive(st, msg(ProtocolKind::UAF, 0.9, 1));
  CHECK_FALSE(uaf_on_boundary(st, 3));
  CHECK(st.s == 1);
  CHECK(st.estimate() == 0.25);
}

TEST_CASE("sync_baseline_step") {
  SUBCASE("two nodes") {
    const auto t = make_line(2);
    const std::vector<double> prev{0.0, 0.73};
    const auto next = sync_baseline_step(t, prev, 1, 0.001);
    CHECK(next[1] == 0.001);
    CHECK(next[0] == 0.001);
  }
  SUBCASE("fixed point when everyone equals the gateway") {
    const auto t = make_grid(3, 3);
    std::vector<double> prev(9, 0.005);
    // Gateway time advances, so the fixed point holds only for delta -> 0.
    const auto next = sync_baseline_step(t, prev, 5, 0.001);
    for (double v : next) CHECK(v == doctest::Approx(0.005).epsilon(1e-15));
  }
  SUBCASE("three-node line against a hand iteration") {
    const auto t = make_line(3);
    std::vector<double> x{0.0, 0.6, 0.2};
    // x1(k) = (dk + x2(k-1)) / 2, x2(k) = x1(k-1)
    double a = 0.6, b = 0.2;
    for (Tick k = 1; k <= 3; ++k) {
      x = sync_baseline_step(t, x, k, 0.001);
      const double na = (0.001 * k + b) / 2, nb = a;
      a = na;
      b = nb;
      CHECK(x[1] == doctest::Approx(a).epsilon(1e-15));
      CHECK(x[2] == doctest::Approx(b).epsilon(1e-15));
    }
  }
}

TEST_CASE("protocol names") {
  CHECK(parse_protocol("TSAU") == ProtocolKind::TSAU);
  CHECK(parse_protocol("uaf") == ProtocolKind::UAF);
  CHECK(parse_protocol("Baf") == ProtocolKind::BAF);
  CHECK(parse_protocol("baseline") == ProtocolKind::SyncBaseline);
  CHECK_THROWS_AS(parse_protocol("ftsp"), std::invalid_argument);
}

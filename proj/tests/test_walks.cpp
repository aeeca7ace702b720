// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcd/walks.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "tcd/kgraph.hpp"

using namespace tcd;

namespace {

// Reference cycle count: try every ordering of every len-subset of vertices,
// filter to tight cycles, and quotient by the 2*len symmetries.
std::int64_t brute_count_cycles(const KGraph& h, int len) {
  std::set<std::set<Edge>> found;
  std::vector<Vertex> vs = h.vertices;
  std::vector<int> pick(vs.size(), 0);
  std::fill(pick.begin(), pick.begin() + len, 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<Vertex> chosen;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (pick[i] == 1) chosen.push_back(vs[i]);
    std::sort(chosen.begin(), chosen.end());
    do {
      bool ok = true;
      std::set<Edge> windows;
      for (int s = 0; s < len && ok; ++s) {
        Edge e;
        for (int j = 0; j < h.k; ++j) e.push_back(chosen[static_cast<std::size_t>((s + j) % len)]);
        std::sort(e.begin(), e.end());
        if (!h.has_edge(e)) ok = false;
        windows.insert(e);
      }
      if (ok) found.insert(windows);
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return static_cast<std::int64_t>(found.size());
}

}  // namespace

TEST_CASE("validate_walk basics") {
  auto k4 = complete_graph(4, 3);
  std::vector<Vertex> relabeled{1, 2, 3, 0, 1, 2};
  auto tour = validate_walk(k4, relabeled, true);
  REQUIRE(tour.tour);
  REQUIRE(tour.edge_count() == 4);
  auto windows = tour.window_edges();
  std::sort(windows.begin(), windows.end());
  REQUIRE(windows == k4.edges);

  auto c7 = tight_cycle(7, 3);
  REQUIRE(validate_walk(c7, {0, 1, 2, 3, 4, 5, 6, 0, 1}, true).edge_count() == 7);

  REQUIRE_THROWS_AS(validate_walk(k4, {0, 1, 2, 0, 1, 2}, false), Error);  // repeated edge
  REQUIRE_THROWS_AS(validate_walk(c7, {0, 1, 2, 4}, false), Error);        // not an edge
  REQUIRE_THROWS_AS(validate_walk(c7, {0, 1, 2, 3, 4, 5, 6, 0, 2}, true), Error);  // bad wrap
}

TEST_CASE("trail ends") {
  auto k4 = complete_graph(4, 3);
  Walk single = validate_walk(k4, {1, 2, 3}, false);
  REQUIRE(sorted_multiset(trail_ends(single)) ==
          sorted_multiset({OrderedTuple{2, 1}, OrderedTuple{2, 3}}));

  auto p4 = tight_path(4, 3);
  Walk trail = validate_walk(p4, {0, 1, 2, 3}, false);
  REQUIRE(sorted_multiset(trail_ends(trail)) ==
          sorted_multiset({OrderedTuple{1, 0}, OrderedTuple{2, 3}}));

  // a trail whose two ends coincide is reported with multiplicity two
  auto host = make_graph(3, range_vertices(5), {{0, 1, 2}, {1, 2, 3}, {1, 3, 4}, {0, 3, 4}, {0, 1, 4}});
  Walk loop = validate_walk(host, {2, 1, 0, 4, 3, 1, 2}, false);
  auto ends = trail_ends(loop);
  REQUIRE(ends[0] == ends[1]);

  Walk tour = validate_walk(k4, {1, 2, 3, 0, 1, 2}, true);
  REQUIRE_THROWS_AS(trail_ends(tour), Error);

  // reversing a trail keeps its end multiset
  REQUIRE(sorted_multiset(trail_ends(reversed_walk(trail))) ==
          sorted_multiset(trail_ends(trail)));
}

TEST_CASE("tuple algebra") {
  OrderedTuple y{10, 11, 12};
  REQUIRE(with_position(y, 2, 99) == OrderedTuple{10, 99, 12});
  REQUIRE(skipping(OrderedTuple{1, 2, 3, 4}, 3) == OrderedTuple{1, 2, 4});
  REQUIRE(reversed(reversed(y)) == y);
  REQUIRE(permuted(y, {2, 3, 1}) == OrderedTuple{11, 12, 10});
  REQUIRE_THROWS_AS(with_position(y, 4, 0), Error);

  // k=3: the pair from ab with x, x'
  auto s = replace_pair({5, 6}, 1, 7, 8, 2);
  REQUIRE(s == std::vector<OrderedTuple>{{7, 6}, {6, 8}});
  // k-tuple input drops its last vertex first
  auto s2 = replace_pair({5, 6, 9}, 1, 7, 8, 2);
  REQUIRE(s2 == s);

  auto q = replace_quad({1, 2}, {3, 4}, 1, 8, 9, 2);
  std::set<OrderedTuple> qset(q.begin(), q.end());
  REQUIRE(q.size() == 4);
  REQUIRE(qset.size() == 4);
}

TEST_CASE("join_trails") {
  auto host = tight_cycle(8, 3);
  Walk p = validate_walk(host, {0, 1, 2, 3, 4}, false);   // ends {1 0, 3 4}
  Walk q = validate_walk(host, {4, 5, 6, 7}, false);      // ends {5 4, 6 7}
  // q begins with 4 5, the reverse of p's end 5 4? p ends 3 4; q's end (5,4);
  // reverse(5 4) = 4 5 != 3 4, so join through the shared window 3 4 / 4 3:
  Walk q2 = validate_walk(host, {3, 4, 5, 6}, false);  // ends {4 3, 5 6}
  Walk joined = join_trails(p, q2);
  REQUIRE(joined.edge_count() == p.edge_count() + q2.edge_count());
  REQUIRE_FALSE(joined.tour);

  // closing a full wrap-form trail into a tour
  auto k4 = complete_graph(4, 3);
  Walk loop = validate_walk(k4, {1, 2, 3, 0, 1, 2}, false);
  Walk closed = join_trails(loop, loop);
  REQUIRE(closed.tour);

  REQUIRE_THROWS_AS(join_trails(p, q), Error);
}

TEST_CASE("fresh vertex supply") {
  FreshVertexSupply supply;
  supply.reserve({0, 1, 2, 5});
  std::set<Vertex> seen;
  for (int i = 0; i < 10; ++i) {
    Vertex v = supply.draw();
    REQUIRE(seen.insert(v).second);
    REQUIRE(v != 0);
    REQUIRE(v != 5);
  }
}

TEST_CASE("fresh_trail") {
  FreshVertexSupply supply;
  supply.reserve({1, 2, 3, 4});
  auto ft = fresh_trail(supply, {2, 1}, {3, 4}, 5, 3);
  REQUIRE(ft.walk.edge_count() == 5);
  REQUIRE(ft.edges.size() == 5);
  REQUIRE(sorted_multiset(trail_ends(ft.walk)) ==
          sorted_multiset({OrderedTuple{2, 1}, OrderedTuple{3, 4}}));
  // round-trips through validate_walk on its own edge set
  auto host = collect_graph(3, ft.edges);
  REQUIRE_NOTHROW(validate_walk(host, ft.walk.seq, false));

  // interiors of repeated calls are disjoint
  auto ft2 = fresh_trail(supply, {2, 1}, {3, 4}, 5, 3);
  std::set<Vertex> inner1(ft.walk.seq.begin() + 2, ft.walk.seq.end() - 2);
  std::set<Vertex> inner2(ft2.walk.seq.begin() + 2, ft2.walk.seq.end() - 2);
  for (Vertex v : inner1) REQUIRE(inner2.count(v) == 0);

  // wrapping a = reverse of a suffix of b closes into a tight cycle
  FreshVertexSupply s3;
  s3.reserve({0, 1});
  auto ft3 = fresh_trail(s3, {1, 0}, {0, 1}, 7, 3);
  std::vector<Vertex> cyc = ft3.walk.seq;  // 0 1 f f f f f 0 1: wrap form
  auto host3 = collect_graph(3, ft3.edges);
  REQUIRE_NOTHROW(validate_walk(host3, cyc, true));
}

TEST_CASE("find_trail") {
  auto k8 = complete_graph(8, 3);
  auto w = find_trail(k8, {2, 1}, {3, 4}, 5);
  REQUIRE(w.has_value());
  REQUIRE(w->edge_count() == 5);
  REQUIRE_NOTHROW(validate_walk(k8, w->seq, false));
  REQUIRE(sorted_multiset(trail_ends(*w)) ==
          sorted_multiset({OrderedTuple{2, 1}, OrderedTuple{3, 4}}));
  // deterministic
  auto w2 = find_trail(k8, {2, 1}, {3, 4}, 5);
  REQUIRE(w->seq == w2->seq);

  // interior vertices are fresh: only end-tuple vertices may repeat
  std::set<Vertex> interior(w->seq.begin() + 2, w->seq.end() - 2);
  REQUIRE(interior.size() == w->seq.size() - 4);
  for (Vertex v : interior) {
    REQUIRE(v != 1);
    REQUIRE(v != 2);
    REQUIRE(v != 3);
    REQUIRE(v != 4);
  }

  // conflicting overlap between the forced ends yields nothing
  std::vector<Edge> avoid{{1, 2, 3}};
  REQUIRE(search_trails(k8, {2, 1}, {1, 2}, 1, TrailSearchOptions{&avoid}).empty());
  // a one-edge trail is exactly its window; forbidding it blocks the search
  auto one = find_trail(k8, {2, 1}, {2, 3}, 1);
  REQUIRE(one.has_value());
  REQUIRE(one->seq == std::vector<Vertex>{1, 2, 3});
  auto none = find_trail(k8, {2, 1}, {2, 3}, 1, &avoid);
  REQUIRE_FALSE(none.has_value());

  // no completion exists in a sparse host
  auto c7 = tight_cycle(7, 3);
  REQUIRE_FALSE(find_trail(c7, {3, 0}, {0, 3}, 4).has_value());
}

TEST_CASE("enumerate_cycles against brute force") {
  REQUIRE(enumerate_cycles(complete_graph(5, 3), 4).size() == 5);
  REQUIRE(enumerate_cycles(tight_cycle(7, 3), 7).size() == 1);

  for (const KGraph& h : {complete_graph(6, 3), tight_cycle(7, 3), split_graph({0, 1, 2}, {3, 4, 5}, 1, 3)}) {
    for (int len = 4; len <= 6; ++len) {
      INFO("len=" << len);
      REQUIRE(static_cast<std::int64_t>(enumerate_cycles(h, len).size()) ==
              brute_count_cycles(h, len));
    }
  }

  // every reported cycle validates as a tour in the host
  for (const Walk& w : enumerate_cycles(complete_graph(6, 3), 5))
    REQUIRE_NOTHROW(validate_walk(complete_graph(6, 3), w.seq, true));
}

TEST_CASE("cycles_through_edge") {
  auto k5 = complete_graph(5, 3);
  REQUIRE(cycles_through_edge(k5, {1, 2, 3}, 4).size() == 2);
  // filtering the full enumeration agrees
  for (int len = 4; len <= 5; ++len) {
    auto all = enumerate_cycles(k5, len);
    std::int64_t with_edge = 0;
    for (const Walk& w : all) {
      auto es = w.window_edges();
      if (std::find(es.begin(), es.end(), Edge{0, 1, 2}) != es.end()) ++with_edge;
    }
    REQUIRE(static_cast<std::int64_t>(cycles_through_edge(k5, {0, 1, 2}, len).size()) == with_edge);
  }
}

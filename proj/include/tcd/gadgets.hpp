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

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/tourtrail.hpp"
#include "tcd/tuples.hpp"
#include "tcd/walks.hpp"

namespace tcd {

/// A certified union of tight cycles together with a tour-trail decomposition
/// whose merged residual realizes a prescribed tuple multiset.
struct GadgetResult {
  int k = 0;
  int len = 0;
  std::vector<Walk> cycles;              // pairwise edge-disjoint tight len-cycles
  TourTrailDecomposition decomposition;  // trails over the union of the cycles
  std::vector<OrderedTuple> raw_residual;      // trail ends before internal merging
  std::vector<OrderedTuple> claimed_residual;  // the stated merged residual
  std::vector<Vertex> anchors;                 // input vertices the residual may touch
  std::vector<Edge> allowed_anchor_edges;      // edges permitted inside the anchor set
  std::vector<Vertex> fresh;                   // vertices drawn while building
  std::vector<std::int64_t> recursion_sizes;   // edge counts of the recursive parts

  std::int64_t edge_total() const { return static_cast<std::int64_t>(decomposition.host.size()); }
};

namespace detail {

class GadgetBuilder {
 public:
  GadgetBuilder(int k, int len, FreshVertexSupply& supply) : k_(k), len_(len), supply_(&supply) {}

  std::vector<Vertex> draw(int count) {
    auto vs = supply_->draw(count);
    fresh_.insert(fresh_.end(), vs.begin(), vs.end());
    return vs;
  }

  /// Appends a cycle given its core sequence, padding with fresh interior
  /// vertices up to `len_`; returns the completed core.
  std::vector<Vertex> add_cycle(std::vector<Vertex> core) {
    const int pad = len_ - static_cast<int>(core.size());
    require(pad >= 1, errc::range_error, "cycle core leaves no room for fresh interior");
    auto inner = draw(pad);
    core.insert(core.end(), inner.begin(), inner.end());
    Walk w;
    w.k = k_;
    w.tour = true;
    w.seq = core;
    for (int i = 0; i < k_ - 1; ++i) w.seq.push_back(core[static_cast<std::size_t>(i)]);
    cycles_.push_back(std::move(w));
    return core;
  }

  void add_trail(std::vector<Vertex> seq) {
    Walk w;
    w.k = k_;
    w.tour = false;
    w.seq = std::move(seq);
    trails_.push_back(std::move(w));
  }

  /// The standard two-trail opening of a cycle core: the long trail
  /// core[2..] core[1..k-1] plus the first edge spelled as `first_edge_order`.
  void open_cycle(const std::vector<Vertex>& core, std::vector<Vertex> first_edge_order) {
    std::vector<Vertex> long_trail(core.begin() + 1, core.end());
    long_trail.insert(long_trail.end(), core.begin(), core.begin() + (k_ - 1));
    add_trail(std::move(long_trail));
    require(static_cast<int>(first_edge_order.size()) == k_, errc::wrong_arity,
            "first edge must have k vertices");
    add_trail(std::move(first_edge_order));
  }

  void absorb(GadgetResult&& sub) {
    for (auto& c : sub.cycles) cycles_.push_back(std::move(c));
    for (auto& t : sub.decomposition.walks) trails_.push_back(std::move(t));
    fresh_.insert(fresh_.end(), sub.fresh.begin(), sub.fresh.end());
  }

  GadgetResult finish(std::vector<Vertex> anchors, std::vector<OrderedTuple> claimed,
                      std::vector<Edge> allowed_anchor_edges) {
    GadgetResult g;
    g.k = k_;
    g.len = len_;
    std::vector<Edge> all;
    for (const Walk& c : cycles_) {
      auto es = c.window_edges();
      all.insert(all.end(), es.begin(), es.end());
    }
    const std::size_t before = all.size();
    g.decomposition.host = collect_graph(k_, all);
    require(g.decomposition.host.size() == before, errc::edge_collision,
            "gadget cycles are not edge-disjoint");
    g.decomposition.walks = std::move(trails_);
    g.cycles = std::move(cycles_);
    g.raw_residual = residual(g.decomposition);
    g.claimed_residual = sorted_multiset(std::move(claimed));
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
    g.anchors = std::move(anchors);
    std::sort(allowed_anchor_edges.begin(), allowed_anchor_edges.end());
    g.allowed_anchor_edges = std::move(allowed_anchor_edges);
    g.fresh = std::move(fresh_);
    return g;
  }

 private:
  int k_;
  int len_;
  FreshVertexSupply* supply_;
  std::vector<Walk> cycles_;
  std::vector<Walk> trails_;
  std::vector<Vertex> fresh_;
};

inline void check_distinct(const std::vector<Vertex>& vs, const std::string& what) {
  std::vector<Vertex> s = vs;
  std::sort(s.begin(), s.end());
  require(std::adjacent_find(s.begin(), s.end()) == s.end(), errc::anchor_collision, what);
}

}  // namespace detail

/// Two tight cycles through the ordered anchor tuple `y` (a k-tuple whose j-th
/// entry is unused) and the pivots x, x'; the merged residual consists of the
/// three replacement pairs at positions j, 1 and j-1 of the suitably rotated
/// tuple.  Exactly the two edges {x} u Y and {x'} u Y touch only anchors.
inline GadgetResult basic_gadget(int j, const OrderedTuple& y, Vertex x, Vertex xp, int len,
                                 FreshVertexSupply& supply) {
  const int k = static_cast<int>(y.size());
  require(k >= 3, errc::range_error, "uniformity must be at least 3");
  require(j >= 1 && j <= k - 1, errc::range_error, "position j out of range");
  require(len >= k * k - k + 1, errc::range_error, "cycle length below the gadget minimum");
  require(x != xp, errc::anchor_collision, "pivots coincide");
  std::vector<Vertex> anchor_set{x, xp};
  for (int i = 1; i <= k; ++i)
    if (i != j) anchor_set.push_back(y[static_cast<std::size_t>(i - 1)]);
  detail::check_distinct(anchor_set, "pivots and tuple entries must form k-sets");

  detail::GadgetBuilder b(k, len, supply);

  // Cycle cores: y_k..y_{j+1} x y_{j-1}..y_1  and  x' y_1..y_{j-1} y_{j+1}..y_k.
  std::vector<Vertex> core1;
  for (int i = k; i >= j + 1; --i) core1.push_back(y[static_cast<std::size_t>(i - 1)]);
  core1.push_back(x);
  for (int i = j - 1; i >= 1; --i) core1.push_back(y[static_cast<std::size_t>(i - 1)]);
  std::vector<Vertex> core2{xp};
  for (int i = 1; i <= k; ++i)
    if (i != j) core2.push_back(y[static_cast<std::size_t>(i - 1)]);

  // x y_1 .. y_{j-1} y_{j+1} .. y_k spells the first edge of cycle one.
  std::vector<Vertex> edge1{x};
  for (int i = 1; i <= k; ++i)
    if (i != j) edge1.push_back(y[static_cast<std::size_t>(i - 1)]);
  // y_k .. y_{j+1} x' y_{j-1} .. y_1 spells the first edge of cycle two.
  std::vector<Vertex> edge2;
  for (int i = k; i >= j + 1; --i) edge2.push_back(y[static_cast<std::size_t>(i - 1)]);
  edge2.push_back(xp);
  for (int i = j - 1; i >= 1; --i) edge2.push_back(y[static_cast<std::size_t>(i - 1)]);

  b.open_cycle(b.add_cycle(core1), edge1);
  b.open_cycle(b.add_cycle(core2), edge2);

  // Claimed residual.  The first-position pair uses the rotation starting at
  // y_j; for j = 1 the last pair cancels internally and is omitted.
  std::vector<int> sigma1{j};
  for (int i = 1; i <= k; ++i)
    if (i != j) sigma1.push_back(i);
  std::vector<int> sigma2;
  for (int i = 2; i <= k; ++i) sigma2.push_back(i);
  sigma2.push_back(1);

  // For j = 1 every replacement pair meets its own reverse and the merged
  // residual vanishes entirely; the formula below applies from j = 2 on.
  std::vector<OrderedTuple> claimed;
  if (j >= 2) {
    claimed = replace_pair(y, j, x, xp, k - 1);
    auto part1 = replace_pair(permuted(y, sigma1), 1, xp, x, k - 1);
    claimed.insert(claimed.end(), part1.begin(), part1.end());
    auto part2 = replace_pair(permuted(y, sigma2), j - 1, xp, x, k - 1);
    claimed.insert(claimed.end(), part2.begin(), part2.end());
  }

  Edge ay = sorted_edge(edge1);
  Edge apy = sorted_edge(with_position(edge2, k - j + 1, xp));  // y_k..y_{j+1} x' y_{j-1}..y_1 as a set
  return b.finish(anchor_set, std::move(claimed), {ay, apy});
}

/// Recursive union of basic gadgets anchored at the same pivot pair; each
/// level draws a fresh k-tuple.  Shifts the residual position statistics at x
/// and x' only.
inline GadgetResult balancer(int j, Vertex x, Vertex xp, int k, int len,
                             FreshVertexSupply& supply) {
  require(j >= 2 && j <= k - 1, errc::range_error, "balancer position must satisfy 2 <= j <= k-1");
  require(x != xp, errc::anchor_collision, "pivots coincide");
  detail::GadgetBuilder b(k, len, supply);
  std::vector<OrderedTuple> claimed;
  std::vector<std::int64_t> sizes;
  for (int level = j; level >= 2; --level) {
    OrderedTuple y = b.draw(k);
    GadgetResult part = basic_gadget(level, y, x, xp, len, supply);
    sizes.push_back(part.edge_total());
    claimed.insert(claimed.end(), part.claimed_residual.begin(), part.claimed_residual.end());
    b.absorb(std::move(part));
  }
  GadgetResult g = b.finish({x, xp}, std::move(claimed), {});
  g.recursion_sizes = std::move(sizes);
  return g;
}

/// Three cycles whose merged residual is the first-position replacement pair
/// of `y` plus a pivot-pair tuple; draws one extra vertex to complete the
/// anchor tuple.  The edge {x, x', y_2..y_{k-1}} is deliberately absent.
inline GadgetResult f1_gadget(const OrderedTuple& y, Vertex x, Vertex xp, int len,
                              FreshVertexSupply& supply) {
  const int k = static_cast<int>(y.size()) + 1;
  require(k >= 3, errc::range_error, "uniformity must be at least 3");
  require(len >= k * k - k + 1, errc::range_error, "cycle length below the gadget minimum");
  require(x != xp, errc::anchor_collision, "pivots coincide");
  std::vector<Vertex> anchor_set{x, xp};
  for (int i = 2; i <= k - 1; ++i) anchor_set.push_back(y[static_cast<std::size_t>(i - 1)]);
  detail::check_distinct(anchor_set, "pivots and tuple entries must form a k-set");

  detail::GadgetBuilder b(k, len, supply);
  const Vertex yk = b.draw(1)[0];

  auto ys = [&](int i) {  // y_i with y_k the drawn vertex
    return i == k ? yk : y[static_cast<std::size_t>(i - 1)];
  };

  std::vector<Vertex> core1;  // y_2 .. y_k x'
  for (int i = 2; i <= k; ++i) core1.push_back(ys(i));
  core1.push_back(xp);
  std::vector<Vertex> core2{x};  // x y_2 .. y_k
  for (int i = 2; i <= k; ++i) core2.push_back(ys(i));
  std::vector<Vertex> core3;  // y_3 .. y_k x' x
  for (int i = 3; i <= k; ++i) core3.push_back(ys(i));
  core3.push_back(xp);
  core3.push_back(x);

  // First-edge spellings: x' y_2..y_k ; y_2..y_k x ; y_3..y_k x x'.
  std::vector<Vertex> edge1{xp};
  for (int i = 2; i <= k; ++i) edge1.push_back(ys(i));
  std::vector<Vertex> edge2;
  for (int i = 2; i <= k; ++i) edge2.push_back(ys(i));
  edge2.push_back(x);
  std::vector<Vertex> edge3;
  for (int i = 3; i <= k; ++i) edge3.push_back(ys(i));
  edge3.push_back(x);
  edge3.push_back(xp);

  b.open_cycle(b.add_cycle(core1), edge1);
  b.open_cycle(b.add_cycle(core2), edge2);
  b.open_cycle(b.add_cycle(core3), edge3);

  std::vector<OrderedTuple> claimed = replace_pair(y, 1, x, xp, k - 1);
  if (k == 3) {
    claimed.push_back({x, xp});
    claimed.push_back({x, xp});
  } else {
    OrderedTuple down{x, xp};  // x x' y_k .. y_4
    for (int i = k; i >= 4; --i) down.push_back(ys(i));
    OrderedTuple up;  // y_4 .. y_k x x'
    for (int i = 4; i <= k; ++i) up.push_back(ys(i));
    up.push_back(x);
    up.push_back(xp);
    claimed.push_back(down);
    claimed.push_back(up);
  }
  GadgetResult g = b.finish(anchor_set, std::move(claimed), {});
  return g;
}

/// First-position swapper: two f1 gadgets with the pivots exchanged plus, for
/// k >= 4, a telescoping ladder of cycle pairs through fresh rung vertices.
/// The merged residual is the replacement quad of (y, y') at position 1.
inline GadgetResult swapper1(const OrderedTuple& y, const OrderedTuple& yp, Vertex x, Vertex xp,
                             int len, FreshVertexSupply& supply) {
  const int k = static_cast<int>(y.size()) + 1;
  require(yp.size() == y.size(), errc::bad_tuple_length, "tuples must have equal length");
  detail::GadgetBuilder b(k, len, supply);

  GadgetResult f = f1_gadget(y, x, xp, len, supply);
  GadgetResult fp = f1_gadget(yp, xp, x, len, supply);
  const Vertex yk = f.fresh.front();
  const Vertex ypk = fp.fresh.front();
  std::vector<Vertex> anchor_set{x, xp};
  anchor_set.insert(anchor_set.end(), y.begin(), y.end());
  anchor_set.insert(anchor_set.end(), yp.begin(), yp.end());
  b.absorb(std::move(f));
  b.absorb(std::move(fp));

  if (k >= 4) {
    auto ys = [&](int i) { return i == k ? yk : y[static_cast<std::size_t>(i - 1)]; };
    auto yps = [&](int i) { return i == k ? ypk : yp[static_cast<std::size_t>(i - 1)]; };
    std::vector<Vertex> z(static_cast<std::size_t>(k + 1), -1);  // z_4 .. z_k
    for (int i = 4; i <= k; ++i) z[static_cast<std::size_t>(i)] = b.draw(1)[0];

    for (int i = 4; i <= k; ++i) {
      // z_i..z_4 x x' y_k..y_i (+ fresh) and z_i..z_4 x' x y'_k..y'_i (+ fresh)
      std::vector<Vertex> coreC;
      for (int t = i; t >= 4; --t) coreC.push_back(z[static_cast<std::size_t>(t)]);
      coreC.push_back(x);
      coreC.push_back(xp);
      for (int t = k; t >= i; --t) coreC.push_back(ys(t));
      std::vector<Vertex> coreD;
      for (int t = i; t >= 4; --t) coreD.push_back(z[static_cast<std::size_t>(t)]);
      coreD.push_back(xp);
      coreD.push_back(x);
      for (int t = k; t >= i; --t) coreD.push_back(yps(t));

      // First-edge spellings swap the pivots.
      std::vector<Vertex> edgeC = coreC;
      edgeC.resize(static_cast<std::size_t>(k));
      std::swap(edgeC[static_cast<std::size_t>(i - 3)], edgeC[static_cast<std::size_t>(i - 2)]);
      std::vector<Vertex> edgeD = coreD;
      edgeD.resize(static_cast<std::size_t>(k));
      std::swap(edgeD[static_cast<std::size_t>(i - 3)], edgeD[static_cast<std::size_t>(i - 2)]);

      b.open_cycle(b.add_cycle(coreC), edgeC);
      b.open_cycle(b.add_cycle(coreD), edgeD);
    }
  }

  GadgetResult g = b.finish(anchor_set, replace_quad(y, yp, 1, x, xp, k - 1), {});
  return g;
}

/// General swapper at position j: two basic gadgets plus recursive swappers on
/// the rotated tuples; residual is the replacement quad at position j.
inline GadgetResult swapper(int j, const OrderedTuple& y, const OrderedTuple& yp, Vertex x,
                            Vertex xp, int len, FreshVertexSupply& supply) {
  const int k = static_cast<int>(y.size()) + 1;
  require(j >= 1 && j <= k - 1, errc::range_error, "position j out of range");
  require(yp.size() == y.size(), errc::bad_tuple_length, "tuples must have equal length");
  if (j == 1) return swapper1(y, yp, x, xp, len, supply);

  require(x != xp, errc::anchor_collision, "pivots coincide");
  for (const OrderedTuple& t : {y, yp}) {
    std::vector<Vertex> s{x, xp};
    for (int i = 1; i <= k - 1; ++i)
      if (i != j) s.push_back(t[static_cast<std::size_t>(i - 1)]);
    detail::check_distinct(s, "pivots and tuple entries must form k-sets");
  }

  detail::GadgetBuilder b(k, len, supply);
  OrderedTuple yfull = y, ypfull = yp;
  yfull.push_back(b.draw(1)[0]);
  ypfull.push_back(b.draw(1)[0]);

  GadgetResult g1 = basic_gadget(j, yfull, x, xp, len, supply);
  GadgetResult g2 = basic_gadget(j, ypfull, xp, x, len, supply);

  std::vector<int> sigma1{j};
  for (int i = 1; i <= k; ++i)
    if (i != j) sigma1.push_back(i);
  std::vector<int> sigma2;
  for (int i = 2; i <= k; ++i) sigma2.push_back(i);
  sigma2.push_back(1);

  const OrderedTuple r1 = skipping(permuted(yfull, sigma1), k);
  const OrderedTuple r1p = skipping(permuted(ypfull, sigma1), k);
  const OrderedTuple r2 = skipping(permuted(yfull, sigma2), k);
  const OrderedTuple r2p = skipping(permuted(ypfull, sigma2), k);

  GadgetResult t1 = swapper1(r1, r1p, x, xp, len, supply);
  GadgetResult tj1 = swapper(j - 1, r2, r2p, x, xp, len, supply);

  std::vector<std::int64_t> sizes{g1.edge_total() + g2.edge_total(), t1.edge_total(),
                                  tj1.edge_total()};
  std::vector<Vertex> anchor_set{x, xp};
  anchor_set.insert(anchor_set.end(), y.begin(), y.end());
  anchor_set.insert(anchor_set.end(), yp.begin(), yp.end());

  b.absorb(std::move(g1));
  b.absorb(std::move(g2));
  b.absorb(std::move(t1));
  b.absorb(std::move(tj1));

  GadgetResult g = b.finish(anchor_set, replace_quad(y, yp, j, x, xp, k - 1), {});
  g.recursion_sizes = std::move(sizes);
  return g;
}

// ---------------------------------------------------------------------------
// Verification

struct GadgetReport {
  bool ok = true;
  std::vector<std::string> failures;

  void flag(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
};

/// Re-checks every structural claim of a gadget; never throws.  With a host
/// given, additionally checks containment of every cycle edge.
inline GadgetReport verify_gadget(const GadgetResult& g, const KGraph* host = nullptr) {
  GadgetReport report;
  const KGraph& u = g.decomposition.host;

  std::vector<Edge> all;
  for (const Walk& c : g.cycles) {
    if (!c.tour || c.edge_count() != g.len) {
      report.flag("a cycle is not a tour of the stated length");
      continue;
    }
    std::set<Vertex> distinct(c.seq.begin(), c.seq.end());
    if (static_cast<int>(distinct.size()) != g.len)
      report.flag("a cycle repeats a vertex");
    try {
      validate_walk(u, c.seq, true);
    } catch (const Error& e) {
      report.flag(std::string("cycle fails validation: ") + e.what());
    }
    auto es = c.window_edges();
    all.insert(all.end(), es.begin(), es.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    report.flag("cycles share an edge");
  if (all != u.edges) report.flag("cycle union differs from the decomposition host");

  std::string why;
  if (!partitions_host(g.decomposition, &why)) report.flag("decomposition: " + why);

  for (const Walk& w : g.decomposition.walks) {
    try {
      validate_walk(u, w.seq, w.tour);
    } catch (const Error& e) {
      report.flag(std::string("decomposition walk fails validation: ") + e.what());
      break;
    }
  }

  const auto merged = residual(merge_cancelling(g.decomposition));
  if (merged != g.claimed_residual) report.flag("merged residual differs from the claim");

  // Edges inside the anchor set must be exactly the allowed ones.
  std::vector<Edge> inside;
  for (const Edge& e : u.edges) {
    bool all_anchor = true;
    for (Vertex v : e)
      if (!std::binary_search(g.anchors.begin(), g.anchors.end(), v)) all_anchor = false;
    if (all_anchor) inside.push_back(e);
  }
  if (inside != g.allowed_anchor_edges)
    report.flag("anchor-internal edges differ from the permitted list");

  if (host != nullptr) {
    for (const Edge& e : u.edges)
      if (!host->has_edge(e)) {
        report.flag("a gadget edge is missing from the host");
        break;
      }
  }
  return report;
}

}  // namespace tcd

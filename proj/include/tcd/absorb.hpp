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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/gadgets.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/randomized.hpp"
#include "tcd/solver.hpp"
#include "tcd/tourtrail.hpp"
#include "tcd/tuples.hpp"
#include "tcd/walks.hpp"

namespace tcd {

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t next_prime(std::int64_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

// Accumulates gadget cycles and decomposition walks over a growing union.
// Designated residual cancellations are applied physically through a merge
// index, so the raw residual of `walks` always equals the construction's
// bookkept one.
struct PipelineState {
  int k;
  int len;
  std::vector<Walk> cycles;          // every added tight cycle, certificate order
  std::vector<Walk> walks;           // the evolving tour-trail decomposition
  std::vector<Edge> added_edges;     // all gadget edges, unsorted until needed
  std::vector<LedgerRow> log;

  // Absorbs a gadget, merging its internal struck pairs and then the listed
  // cross pairs against the present residual.
  void take(GadgetResult&& g, TrailMergeIndex& idx,
            const std::vector<OrderedTuple>& cross = {}) {
    std::vector<OrderedTuple> internal;
    std::set_difference(g.raw_residual.begin(), g.raw_residual.end(),
                        g.claimed_residual.begin(), g.claimed_residual.end(),
                        std::back_inserter(internal));
    for (auto& c : g.cycles) {
      auto es = c.window_edges();
      added_edges.insert(added_edges.end(), es.begin(), es.end());
      cycles.push_back(std::move(c));
    }
    for (auto& w : g.decomposition.walks) walks.push_back(std::move(w));
    while (!internal.empty()) {
      OrderedTuple t = internal.front();
      internal.erase(internal.begin());
      const OrderedTuple rt = reversed(t);
      auto it = std::lower_bound(internal.begin(), internal.end(), rt);
      require(it != internal.end() && *it == rt, errc::internal_check,
              "gadget struck pairs do not match up");
      internal.erase(it);
      idx.cancel(t);
    }
    for (const auto& t : cross) idx.cancel(t);
  }

  std::vector<OrderedTuple> residual_now() const {
    std::vector<OrderedTuple> out;
    for (const Walk& w : walks) {
      if (w.tour || w.seq.empty()) continue;
      auto ends = trail_ends(w);
      out.push_back(std::move(ends[0]));
      out.push_back(std::move(ends[1]));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Walk> live_walks() const {
    std::vector<Walk> out;
    for (const Walk& w : walks)
      if (!w.seq.empty()) out.push_back(w);
    return out;
  }

  KGraph graph_with(const KGraph& base) const {
    std::vector<Edge> all = base.edges;
    all.insert(all.end(), added_edges.begin(), added_edges.end());
    KGraph g = collect_graph(base.k, all);
    require(g.size() == base.size() + added_edges.size(), errc::edge_collision,
            "gadget edges overlap the base graph");
    std::vector<Vertex> vs = g.vertices;
    vs.insert(vs.end(), base.vertices.begin(), base.vertices.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    g.vertices = std::move(vs);
    return g;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Balancing

struct BalanceResult {
  KGraph augmented;                       // G together with the added cycles
  TourTrailDecomposition decomposition;   // balanced
  std::vector<Walk> added_cycles;
  std::vector<LedgerRow> log;
};

/// Adds balancer gadgets until the tour-trail statistics are symmetric: for
/// even k the odd middle counts are paired off first, then each inner
/// position imbalance is cancelled arc by arc, and the outer positions are
/// settled last (their deficit is divisible by k once the rest is even).
inline BalanceResult balance(const KGraph& g, const TourTrailDecomposition& t0, int len,
                             FreshVertexSupply& supply) {
  const int k = g.k;
  {
    auto degs = detail::degree_table(g, 1);
    for (const auto& [s, d] : degs)
      require(d % k == 0, errc::degree_not_divisible,
              "vertex " + std::to_string(s[0]) + " has degree " + std::to_string(d));
  }
  detail::PipelineState state{k, len, {}, {}, {}, {}};
  state.walks = t0.walks;
  TrailMergeIndex idx(state.walks, k);

  const auto res0 = residual(t0);
  auto table0 = p_table(res0, k);

  // Middle-position parity, k even.
  if (k % 2 == 0) {
    std::vector<Vertex> odd;
    for (const auto& [v, row] : table0)
      if (row[static_cast<std::size_t>(k / 2)] % 2 != 0) odd.push_back(v);
    require(odd.size() % 2 == 0, errc::internal_check, "odd middle counts must pair up");
    for (std::size_t j = 0; j + 1 < odd.size(); j += 2)
      state.take(balancer(k / 2, odd[j], odd[j + 1], k, len, supply), idx);
    state.log.push_back(ledger_row("balance", "middle_pairs", std::to_string(odd.size() / 2)));
  }

  // Inner positions 2 <= i < k/2, statistics taken from the original
  // decomposition (the middle stage leaves them untouched).
  for (int i = 2; 2 * i < k; ++i) {
    std::vector<Vertex> plus, minus_side;
    for (const auto& [v, row] : table0) {
      const std::int64_t w =
          row[static_cast<std::size_t>(i)] - row[static_cast<std::size_t>(k - i)];
      for (std::int64_t c = 0; c < w; ++c) plus.push_back(v);
      for (std::int64_t c = 0; c < -w; ++c) minus_side.push_back(v);
    }
    require(plus.size() == minus_side.size(), errc::internal_check, "imbalance must sum to zero");
    for (std::size_t j = 0; j < plus.size(); ++j)
      state.take(balancer(i, minus_side[j], plus[j], k, len, supply), idx);
    state.log.push_back(
        ledger_row("balance", "arcs_pos" + std::to_string(i), std::to_string(plus.size())));
  }

  // Outer positions, using the statistics of everything added so far.
  {
    const auto res = state.residual_now();
    auto table = p_table(res, k);
    std::vector<Vertex> plus, minus_side;
    for (const auto& [v, row] : table) {
      const std::int64_t diff = row[1] - row[static_cast<std::size_t>(k - 1)];
      require(diff % k == 0, errc::internal_check,
              "outer imbalance not divisible by k at vertex " + std::to_string(v));
      const std::int64_t b = diff / k;
      for (std::int64_t c = 0; c < b; ++c) plus.push_back(v);
      for (std::int64_t c = 0; c < -b; ++c) minus_side.push_back(v);
    }
    require(plus.size() == minus_side.size(), errc::internal_check, "outer imbalance sums to zero");
    for (std::size_t j = 0; j < plus.size(); ++j)
      state.take(balancer(k - 1, plus[j], minus_side[j], k, len, supply), idx);
    state.log.push_back(ledger_row("balance", "outer_arcs", std::to_string(plus.size())));
  }

  BalanceResult out;
  out.augmented = state.graph_with(g);
  out.decomposition.host = out.augmented;
  out.decomposition.walks = state.live_walks();
  out.added_cycles = std::move(state.cycles);
  out.log = std::move(state.log);
  require(is_balanced(out.decomposition), errc::internal_check, "balancing left an asymmetry");
  return out;
}

// ---------------------------------------------------------------------------
// Spread

struct SpreadResult {
  KGraph added;
  TourTrailDecomposition decomposition;  // one open trail per cycle
  std::vector<Walk> cycles;
};

/// One fresh-interior cycle through each cyclic window of the enumeration of
/// U, each kept as a single open trail; for prime |U| the residual arc
/// digraphs at every inner position span U and are strongly connected.
inline SpreadResult spread(const std::vector<Vertex>& u, int k, int len,
                           FreshVertexSupply& supply) {
  const int m = static_cast<int>(u.size());
  require(detail::is_prime(m), errc::not_prime, "|U| must be prime");
  require(m >= k, errc::invalid_size, "|U| too small");
  SpreadResult out;
  std::vector<Edge> edges;
  for (int j = 0; j < m; ++j) {
    std::vector<Vertex> core;
    for (int i = 1; i <= k - 1; ++i) core.push_back(u[static_cast<std::size_t>((j + i) % m)]);
    auto inner = supply.draw(len - k + 1);
    core.insert(core.end(), inner.begin(), inner.end());
    Walk cyc;
    cyc.k = k;
    cyc.tour = true;
    cyc.seq = core;
    for (int i = 0; i < k - 1; ++i) cyc.seq.push_back(core[static_cast<std::size_t>(i)]);
    auto es = cyc.window_edges();
    edges.insert(edges.end(), es.begin(), es.end());

    Walk open;
    open.k = k;
    open.tour = false;
    open.seq = cyc.seq;  // same sequence read as a trail: ends are the window
    out.cycles.push_back(std::move(cyc));
    out.decomposition.walks.push_back(std::move(open));
  }
  out.added = collect_graph(k, edges);
  require(out.added.size() == static_cast<std::size_t>(m) * len, errc::edge_collision,
          "spread cycles overlap");
  out.decomposition.host = out.added;
  return out;
}

// ---------------------------------------------------------------------------
// Focusing

struct FocusResult {
  KGraph augmented;  // input graph with the spread and all swappers
  TourTrailDecomposition decomposition;
  std::vector<Walk> added_cycles;
  std::vector<LedgerRow> log;
  bool converts_certified = true;
};

/// Drives the whole residual onto the designated tuple z_1..z_{k-1}: first
/// the spread through V(G), then for every position i a pass of swapper
/// gadgets pairing the residual tuples along an Euler tour of the arc
/// digraph (middle position: by equal middles), certified per pass as an
/// i-convert.
inline FocusResult focus(const KGraph& g1, const TourTrailDecomposition& t1,
                         const std::vector<Vertex>& z, int len, FreshVertexSupply& supply) {
  const int k = g1.k;
  const int m1 = static_cast<int>(g1.vertices.size());
  require(detail::is_prime(m1), errc::not_prime, "|V| must be prime");
  require(static_cast<std::int64_t>(g1.size()) * k < m1, errc::too_dense,
          "edge count must stay below |V|/k");
  require(is_balanced(t1), errc::not_balanced, "input decomposition must be balanced");
  require(static_cast<int>(z.size()) == k - 1, errc::bad_tuple_length, "z needs k-1 vertices");

  FocusResult out;
  detail::PipelineState state{k, len, {}, {}, {}, {}};
  state.walks = t1.walks;
  TrailMergeIndex idx(state.walks, k);

  SpreadResult sp = spread(g1.vertices, k, len, supply);
  for (auto& c : sp.cycles) {
    auto es = c.window_edges();
    state.added_edges.insert(state.added_edges.end(), es.begin(), es.end());
    state.cycles.push_back(std::move(c));
  }
  for (auto& w : sp.decomposition.walks) state.walks.push_back(std::move(w));
  out.log.push_back(ledger_row("focus", "spread_edges", std::to_string(sp.added.size())));

  const std::int64_t two_s = static_cast<std::int64_t>(state.residual_now().size());
  require(two_s <= 3 * m1, errc::internal_check, "residual larger than 3|V|");

  for (int i = 1; 2 * i <= k; ++i) {
    const auto res = state.residual_now();
    const std::int64_t stage_edges_before = static_cast<std::int64_t>(state.added_edges.size());
    require(res.size() % 2 == 0, errc::internal_check, "odd residual size");
    const std::int64_t s = static_cast<std::int64_t>(res.size()) / 2;

    std::vector<OrderedTuple> order;
    if (2 * i < k) {
      // Enumerate the residual along an Euler tour of A_i so consecutive
      // tuples share the pairing vertex.
      ArcMultiDigraph arcs;
      arcs.vertices = g1.vertices;
      for (const OrderedTuple& tup : res)
        arcs.arcs.push_back(
            {tup[static_cast<std::size_t>(i - 1)], tup[static_cast<std::size_t>(k - i - 1)]});
      std::sort(arcs.arcs.begin(), arcs.arcs.end());
      auto tour = euler_arc_tour(arcs);
      require(tour.has_value(), errc::internal_check, "arc digraph is not eulerian");
      std::map<std::pair<Vertex, Vertex>, std::vector<OrderedTuple>> by_arc;
      for (const auto& t : res)
        by_arc[{t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(k - i - 1)]}]
            .push_back(t);
      for (const auto& arc : *tour) {
        auto& bucket = by_arc[arc];
        require(!bucket.empty(), errc::internal_check, "arc multiset mismatch");
        order.push_back(bucket.back());
        bucket.pop_back();
      }
    } else {
      // Middle position: group by the middle vertex, whose counts are even.
      std::map<Vertex, std::vector<OrderedTuple>> by_mid;
      for (const auto& t : res) by_mid[t[static_cast<std::size_t>(i - 1)]].push_back(t);
      for (auto& [mid, bucket] : by_mid) {
        require(bucket.size() % 2 == 0, errc::internal_check, "middle counts must be even");
        for (auto& t : bucket) order.push_back(std::move(t));
      }
    }

    const Vertex zi = z[static_cast<std::size_t>(i - 1)];
    const Vertex zki = z[static_cast<std::size_t>(k - i - 1)];

    if (2 * i == k) {
      for (std::int64_t j = 0; j < s; ++j) {
        const OrderedTuple& t1a = order[static_cast<std::size_t>(2 * j)];
        const OrderedTuple& t2a = order[static_cast<std::size_t>(2 * j + 1)];
        const Vertex pivot = t1a[static_cast<std::size_t>(i - 1)];
        require(pivot == t2a[static_cast<std::size_t>(i - 1)], errc::internal_check,
                "paired tuples disagree on the middle");
        state.take(swapper(i, t1a, reversed(t2a), zi, pivot, len, supply), idx, {t1a, t2a});
      }
    } else {
      // Round one: pairs (2j-1, 2j) substitute z_i.
      for (std::int64_t j = 0; j < s; ++j) {
        const OrderedTuple& odd = order[static_cast<std::size_t>(2 * j)];
        const OrderedTuple& even = order[static_cast<std::size_t>(2 * j + 1)];
        const Vertex pivot = odd[static_cast<std::size_t>(k - i - 1)];
        require(pivot == even[static_cast<std::size_t>(i - 1)], errc::internal_check,
                "euler enumeration broke the pairing");
        state.take(swapper(i, even, reversed(odd), zi, pivot, len, supply), idx, {odd, even});
      }
      // Round two: pairs (2j, 2j+1) substitute z_{k-i}, on the rewritten
      // tuples.
      for (std::int64_t j = 0; j < s; ++j) {
        const OrderedTuple& even = order[static_cast<std::size_t>(2 * j + 1)];
        const OrderedTuple& next = order[static_cast<std::size_t>((2 * j + 2) % (2 * s))];
        const OrderedTuple c = with_position(even, i, zi);
        const OrderedTuple d = with_position(next, k - i, zi);
        const Vertex pivot = c[static_cast<std::size_t>(k - i - 1)];
        require(pivot == d[static_cast<std::size_t>(i - 1)], errc::internal_check,
                "euler enumeration broke the second pairing");
        state.take(swapper(i, d, reversed(c), zki, pivot, len, supply), idx, {c, d});
      }
    }

    if (!is_i_convert_residuals(res, state.residual_now(), i, z, k))
      out.converts_certified = false;
    const std::int64_t stage_edges =
        static_cast<std::int64_t>(state.added_edges.size()) - stage_edges_before;
    std::int64_t bound = 2 * k * static_cast<std::int64_t>(len) * s;
    for (int t = 0; t < i; ++t) bound *= 3;
    require(stage_edges <= bound, errc::internal_check, "stage exceeded its size bound");
    out.log.push_back(
        ledger_row("focus", "stage" + std::to_string(i) + "_edges", std::to_string(stage_edges)));
  }

  out.augmented = state.graph_with(g1);
  out.decomposition.host = out.augmented;
  out.decomposition.walks = state.live_walks();
  out.added_cycles = std::move(state.cycles);

  // Support and symmetry of the focused residual.
  {
    const auto res = residual(out.decomposition);
    for (const auto& t : res)
      for (int i = 1; i <= k - 1; ++i) {
        const Vertex v = t[static_cast<std::size_t>(i - 1)];
        require(v == z[static_cast<std::size_t>(i - 1)] || v == z[static_cast<std::size_t>(k - i - 1)],
                errc::internal_check, "focused residual leaves the designated support");
      }
    for (int i = 1; i <= k - 1; ++i)
      require(p_count(res, i, z[static_cast<std::size_t>(i - 1)]) ==
                  p_count(res, i, z[static_cast<std::size_t>(k - i - 1)]),
              errc::internal_check, "focused residual is lopsided");
    require(static_cast<std::int64_t>(res.size()) <= 3 * m1, errc::internal_check,
            "focused residual too large");
    require(is_balanced(out.decomposition), errc::internal_check, "focus broke balance");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Untangling

struct UntangleResult {
  KGraph augmented;
  TourTrailDecomposition tours;  // fully merged, residual-free
  std::vector<Walk> added_cycles;
  std::vector<LedgerRow> log;
};

/// Repairs the misplaced inner substitutions with three-swapper chains
/// through a fresh vertex, then merges everything; afterwards the residual
/// cancels completely and only tours remain.
inline UntangleResult untangle(const KGraph& g2, const TourTrailDecomposition& t2,
                               const std::vector<Vertex>& z, int len,
                               FreshVertexSupply& supply) {
  const int k = g2.k;
  require(static_cast<int>(z.size()) == k - 1, errc::bad_tuple_length, "z needs k-1 vertices");
  detail::PipelineState state{k, len, {}, {}, {}, {}};

  TourTrailDecomposition merged = merge_cancelling(t2);
  state.walks = merged.walks;
  TrailMergeIndex idx(state.walks, k);
  auto res = residual(merged);
  const std::int64_t d_before = static_cast<std::int64_t>(res.size());

  auto zpos = [&](Vertex v) {
    for (int i = 1; i <= k - 1; ++i)
      if (z[static_cast<std::size_t>(i - 1)] == v) return i;
    return 0;
  };
  for (const auto& t : res) {
    require(static_cast<int>(t.size()) == k - 1 && zpos(t[0]) != 0, errc::malformed_residual,
            "residual does not sit on the designated tuple");
    for (int i = 1; i <= k - 1; ++i) {
      const int p = zpos(t[static_cast<std::size_t>(i - 1)]);
      require(p == i || p == k - i, errc::malformed_residual,
              "residual tuple misplaced beyond a swap");
    }
  }

  for (int i = 2; 2 * i < k; ++i) {
    // red tuples start at z_1; i-bad means z_{k-i} sits at position i
    std::vector<OrderedTuple> red, blue;
    for (const auto& t : res) {
      const bool is_red = t[0] == z[0];
      const bool bad = is_red ? t[static_cast<std::size_t>(i - 1)] == z[static_cast<std::size_t>(k - i - 1)]
                              : t[static_cast<std::size_t>(i - 1)] == z[static_cast<std::size_t>(i - 1)];
      if (!bad) continue;
      (is_red ? red : blue).push_back(t);
    }
    require(red.size() == blue.size(), errc::internal_check,
            "red and blue misplacements must pair up");
    state.log.push_back(ledger_row("untangle", "bad_pairs_pos" + std::to_string(i),
                                   std::to_string(red.size())));
    const Vertex zi = z[static_cast<std::size_t>(i - 1)];
    const Vertex zki = z[static_cast<std::size_t>(k - i - 1)];
    for (std::size_t j = 0; j < red.size(); ++j) {
      const OrderedTuple& a = red[j];
      const OrderedTuple& b = blue[j];
      const Vertex w = supply.draw();
      // chain of three swappers through the fresh vertex; the designated
      // cancellations knock out a, b and the intermediate rewrites
      const OrderedTuple aw = with_position(a, i, w);
      const OrderedTuple bw = with_position(b, k - i, w);
      const OrderedTuple c = with_position(with_position(b, i, zki), k - i, w);
      const OrderedTuple d = with_position(with_position(a, i, w), k - i, zki);
      state.take(swapper(i, a, reversed(b), w, zki, len, supply), idx, {a, b});
      state.take(swapper(i, reversed(aw), bw, zi, zki, len, supply), idx, {aw, bw});
      state.take(swapper(i, with_position(a, k - i, zki), reversed(with_position(b, i, zki)), zi,
                         w, len, supply),
                 idx, {c, d});
    }
    res = state.residual_now();
  }

  UntangleResult out;
  out.augmented = state.graph_with(g2);
  TourTrailDecomposition full;
  full.host = out.augmented;
  full.walks = state.live_walks();
  out.tours = merge_cancelling(std::move(full));
  require(residual(out.tours).empty(), errc::internal_check,
          "untangling left an uncancelled residual");
  for (const Walk& w : out.tours.walks)
    require(w.tour, errc::internal_check, "a non-tour walk survived the final merge");
  const std::int64_t added = static_cast<std::int64_t>(state.added_edges.size());
  require(added <= static_cast<std::int64_t>(k) * k * k * len * d_before, errc::internal_check,
          "untangle exceeded its size bound");
  out.added_cycles = std::move(state.cycles);
  out.log = std::move(state.log);
  out.log.push_back(ledger_row("untangle", "edges", std::to_string(added)));
  return out;
}

// ---------------------------------------------------------------------------
// Tour augmentation

struct AugmentOptions {
  bool wide_prime_range = false;  // pick the padding prime from [klm^(k+1), 2klm^(k+1)]
};

struct AugmentResult {
  KGraph added;                   // J, edge-disjoint from G
  std::vector<Walk> added_cycles; // C_len certificate of J
  TourTrailDecomposition tours;   // tour decomposition of G u J
  std::vector<LedgerRow> stage_log;
  std::vector<Vertex> padding;    // isolated vertices introduced before focusing
  std::vector<Vertex> z;          // the designated focus tuple
};

/// Balance, pad to a prime vertex count, focus, untangle: afterwards G
/// together with the added cycles has a tour decomposition.
inline AugmentResult tour_augment(const KGraph& g, int len, FreshVertexSupply& supply,
                                  const AugmentOptions& options = {}) {
  const int k = g.k;
  require(len >= k * k - k + 1, errc::range_error, "cycle length below the gadget minimum");
  const std::int64_t m = static_cast<std::int64_t>(g.vertices.size());

  AugmentResult out;
  supply.reserve(g.vertices);

  BalanceResult balanced = balance(g, trivial_decomposition(g), len, supply);
  for (const auto& row : balanced.log) out.stage_log.push_back(row);
  out.stage_log.push_back(
      ledger_row("balance", "edges", std::to_string(balanced.augmented.size() - g.size())));
  {
    std::int64_t bound = len;
    for (int t = 0; t < k + 1; ++t) bound *= std::max<std::int64_t>(m, 1);
    require(static_cast<std::int64_t>(balanced.augmented.size()) <= bound, errc::internal_check,
            "balancing exceeded its size bound");
  }

  // Pad with fresh isolated vertices to a prime count with few enough edges.
  KGraph g1 = balanced.augmented;
  std::int64_t m1 = std::max<std::int64_t>(static_cast<std::int64_t>(g1.size()) * k + 1,
                                           static_cast<std::int64_t>(g1.vertices.size()));
  if (options.wide_prime_range) {
    std::int64_t lower = static_cast<std::int64_t>(k) * len;
    for (int t = 0; t < k + 1; ++t) lower *= std::max<std::int64_t>(m, 1);
    m1 = std::max(m1, lower);
  }
  m1 = detail::next_prime(m1);
  out.stage_log.push_back(ledger_row("pad", "prime", std::to_string(m1)));
  while (static_cast<std::int64_t>(g1.vertices.size()) < m1) {
    const Vertex v = supply.draw();
    out.padding.push_back(v);
    g1.vertices.insert(std::lower_bound(g1.vertices.begin(), g1.vertices.end(), v), v);
  }

  out.z = supply.draw(k - 1);
  TourTrailDecomposition t1;
  t1.host = g1;
  t1.walks = balanced.decomposition.walks;
  FocusResult focused = focus(g1, t1, out.z, len, supply);
  for (const auto& row : focused.log) out.stage_log.push_back(row);
  require(focused.converts_certified, errc::internal_check, "a focus pass failed certification");

  UntangleResult untangled = untangle(focused.augmented, focused.decomposition, out.z, len, supply);
  for (const auto& row : untangled.log) out.stage_log.push_back(row);

  out.tours = std::move(untangled.tours);
  out.added = minus(out.tours.host, g);
  out.added_cycles = std::move(balanced.added_cycles);
  for (auto& c : focused.added_cycles) out.added_cycles.push_back(std::move(c));
  for (auto& c : untangled.added_cycles) out.added_cycles.push_back(std::move(c));

  // Size ledger: the construction cannot exceed these counts; a violation
  // means a bug, not a tight instance.
  {
    std::int64_t bound = static_cast<std::int64_t>(len) * len * k * k * k * k * 9;
    for (int t = 0; t < k; ++t) bound *= 3;
    for (int t = 0; t < k + 1; ++t) bound *= std::max<std::int64_t>(m, 1);
    require(static_cast<std::int64_t>(out.tours.host.size()) <= bound, errc::internal_check,
            "augmentation exceeded the total size bound");
    out.stage_log.push_back(ledger_row("total", "edges", std::to_string(out.tours.host.size())));
  }
  require(residual(out.tours).empty(), errc::internal_check, "tour decomposition incomplete");
  return out;
}

// ---------------------------------------------------------------------------
// Mirroring along an edge-bijective homomorphism

/// Verifies that phi maps g edge-bijectively onto gp.
inline bool is_edge_bijective(const KGraph& g, const KGraph& gp,
                              const std::map<Vertex, Vertex>& phi, std::string* why = nullptr) {
  auto explain = [&](const std::string& s) {
    if (why != nullptr) *why = s;
    return false;
  };
  std::vector<Edge> images;
  for (const Edge& e : g.edges) {
    Edge im;
    for (Vertex v : e) {
      auto it = phi.find(v);
      if (it == phi.end()) return explain("a vertex has no image");
      im.push_back(it->second);
    }
    std::sort(im.begin(), im.end());
    if (std::adjacent_find(im.begin(), im.end()) != im.end())
      return explain("an edge collapses under the map");
    images.push_back(std::move(im));
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end())
    return explain("two edges share an image");
  if (images != gp.edges) return explain("images differ from the target edge set");
  return true;
}

struct MirrorResult {
  AugmentResult original;             // augmentation of g
  KGraph added_mirror;                // J'
  std::vector<Walk> mirror_cycles;    // images of the certificate cycles
  TourTrailDecomposition mirror_tours;
  std::map<Vertex, Vertex> extended;  // phi extended over the fresh vertices
};

/// Replays an augmentation of g over gp: every fresh vertex of the
/// construction is assigned a parallel fresh mirror vertex, anchors map
/// through phi, and the image is re-validated wholesale.  The extended map
/// is edge-bijective from g u J onto gp u J'.
inline MirrorResult mirrored_augment(const KGraph& g, const KGraph& gp,
                                     const std::map<Vertex, Vertex>& phi, int len,
                                     FreshVertexSupply& supply,
                                     const AugmentOptions& options = {}) {
  std::string why;
  require(is_edge_bijective(g, gp, phi, &why), errc::not_homomorphism, why);
  supply.reserve(g.vertices);
  supply.reserve(gp.vertices);

  MirrorResult out;
  out.original = tour_augment(g, len, supply, options);
  out.extended = phi;
  auto map_vertex = [&](Vertex v) {
    auto it = out.extended.find(v);
    if (it != out.extended.end()) return it->second;
    const Vertex fresh = supply.draw();
    out.extended.emplace(v, fresh);
    return fresh;
  };
  auto map_walk = [&](const Walk& w) {
    Walk img = w;
    for (auto& v : img.seq) v = map_vertex(v);
    return img;
  };

  std::vector<Edge> mirror_edges;
  for (const Walk& c : out.original.added_cycles) {
    Walk img = map_walk(c);
    // validity of the image cycle: windows stay k-sets and distinct
    std::set<Vertex> distinct(img.seq.begin(), img.seq.end());
    require(static_cast<int>(distinct.size()) == len, errc::not_homomorphism,
            "a mirrored cycle collapses");
    auto es = img.window_edges();
    mirror_edges.insert(mirror_edges.end(), es.begin(), es.end());
    out.mirror_cycles.push_back(std::move(img));
  }
  KGraph jp = collect_graph(g.k, mirror_edges);
  require(jp.size() == mirror_edges.size(), errc::not_homomorphism,
          "mirrored cycles share an edge");
  out.added_mirror = jp;

  KGraph union_mirror = graph_union(gp, jp, /*strict=*/true);
  out.mirror_tours.host = union_mirror;
  for (const Walk& w : out.original.tours.walks) {
    Walk img = map_walk(w);
    validate_walk(union_mirror, img.seq, img.tour);  // throws if the image breaks
    out.mirror_tours.walks.push_back(std::move(img));
  }
  require(partitions_host(out.mirror_tours), errc::not_homomorphism,
          "mirrored walks do not partition the image");

  // the extension is edge-bijective on the augmented graphs
  {
    std::map<Vertex, Vertex> full = out.extended;
    require(is_edge_bijective(out.original.tours.host, union_mirror, full, &why),
            errc::not_homomorphism, "extension: " + why);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transformers

struct TransformerResult {
  KGraph t;                    // the transformer graph
  Certificate cert_with_g;     // decomposes t u g
  Certificate cert_with_gp;    // decomposes t u gp
  std::vector<LedgerRow> log;
};

/// Builds a transformer between homomorphic divisible graphs: mirrored tour
/// augmentations, then for every window of every tour a pair of fresh
/// connecting paths closing into cycles one way around the original and the
/// other way around the image.
inline TransformerResult transformer(const KGraph& g, const KGraph& gp,
                                     const std::map<Vertex, Vertex>& phi, int len,
                                     FreshVertexSupply& supply,
                                     const AugmentOptions& options = {}) {
  const int k = g.k;
  require(len >= 2 * (k * k - k) + 1, errc::range_error,
          "cycle length below the transformer minimum");
  require(is_cycle_divisible(g, len) && is_cycle_divisible(gp, len), errc::not_divisible,
          "inputs must be cycle-divisible");
  {
    std::vector<Vertex> shared;
    std::set_intersection(g.vertices.begin(), g.vertices.end(), gp.vertices.begin(),
                          gp.vertices.end(), std::back_inserter(shared));
    require(shared.empty(), errc::overlap, "inputs must be vertex-disjoint");
  }

  MirrorResult mirror = mirrored_augment(g, gp, phi, len, supply, options);
  const AugmentResult& aug = mirror.original;

  TransformerResult out;
  std::vector<Walk> cycles_with_g;   // pieces of (g u J) u T*
  std::vector<Walk> cycles_with_gp;  // pieces of (gp u J') u T*
  std::vector<Edge> tstar_edges;

  const int plen = k * k - k;            // connector length
  const int qlen = len - k * k + k - 1;  // return length

  for (std::size_t ti = 0; ti < aug.tours.walks.size(); ++ti) {
    const Walk& tour = aug.tours.walks[ti];
    const Walk& image = mirror.mirror_tours.walks[ti];
    const int edges = tour.edge_count();
    const auto& v = tour.seq;
    const auto& w = image.seq;
    auto vat = [&](int idx) { return v[static_cast<std::size_t>(idx % edges)]; };
    auto wat = [&](int idx) { return w[static_cast<std::size_t>(idx % edges)]; };

    // P_j: k*k-k edges from (v_{j+1}..v_{j+k-1}) to (w_j..w_{j+k-2});
    // Q_j: the complementary length from (w_j..w_{j+k-2}) to (v_j..v_{j+k-2}).
    std::vector<std::vector<Vertex>> pfresh(static_cast<std::size_t>(edges));
    std::vector<std::vector<Vertex>> qfresh(static_cast<std::size_t>(edges));
    for (int j = 0; j < edges; ++j) {
      pfresh[static_cast<std::size_t>(j)] = supply.draw(plen - k + 1);
      qfresh[static_cast<std::size_t>(j)] = supply.draw(qlen - k + 1);
    }
    for (int j = 0; j < edges; ++j) {
      std::vector<Vertex> c1;
      for (int i = 0; i < k; ++i) c1.push_back(vat(j + i));
      c1.insert(c1.end(), pfresh[static_cast<std::size_t>(j)].begin(),
                pfresh[static_cast<std::size_t>(j)].end());
      for (int i = 0; i < k - 1; ++i) c1.push_back(wat(j + i));
      c1.insert(c1.end(), qfresh[static_cast<std::size_t>(j)].begin(),
                qfresh[static_cast<std::size_t>(j)].end());
      require(static_cast<int>(c1.size()) == len, errc::internal_check, "connector miscount");
      Walk cyc1;
      cyc1.k = k;
      cyc1.tour = true;
      cyc1.seq = c1;
      for (int i = 0; i < k - 1; ++i) cyc1.seq.push_back(c1[static_cast<std::size_t>(i)]);
      cycles_with_g.push_back(cyc1);

      std::vector<Vertex> c2;
      for (int i = 0; i < k; ++i) c2.push_back(wat(j + i));
      const int jn = (j + 1) % edges;
      c2.insert(c2.end(), qfresh[static_cast<std::size_t>(jn)].begin(),
                qfresh[static_cast<std::size_t>(jn)].end());
      for (int i = 1; i < k; ++i) c2.push_back(vat(j + i));
      c2.insert(c2.end(), pfresh[static_cast<std::size_t>(j)].begin(),
                pfresh[static_cast<std::size_t>(j)].end());
      require(static_cast<int>(c2.size()) == len, errc::internal_check, "connector miscount");
      Walk cyc2;
      cyc2.k = k;
      cyc2.tour = true;
      cyc2.seq = c2;
      for (int i = 0; i < k - 1; ++i) cyc2.seq.push_back(c2[static_cast<std::size_t>(i)]);
      cycles_with_gp.push_back(cyc2);
    }
  }

  // T* = the connector edges: everything in cycles_with_g beyond g u J.
  {
    std::set<Edge> own(aug.tours.host.edges.begin(), aug.tours.host.edges.end());
    for (const Walk& c : cycles_with_g)
      for (const Edge& e : c.window_edges())
        if (own.count(e) == 0) tstar_edges.push_back(e);
  }

  // T = J u J' u T*
  std::vector<Edge> t_edges = tstar_edges;
  t_edges.insert(t_edges.end(), aug.added.edges.begin(), aug.added.edges.end());
  t_edges.insert(t_edges.end(), mirror.added_mirror.edges.begin(),
                 mirror.added_mirror.edges.end());
  out.t = collect_graph(k, t_edges);
  require(out.t.size() == t_edges.size(), errc::internal_check, "transformer parts overlap");

  // certificates
  out.cert_with_g.kind = Certificate::Kind::cycles;
  out.cert_with_g.len = len;
  out.cert_with_g.pieces = cycles_with_g;
  for (const Walk& c : mirror.mirror_cycles) out.cert_with_g.pieces.push_back(c);

  out.cert_with_gp.kind = Certificate::Kind::cycles;
  out.cert_with_gp.len = len;
  out.cert_with_gp.pieces = cycles_with_gp;
  for (const Walk& c : aug.added_cycles) out.cert_with_gp.pieces.push_back(c);

  const KGraph tg = graph_union(out.t, g, /*strict=*/true);
  require(verify_certificate(tg, out.cert_with_g).ok, errc::internal_check,
          "certificate for t u g failed");
  const KGraph tgp = graph_union(out.t, gp, /*strict=*/true);
  require(verify_certificate(tgp, out.cert_with_gp).ok, errc::internal_check,
          "certificate for t u gp failed");

  // the transformer avoids the inputs' vertex sets internally
  require(induced(out.t, g.vertices).size() == 0, errc::internal_check,
          "transformer touches the source internally");
  require(induced(out.t, gp.vertices).size() == 0, errc::internal_check,
          "transformer touches the target internally");

  out.log.push_back(ledger_row("transformer", "edges", std::to_string(out.t.size())));
  out.log.push_back(ledger_row("transformer", "vertices", std::to_string(out.t.vertices.size())));
  return out;
}

// ---------------------------------------------------------------------------
// The extension operator

struct ExtensionResult {
  KGraph nabla;                                  // the union of the partial copies
  std::vector<std::vector<Vertex>> embeddings;   // full F-images, one per edge of g
  KGraph pattern;                                // F itself, for verification
};

/// For every edge of g, a fresh copy of `pattern` minus its anchor edge, the
/// anchor vertices played by the edge's vertices in the given order; g
/// together with the result is pattern-decomposable by construction.
inline ExtensionResult extension_graph(const KGraph& pattern, const std::vector<Vertex>& anchor,
                                       const KGraph& g,
                                       const std::map<Edge, std::vector<Vertex>>* order,
                                       FreshVertexSupply& supply) {
  const int k = pattern.k;
  require(g.k == k, errc::uniformity_mismatch, "uniformities differ");
  require(static_cast<int>(anchor.size()) == k, errc::bad_tuple_length, "anchor must be a k-tuple");
  Edge anchor_edge = sorted_edge(anchor);
  require(pattern.has_edge(anchor_edge), errc::anchor_not_edge, "anchor is not an edge of F");
  supply.reserve(g.vertices);

  ExtensionResult out;
  out.pattern = pattern;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges) {
    std::vector<Vertex> spelled = e;
    if (order != nullptr) {
      auto it = order->find(e);
      if (it != order->end()) {
        require(sorted_edge(it->second) == e, errc::not_an_edge, "order does not spell the edge");
        spelled = it->second;
      }
    }
    std::map<Vertex, Vertex> img;
    for (int i = 0; i < k; ++i) img[anchor[static_cast<std::size_t>(i)]] = spelled[static_cast<std::size_t>(i)];
    for (Vertex v : pattern.vertices)
      if (img.find(v) == img.end()) img[v] = supply.draw();
    for (const Edge& fe : pattern.edges) {
      if (fe == anchor_edge) continue;
      Edge im;
      for (Vertex v : fe) im.push_back(img.at(v));
      std::sort(im.begin(), im.end());
      edges.push_back(std::move(im));
    }
    std::vector<Vertex> embedding;
    for (Vertex v : pattern.vertices) embedding.push_back(img.at(v));
    out.embeddings.push_back(std::move(embedding));
  }
  out.nabla = collect_graph(k, edges);
  require(out.nabla.size() == g.size() * (pattern.size() - 1), errc::edge_collision,
          "extension copies overlap");
  return out;
}

// ---------------------------------------------------------------------------
// Clique homomorphisms and absorbers

struct CliqueHomResult {
  bool ok = false;
  std::string failure;
  int m = 0;
  std::int64_t q = 0;
  std::map<Vertex, Vertex> embedding;            // g into the clique
  std::vector<std::vector<Vertex>> copy_images;  // where each extra F copy lands
};

/// Embeds g into a complete graph whose complement the oracle can decompose
/// into copies of f; the result is an edge-bijective homomorphism from
/// g + qF onto the clique.  Budget exhaustion is reported, not guessed.
inline CliqueHomResult clique_homomorphism(const KGraph& g, const KGraph& f,
                                           std::int64_t oracle_budget = 3'000'000, int m_cap = 16) {
  CliqueHomResult out;
  require(g.k == f.k, errc::uniformity_mismatch, "uniformities differ");
  if (!is_f_divisible(g, f)) {
    out.failure = "input is not divisible";
    return out;
  }
  bool budget_hit = false;
  for (int m = std::max<int>(g.k, static_cast<int>(g.vertices.size())); m <= m_cap; ++m) {
    const KGraph clique = complete_graph(m, g.k);
    if (!is_f_divisible(clique, f)) continue;
    // embed g on the first vertices
    std::map<Vertex, Vertex> phi;
    int next = 0;
    for (Vertex v : g.vertices) phi[v] = next++;
    std::vector<Edge> image;
    for (const Edge& e : g.edges) {
      Edge im;
      for (Vertex v : e) im.push_back(phi[v]);
      std::sort(im.begin(), im.end());
      image.push_back(std::move(im));
    }
    KGraph complement = minus(clique, collect_graph(g.k, image));
    auto solved = f_decompose(complement, f, oracle_budget);
    if (solved.status == SolveStatus::budget_exhausted) {
      budget_hit = true;
      continue;
    }
    if (solved.status != SolveStatus::found) continue;
    out.ok = true;
    out.m = m;
    out.q = static_cast<std::int64_t>(solved.cert->maps.size());
    out.embedding = std::move(phi);
    out.copy_images = std::move(solved.cert->maps);
    return out;
  }
  out.failure = budget_hit ? "oracle budget exhausted" : "no admissible clique size in range";
  return out;
}

struct AbsorberResult {
  KGraph absorber_graph;     // A, disjoint from V(G) internally
  Certificate cert_alone;    // decomposes A
  Certificate cert_with_g;   // decomposes A u G
  std::vector<LedgerRow> log;
};

/// Assembles an absorber for a divisible leftover: clique homomorphisms on
/// both flanks, extension graphs over the three aligned unions, and two
/// transformers bridging them.  Oracle failures propagate as errors.
inline AbsorberResult absorber(const KGraph& g, int len, FreshVertexSupply& supply,
                               std::int64_t oracle_budget = 3'000'000, int m_cap = 16) {
  const int k = g.k;
  const KGraph f = tight_cycle(len, k);
  require(is_f_divisible(g, f), errc::not_divisible, "leftover is not divisible");
  supply.reserve(g.vertices);

  CliqueHomResult hom1 = clique_homomorphism(g, f, oracle_budget, m_cap);
  require(hom1.ok, errc::oracle_failure, "clique homomorphism: " + hom1.failure);
  const int m1 = hom1.m;
  const KGraph clique = complete_graph(m1, k);
  auto whole = f_decompose(clique, f, oracle_budget);
  require(whole.status == SolveStatus::found, errc::oracle_failure,
          "clique itself resisted decomposition within budget");

  AbsorberResult out;
  out.log.push_back(ledger_row("absorber", "m", std::to_string(m1)));
  out.log.push_back(ledger_row("absorber", "q1", std::to_string(hom1.q)));
  out.log.push_back(ledger_row("absorber", "q2", std::to_string(whole.cert->maps.size())));

  // G1 = g + q1 F on fresh copies; G2 = clique on fresh ids; G3 = q2 F fresh.
  auto fresh_copy_of = [&](const KGraph& pattern) {
    std::map<Vertex, Vertex> relabel;
    for (Vertex v : pattern.vertices) relabel[v] = supply.draw();
    std::vector<Edge> es;
    for (const Edge& e : pattern.edges) {
      Edge im;
      for (Vertex v : e) im.push_back(relabel.at(v));
      std::sort(im.begin(), im.end());
      es.push_back(std::move(im));
    }
    return std::make_pair(collect_graph(k, es), relabel);
  };

  KGraph g1 = g;
  std::map<Vertex, Vertex> phi1;  // V(G1) -> clique ids 0..m1-1
  for (const auto& [v, img] : hom1.embedding) phi1[v] = img;
  std::vector<KGraph> f_copies1;
  for (std::int64_t c = 0; c < hom1.q; ++c) {
    auto [copy, relabel] = fresh_copy_of(f);
    // map this copy onto the c-th piece of the complement decomposition
    const auto& target = hom1.copy_images[static_cast<std::size_t>(c)];
    int idx = 0;
    for (Vertex v : f.vertices) phi1[relabel.at(v)] = target[static_cast<std::size_t>(idx++)];
    g1 = graph_union(g1, copy, /*strict=*/true);
    f_copies1.push_back(std::move(copy));
  }

  auto [g2, relabel2] = fresh_copy_of(clique);
  std::map<Vertex, Vertex> clique_to_g2;
  for (const auto& [v, img] : relabel2) clique_to_g2[v] = img;

  KGraph g3;
  g3.k = k;
  std::map<Vertex, Vertex> phi3;  // V(G3) -> clique ids
  std::vector<KGraph> f_copies3;
  for (std::size_t c = 0; c < whole.cert->maps.size(); ++c) {
    auto [copy, relabel] = fresh_copy_of(f);
    const auto& target = whole.cert->maps[c];
    int idx = 0;
    for (Vertex v : f.vertices) phi3[relabel.at(v)] = target[static_cast<std::size_t>(idx++)];
    g3 = (c == 0) ? copy : graph_union(g3, copy, /*strict=*/true);
    f_copies3.push_back(std::move(copy));
  }

  // Order every edge by its image in the clique (ascending there), so the
  // three extension graphs align under the homomorphisms.
  auto orders_for = [&](const KGraph& gx, const std::map<Vertex, Vertex>& phi) {
    std::map<Edge, std::vector<Vertex>> order;
    for (const Edge& e : gx.edges) {
      std::vector<std::pair<Vertex, Vertex>> by_image;
      for (Vertex v : e) by_image.push_back({phi.at(v), v});
      std::sort(by_image.begin(), by_image.end());
      std::vector<Vertex> spelled;
      for (const auto& [img, v] : by_image) spelled.push_back(v);
      order[e] = std::move(spelled);
    }
    return order;
  };
  std::map<Vertex, Vertex> ident2;
  for (Vertex v : g2.vertices) ident2[v] = v;
  // g2's "images" are its own ids in clique order
  std::map<Vertex, Vertex> phi2;
  for (const auto& [cv, v2] : clique_to_g2) phi2[v2] = cv;

  const std::vector<Vertex> anchor = tight_cycle(len, k).vertices;  // 0..len-1 spelling
  std::vector<Vertex> anchor_tuple(anchor.begin(), anchor.begin() + k);

  auto order1 = orders_for(g1, phi1);
  auto order2 = orders_for(g2, phi2);
  auto order3 = orders_for(g3, phi3);
  ExtensionResult ext1 = extension_graph(f, anchor_tuple, g1, &order1, supply);
  ExtensionResult ext2 = extension_graph(f, anchor_tuple, g2, &order2, supply);
  ExtensionResult ext3 = extension_graph(f, anchor_tuple, g3, &order3, supply);

  // Homomorphisms between the extension graphs: edges correspond through the
  // clique, and each partial copy maps onto its partner pointwise.
  auto ext_hom = [&](const KGraph& ga, const ExtensionResult& ea,
                     const std::map<Vertex, Vertex>& pa, const KGraph& gb,
                     const ExtensionResult& eb, const std::map<Vertex, Vertex>& pb) {
    // match edges of ga and gb by their clique image
    std::map<Edge, std::size_t> index_b;
    for (std::size_t i = 0; i < gb.edges.size(); ++i) {
      Edge im;
      for (Vertex v : gb.edges[i]) im.push_back(pb.at(v));
      std::sort(im.begin(), im.end());
      index_b[im] = i;
    }
    std::map<Vertex, Vertex> hom;
    for (std::size_t i = 0; i < ga.edges.size(); ++i) {
      Edge im;
      for (Vertex v : ga.edges[i]) im.push_back(pa.at(v));
      std::sort(im.begin(), im.end());
      const std::size_t j = index_b.at(im);
      const auto& ia = ea.embeddings[i];
      const auto& ib = eb.embeddings[j];
      for (std::size_t t = 0; t < ia.size(); ++t) hom[ia[t]] = ib[t];
    }
    return hom;
  };

  auto hom12 = ext_hom(g1, ext1, phi1, g2, ext2, phi2);
  auto hom32 = ext_hom(g3, ext3, phi3, g2, ext2, phi2);

  TransformerResult t1 = transformer(ext1.nabla, ext2.nabla, hom12, len, supply);
  TransformerResult t2 = transformer(ext3.nabla, ext2.nabla, hom32, len, supply);

  // Assemble A = (G1 - G) u ext1 u T1 u ext2 u T2 u ext3 u G3.
  std::vector<Edge> a_edges;
  auto append = [&](const KGraph& part) {
    a_edges.insert(a_edges.end(), part.edges.begin(), part.edges.end());
  };
  append(minus(g1, g));
  append(ext1.nabla);
  append(t1.t);
  append(ext2.nabla);
  append(t2.t);
  append(ext3.nabla);
  append(g3);
  out.absorber_graph = collect_graph(k, a_edges);
  require(out.absorber_graph.size() == a_edges.size(), errc::internal_check,
          "absorber parts overlap");
  require(induced(out.absorber_graph, g.vertices).size() == 0, errc::internal_check,
          "absorber touches the leftover internally");

  // Cycle pieces from an embedding of the pattern cycle.
  auto cycle_walk = [&](const std::vector<Vertex>& embedding) {
    Walk w;
    w.k = k;
    w.tour = true;
    w.seq.assign(embedding.begin(), embedding.end());
    for (int i = 0; i < k - 1; ++i) w.seq.push_back(embedding[static_cast<std::size_t>(i)]);
    return w;
  };

  // A u G = (G1 u ext1) + (T1 u ext2) + (T2 u ext3) + G3.
  out.cert_with_g.kind = Certificate::Kind::cycles;
  out.cert_with_g.len = len;
  for (const auto& emb : ext1.embeddings) out.cert_with_g.pieces.push_back(cycle_walk(emb));
  for (const Walk& c : t1.cert_with_gp.pieces) out.cert_with_g.pieces.push_back(c);
  for (const Walk& c : t2.cert_with_gp.pieces) out.cert_with_g.pieces.push_back(c);
  for (const KGraph& copy : f_copies3) {
    std::vector<Vertex> emb = copy.vertices;  // fresh copies keep cyclic order under relabel
    out.cert_with_g.pieces.push_back(cycle_walk(emb));
  }

  // A alone = (G1 - G as q1 copies) + (ext1 u T1) + (ext2 u T2) + (ext3 u G3).
  out.cert_alone.kind = Certificate::Kind::cycles;
  out.cert_alone.len = len;
  for (const KGraph& copy : f_copies1) {
    std::vector<Vertex> emb = copy.vertices;
    out.cert_alone.pieces.push_back(cycle_walk(emb));
  }
  for (const Walk& c : t1.cert_with_g.pieces) out.cert_alone.pieces.push_back(c);
  for (const Walk& c : t2.cert_with_g.pieces) out.cert_alone.pieces.push_back(c);
  for (const auto& emb : ext3.embeddings) out.cert_alone.pieces.push_back(cycle_walk(emb));

  const KGraph ag = graph_union(out.absorber_graph, g, /*strict=*/true);
  require(verify_certificate(ag, out.cert_with_g).ok, errc::internal_check,
          "absorber certificate with the leftover failed");
  require(verify_certificate(out.absorber_graph, out.cert_alone).ok, errc::internal_check,
          "absorber certificate alone failed");
  return out;
}

// ---------------------------------------------------------------------------
// Degree adjuster

struct AdjusterResult {
  bool ok = false;
  std::string failure;
  KGraph removed;              // H', path-decomposable
  Certificate path_cert;
  std::int64_t arc_count = 0;
  std::int64_t trail_len = 0;  // edges per trail
  bool sparse_ok = false;      // the anchor list passed the exact sparsity check
  std::int64_t removed_codegree = 0;
  std::vector<LedgerRow> log;
};

/// Removes a sparse path-decomposable subgraph so every degree becomes
/// divisible by k: a greedy arc digraph fixes residues, each arc is realized
/// as one long trail with prescribed end degrees via the extension process.
inline AdjusterResult degree_adjuster(const KGraph& h, int len, Rng& rng, double epsilon = 0.05,
                                      double gamma = 0.1, double mu = 0.25, int cap = 256) {
  const int k = h.k;
  const int n = static_cast<int>(h.vertices.size());
  AdjusterResult out;

  const std::int64_t d2 = min_common_neighbors(h, 2);
  out.log.push_back(ledger_row("pre", "delta2", std::to_string(d2)));
  if (static_cast<double>(d2) < epsilon * n)
    out.log.push_back(ledger_row("pre", "delta2_low", "below epsilon*n, proceeding anyway"));

  // Arc digraph with outdeg - indeg + deg divisible by k everywhere: every
  // vertex emits (-deg mod k) out-stubs, the total (a multiple of k) is
  // absorbed k at a time, and the stub lists are matched up avoiding loops.
  std::vector<Vertex> out_stubs, in_stubs;
  for (Vertex v : h.vertices) {
    const std::int64_t t = (k - degree(h, {v}) % k) % k;
    for (std::int64_t c = 0; c < t; ++c) out_stubs.push_back(v);
  }
  require(static_cast<std::int64_t>(out_stubs.size()) % k == 0, errc::internal_check,
          "degree residues do not sum to zero");
  {
    const std::int64_t hosts = static_cast<std::int64_t>(out_stubs.size()) / k;
    // absorb the flow at the tail of the vertex list, away from most stubs
    for (std::int64_t c = 0; c < hosts; ++c) {
      const Vertex v = h.vertices[h.vertices.size() - 1 - static_cast<std::size_t>(c % n)];
      for (int t = 0; t < k; ++t) in_stubs.push_back(v);
    }
  }
  // resolve loops before the lists are zipped into arcs
  for (std::size_t i = 0; i < out_stubs.size(); ++i) {
    if (out_stubs[i] != in_stubs[i]) continue;
    bool fixed = false;
    for (std::size_t j = 0; j < in_stubs.size() && !fixed; ++j) {
      if (in_stubs[j] == out_stubs[i] || out_stubs[j] == in_stubs[i]) continue;
      std::swap(in_stubs[i], in_stubs[j]);
      fixed = true;
    }
    require(fixed, errc::internal_check, "could not avoid a loop arc");
  }
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (std::size_t i = 0; i < out_stubs.size(); ++i) arcs.push_back({out_stubs[i], in_stubs[i]});
  out.arc_count = static_cast<std::int64_t>(arcs.size());
  out.log.push_back(ledger_row("arcs", "count", std::to_string(arcs.size())));
  require(out.arc_count <= static_cast<std::int64_t>(k) * n, errc::internal_check,
          "arc digraph grew past kn");

  if (arcs.empty()) {
    out.ok = true;
    out.removed.k = k;
    out.path_cert.kind = Certificate::Kind::paths;
    out.path_cert.len = len;
    return out;
  }

  // trail length: a common multiple of both path readings, past k^2-k+2
  const std::int64_t piece = len - k + 1;
  std::int64_t l0 = std::lcm<std::int64_t>(len, piece);
  while (l0 < k * k - k + 2) l0 += std::lcm<std::int64_t>(len, piece);
  out.trail_len = l0;
  out.log.push_back(ledger_row("arcs", "trail_edges", std::to_string(l0)));

  // anchor tuples u x_{k-1}..x_2 and x_2..x_{k-1} v with random distinct x's
  SparsePairList pairs;
  pairs.gamma = gamma;
  pairs.ambient_n = n;
  for (const auto& [uu, vv] : arcs) {
    std::set<Vertex> chosen;
    while (static_cast<int>(chosen.size()) < k - 2) {
      Vertex x = h.vertices[static_cast<std::size_t>(rng.below(h.vertices.size()))];
      if (x != uu && x != vv) chosen.insert(x);
    }
    std::vector<Vertex> xs(chosen.begin(), chosen.end());
    OrderedTuple a{uu};
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) a.push_back(*it);
    OrderedTuple b(xs.begin(), xs.end());
    b.push_back(vv);
    pairs.pairs.push_back({a, b});
  }
  out.sparse_ok = check_sparse(pairs, k);
  out.log.push_back(ledger_row("arcs", "sparse", out.sparse_ok ? "yes" : "no"));

  auto extended = extend_all(h, pairs, static_cast<int>(l0), mu, rng, cap);
  if (!extended.ok) {
    out.failure = "extension process failed at arc " + std::to_string(extended.failed_index) +
                  ": " + extended.failure;
    fail(errc::host_too_sparse, out.failure);
  }
  out.removed_codegree = extended.union_codegree;

  std::vector<Edge> removed;
  out.path_cert.kind = Certificate::Kind::paths;
  out.path_cert.len = len;
  for (const Walk& t : extended.trails) {
    auto es = t.window_edges();
    removed.insert(removed.end(), es.begin(), es.end());
    for (std::int64_t start = 0; start + piece <= l0; start += piece) {
      Walk p;
      p.k = k;
      p.tour = false;
      p.seq.assign(t.seq.begin() + start, t.seq.begin() + start + len);
      out.path_cert.pieces.push_back(std::move(p));
    }
  }
  out.removed = collect_graph(k, removed);
  require(out.removed.size() == removed.size(), errc::internal_check, "trails overlap");
  require(static_cast<std::int64_t>(out.removed.size()) <=
              static_cast<std::int64_t>(len) * len * k * n,
          errc::internal_check, "adjuster removed more than its bound");
  require(verify_certificate(out.removed, out.path_cert).ok, errc::internal_check,
          "path certificate failed");
  for (Vertex v : h.vertices) {
    const std::int64_t left = degree(h, {v}) - degree(out.removed, {v});
    require(left % k == 0, errc::internal_check,
            "degree still not divisible at vertex " + std::to_string(v));
  }
  out.ok = true;
  return out;
}

}  // namespace tcd

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
#include <string>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/tuples.hpp"
#include "tcd/walks.hpp"

namespace tcd {

/// An edge-decomposition of a host graph into tours and trails.
struct TourTrailDecomposition {
  KGraph host;
  std::vector<Walk> walks;
};

/// Every edge as a single-edge trail.  `orientation` may reorder individual
/// edges; unlisted edges are used ascending.
inline TourTrailDecomposition trivial_decomposition(
    const KGraph& h, const std::map<Edge, std::vector<Vertex>>* orientation = nullptr) {
  TourTrailDecomposition t;
  t.host = h;
  t.walks.reserve(h.edges.size());
  for (const Edge& e : h.edges) {
    Walk w;
    w.k = h.k;
    w.tour = false;
    w.seq = e;
    if (orientation != nullptr) {
      auto it = orientation->find(e);
      if (it != orientation->end()) {
        require(sorted_edge(it->second) == e, errc::not_an_edge,
                "orientation does not spell the edge");
        w.seq = it->second;
      }
    }
    t.walks.push_back(std::move(w));
  }
  return t;
}

/// D(T): multiset of trail ends, sorted; tours contribute nothing.
inline std::vector<OrderedTuple> residual(const TourTrailDecomposition& t) {
  std::vector<OrderedTuple> out;
  for (const Walk& w : t.walks) {
    if (w.tour) continue;
    auto ends = trail_ends(w);
    out.push_back(std::move(ends[0]));
    out.push_back(std::move(ends[1]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::int64_t p_count(const std::vector<OrderedTuple>& res, int i, Vertex v) {
  std::int64_t n = 0;
  for (const OrderedTuple& t : res) {
    require(i >= 1 && i <= static_cast<int>(t.size()), errc::index_out_of_range,
            "tuple position out of range");
    if (t[static_cast<std::size_t>(i - 1)] == v) ++n;
  }
  return n;
}

inline std::int64_t p_count(const TourTrailDecomposition& t, int i, Vertex v) {
  return p_count(residual(t), i, v);
}

/// p_i(v) for all i in [k-1] and all vertices appearing in the residual.
inline std::map<Vertex, std::vector<std::int64_t>> p_table(const std::vector<OrderedTuple>& res,
                                                           int k) {
  std::map<Vertex, std::vector<std::int64_t>> table;
  for (const OrderedTuple& t : res)
    for (int i = 1; i <= k - 1; ++i) {
      auto& row = table[t[static_cast<std::size_t>(i - 1)]];
      if (row.empty()) row.assign(static_cast<std::size_t>(k), 0);
      ++row[static_cast<std::size_t>(i)];
    }
  return table;
}

inline bool is_balanced(const TourTrailDecomposition& t) {
  const int k = t.host.k;
  auto table = p_table(residual(t), k);
  for (const auto& [v, row] : table)
    for (int i = 1; i <= k - 1; ++i)
      if (row[static_cast<std::size_t>(i)] != row[static_cast<std::size_t>(k - i)]) return false;
  return true;
}

/// Repeatedly joins trail pairs whose residual tuples are mutual reverses,
/// scanning tuples in lexicographic order; the fixpoint has no such pair.
/// The host edge set never changes and |D| drops by exactly two per merge.
/// Joins splice sequences in place, so long chains stay near-linear.
inline TourTrailDecomposition merge_cancelling(TourTrailDecomposition t) {
  const int k = t.host.k;
  std::vector<Walk> walks = std::move(t.walks);
  std::vector<bool> alive(walks.size(), true);

  // end tuple -> walk slots carrying it (walk index, end slot)
  std::map<OrderedTuple, std::set<std::pair<int, int>>> where;
  auto add_entries = [&](int wi) {
    const Walk& w = walks[static_cast<std::size_t>(wi)];
    if (w.tour) return;
    auto ends = trail_ends(w);
    where[ends[0]].insert({wi, 0});
    where[ends[1]].insert({wi, 1});
  };
  auto drop_entries = [&](int wi) {
    const Walk& w = walks[static_cast<std::size_t>(wi)];
    auto ends = trail_ends(w);
    where[ends[0]].erase({wi, 0});
    where[ends[1]].erase({wi, 1});
  };
  for (int wi = 0; wi < static_cast<int>(walks.size()); ++wi) add_entries(wi);

  // Cancellations only ever remove tuples, so one forward pass over the tuple
  // order suffices: a tuple that lacks its reverse now will lack it forever.
  for (auto it = where.begin(); it != where.end(); ++it) {
    const OrderedTuple y = it->first;
    const OrderedTuple ry = reversed(y);
    for (;;) {
      auto& ys = where[y];
      auto rit = where.find(ry);
      if (rit == where.end()) break;
      auto& rys = rit->second;
      if (y == ry ? ys.size() < 2 : (ys.empty() || rys.empty())) break;

      const auto e1 = *ys.begin();
      std::pair<int, int> e2{-1, -1};
      for (const auto& cand : rys) {
        if (cand != e1) {
          e2 = cand;
          break;
        }
      }
      if (e2.first < 0) break;
      const int wi = e1.first, wj = e2.first;
      drop_entries(wi);
      if (wj != wi) drop_entries(wj);

      if (wi == wj) {
        // Self-closing: both ends are mutual reverses, which is exactly the
        // wrap-overlap form.
        Walk& w = walks[static_cast<std::size_t>(wi)];
        w.tour = true;
      } else {
        Walk a = std::move(walks[static_cast<std::size_t>(wi)]);
        Walk b = std::move(walks[static_cast<std::size_t>(wj)]);
        // Orient a to end with y and b to start with y, then splice.
        auto ae = trail_ends(a);
        if (ae[1] != y) std::reverse(a.seq.begin(), a.seq.end());
        auto be = trail_ends(b);
        if (be[0] != ry) std::reverse(b.seq.begin(), b.seq.end());
        a.seq.insert(a.seq.end(), b.seq.begin() + (k - 1), b.seq.end());
        walks[static_cast<std::size_t>(wj)].seq.clear();
        alive[static_cast<std::size_t>(wj)] = false;
        walks[static_cast<std::size_t>(wi)] = std::move(a);
        add_entries(wi);
      }
    }
  }

  t.walks.clear();
  for (std::size_t i = 0; i < walks.size(); ++i)
    if (alive[i]) t.walks.push_back(std::move(walks[i]));
  return t;
}

inline bool is_tour_decomposition(const TourTrailDecomposition& t) {
  return residual(merge_cancelling(t)).empty();
}

/// Persistent index over a walk list for targeted cancellations: joins the
/// designated reverse pairs one at a time while keeping every other tuple in
/// place.  Used by constructions that must control exactly which pairs merge.
class TrailMergeIndex {
 public:
  TrailMergeIndex(std::vector<Walk>& walks, int k) : walks_(&walks), k_(k) {
    for (int wi = 0; wi < static_cast<int>(walks.size()); ++wi) index(wi);
  }

  /// Registers walks appended since construction (or the last sync).
  void sync() {
    for (int wi = indexed_; wi < static_cast<int>(walks_->size()); ++wi) index(wi);
  }

  /// Joins one pair of trails carrying y and its reverse; |D| drops by two.
  void cancel(const OrderedTuple& y) {
    sync();
    const OrderedTuple ry = reversed(y);
    auto yit = where_.find(y);
    auto rit = where_.find(ry);
    require(yit != where_.end() && !yit->second.empty() && rit != where_.end() &&
                (y != ry ? !rit->second.empty() : yit->second.size() >= 2),
            errc::no_matching_ends, "designated pair is not present");
    const auto e1 = *yit->second.begin();
    std::pair<int, int> e2{-1, -1};
    for (const auto& cand : rit->second)
      if (cand != e1) {
        e2 = cand;
        break;
      }
    require(e2.first >= 0, errc::no_matching_ends, "reverse entry unavailable");
    const int wi = e1.first, wj = e2.first;
    drop(wi);
    if (wj != wi) drop(wj);
    auto& walks = *walks_;
    if (wi == wj) {
      walks[static_cast<std::size_t>(wi)].tour = true;
      return;
    }
    Walk a = std::move(walks[static_cast<std::size_t>(wi)]);
    Walk b = std::move(walks[static_cast<std::size_t>(wj)]);
    auto ae = trail_ends(a);
    if (ae[1] != y) std::reverse(a.seq.begin(), a.seq.end());
    auto be = trail_ends(b);
    if (be[0] != ry) std::reverse(b.seq.begin(), b.seq.end());
    a.seq.insert(a.seq.end(), b.seq.begin() + (k_ - 1), b.seq.end());
    walks[static_cast<std::size_t>(wj)] = Walk{{}, k_, true};  // empty husk, dropped on compact
    walks[static_cast<std::size_t>(wi)] = std::move(a);
    index(wi);
  }

  /// Removes the empty husks left behind by joins.
  void compact() {
    auto& walks = *walks_;
    walks.erase(std::remove_if(walks.begin(), walks.end(),
                               [](const Walk& w) { return w.seq.empty(); }),
                walks.end());
    where_.clear();
    indexed_ = 0;
    for (int wi = 0; wi < static_cast<int>(walks.size()); ++wi) index(wi);
  }

 private:
  void index(int wi) {
    const Walk& w = (*walks_)[static_cast<std::size_t>(wi)];
    if (!w.tour && !w.seq.empty()) {
      auto ends = trail_ends(w);
      where_[ends[0]].insert({wi, 0});
      where_[ends[1]].insert({wi, 1});
    }
    indexed_ = std::max(indexed_, wi + 1);
  }
  void drop(int wi) {
    const Walk& w = (*walks_)[static_cast<std::size_t>(wi)];
    auto ends = trail_ends(w);
    where_[ends[0]].erase({wi, 0});
    where_[ends[1]].erase({wi, 1});
  }

  std::vector<Walk>* walks_;
  int k_;
  int indexed_ = 0;
  std::map<OrderedTuple, std::set<std::pair<int, int>>> where_;
};

struct ModSumReport {
  bool ok = true;
  bool parity_ok = true;  // k even and balanced: p_{k/2}(v) even
  std::vector<std::pair<Vertex, std::int64_t>> sums;  // per-vertex weighted sums mod k
};

/// Per-vertex check of the weighted residual sum law: for hosts whose vertex
/// degrees are all divisible by k, sum_i i*p_i(v) is 0 mod k at every vertex.
inline ModSumReport check_mod_sum(const TourTrailDecomposition& t) {
  const int k = t.host.k;
  {
    auto degs = detail::degree_table(t.host, 1);
    for (const auto& [s, d] : degs)
      require(d % k == 0, errc::degree_not_divisible,
              "vertex " + std::to_string(s[0]) + " has degree " + std::to_string(d));
  }
  const auto res = residual(t);
  auto table = p_table(res, k);
  ModSumReport report;
  const bool balanced = is_balanced(t);
  for (const auto& [v, row] : table) {
    std::int64_t sum = 0;
    for (int i = 1; i <= k - 1; ++i) sum += i * row[static_cast<std::size_t>(i)];
    report.sums.push_back({v, sum % k});
    if (sum % k != 0) report.ok = false;
    if (k % 2 == 0 && balanced && row[static_cast<std::size_t>(k / 2)] % 2 != 0)
      report.parity_ok = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Residual arc digraphs

struct ArcMultiDigraph {
  std::vector<std::pair<Vertex, Vertex>> arcs;  // with multiplicity
  std::vector<Vertex> vertices;

  std::int64_t out_degree(Vertex v) const {
    std::int64_t n = 0;
    for (const auto& [a, b] : arcs) n += (a == v) ? 1 : 0;
    return n;
  }
  std::int64_t in_degree(Vertex v) const {
    std::int64_t n = 0;
    for (const auto& [a, b] : arcs) n += (b == v) ? 1 : 0;
    return n;
  }
};

/// A_i: one arc (t_i -> t_{k-i}) per residual tuple t.
inline ArcMultiDigraph arc_graph(const TourTrailDecomposition& t, int i) {
  const int k = t.host.k;
  require(i >= 1 && 2 * i < k, errc::index_out_of_range, "arc position must satisfy 1 <= i < k/2");
  ArcMultiDigraph g;
  g.vertices = t.host.vertices;
  for (const OrderedTuple& tup : residual(t))
    g.arcs.push_back({tup[static_cast<std::size_t>(i - 1)], tup[static_cast<std::size_t>(k - i - 1)]});
  std::sort(g.arcs.begin(), g.arcs.end());
  return g;
}

inline bool arcs_strongly_connected_spanning(const ArcMultiDigraph& g,
                                             const std::vector<Vertex>& span) {
  if (span.empty()) return true;
  std::map<Vertex, std::vector<Vertex>> fwd, bwd;
  for (const auto& [a, b] : g.arcs) {
    fwd[a].push_back(b);
    bwd[b].push_back(a);
  }
  auto reach = [&](const std::map<Vertex, std::vector<Vertex>>& adj) {
    std::set<Vertex> seen{span.front()};
    std::vector<Vertex> stack{span.front()};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      auto it = adj.find(v);
      if (it == adj.end()) continue;
      for (Vertex w : it->second)
        if (seen.insert(w).second) stack.push_back(w);
    }
    return seen;
  };
  auto f = reach(fwd), b = reach(bwd);
  for (Vertex v : span)
    if (f.count(v) == 0 || b.count(v) == 0) return false;
  return true;
}

/// Euler tour of a multidigraph with equal in/out degrees on its support,
/// Hierholzer with ascending-arc tie-breaking.  Returns the arc sequence.
inline std::optional<std::vector<std::pair<Vertex, Vertex>>> euler_arc_tour(
    const ArcMultiDigraph& g) {
  if (g.arcs.empty()) return std::vector<std::pair<Vertex, Vertex>>{};
  std::map<Vertex, std::vector<Vertex>> adj;  // sorted targets, consumed back-to-front
  for (const auto& [a, b] : g.arcs) adj[a].push_back(b);
  for (auto& [v, ts] : adj) std::sort(ts.rbegin(), ts.rend());
  std::map<Vertex, std::int64_t> bal;
  for (const auto& [a, b] : g.arcs) {
    ++bal[a];
    --bal[b];
  }
  for (const auto& [v, d] : bal)
    if (d != 0) return std::nullopt;

  const Vertex start = g.arcs.front().first;
  std::vector<Vertex> stack{start};
  std::vector<Vertex> order;
  while (!stack.empty()) {
    Vertex v = stack.back();
    auto it = adj.find(v);
    if (it != adj.end() && !it->second.empty()) {
      Vertex w = it->second.back();
      it->second.pop_back();
      stack.push_back(w);
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
  if (order.size() != g.arcs.size() + 1) return std::nullopt;  // disconnected
  std::reverse(order.begin(), order.end());
  std::vector<std::pair<Vertex, Vertex>> tour;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) tour.push_back({order[i], order[i + 1]});
  return tour;
}

// ---------------------------------------------------------------------------
// i-converts

/// zeta_i: substitute z_i and z_{k-i} at positions i and k-i.
inline OrderedTuple zeta(const OrderedTuple& t, int i, const std::vector<Vertex>& z, int k) {
  OrderedTuple out = with_position(t, i, z[static_cast<std::size_t>(i - 1)]);
  return with_position(out, k - i, z[static_cast<std::size_t>(k - i - 1)]);
}

/// zeta-bar_i: the two substituted vertices in the opposite order.
inline OrderedTuple zeta_bar(const OrderedTuple& t, int i, const std::vector<Vertex>& z, int k) {
  OrderedTuple out = with_position(t, i, z[static_cast<std::size_t>(k - i - 1)]);
  return with_position(out, k - i, z[static_cast<std::size_t>(i - 1)]);
}

/// Decides whether D(after) arises from D(before) by an i-convert: a split of
/// D(before) into equal halves D1, D2 with D(after) = zeta_i(D1) u zetabar_i(D2).
/// Exact multiset matching, grouped by the tuple entries away from i and k-i.
inline bool is_i_convert_residuals(const std::vector<OrderedTuple>& src,
                                   const std::vector<OrderedTuple>& dst, int i,
                                   const std::vector<Vertex>& z, int k) {
  require(i >= 1 && 2 * i <= k, errc::index_out_of_range, "1 <= i <= k/2 required");
  require(static_cast<int>(z.size()) == k - 1, errc::bad_tuple_length, "z must list k-1 vertices");
  {
    std::vector<Vertex> zz = z;
    std::sort(zz.begin(), zz.end());
    require(std::adjacent_find(zz.begin(), zz.end()) == zz.end(), errc::bad_tuple_length,
            "z vertices must be distinct");
  }
  if (src.size() != dst.size()) return false;
  if (src.empty()) return true;
  if (src.size() % 2 != 0) return false;

  auto off_pattern = [&](OrderedTuple t) {
    t[static_cast<std::size_t>(i - 1)] = -1;
    if (i != k - i) t[static_cast<std::size_t>(k - i - 1)] = -1;
    return t;
  };

  const Vertex zi = z[static_cast<std::size_t>(i - 1)];
  const Vertex zki = z[static_cast<std::size_t>(k - i - 1)];

  std::map<OrderedTuple, std::int64_t> group_total;
  for (const OrderedTuple& t : src) ++group_total[off_pattern(t)];

  std::map<OrderedTuple, std::int64_t> hit_zeta, hit_zetabar;
  for (const OrderedTuple& t : dst) {
    const Vertex at_i = t[static_cast<std::size_t>(i - 1)];
    const Vertex at_ki = t[static_cast<std::size_t>(k - i - 1)];
    const OrderedTuple g = off_pattern(t);
    if (group_total.find(g) == group_total.end()) return false;
    if (i == k - i) {
      if (at_i != zi) return false;
      ++hit_zeta[g];
    } else if (at_i == zi && at_ki == zki) {
      ++hit_zeta[g];
    } else if (at_i == zki && at_ki == zi) {
      ++hit_zetabar[g];
    } else {
      return false;
    }
  }

  std::int64_t zeta_sum = 0;
  for (const auto& [g, total] : group_total) {
    const std::int64_t a = hit_zeta.count(g) != 0 ? hit_zeta.at(g) : 0;
    const std::int64_t b = hit_zetabar.count(g) != 0 ? hit_zetabar.at(g) : 0;
    if (a + b != total) return false;
    zeta_sum += a;
  }
  if (i == k - i) return true;  // both substitutions coincide; any equal split works
  return zeta_sum == static_cast<std::int64_t>(src.size()) / 2;
}

inline bool is_i_convert(const TourTrailDecomposition& before, const TourTrailDecomposition& after,
                         int i, const std::vector<Vertex>& z) {
  return is_i_convert_residuals(residual(before), residual(after), i, z, before.host.k);
}

/// True exactly when the walks' window edges partition the host edge set.
inline bool partitions_host(const TourTrailDecomposition& t, std::string* why = nullptr) {
  std::vector<Edge> covered;
  for (const Walk& w : t.walks) {
    auto es = w.window_edges();
    covered.insert(covered.end(), es.begin(), es.end());
  }
  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
    if (why != nullptr) *why = "an edge is covered twice";
    return false;
  }
  if (covered != t.host.edges) {
    if (why != nullptr) *why = "covered edges differ from the host edge set";
    return false;
  }
  return true;
}

}  // namespace tcd

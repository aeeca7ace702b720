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
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/rng.hpp"
#include "tcd/tuples.hpp"

namespace tcd {

/// A tight walk without repeated edges.  Tours are stored in wrap-overlap
/// form: the first k-1 vertices are repeated at the tail, so the window list
/// covers every edge exactly once for trails and tours alike.
struct Walk {
  std::vector<Vertex> seq;
  int k = 2;
  bool tour = false;

  int edge_count() const { return static_cast<int>(seq.size()) - k + 1; }

  Edge window(int i) const {  // 0-based window index
    Edge e(seq.begin() + i, seq.begin() + i + k);
    std::sort(e.begin(), e.end());
    return e;
  }

  std::vector<Edge> window_edges() const {
    std::vector<Edge> out;
    const int m = std::max(0, edge_count());
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.push_back(window(i));
    return out;
  }
};

namespace detail {
inline bool window_is_set(const std::vector<Vertex>& seq, int start, int k) {
  for (int i = start; i < start + k; ++i)
    for (int j = i + 1; j < start + k; ++j)
      if (seq[static_cast<std::size_t>(i)] == seq[static_cast<std::size_t>(j)]) return false;
  return true;
}
}  // namespace detail

/// Checks a vertex sequence against a host graph: every window must be an
/// edge of `h` and no window may repeat.  Cyclic mode additionally requires
/// the wrap-overlap form.
inline Walk validate_walk(const KGraph& h, const std::vector<Vertex>& seq, bool cyclic) {
  const int k = h.k;
  const int t = static_cast<int>(seq.size());
  require(t >= k, errc::invalid_size, "walk shorter than the uniformity");
  if (cyclic) {
    for (int i = 0; i < k - 1; ++i)
      require(seq[static_cast<std::size_t>(i)] == seq[static_cast<std::size_t>(t - k + 1 + i)],
              errc::bad_wrap, "tour does not wrap onto its first k-1 vertices");
  }
  std::vector<Edge> seen;
  seen.reserve(static_cast<std::size_t>(t - k + 1));
  for (int i = 0; i + k <= t; ++i) {
    require(detail::window_is_set(seq, i, k), errc::not_an_edge,
            "window " + std::to_string(i) + " repeats a vertex");
    Edge e(seq.begin() + i, seq.begin() + i + k);
    std::sort(e.begin(), e.end());
    require(h.has_edge(e), errc::not_an_edge, "window " + std::to_string(i) + " is not an edge");
    seen.push_back(std::move(e));
  }
  std::sort(seen.begin(), seen.end());
  require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), errc::repeated_edge,
          "an edge appears in two windows");
  Walk w;
  w.seq = seq;
  w.k = k;
  w.tour = cyclic;
  return w;
}

/// D(P): the ordered tuples v_{k-1}...v_1 and v_{t-k+2}...v_t, as a two-element
/// multiset.
inline std::vector<OrderedTuple> trail_ends(const Walk& w) {
  require(!w.tour, errc::tour_has_no_ends, "tours have no ends");
  const int k = w.k;
  const int t = static_cast<int>(w.seq.size());
  OrderedTuple head(w.seq.begin(), w.seq.begin() + (k - 1));
  std::reverse(head.begin(), head.end());
  OrderedTuple tail(w.seq.begin() + (t - k + 1), w.seq.end());
  return {head, tail};
}

inline Walk reversed_walk(Walk w) {
  std::reverse(w.seq.begin(), w.seq.end());
  return w;
}

/// Rotates a tour to its lexicographically least wrap-overlap form over both
/// orientations; used for canonical comparison.
inline Walk normalized_tour(const Walk& w) {
  require(w.tour, errc::bad_wrap, "only tours are normalized");
  const int k = w.k;
  const int m = w.edge_count();
  std::vector<Vertex> core(w.seq.begin(), w.seq.begin() + m);
  std::vector<Vertex> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (int s = 0; s < m; ++s) {
      std::vector<Vertex> cand(static_cast<std::size_t>(m + k - 1));
      for (int i = 0; i < m + k - 1; ++i)
        cand[static_cast<std::size_t>(i)] = core[static_cast<std::size_t>((s + i) % m)];
      if (best.empty() || cand < best) best = std::move(cand);
    }
    std::reverse(core.begin(), core.end());
  }
  Walk out = w;
  out.seq = std::move(best);
  return out;
}

/// Merges two trails sharing a reversed end pair, or closes a trail whose own
/// ends are mutually reversed into a tour.  Edge sets must be disjoint.
inline Walk join_trails(const Walk& p, const Walk& q) {
  require(!p.tour && !q.tour, errc::no_matching_ends, "tours cannot be joined");
  require(p.k == q.k, errc::uniformity_mismatch, "uniformities differ");
  const int k = p.k;

  if (p.seq == q.seq) {
    // Self-closing: the trail must already be in wrap-overlap form.
    const auto ends = trail_ends(p);
    require(ends[0] == reversed(ends[1]), errc::no_matching_ends,
            "trail ends do not close into a tour");
    Walk out = p;
    out.tour = true;
    for (int i = 0; i < k - 1; ++i)
      require(out.seq[static_cast<std::size_t>(i)] ==
                  out.seq[out.seq.size() - static_cast<std::size_t>(k - 1) + static_cast<std::size_t>(i)],
              errc::bad_wrap, "closed trail fails the wrap condition");
    return out;
  }

  const auto pe = trail_ends(p);
  const auto qe = trail_ends(q);
  for (int pi = 0; pi < 2; ++pi) {
    for (int qi = 0; qi < 2; ++qi) {
      if (pe[static_cast<std::size_t>(pi)] != reversed(qe[static_cast<std::size_t>(qi)])) continue;
      // Orient p to end with y and q to start with y, where y is the trailing
      // end of the oriented p.
      Walk a = (pi == 1) ? p : reversed_walk(p);
      Walk b = (qi == 0) ? q : reversed_walk(q);
      // a now ends with the k-1 vertices that open b.
      std::vector<Vertex> joined = a.seq;
      joined.insert(joined.end(), b.seq.begin() + (k - 1), b.seq.end());
      // Edge-disjointness of the two trails.
      std::vector<Edge> ea = a.window_edges(), eb = b.window_edges();
      std::sort(ea.begin(), ea.end());
      std::sort(eb.begin(), eb.end());
      std::vector<Edge> shared;
      std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(shared));
      require(shared.empty(), errc::edge_collision, "trails share an edge");
      Walk out;
      out.seq = std::move(joined);
      out.k = k;
      out.tour = false;
      return out;
    }
  }
  fail(errc::no_matching_ends, "no end of one trail reverses an end of the other");
}

// ---------------------------------------------------------------------------
// Fresh vertices

/// Draws vertex ids never seen before; single-owner, not thread-safe.
class FreshVertexSupply {
 public:
  FreshVertexSupply() = default;
  explicit FreshVertexSupply(Vertex first) : next_(first) {}

  void reserve(Vertex v) {
    reserved_.insert(v);
    if (v >= next_) next_ = v + 1;
  }
  void reserve(const std::vector<Vertex>& vs) {
    for (Vertex v : vs) reserve(v);
  }

  Vertex draw() {
    while (reserved_.count(next_) != 0) ++next_;
    return next_++;
  }

  std::vector<Vertex> draw(int count) {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(draw());
    return out;
  }

  Vertex peek() const { return next_; }

 private:
  Vertex next_ = 0;
  std::set<Vertex> reserved_;
};

/// Host-free trail from end-tuple `a` to end-tuple `b` whose interior is
/// entirely fresh; returns the walk and its implied edge set.  The sequence
/// reads reverse(a), fresh interior, b, so D(trail) = {a, b}.
struct FreshTrail {
  Walk walk;
  std::vector<Edge> edges;
};

inline FreshTrail fresh_trail(FreshVertexSupply& supply, const OrderedTuple& a,
                              const OrderedTuple& b, int edge_count, int k) {
  require(static_cast<int>(a.size()) == k - 1 && static_cast<int>(b.size()) == k - 1,
          errc::bad_tuple_length, "end tuples must have k-1 vertices");
  require(edge_count >= k, errc::invalid_size, "too few edges for a fresh interior");
  std::vector<Vertex> seq = reversed(a);
  const int interior = edge_count - k + 1;
  for (int i = 0; i < interior; ++i) seq.push_back(supply.draw());
  seq.insert(seq.end(), b.begin(), b.end());
  Walk w;
  w.seq = std::move(seq);
  w.k = k;
  w.tour = false;
  std::vector<Edge> edges = w.window_edges();
  std::sort(edges.begin(), edges.end());
  require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), errc::repeated_edge,
          "end tuples force a repeated window");
  for (int i = 0; i < w.edge_count(); ++i)
    require(detail::window_is_set(w.seq, i, k), errc::not_an_edge,
            "end tuples force a repeated vertex inside a window");
  return {std::move(w), std::move(edges)};
}

// ---------------------------------------------------------------------------
// Trail search

struct TrailSearchOptions {
  const std::vector<Edge>* avoid = nullptr;  // sorted edge list to stay clear of
  std::int64_t node_budget = 20'000'000;
  int max_results = 1;
  Rng* shuffle = nullptr;  // randomized branch order when set
};

namespace detail {

struct TrailSearcher {
  const KGraph& h;
  TrailSearchOptions opt;
  int k;
  int m;  // edges
  std::vector<Vertex> seq;           // full slots, -1 = free
  std::vector<bool> forced;          // slot fixed by an end tuple
  std::set<Vertex> banned;           // end-tuple vertices: interior must avoid
  std::vector<Edge> used;            // sorted windows taken so far
  std::vector<std::vector<Vertex>> results;
  std::int64_t nodes = 0;

  bool edge_ok(const Edge& e) const {
    if (!h.has_edge(e)) return false;
    if (opt.avoid != nullptr && std::binary_search(opt.avoid->begin(), opt.avoid->end(), e))
      return false;
    return !std::binary_search(used.begin(), used.end(), e);
  }

  // Checks every window fully determined once slot `pos` was filled.
  bool windows_ok_at(int pos, std::vector<Edge>& added) {
    const int t = m + k - 1;
    for (int s = std::max(0, pos - k + 1); s <= pos && s + k <= t; ++s) {
      bool complete = true;
      for (int i = s; i < s + k; ++i)
        if (seq[static_cast<std::size_t>(i)] < 0) {
          complete = false;
          break;
        }
      if (!complete) continue;
      if (!window_is_set(seq, s, k)) return false;
      Edge e(seq.begin() + s, seq.begin() + s + k);
      std::sort(e.begin(), e.end());
      if (!edge_ok(e)) return false;
      added.push_back(e);
      used.insert(std::lower_bound(used.begin(), used.end(), e), e);
    }
    return true;
  }

  void remove_used(const std::vector<Edge>& added) {
    for (const Edge& e : added) {
      auto it = std::lower_bound(used.begin(), used.end(), e);
      used.erase(it);
    }
  }

  bool extend(int slot) {
    if (++nodes > opt.node_budget) return true;  // stop the whole search
    while (slot < static_cast<int>(seq.size()) && forced[static_cast<std::size_t>(slot)]) ++slot;
    if (slot >= static_cast<int>(seq.size())) {
      results.push_back(seq);
      return static_cast<int>(results.size()) >= opt.max_results;
    }
    std::vector<Vertex> cands;
    cands.reserve(h.vertices.size());
    for (Vertex v : h.vertices)
      if (banned.count(v) == 0) cands.push_back(v);
    if (opt.shuffle != nullptr) opt.shuffle->shuffle(cands);
    for (Vertex v : cands) {
      bool repeat = false;  // interior vertices are pairwise distinct
      for (int i = 0; i < static_cast<int>(seq.size()); ++i)
        if (!forced[static_cast<std::size_t>(i)] && seq[static_cast<std::size_t>(i)] == v) {
          repeat = true;
          break;
        }
      if (repeat) continue;
      seq[static_cast<std::size_t>(slot)] = v;
      std::vector<Edge> added;
      if (windows_ok_at(slot, added)) {
        if (extend(slot + 1)) return true;
      }
      remove_used(added);
      seq[static_cast<std::size_t>(slot)] = -1;
    }
    return false;
  }
};

}  // namespace detail

/// Exhaustive backtracking for trails with D(trail) = {a, b} on `edge_count`
/// edges inside `h`, interior vertices fresh with respect to a and b.
/// Returns up to max_results sequences; empty means none within budget.
inline std::vector<std::vector<Vertex>> search_trails(const KGraph& h, const OrderedTuple& a,
                                                      const OrderedTuple& b, int edge_count,
                                                      TrailSearchOptions opt = {}) {
  const int k = h.k;
  require(static_cast<int>(a.size()) == k - 1 && static_cast<int>(b.size()) == k - 1,
          errc::bad_tuple_length, "end tuples must have k-1 vertices");
  require(edge_count >= 1, errc::invalid_size, "edge count must be positive");
  const int t = edge_count + k - 1;

  detail::TrailSearcher s{h, opt, k, edge_count, {}, {}, {}, {}, {}, 0};
  s.seq.assign(static_cast<std::size_t>(t), -1);
  s.forced.assign(static_cast<std::size_t>(t), false);
  const OrderedTuple head = reversed(a);
  for (int i = 0; i < k - 1; ++i) {
    const int tail_slot = t - k + 1 + i;
    // Prefix and suffix may overlap for very short trails; conflicts reject.
    if (s.forced[static_cast<std::size_t>(i)] && s.seq[static_cast<std::size_t>(i)] != head[static_cast<std::size_t>(i)]) return {};
    s.seq[static_cast<std::size_t>(i)] = head[static_cast<std::size_t>(i)];
    s.forced[static_cast<std::size_t>(i)] = true;
    if (s.forced[static_cast<std::size_t>(tail_slot)] && s.seq[static_cast<std::size_t>(tail_slot)] != b[static_cast<std::size_t>(i)]) return {};
    s.seq[static_cast<std::size_t>(tail_slot)] = b[static_cast<std::size_t>(i)];
    s.forced[static_cast<std::size_t>(tail_slot)] = true;
  }
  for (Vertex v : a) s.banned.insert(v);
  for (Vertex v : b) s.banned.insert(v);

  // Validate the windows whose slots are all forced before searching.
  for (int start = 0; start + k <= t; ++start) {
    bool all_forced = true;
    for (int j = start; j < start + k; ++j)
      if (!s.forced[static_cast<std::size_t>(j)]) all_forced = false;
    if (!all_forced) continue;
    if (!detail::window_is_set(s.seq, start, k)) return {};
    Edge e(s.seq.begin() + start, s.seq.begin() + start + k);
    std::sort(e.begin(), e.end());
    if (!s.edge_ok(e)) return {};
    s.used.insert(std::lower_bound(s.used.begin(), s.used.end(), e), e);
  }

  s.extend(0);
  return s.results;
}

inline std::optional<Walk> find_trail(const KGraph& h, const OrderedTuple& a, const OrderedTuple& b,
                                      int edge_count, const std::vector<Edge>* avoid = nullptr,
                                      std::int64_t node_budget = 20'000'000) {
  TrailSearchOptions opt;
  opt.avoid = avoid;
  opt.node_budget = node_budget;
  auto seqs = search_trails(h, a, b, edge_count, opt);
  if (seqs.empty()) return std::nullopt;
  Walk w;
  w.seq = seqs.front();
  w.k = h.k;
  w.tour = false;
  return w;
}

// ---------------------------------------------------------------------------
// Cycle enumeration

namespace detail {

// Reports each tight cycle of length `len` exactly once: the sequence starts
// at the cycle's least vertex and the orientation with smaller second-vs-last
// vertex is kept.
template <typename Fn>
void enumerate_cycles_impl(const KGraph& h, int len, Fn&& fn) {
  const int k = h.k;
  std::vector<Vertex> seq;
  seq.reserve(static_cast<std::size_t>(len));
  std::set<Vertex> on_path;

  auto window_edge_at = [&](int start) {
    Edge e;
    e.reserve(static_cast<std::size_t>(k));
    for (int i = start; i < start + k; ++i)
      e.push_back(seq[static_cast<std::size_t>(i % len)]);
    std::sort(e.begin(), e.end());
    return e;
  };

  std::function<void()> grow = [&]() {
    const int depth = static_cast<int>(seq.size());
    if (depth == len) {
      for (int s = len - k + 1; s < len; ++s)
        if (!h.has_edge(window_edge_at(s))) return;
      if (seq[1] < seq[static_cast<std::size_t>(len - 1)]) fn(seq);
      return;
    }
    for (Vertex v : h.vertices) {
      if (v <= seq[0] || on_path.count(v) != 0) continue;
      seq.push_back(v);
      bool ok = true;
      if (depth + 1 >= k) ok = h.has_edge(window_edge_at(depth + 1 - k));
      if (ok) {
        on_path.insert(v);
        grow();
        on_path.erase(v);
      }
      seq.pop_back();
    }
  };

  for (Vertex v0 : h.vertices) {
    seq.assign(1, v0);
    on_path.clear();
    on_path.insert(v0);
    grow();
  }
}

}  // namespace detail

namespace detail {
inline std::vector<Edge> cycle_edge_set(const std::vector<Vertex>& core, int k) {
  const int len = static_cast<int>(core.size());
  std::vector<Edge> es;
  es.reserve(static_cast<std::size_t>(len));
  for (int s = 0; s < len; ++s) {
    Edge e;
    for (int i = 0; i < k; ++i) e.push_back(core[static_cast<std::size_t>((s + i) % len)]);
    std::sort(e.begin(), e.end());
    es.push_back(std::move(e));
  }
  std::sort(es.begin(), es.end());
  return es;
}
}  // namespace detail

/// All copies of the tight cycle of length `len` in `h`.  Copies are counted
/// as edge sets: rotations, reflections, and any further sequence coincidences
/// (length k+1 cycles equal a clique) are quotiented out; the representative
/// walk is the least vertex sequence.
inline std::vector<Walk> enumerate_cycles(const KGraph& h, int len) {
  require(len > h.k, errc::range_error, "cycle length must exceed the uniformity");
  std::map<std::vector<Edge>, std::vector<Vertex>> reps;
  detail::enumerate_cycles_impl(h, len, [&](const std::vector<Vertex>& core) {
    auto key = detail::cycle_edge_set(core, h.k);
    auto [it, fresh] = reps.emplace(std::move(key), core);
    if (!fresh && core < it->second) it->second = core;
  });
  std::vector<Walk> out;
  out.reserve(reps.size());
  for (const auto& [key, core] : reps) {
    Walk w;
    w.k = h.k;
    w.tour = true;
    w.seq = core;
    for (int i = 0; i < h.k - 1; ++i) w.seq.push_back(core[static_cast<std::size_t>(i)]);
    out.push_back(std::move(w));
  }
  return out;
}

namespace detail {
inline std::vector<Vertex> canonical_cycle_core(std::vector<Vertex> core) {
  const int len = static_cast<int>(core.size());
  std::vector<Vertex> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (int s = 0; s < len; ++s) {
      std::vector<Vertex> cand(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i)
        cand[static_cast<std::size_t>(i)] = core[static_cast<std::size_t>((s + i) % len)];
      if (best.empty() || cand < best) best = std::move(cand);
    }
    std::reverse(core.begin(), core.end());
  }
  return best;
}
}  // namespace detail

/// Cycles of length `len` containing the edge `e`, anchored at the edge so the
/// search stays local; one canonical copy each.
inline std::vector<Walk> cycles_through_edge(const KGraph& h, const Edge& e, int len) {
  require(len > h.k, errc::range_error, "cycle length must exceed the uniformity");
  const int k = h.k;
  Edge se = sorted_edge(e);
  require(static_cast<int>(se.size()) == k, errc::wrong_arity, "edge arity mismatch");
  if (!h.has_edge(se)) return {};

  std::map<std::vector<Edge>, std::vector<Vertex>> reps;
  std::vector<Vertex> seq = se;
  std::set<Vertex> on_path(se.begin(), se.end());

  auto window_edge_at = [&](int start) {
    Edge w;
    for (int i = start; i < start + k; ++i)
      w.push_back(seq[static_cast<std::size_t>(i % len)]);
    std::sort(w.begin(), w.end());
    return w;
  };

  std::function<void()> grow = [&]() {
    const int depth = static_cast<int>(seq.size());
    if (depth == len) {
      for (int s = len - k + 1; s < len; ++s)
        if (!h.has_edge(window_edge_at(s))) return;
      auto canon = detail::canonical_cycle_core(seq);
      auto [it, fresh] = reps.emplace(detail::cycle_edge_set(canon, k), canon);
      if (!fresh && canon < it->second) it->second = canon;
      return;
    }
    for (Vertex v : h.vertices) {
      if (on_path.count(v) != 0) continue;
      seq.push_back(v);
      if (h.has_edge(window_edge_at(depth + 1 - k))) {
        on_path.insert(v);
        grow();
        on_path.erase(v);
      }
      seq.pop_back();
    }
  };

  // The first k slots run over the orderings of e.
  std::sort(seq.begin(), seq.end());
  do {
    grow();
  } while (std::next_permutation(seq.begin(), seq.end()));

  std::vector<Walk> out;
  out.reserve(reps.size());
  for (const auto& [key, core] : reps) {
    Walk w;
    w.k = k;
    w.tour = true;
    w.seq = core;
    for (int i = 0; i < k - 1; ++i) w.seq.push_back(core[static_cast<std::size_t>(i)]);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace tcd

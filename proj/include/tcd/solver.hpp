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
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/rational.hpp"
#include "tcd/tuples.hpp"
#include "tcd/walks.hpp"

namespace tcd {

enum class SolveStatus { found, none, budget_exhausted };

/// A verified decomposition: the pieces' edges partition the target graph.
struct Certificate {
  enum class Kind { cycles, paths, mixed_cycles, euler_tour, f_copies };
  Kind kind = Kind::cycles;
  int len = 0;  // vertex count of each piece for cycle/path kinds
  std::vector<Walk> pieces;
  std::vector<std::vector<Vertex>> maps;  // f_copies: images of V(F) in sorted order
};

struct SolveResult {
  SolveStatus status = SolveStatus::none;
  std::optional<Certificate> cert;
  std::int64_t nodes = 0;
};

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
  void flag(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
};

// ---------------------------------------------------------------------------
// Certificate verification

inline VerifyReport verify_certificate(const KGraph& h, const Certificate& c,
                                       const KGraph* f = nullptr) {
  VerifyReport report;
  std::vector<Edge> covered;

  auto check_walk_piece = [&](const Walk& w, std::size_t index) {
    try {
      validate_walk(h, w.seq, w.tour);
    } catch (const Error& e) {
      report.flag("piece " + std::to_string(index) + ": " + e.what());
      return;
    }
    std::set<Vertex> distinct(w.seq.begin(), w.seq.end());
    const int expected =
        w.tour ? w.edge_count() : static_cast<int>(w.seq.size());
    if (static_cast<int>(distinct.size()) != expected)
      report.flag("piece " + std::to_string(index) + ": repeated vertex");
    auto es = w.window_edges();
    covered.insert(covered.end(), es.begin(), es.end());
  };

  switch (c.kind) {
    case Certificate::Kind::cycles:
      for (std::size_t i = 0; i < c.pieces.size(); ++i) {
        const Walk& w = c.pieces[i];
        if (!w.tour || w.edge_count() != c.len)
          report.flag("piece " + std::to_string(i) + ": not a cycle of the stated length");
        check_walk_piece(w, i);
      }
      break;
    case Certificate::Kind::paths:
      for (std::size_t i = 0; i < c.pieces.size(); ++i) {
        const Walk& w = c.pieces[i];
        if (w.tour || static_cast<int>(w.seq.size()) != c.len)
          report.flag("piece " + std::to_string(i) + ": not a path on the stated vertex count");
        check_walk_piece(w, i);
      }
      break;
    case Certificate::Kind::mixed_cycles:
      for (std::size_t i = 0; i < c.pieces.size(); ++i) {
        const Walk& w = c.pieces[i];
        if (!w.tour || w.edge_count() <= h.k)
          report.flag("piece " + std::to_string(i) + ": not a cycle");
        check_walk_piece(w, i);
      }
      break;
    case Certificate::Kind::euler_tour:
      if (c.pieces.size() != 1 || !c.pieces[0].tour)
        report.flag("an Euler certificate is a single tour");
      else
        check_walk_piece(c.pieces[0], 0);
      break;
    case Certificate::Kind::f_copies: {
      if (f == nullptr) {
        report.flag("f_copies certificate needs the pattern graph");
        break;
      }
      for (std::size_t i = 0; i < c.maps.size(); ++i) {
        const auto& img = c.maps[i];
        if (img.size() != f->vertices.size()) {
          report.flag("map " + std::to_string(i) + ": wrong vertex count");
          continue;
        }
        std::set<Vertex> distinct(img.begin(), img.end());
        if (distinct.size() != img.size()) {
          report.flag("map " + std::to_string(i) + ": not injective");
          continue;
        }
        for (const Edge& e : f->edges) {
          Edge im;
          for (Vertex v : e) {
            const auto pos = std::lower_bound(f->vertices.begin(), f->vertices.end(), v) -
                             f->vertices.begin();
            im.push_back(img[static_cast<std::size_t>(pos)]);
          }
          std::sort(im.begin(), im.end());
          if (!h.has_edge(im)) {
            report.flag("map " + std::to_string(i) + ": image edge missing from host");
          }
          covered.push_back(im);
        }
      }
      break;
    }
  }

  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
    report.flag("an edge is covered twice");
  if (covered != h.edges) report.flag("covered edges differ from the target edge set");
  return report;
}

/// Exact check of a fractional weighting over the canonical cycle list of
/// enumerate_cycles(h, len): weights lie in [0,1] and each edge's incident
/// weights sum to one.
inline VerifyReport verify_fractional(const KGraph& h, int len,
                                      const std::vector<Rational>& weights) {
  VerifyReport report;
  const auto cycles = enumerate_cycles(h, len);
  if (weights.size() != cycles.size()) {
    report.flag("weight count differs from the cycle count");
    return report;
  }
  std::map<Edge, Rational> per_edge;
  for (const Edge& e : h.edges) per_edge[e] = Rational(0);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (weights[i] < Rational(0) || weights[i] > Rational(1)) {
      report.flag("weight " + std::to_string(i) + " outside [0,1]");
    }
    for (const Edge& e : cycles[i].window_edges()) per_edge[e] = per_edge[e] + weights[i];
  }
  for (const auto& [e, total] : per_edge) {
    if (total != Rational(1)) {
      std::string name = "edge";
      for (Vertex v : e) name += " " + std::to_string(v);
      report.flag(name + " has weight sum " + total.str());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Exact decomposition searches

namespace detail {

// Shared machinery: branch on the least uncovered edge, enumerate candidate
// pieces through it, recurse with a failed-state memo on the covered bitmask
// (graphs beyond 64 edges search without memo).
class CoverSearch {
 public:
  CoverSearch(const KGraph& h, std::int64_t budget) : h_(h), budget_(budget) {
    index_of_.clear();
    for (std::size_t i = 0; i < h.edges.size(); ++i) index_of_[h.edges[i]] = static_cast<int>(i);
    covered_.assign(h.edges.size(), false);
  }

  const KGraph& host() const { return h_; }
  std::int64_t nodes() const { return nodes_; }
  bool out_of_budget() const { return nodes_ > budget_; }

  // Candidate generators call this per exploration step so their work counts
  // against the same budget; false means stop enumerating.
  bool tick() { return ++nodes_ <= budget_; }

  bool edge_uncovered(const Edge& e) const {
    auto it = index_of_.find(e);
    return it != index_of_.end() && !covered_[static_cast<std::size_t>(it->second)];
  }

  int least_uncovered() const {
    for (std::size_t i = 0; i < covered_.size(); ++i)
      if (!covered_[i]) return static_cast<int>(i);
    return -1;
  }

  void set_covered(const std::vector<Edge>& es, bool value) {
    for (const Edge& e : es) covered_[static_cast<std::size_t>(index_of_.at(e))] = value;
  }

  // Returns found / none / budget_exhausted over piece candidates supplied by
  // `candidates(edge) -> vector of edge lists`.
  template <typename CandidateFn, typename EmitFn>
  SolveStatus run(CandidateFn&& candidates, EmitFn&& emit) {
    const int next = least_uncovered();
    if (next < 0) return SolveStatus::found;
    if (++nodes_ > budget_) return SolveStatus::budget_exhausted;
    if (use_memo() && failed_.count(mask()) != 0) return SolveStatus::none;
    auto pieces = candidates(h_.edges[static_cast<std::size_t>(next)]);
    // a truncated candidate list must not masquerade as a refutation
    bool exhausted = out_of_budget();
    for (auto& piece : pieces) {
      set_covered(piece.first, true);
      const SolveStatus sub = run(candidates, emit);
      if (sub == SolveStatus::found) {
        emit(piece.second);
        return SolveStatus::found;
      }
      set_covered(piece.first, false);
      if (sub == SolveStatus::budget_exhausted) exhausted = true;
    }
    if (exhausted) return SolveStatus::budget_exhausted;
    if (use_memo()) failed_.insert(mask());
    return SolveStatus::none;
  }

  std::int64_t uncovered_count() const {
    std::int64_t n = 0;
    for (bool c : covered_)
      if (!c) ++n;
    return n;
  }

 private:
  bool use_memo() const { return h_.edges.size() <= 64; }
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < covered_.size(); ++i)
      if (covered_[i]) m |= (1ull << i);
    return m;
  }

  const KGraph& h_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::map<Edge, int> index_of_;
  std::vector<bool> covered_;
  std::set<std::uint64_t> failed_;
};

// Candidate cycles of length `len` through `e` inside the uncovered part.
inline std::vector<std::pair<std::vector<Edge>, Walk>> uncovered_cycles_through(
    CoverSearch& cs, const Edge& e, int len) {
  const KGraph& h = cs.host();
  const int k = h.k;
  std::map<std::vector<Edge>, std::vector<Vertex>> reps;
  std::vector<Vertex> seq = e;
  std::set<Vertex> on_path(e.begin(), e.end());

  auto window_ok = [&](int start, int total) {
    Edge w;
    for (int i = start; i < start + k; ++i) w.push_back(seq[static_cast<std::size_t>(i % total)]);
    std::sort(w.begin(), w.end());
    return cs.edge_uncovered(w);
  };

  bool stopped = false;
  std::function<void()> grow = [&]() {
    if (stopped || (stopped = !cs.tick())) return;
    const int depth = static_cast<int>(seq.size());
    if (depth == len) {
      for (int s = len - k + 1; s < len; ++s)
        if (!window_ok(s, len)) return;
      auto canon = canonical_cycle_core(seq);
      auto key = cycle_edge_set(canon, k);
      auto [it, fresh] = reps.emplace(std::move(key), canon);
      if (!fresh && canon < it->second) it->second = canon;
      return;
    }
    for (Vertex v : h.vertices) {
      if (on_path.count(v) != 0) continue;
      seq.push_back(v);
      if (window_ok(depth + 1 - k, depth + 1)) {
        on_path.insert(v);
        grow();
        on_path.erase(v);
      }
      seq.pop_back();
    }
  };

  std::sort(seq.begin(), seq.end());
  do {
    grow();
  } while (std::next_permutation(seq.begin(), seq.end()));

  std::vector<std::pair<std::vector<Edge>, Walk>> out;
  for (auto& [key, core] : reps) {
    Walk w;
    w.k = k;
    w.tour = true;
    w.seq = core;
    for (int i = 0; i < k - 1; ++i) w.seq.push_back(core[static_cast<std::size_t>(i)]);
    out.push_back({key, std::move(w)});
  }
  return out;
}

// Candidate tight paths on `len` vertices through `e` inside the uncovered part.
inline std::vector<std::pair<std::vector<Edge>, Walk>> uncovered_paths_through(
    CoverSearch& cs, const Edge& e, int len) {
  const KGraph& h = cs.host();
  const int k = h.k;
  std::set<std::vector<Vertex>> seen;
  std::vector<std::pair<std::vector<Edge>, Walk>> out;

  std::vector<Vertex> seq = e;
  bool stopped = false;
  // Extend to the right then to the left around the seed window.
  std::function<void(int, int)> grow = [&](int left, int right) {
    if (stopped || (stopped = !cs.tick())) return;
    if (static_cast<int>(seq.size()) == len) {
      // assemble: seq currently holds the middle; nothing left to add
      std::vector<Vertex> canon = seq;
      std::vector<Vertex> rev = canon;
      std::reverse(rev.begin(), rev.end());
      if (rev < canon) canon = rev;
      if (!seen.insert(canon).second) return;
      std::vector<Edge> es;
      for (int s = 0; s + k <= static_cast<int>(canon.size()); ++s) {
        Edge w(canon.begin() + s, canon.begin() + s + k);
        std::sort(w.begin(), w.end());
        es.push_back(std::move(w));
      }
      std::sort(es.begin(), es.end());
      Walk walk;
      walk.k = k;
      walk.tour = false;
      walk.seq = canon;
      out.push_back({std::move(es), std::move(walk)});
      return;
    }
    if (right > 0) {
      for (Vertex v : h.vertices) {
        if (std::find(seq.begin(), seq.end(), v) != seq.end()) continue;
        seq.push_back(v);
        Edge w(seq.end() - k, seq.end());
        std::sort(w.begin(), w.end());
        if (cs.edge_uncovered(w)) grow(left, right - 1);
        seq.pop_back();
      }
      return;
    }
    for (Vertex v : h.vertices) {
      if (std::find(seq.begin(), seq.end(), v) != seq.end()) continue;
      seq.insert(seq.begin(), v);
      Edge w(seq.begin(), seq.begin() + k);
      std::sort(w.begin(), w.end());
      if (cs.edge_uncovered(w)) grow(left - 1, 0);
      seq.erase(seq.begin());
    }
  };

  std::sort(seq.begin(), seq.end());
  do {
    for (int right = 0; right <= len - k; ++right) {
      seq.resize(static_cast<std::size_t>(k));
      grow(len - k - right, right);
      seq.resize(static_cast<std::size_t>(k));
    }
  } while (std::next_permutation(seq.begin(), seq.begin() + k));
  return out;
}

}  // namespace detail

inline SolveResult decompose_cycles(const KGraph& h, int len, std::int64_t budget = 2'000'000) {
  require(len > h.k, errc::range_error, "cycle length must exceed the uniformity");
  SolveResult result;
  if (!is_cycle_divisible(h, len)) {
    result.status = SolveStatus::none;
    return result;
  }
  detail::CoverSearch cs(h, budget);
  std::vector<Walk> pieces;
  result.status = cs.run(
      [&](const Edge& e) { return detail::uncovered_cycles_through(cs, e, len); },
      [&](const Walk& w) { pieces.push_back(w); });
  result.nodes = cs.nodes();
  if (result.status == SolveStatus::found) {
    Certificate c;
    c.kind = Certificate::Kind::cycles;
    c.len = len;
    std::reverse(pieces.begin(), pieces.end());
    c.pieces = std::move(pieces);
    require(verify_certificate(h, c).ok, errc::internal_check, "solver emitted a bad certificate");
    result.cert = std::move(c);
  }
  return result;
}

inline SolveResult decompose_paths(const KGraph& h, int len, std::int64_t budget = 2'000'000) {
  require(len >= h.k, errc::range_error, "path length must be at least the uniformity");
  SolveResult result;
  if (!is_path_divisible(h, len)) {
    result.status = SolveStatus::none;
    return result;
  }
  Certificate c;
  c.kind = Certificate::Kind::paths;
  c.len = len;
  if (len == h.k) {
    // single-edge pieces: every graph decomposes trivially
    for (const Edge& e : h.edges) {
      Walk w;
      w.k = h.k;
      w.tour = false;
      w.seq = e;
      c.pieces.push_back(std::move(w));
    }
    result.status = SolveStatus::found;
    result.cert = std::move(c);
    return result;
  }
  detail::CoverSearch cs(h, budget);
  std::vector<Walk> pieces;
  result.status = cs.run(
      [&](const Edge& e) { return detail::uncovered_paths_through(cs, e, len); },
      [&](const Walk& w) { pieces.push_back(w); });
  result.nodes = cs.nodes();
  if (result.status == SolveStatus::found) {
    std::reverse(pieces.begin(), pieces.end());
    c.pieces = std::move(pieces);
    require(verify_certificate(h, c).ok, errc::internal_check, "solver emitted a bad certificate");
    result.cert = std::move(c);
  }
  return result;
}

inline SolveResult decompose_mixed(const KGraph& h, std::int64_t budget = 2'000'000) {
  SolveResult result;
  {
    auto degs = detail::degree_table(h, 1);
    for (const auto& [s, d] : degs)
      if (d % h.k != 0) {
        result.status = SolveStatus::none;
        return result;
      }
  }
  detail::CoverSearch cs(h, budget);
  std::vector<Walk> pieces;
  result.status = cs.run(
      [&](const Edge& e) {
        std::vector<std::pair<std::vector<Edge>, Walk>> all;
        const int remaining = static_cast<int>(cs.uncovered_count());
        for (int len = h.k + 1; len <= remaining; ++len) {
          auto part = detail::uncovered_cycles_through(cs, e, len);
          all.insert(all.end(), part.begin(), part.end());
        }
        return all;
      },
      [&](const Walk& w) { pieces.push_back(w); });
  result.nodes = cs.nodes();
  if (result.status == SolveStatus::found) {
    Certificate c;
    c.kind = Certificate::Kind::mixed_cycles;
    std::reverse(pieces.begin(), pieces.end());
    c.pieces = std::move(pieces);
    require(verify_certificate(h, c).ok, errc::internal_check, "solver emitted a bad certificate");
    result.cert = std::move(c);
  }
  return result;
}

/// Exhaustive search for a closed tight walk covering every edge exactly once.
inline SolveResult euler_tour(const KGraph& h, std::int64_t budget = 5'000'000) {
  SolveResult result;
  if (h.edges.empty()) {
    result.status = SolveStatus::none;
    return result;
  }
  {
    auto degs = detail::degree_table(h, 1);
    for (const auto& [s, d] : degs)
      if (d % h.k != 0) {
        result.status = SolveStatus::none;
        return result;
      }
  }
  const int k = h.k;
  const int m = static_cast<int>(h.edges.size());
  std::map<Edge, int> index_of;
  for (int i = 0; i < m; ++i) index_of[h.edges[static_cast<std::size_t>(i)]] = i;

  std::vector<Vertex> seq;
  std::vector<bool> covered(static_cast<std::size_t>(m), false);
  std::int64_t nodes = 0;
  bool exhausted = false;
  std::set<std::pair<std::vector<bool>, std::vector<Vertex>>> failed;

  std::function<bool(int)> extend = [&](int done) -> bool {
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (done == m) {
      for (int i = 0; i < k - 1; ++i)
        if (seq[static_cast<std::size_t>(i)] !=
            seq[seq.size() - static_cast<std::size_t>(k - 1) + static_cast<std::size_t>(i)])
          return false;
      return true;
    }
    OrderedTuple state(seq.end() - (k - 1), seq.end());
    auto memo_key = std::make_pair(covered, state);
    if (failed.count(memo_key) != 0) return false;
    for (Vertex v : h.vertices) {
      Edge w(seq.end() - (k - 1), seq.end());
      w.push_back(v);
      std::sort(w.begin(), w.end());
      if (std::adjacent_find(w.begin(), w.end()) != w.end()) continue;
      auto it = index_of.find(w);
      if (it == index_of.end() || covered[static_cast<std::size_t>(it->second)]) continue;
      covered[static_cast<std::size_t>(it->second)] = true;
      seq.push_back(v);
      if (extend(done + 1)) return true;
      seq.pop_back();
      covered[static_cast<std::size_t>(it->second)] = false;
      if (exhausted) return false;
    }
    failed.insert(std::move(memo_key));
    return false;
  };

  Edge first = h.edges.front();
  std::sort(first.begin(), first.end());
  bool found = false;
  do {
    seq.assign(first.begin(), first.end());
    std::fill(covered.begin(), covered.end(), false);
    covered[static_cast<std::size_t>(index_of.at(sorted_edge(first)))] = true;
    if (extend(1)) {
      found = true;
      break;
    }
    if (exhausted) break;
  } while (std::next_permutation(first.begin(), first.end()));

  result.nodes = nodes;
  if (found) {
    Certificate c;
    c.kind = Certificate::Kind::euler_tour;
    Walk w;
    w.k = k;
    w.tour = true;
    w.seq = seq;
    c.pieces.push_back(std::move(w));
    require(verify_certificate(h, c).ok, errc::internal_check, "bad euler certificate");
    result.status = SolveStatus::found;
    result.cert = std::move(c);
  } else {
    result.status = exhausted ? SolveStatus::budget_exhausted : SolveStatus::none;
  }
  return result;
}

/// True iff some tight cycle of length at most len_max contains e.  A walk
/// relaxation over ordered (k-1)-tuples decides negatives exactly: a cycle
/// through an oriented copy of e exists only if the tuple behind the edge can
/// walk back to the tuple in front of it.  Plausible orientations are then
/// confirmed by the exhaustive distinct-vertex cycle search.
inline bool in_some_cycle(const KGraph& h, const Edge& e, int len_max) {
  const int k = h.k;
  Edge se = sorted_edge(e);
  require(h.has_edge(se), errc::not_an_edge, "edge not in the graph");

  bool plausible = false;
  std::vector<Vertex> order = se;
  do {
    const OrderedTuple start(order.begin() + 1, order.end());
    const OrderedTuple target(order.begin(), order.end() - 1);
    std::map<OrderedTuple, int> dist;
    dist[start] = 0;
    std::queue<OrderedTuple> queue;
    queue.push(start);
    while (!queue.empty() && !plausible) {
      OrderedTuple t = queue.front();
      queue.pop();
      const int d = dist[t];
      if (d >= len_max - 1) continue;
      for (Vertex v : h.vertices) {
        Edge w = t;
        w.push_back(v);
        std::sort(w.begin(), w.end());
        if (std::adjacent_find(w.begin(), w.end()) != w.end()) continue;
        if (!h.has_edge(w)) continue;
        OrderedTuple next(t.begin() + 1, t.end());
        next.push_back(v);
        if (dist.emplace(next, d + 1).second) {
          if (next == target) {
            plausible = true;
            break;
          }
          queue.push(next);
        }
      }
    }
    if (plausible) break;
  } while (std::next_permutation(order.begin(), order.end()));
  if (!plausible) return false;

  for (int len = k + 1; len <= len_max; ++len)
    if (!cycles_through_edge(h, se, len).empty()) return true;
  return false;
}

/// Exact embedding search: branch over copies of `f` covering the least
/// uncovered edge.
inline SolveResult f_decompose(const KGraph& h, const KGraph& f, std::int64_t budget = 2'000'000) {
  require(h.k == f.k, errc::uniformity_mismatch, "uniformities differ");
  SolveResult result;
  if (f.size() == 0 || h.size() % f.size() != 0 || !is_f_divisible(h, f)) {
    result.status = SolveStatus::none;
    return result;
  }

  detail::CoverSearch cs(h, budget);
  std::vector<std::vector<Vertex>> maps;

  auto candidates = [&](const Edge& e) {
    // embeddings of f with image edges uncovered and e among them
    std::vector<std::pair<std::vector<Edge>, std::vector<Vertex>>> out;
    std::set<std::vector<Edge>> seen;
    const int nf = static_cast<int>(f.vertices.size());
    std::vector<Vertex> img(static_cast<std::size_t>(nf), -1);
    std::vector<bool> used_host(h.vertices.size(), false);
    auto vindex = [&](Vertex v) {
      return static_cast<int>(std::lower_bound(f.vertices.begin(), f.vertices.end(), v) -
                              f.vertices.begin());
    };
    auto hindex = [&](Vertex v) {
      return static_cast<int>(std::lower_bound(h.vertices.begin(), h.vertices.end(), v) -
                              h.vertices.begin());
    };

    bool stopped = false;
    std::function<void(int)> place = [&](int pos) {
      if (stopped || (stopped = !cs.tick())) return;
      if (pos == nf) {
        std::vector<Edge> image;
        for (const Edge& fe : f.edges) {
          Edge im;
          for (Vertex v : fe) im.push_back(img[static_cast<std::size_t>(vindex(v))]);
          std::sort(im.begin(), im.end());
          image.push_back(std::move(im));
        }
        std::sort(image.begin(), image.end());
        bool hits = std::binary_search(image.begin(), image.end(), e);
        if (!hits) return;
        if (seen.insert(image).second) out.push_back({image, img});
        return;
      }
      for (Vertex v : h.vertices) {
        if (used_host[static_cast<std::size_t>(hindex(v))]) continue;
        img[static_cast<std::size_t>(pos)] = v;
        used_host[static_cast<std::size_t>(hindex(v))] = true;
        // prune: every fully-mapped f-edge must be uncovered in the host
        bool ok = true;
        for (const Edge& fe : f.edges) {
          Edge im;
          bool complete = true;
          for (Vertex w : fe) {
            const Vertex iv = img[static_cast<std::size_t>(vindex(w))];
            if (iv < 0) {
              complete = false;
              break;
            }
            im.push_back(iv);
          }
          if (!complete) continue;
          std::sort(im.begin(), im.end());
          if (!cs.edge_uncovered(im)) {
            ok = false;
            break;
          }
        }
        if (ok) place(pos + 1);
        img[static_cast<std::size_t>(pos)] = -1;
        used_host[static_cast<std::size_t>(hindex(v))] = false;
      }
    };
    place(0);
    return out;
  };

  result.status = cs.run(candidates, [&](const std::vector<Vertex>& img) { maps.push_back(img); });
  result.nodes = cs.nodes();
  if (result.status == SolveStatus::found) {
    Certificate c;
    c.kind = Certificate::Kind::f_copies;
    std::reverse(maps.begin(), maps.end());
    c.maps = std::move(maps);
    require(verify_certificate(h, c, &f).ok, errc::internal_check, "bad embedding certificate");
    result.cert = std::move(c);
  }
  return result;
}

}  // namespace tcd

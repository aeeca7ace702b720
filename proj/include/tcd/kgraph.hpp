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
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tcd/error.hpp"

namespace tcd {

using Vertex = int;
using Edge = std::vector<Vertex>;  // always sorted ascending

/// A k-uniform hypergraph with an explicit vertex set and a canonical,
/// sorted, duplicate-free edge set.  All mutating operations return new
/// graphs; values are freely shareable.
struct KGraph {
  int k = 2;
  std::vector<Vertex> vertices;  // sorted, unique
  std::vector<Edge> edges;       // each sorted; list sorted lexicographically, unique

  std::size_t size() const { return edges.size(); }

  bool has_vertex(Vertex v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }

  /// Membership test; `e` must be sorted.
  bool has_edge(const Edge& e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
  }
};

inline Edge sorted_edge(Edge e) {
  std::sort(e.begin(), e.end());
  return e;
}

/// Visits every r-subset of `pool` (assumed sorted); `fn` receives a sorted subset.
template <typename Fn>
void for_each_subset(const std::vector<Vertex>& pool, int r, Fn&& fn) {
  const int n = static_cast<int>(pool.size());
  if (r < 0 || r > n) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vertex> subset(static_cast<std::size_t>(r));
  for (;;) {
    for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    fn(subset);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::int64_t result = 1;
  for (int i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

// ---------------------------------------------------------------------------
// Construction

inline KGraph make_graph(int k, std::vector<Vertex> vertices, std::vector<Edge> edges) {
  require(k >= 2, errc::invalid_size, "uniformity must be at least 2");
  std::sort(vertices.begin(), vertices.end());
  require(std::adjacent_find(vertices.begin(), vertices.end()) == vertices.end(),
          errc::duplicate_edge, "duplicate vertex id");
  KGraph g;
  g.k = k;
  g.vertices = std::move(vertices);
  for (Edge& e : edges) {
    std::sort(e.begin(), e.end());
    require(static_cast<int>(e.size()) == k, errc::wrong_arity,
            "edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
    require(std::adjacent_find(e.begin(), e.end()) == e.end(), errc::wrong_arity,
            "edge has a repeated vertex");
    for (Vertex v : e)
      require(g.has_vertex(v), errc::unknown_vertex, "vertex " + std::to_string(v) + " not declared");
  }
  std::sort(edges.begin(), edges.end());
  require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), errc::duplicate_edge,
          "edge listed twice");
  g.edges = std::move(edges);
  return g;
}

/// Same canonicalisation as make_graph but silently deduplicates the edge
/// list; used where unions are assembled from overlapping sources on purpose.
inline KGraph collect_graph(int k, std::vector<Edge> edges) {
  std::set<Vertex> vs;
  for (Edge& e : edges) {
    std::sort(e.begin(), e.end());
    for (Vertex v : e) vs.insert(v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  KGraph g;
  g.k = k;
  g.vertices.assign(vs.begin(), vs.end());
  g.edges = std::move(edges);
  return g;
}

inline std::vector<Vertex> range_vertices(int n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline KGraph complete_graph(int n, int k) {
  require(n >= k, errc::invalid_size, "complete graph needs n >= k");
  KGraph g;
  g.k = k;
  g.vertices = range_vertices(n);
  for_each_subset(g.vertices, k, [&](const Edge& e) { g.edges.push_back(e); });
  return g;
}

/// All k-sets of A ∪ B with exactly `i` vertices in B.
inline KGraph split_graph(const std::vector<Vertex>& a, const std::vector<Vertex>& b, int i, int k) {
  std::vector<Vertex> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<Vertex> inter;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
  require(inter.empty(), errc::overlap, "vertex classes overlap");
  require(i >= 0 && i <= k, errc::range_error, "class size out of range");
  require(static_cast<int>(sa.size()) >= k - i && static_cast<int>(sb.size()) >= i,
          errc::range_error, "classes too small");
  KGraph g;
  g.k = k;
  g.vertices = sa;
  g.vertices.insert(g.vertices.end(), sb.begin(), sb.end());
  std::sort(g.vertices.begin(), g.vertices.end());
  for_each_subset(sa, k - i, [&](const std::vector<Vertex>& ea) {
    for_each_subset(sb, i, [&](const std::vector<Vertex>& eb) {
      Edge e = ea;
      e.insert(e.end(), eb.begin(), eb.end());
      std::sort(e.begin(), e.end());
      g.edges.push_back(e);
    });
  });
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

/// C_len^(k): every k consecutive vertices of a cyclic order form an edge.
inline KGraph tight_cycle(int len, int k) {
  require(len > k, errc::range_error, "tight cycle needs more vertices than the uniformity");
  KGraph g;
  g.k = k;
  g.vertices = range_vertices(len);
  for (int s = 0; s < len; ++s) {
    Edge e;
    for (int j = 0; j < k; ++j) e.push_back((s + j) % len);
    std::sort(e.begin(), e.end());
    g.edges.push_back(e);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

/// P_len^(k) on `len` vertices with len-k+1 edges.
inline KGraph tight_path(int len, int k) {
  require(len >= k, errc::range_error, "tight path needs at least k vertices");
  KGraph g;
  g.k = k;
  g.vertices = range_vertices(len);
  for (int s = 0; s + k <= len; ++s) {
    Edge e;
    for (int j = 0; j < k; ++j) e.push_back(s + j);
    g.edges.push_back(e);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Degrees

/// Number of edges containing S; with `within`, completions are restricted to
/// that vertex set.
inline std::int64_t degree(const KGraph& h, const std::vector<Vertex>& s,
                           const std::vector<Vertex>* within = nullptr) {
  require(static_cast<int>(s.size()) <= h.k, errc::range_error, "degree of a set larger than k");
  std::vector<Vertex> ss = s;
  std::sort(ss.begin(), ss.end());
  std::int64_t count = 0;
  for (const Edge& e : h.edges) {
    if (!std::includes(e.begin(), e.end(), ss.begin(), ss.end())) continue;
    if (within != nullptr) {
      bool ok = true;
      for (Vertex v : e) {
        if (std::binary_search(ss.begin(), ss.end(), v)) continue;
        if (!std::binary_search(within->begin(), within->end(), v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
    }
    ++count;
  }
  return count;
}

/// The (k-|S|)-sets T with S ∪ T an edge; restricted to `within` when given.
inline std::vector<std::vector<Vertex>> neighborhood(const KGraph& h, const std::vector<Vertex>& s,
                                                     const std::vector<Vertex>* within = nullptr) {
  require(static_cast<int>(s.size()) <= h.k, errc::range_error, "neighborhood of a set larger than k");
  std::vector<Vertex> ss = s;
  std::sort(ss.begin(), ss.end());
  std::vector<std::vector<Vertex>> result;
  for (const Edge& e : h.edges) {
    if (!std::includes(e.begin(), e.end(), ss.begin(), ss.end())) continue;
    std::vector<Vertex> rest;
    std::set_difference(e.begin(), e.end(), ss.begin(), ss.end(), std::back_inserter(rest));
    if (within != nullptr) {
      bool ok = true;
      for (Vertex v : rest)
        if (!std::binary_search(within->begin(), within->end(), v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
    }
    result.push_back(std::move(rest));
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace detail {
// Degree table over the i-subsets that actually appear in edges.  Subsets of
// the vertex set never touched by an edge have degree zero and are accounted
// for by comparing table size with binomial(n, i).
inline std::map<std::vector<Vertex>, std::int64_t> degree_table(const KGraph& h, int i) {
  std::map<std::vector<Vertex>, std::int64_t> table;
  for (const Edge& e : h.edges)
    for_each_subset(e, i, [&](const std::vector<Vertex>& s) { ++table[s]; });
  return table;
}
}  // namespace detail

inline std::int64_t min_degree(const KGraph& h, int i) {
  require(i >= 0 && i < h.k, errc::range_error, "degree order out of range");
  auto table = detail::degree_table(h, i);
  const std::int64_t total = binomial(static_cast<int>(h.vertices.size()), i);
  if (static_cast<std::int64_t>(table.size()) < total) return 0;
  std::int64_t best = table.empty() ? 0 : table.begin()->second;
  for (const auto& [s, d] : table) best = std::min(best, d);
  return best;
}

inline std::int64_t max_degree(const KGraph& h, int i) {
  require(i >= 0 && i < h.k, errc::range_error, "degree order out of range");
  auto table = detail::degree_table(h, i);
  std::int64_t best = 0;
  for (const auto& [s, d] : table) best = std::max(best, d);
  return best;
}

/// Minimum size, over r distinct (k-1)-sets of vertices, of their common
/// neighborhood (intersected with `within` when given).
inline std::int64_t min_common_neighbors(const KGraph& h, int r,
                                         const std::vector<Vertex>* within = nullptr) {
  require(r >= 1, errc::range_error, "needs r >= 1");
  const int n = static_cast<int>(h.vertices.size());
  const std::int64_t tuples = binomial(n, h.k - 1);
  require(tuples >= r, errc::degenerate, "fewer than r distinct (k-1)-sets exist");

  // Bitset neighborhoods over vertex indices.
  std::map<Vertex, int> index;
  for (int i = 0; i < n; ++i) index[h.vertices[static_cast<std::size_t>(i)]] = i;
  const int words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> nbr;
  nbr.reserve(static_cast<std::size_t>(tuples));
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(words), ~0ull);
  if (within != nullptr) {
    std::fill(mask.begin(), mask.end(), 0ull);
    for (Vertex v : *within) {
      auto it = index.find(v);
      if (it == index.end()) continue;
      mask[static_cast<std::size_t>(it->second / 64)] |= 1ull << (it->second % 64);
    }
  }
  std::map<std::vector<Vertex>, int> row;
  for (const Edge& e : h.edges) {
    for_each_subset(e, h.k - 1, [&](const std::vector<Vertex>& s) {
      Vertex other = 0;
      for (Vertex v : e)
        if (!std::binary_search(s.begin(), s.end(), v)) other = v;
      auto [it, fresh] = row.emplace(s, static_cast<int>(nbr.size()));
      if (fresh) nbr.emplace_back(static_cast<std::size_t>(words), 0ull);
      const int vi = index[other];
      nbr[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(vi / 64)] |= 1ull << (vi % 64);
    });
  }
  // Some (k-1)-sets may have empty neighborhoods and are absent from `row`;
  // any of them forces the minimum to zero whenever r of them fit.
  const std::int64_t populated = static_cast<std::int64_t>(nbr.size());
  if (populated < tuples) return 0;

  std::int64_t best = -1;
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(words));
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  const int m = static_cast<int>(nbr.size());
  for (;;) {
    acc = mask;
    for (int i = 0; i < r; ++i)
      for (int w = 0; w < words; ++w)
        acc[static_cast<std::size_t>(w)] &= nbr[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])][static_cast<std::size_t>(w)];
    std::int64_t c = 0;
    for (int w = 0; w < words; ++w) c += __builtin_popcountll(acc[static_cast<std::size_t>(w)]);
    if (best < 0 || c < best) best = c;
    if (best == 0) return 0;
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Divisibility

struct DivisibilityProfile {
  std::vector<std::int64_t> values;  // index i = gcd of degrees over i-sets
};

/// gcd of deg_F(S) over all i-subsets of V(F), zeros ignored; all-zero gives 0.
inline DivisibilityProfile divisibility_profile(const KGraph& f) {
  DivisibilityProfile p;
  p.values.assign(static_cast<std::size_t>(f.k), 0);
  for (int i = 0; i < f.k; ++i) {
    auto table = detail::degree_table(f, i);
    std::int64_t g = 0;
    for (const auto& [s, d] : table) g = std::gcd(g, d);
    p.values[static_cast<std::size_t>(i)] = g;
  }
  return p;
}

inline bool is_f_divisible(const KGraph& h, const KGraph& f) {
  require(h.k == f.k, errc::uniformity_mismatch, "uniformities differ");
  const DivisibilityProfile p = divisibility_profile(f);
  for (int i = 0; i < h.k; ++i) {
    const std::int64_t d = p.values[static_cast<std::size_t>(i)];
    if (d == 0) continue;
    bool ok = true;
    auto table = detail::degree_table(h, i);
    for (const auto& [s, deg] : table)
      if (deg % d != 0) {
        ok = false;
        break;
      }
    if (!ok) return false;
    // subsets with degree zero are divisible by anything
  }
  return true;
}

inline bool is_cycle_divisible(const KGraph& h, int len) {
  if (static_cast<std::int64_t>(h.size()) % len != 0) return false;
  auto table = detail::degree_table(h, 1);
  for (const auto& [s, d] : table)
    if (d % h.k != 0) return false;
  return true;
}

inline bool is_path_divisible(const KGraph& h, int len) {
  return static_cast<std::int64_t>(h.size()) % (len - h.k + 1) == 0;
}

// ---------------------------------------------------------------------------
// Algebra

inline KGraph induced(const KGraph& h, const std::vector<Vertex>& u) {
  std::vector<Vertex> su = u;
  std::sort(su.begin(), su.end());
  KGraph g;
  g.k = h.k;
  std::set_intersection(h.vertices.begin(), h.vertices.end(), su.begin(), su.end(),
                        std::back_inserter(g.vertices));
  for (const Edge& e : h.edges) {
    bool inside = true;
    for (Vertex v : e)
      if (!std::binary_search(su.begin(), su.end(), v)) {
        inside = false;
        break;
      }
    if (inside) g.edges.push_back(e);
  }
  return g;
}

inline KGraph remove_vertices(const KGraph& h, const std::vector<Vertex>& u) {
  std::vector<Vertex> su = u;
  std::sort(su.begin(), su.end());
  std::vector<Vertex> keep;
  std::set_difference(h.vertices.begin(), h.vertices.end(), su.begin(), su.end(),
                      std::back_inserter(keep));
  return induced(h, keep);
}

/// Edge set difference; vertex set kept from the left operand.
inline KGraph minus(const KGraph& h, const KGraph& g) {
  require(h.k == g.k, errc::uniformity_mismatch, "uniformities differ");
  KGraph out;
  out.k = h.k;
  out.vertices = h.vertices;
  std::set_difference(h.edges.begin(), h.edges.end(), g.edges.begin(), g.edges.end(),
                      std::back_inserter(out.edges));
  return out;
}

/// Set union.  In strict mode a shared edge is an error: decomposition
/// certificates are built from edge-disjoint parts only.
inline KGraph graph_union(const KGraph& h, const KGraph& g, bool strict = false) {
  require(h.k == g.k, errc::uniformity_mismatch, "uniformities differ");
  if (strict) {
    std::vector<Edge> shared;
    std::set_intersection(h.edges.begin(), h.edges.end(), g.edges.begin(), g.edges.end(),
                          std::back_inserter(shared));
    require(shared.empty(), errc::edge_collision, "overlapping edges in strict union");
  }
  KGraph out;
  out.k = h.k;
  std::set_union(h.vertices.begin(), h.vertices.end(), g.vertices.begin(), g.vertices.end(),
                 std::back_inserter(out.vertices));
  std::set_union(h.edges.begin(), h.edges.end(), g.edges.begin(), g.edges.end(),
                 std::back_inserter(out.edges));
  return out;
}

/// G + q·F: vertex-disjoint union, the q copies of F relabelled onto ids past
/// every id already present.
inline KGraph disjoint_union_with_copies(const KGraph& g, int q, const KGraph& f) {
  require(g.k == f.k, errc::uniformity_mismatch, "uniformities differ");
  KGraph out = g;
  Vertex next = 0;
  if (!g.vertices.empty()) next = g.vertices.back() + 1;
  for (int c = 0; c < q; ++c) {
    std::map<Vertex, Vertex> relabel;
    for (Vertex v : f.vertices) relabel[v] = next++;
    for (Vertex v : f.vertices) out.vertices.push_back(relabel[v]);
    for (const Edge& e : f.edges) {
      Edge img;
      for (Vertex v : e) img.push_back(relabel[v]);
      std::sort(img.begin(), img.end());
      out.edges.push_back(img);
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   kgraph <k> <n>
//   e v1 v2 ... vk        (vertices ascending, lines sorted)
//   # comment

inline void write_kgraph(std::ostream& os, const KGraph& h) {
  const Vertex n = h.vertices.empty() ? 0 : h.vertices.back() + 1;
  os << "kgraph " << h.k << " " << n << "\n";
  for (const Edge& e : h.edges) {
    os << "e";
    for (Vertex v : e) os << " " << v;
    os << "\n";
  }
}

inline std::string write_kgraph(const KGraph& h) {
  std::ostringstream os;
  write_kgraph(os, h);
  return os.str();
}

inline KGraph read_kgraph(std::istream& is) {
  std::string line;
  int lineno = 0;
  int k = -1;
  Vertex n = 0;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "kgraph") {
      require(k < 0, errc::parse_error, "line " + std::to_string(lineno) + ": duplicate header");
      if (!(ls >> k >> n) || k < 2 || n < 0)
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": bad header");
    } else if (tag == "e") {
      require(k >= 2, errc::parse_error, "line " + std::to_string(lineno) + ": edge before header");
      Edge e;
      Vertex v;
      while (ls >> v) {
        require(v >= 0 && v < n, errc::parse_error,
                "line " + std::to_string(lineno) + ": vertex out of range");
        e.push_back(v);
      }
      require(static_cast<int>(e.size()) == k, errc::parse_error,
              "line " + std::to_string(lineno) + ": edge arity mismatch");
      require(std::is_sorted(e.begin(), e.end()) &&
                  std::adjacent_find(e.begin(), e.end()) == e.end(),
              errc::parse_error, "line " + std::to_string(lineno) + ": edge not strictly ascending");
      edges.push_back(std::move(e));
    } else {
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
    }
  }
  require(k >= 2, errc::parse_error, "missing kgraph header");
  return make_graph(k, range_vertices(n), std::move(edges));
}

inline KGraph read_kgraph(const std::string& text) {
  std::istringstream is(text);
  return read_kgraph(is);
}

}  // namespace tcd

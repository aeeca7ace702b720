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
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/kgraph.hpp"
#include "tcd/randomized.hpp"
#include "tcd/rational.hpp"
#include "tcd/rng.hpp"
#include "tcd/solver.hpp"
#include "tcd/walks.hpp"

namespace tcd {

/// The index families steering the two-class lower-bound constructions.
struct IndexSets {
  int r = 0;                       // k / gcd(k, len)
  std::vector<int> free_indices;   // i in [0,k] with i not divisible by r
  std::vector<int> odd_indices;
  std::vector<int> even_indices;
};

inline IndexSets index_sets(int k, int len) {
  require(k < len, errc::range_error, "cycle length must exceed the uniformity");
  require(len % k != 0, errc::divisible_length, "length divisible by the uniformity");
  IndexSets s;
  s.r = k / std::gcd(k, len);
  for (int i = 0; i <= k; ++i) {
    if (i % s.r != 0) s.free_indices.push_back(i);
    if (i % 2 != 0)
      s.odd_indices.push_back(i);
    else
      s.even_indices.push_back(i);
  }
  return s;
}

struct BoundInfo {
  Rational value;                       // the two-class threshold bound
  Rational universal_floor;             // 1/2 + 1/(4(len-1))
  std::optional<Rational> closed_form;  // when a closed expression applies
  std::int64_t odd_free_sum = 0;
  std::int64_t even_free_sum = 0;
};

/// The exact two-class bound: 1/2 plus the larger free-parity binomial mass
/// over 2^k (len-1).  Closed forms: 1/(2(len-1)) extra when k/gcd is even,
/// and (1 - 2^(1-k))/(2(len-1)) extra when gcd(len,k) = 1 with k odd.
inline BoundInfo bound_value(int k, int len) {
  const IndexSets s = index_sets(k, len);
  BoundInfo info;
  for (int i : s.free_indices) {
    if (i % 2 != 0)
      info.odd_free_sum += binomial(k, i);
    else
      info.even_free_sum += binomial(k, i);
  }
  const std::int64_t top = std::max(info.odd_free_sum, info.even_free_sum);
  std::int64_t denom = len - 1;
  for (int t = 0; t < k; ++t) denom *= 2;
  info.value = Rational(1, 2) + Rational(top, denom);
  info.universal_floor = Rational(1, 2) + Rational(1, 4 * (static_cast<std::int64_t>(len) - 1));
  if (s.r % 2 == 0) {
    info.closed_form = Rational(1, 2) + Rational(1, 2 * (static_cast<std::int64_t>(len) - 1));
  } else if (std::gcd(k, len) == 1 && k % 2 == 1) {
    std::int64_t half = 1;
    for (int t = 0; t < k - 1; ++t) half *= 2;
    // (1 - 2^(1-k)) / (2 (len-1)) = (2^(k-1) - 1) / (2^(k-1) * 2 * (len-1))
    info.closed_form =
        Rational(1, 2) + Rational(half - 1, half * 2 * (static_cast<std::int64_t>(len) - 1));
  }
  return info;
}

struct FreenessReport {
  bool predicted_free = false;
  bool observed_free = false;
  std::int64_t copies = 0;
};

/// Exhaustively tests the two-class graph with exactly i vertices in the
/// second class for cycle copies, against the divisibility prediction.
inline FreenessReport check_cycle_free(int k, int len, int i, int size_a, int size_b) {
  require(i >= 1 && i < k, errc::range_error, "class intersection out of range");
  require(size_a + size_b <= 14 && len <= 9, errc::size_too_large,
          "enumeration limited to small instances");
  const int d = std::gcd(k, len);
  FreenessReport report;
  report.predicted_free = ((k - i) % (k / d)) != 0;

  std::vector<Vertex> a = range_vertices(size_a);
  std::vector<Vertex> b;
  for (int t = 0; t < size_b; ++t) b.push_back(size_a + t);
  const KGraph h = split_graph(a, b, i, k);
  const auto copies = enumerate_cycles(h, len);
  report.copies = static_cast<std::int64_t>(copies.size());
  report.observed_free = copies.empty();
  return report;
}

struct LowerBoundReport {
  KGraph graph;
  Rational keep_probability;  // the sparsification rate before the eta slack
  std::int64_t odd_edges = 0;
  std::int64_t odd_free_edges = 0;
  std::int64_t even_kept = 0;
  std::int64_t min_codegree = 0;
  bool size_condition = false;    // |H*_even| < |H'_odd|/(len-1) - eta n^k
  bool degree_condition = false;  // delta(H*_even) >= (p - 4 eta) n/2
  std::vector<LedgerRow> ledger;
};

/// The two-class construction with a sparsified even side: the union of the
/// odd classes plus a random share of the even classes sized so that greedy
/// cycle covers cannot reach the free odd edges.  Both target inequalities
/// are measured and reported, never silently retried.
inline LowerBoundReport lower_bound_graph(int k, int len, int n, double eta, Rng& rng) {
  require(len % k != 0, errc::divisible_length, "length divisible by the uniformity");
  require(n >= 2 * k, errc::invalid_size, "vertex count too small to split");
  const IndexSets s = index_sets(k, len);

  std::vector<Vertex> a = range_vertices(n / 2);
  std::vector<Vertex> b;
  for (int t = n / 2; t < n; ++t) b.push_back(t);

  LowerBoundReport report;
  std::vector<Edge> odd_edges, even_edges, odd_free;
  for (int i = 0; i <= k; ++i) {
    if (static_cast<int>(a.size()) < k - i || static_cast<int>(b.size()) < i) continue;
    const KGraph part = split_graph(a, b, i, k);
    if (i % 2 != 0) {
      odd_edges.insert(odd_edges.end(), part.edges.begin(), part.edges.end());
      if (i % s.r != 0) odd_free.insert(odd_free.end(), part.edges.begin(), part.edges.end());
    } else {
      even_edges.insert(even_edges.end(), part.edges.begin(), part.edges.end());
    }
  }
  report.odd_edges = static_cast<std::int64_t>(odd_edges.size());
  report.odd_free_edges = static_cast<std::int64_t>(odd_free.size());

  const std::int64_t total = binomial(n, k);
  report.keep_probability =
      Rational(2 * report.odd_free_edges, (static_cast<std::int64_t>(len) - 1) * total);
  const double p = static_cast<double>(report.keep_probability.num) /
                   static_cast<double>(report.keep_probability.den);
  const double keep = p - 3 * eta;
  require(keep >= 0.0 && keep <= 1.0, errc::parameter_infeasible,
          "sparsification rate outside [0,1]");

  std::vector<Edge> kept = odd_edges;
  std::int64_t even_count = 0;
  for (const Edge& e : even_edges)
    if (rng.chance(keep)) {
      kept.push_back(e);
      ++even_count;
    }
  report.even_kept = even_count;
  report.graph = collect_graph(k, kept);
  report.graph.vertices = range_vertices(n);

  report.min_codegree = min_degree(report.graph, k - 1);
  double nk = 1;
  for (int t = 0; t < k; ++t) nk *= n;
  report.size_condition =
      static_cast<double>(even_count) <
      static_cast<double>(report.odd_free_edges) / (len - 1) - eta * nk;
  // minimum codegree of the kept even part alone
  std::vector<Edge> kept_even(kept.begin() + static_cast<std::ptrdiff_t>(odd_edges.size()),
                              kept.end());
  std::int64_t even_min = 0;
  if (!kept_even.empty()) {
    KGraph even_graph = collect_graph(k, kept_even);
    even_graph.vertices = range_vertices(n);
    even_min = min_degree(even_graph, k - 1);
  }
  report.degree_condition = static_cast<double>(even_min) >= (p - 4 * eta) * n / 2;
  report.ledger.push_back(ledger_row("lower", "p", report.keep_probability.str()));
  report.ledger.push_back(ledger_row("lower", "even_kept", std::to_string(even_count)));
  report.ledger.push_back(ledger_row("lower", "codegree", std::to_string(report.min_codegree)));
  report.ledger.push_back(
      ledger_row("lower", "size_condition", report.size_condition ? "yes" : "no"));
  report.ledger.push_back(
      ledger_row("lower", "degree_condition", report.degree_condition ? "yes" : "no"));
  return report;
}

struct CounterexampleResult {
  KGraph graph;
  Edge special_edge;
  std::int64_t min_codegree = 0;
  int n = 0;
};

/// The two-class graph whose middle layers are removed, degrees trimmed to
/// multiples of k by consecutive-block matchings, and one cross pair of
/// edges swapped in; the swapped edge lies in no tight cycle.
inline CounterexampleResult euler_counterexample(int k, int m) {
  require(m >= 2, errc::invalid_size, "needs at least two blocks per side");
  const int half = m * k;
  const int n = 2 * half;
  std::vector<Vertex> a = range_vertices(half);
  std::vector<Vertex> b;
  for (int t = half; t < n; ++t) b.push_back(t);

  std::vector<Edge> edges;
  for (int i = 0; i <= k; ++i) {
    if (i == 1 || i == k - 1) continue;
    if (static_cast<int>(a.size()) < k - i || static_cast<int>(b.size()) < i) continue;
    const KGraph part = split_graph(a, b, i, k);
    edges.insert(edges.end(), part.edges.begin(), part.edges.end());
  }
  KGraph h = collect_graph(k, edges);
  h.vertices = range_vertices(n);

  // Degrees are equal across each side by symmetry; peel rotated block
  // matchings until they are divisible by k.  Rotations by 1..k-1 never use
  // the special blocks at offset 0.
  const std::int64_t residue = degree(h, {0}) % k;
  require(degree(h, {half}) % k == residue, errc::internal_check, "sides disagree on degrees");
  std::vector<Edge> removed;
  for (int s = 1; s <= residue; ++s) {
    for (int j = 0; j < m; ++j) {
      Edge ea, eb;
      for (int t = 0; t < k; ++t) {
        ea.push_back((s + j * k + t) % half);
        eb.push_back(half + (s + j * k + t) % half);
      }
      removed.push_back(sorted_edge(ea));
      removed.push_back(sorted_edge(eb));
    }
  }
  h = minus(h, collect_graph(k, removed));

  // The cross swap: drop one block from each side, add the two mixed edges.
  Edge ablock = range_vertices(k);
  Edge bblock;
  for (int t = 0; t < k; ++t) bblock.push_back(half + t);
  require(h.has_edge(ablock) && h.has_edge(bblock), errc::internal_check,
          "special blocks went missing");
  Edge special;  // a_1 .. a_{k-1} b_k
  for (int t = 0; t < k - 1; ++t) special.push_back(t);
  special.push_back(half + k - 1);
  Edge mirror;  // b_1 .. b_{k-1} a_k
  for (int t = 0; t < k - 1; ++t) mirror.push_back(half + t);
  mirror.push_back(k - 1);
  std::sort(special.begin(), special.end());
  std::sort(mirror.begin(), mirror.end());

  std::vector<Edge> final_edges;
  for (const Edge& e : h.edges)
    if (e != ablock && e != bblock) final_edges.push_back(e);
  final_edges.push_back(special);
  final_edges.push_back(mirror);

  CounterexampleResult out;
  out.graph = collect_graph(k, final_edges);
  out.graph.vertices = range_vertices(n);
  out.special_edge = special;
  out.n = n;
  for (Vertex v : out.graph.vertices)
    require(degree(out.graph, {v}) % k == 0, errc::internal_check,
            "construction left a bad degree");
  out.min_codegree = min_degree(out.graph, k - 1);
  return out;
}

}  // namespace tcd

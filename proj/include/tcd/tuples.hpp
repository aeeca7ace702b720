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
#include <vector>

#include "tcd/error.hpp"
#include "tcd/kgraph.hpp"

namespace tcd {

/// Ordered vertex tuple; order-sensitive equality, repetitions permitted.
using OrderedTuple = std::vector<Vertex>;

inline OrderedTuple reversed(OrderedTuple t) {
  std::reverse(t.begin(), t.end());
  return t;
}

/// r_i: replace the i-th vertex (1-based) with x.
inline OrderedTuple with_position(OrderedTuple t, int i, Vertex x) {
  require(i >= 1 && i <= static_cast<int>(t.size()), errc::index_out_of_range,
          "replace position out of range");
  t[static_cast<std::size_t>(i - 1)] = x;
  return t;
}

/// s_i: drop the i-th vertex (1-based).
inline OrderedTuple skipping(OrderedTuple t, int i) {
  require(i >= 1 && i <= static_cast<int>(t.size()), errc::index_out_of_range,
          "skip position out of range");
  t.erase(t.begin() + (i - 1));
  return t;
}

/// Applies a permutation sigma of [len]: result_j = t_{sigma(j)} (1-based).
inline OrderedTuple permuted(const OrderedTuple& t, const std::vector<int>& sigma) {
  require(sigma.size() == t.size(), errc::index_out_of_range, "permutation length mismatch");
  OrderedTuple out(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    const int p = sigma[j];
    require(p >= 1 && p <= static_cast<int>(t.size()), errc::index_out_of_range,
            "permutation entry out of range");
    out[j] = t[static_cast<std::size_t>(p - 1)];
  }
  return out;
}

namespace detail {
// Tuples of length k are trimmed to k-1 by dropping the last entry before the
// replacement-pair constructions below.
inline OrderedTuple trim_to(const OrderedTuple& t, int len) {
  if (static_cast<int>(t.size()) == len) return t;
  require(static_cast<int>(t.size()) == len + 1, errc::bad_tuple_length,
          "tuple length must be k-1 or k");
  return skipping(t, len + 1);
}
}  // namespace detail

/// { r_i(z,x), (r_i(z,x'))^-1 }; a k-tuple argument loses its last entry first.
inline std::vector<OrderedTuple> replace_pair(const OrderedTuple& z, int i, Vertex x, Vertex xp,
                                              int tuple_len) {
  const OrderedTuple base = detail::trim_to(z, tuple_len);
  return {with_position(base, i, x), reversed(with_position(base, i, xp))};
}

/// The four-element union replace_pair(z,i,x,x') ∪ replace_pair(z',i,x',x).
inline std::vector<OrderedTuple> replace_quad(const OrderedTuple& z, const OrderedTuple& zp, int i,
                                              Vertex x, Vertex xp, int tuple_len) {
  std::vector<OrderedTuple> out = replace_pair(z, i, x, xp, tuple_len);
  std::vector<OrderedTuple> other = replace_pair(zp, i, xp, x, tuple_len);
  out.insert(out.end(), other.begin(), other.end());
  return out;
}

/// Sorted multiset view used whenever residuals are compared exactly.
inline std::vector<OrderedTuple> sorted_multiset(std::vector<OrderedTuple> ts) {
  std::sort(ts.begin(), ts.end());
  return ts;
}

}  // namespace tcd

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

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tcd/error.hpp"
#include "tcd/randomized.hpp"
#include "tcd/solver.hpp"
#include "tcd/tourtrail.hpp"
#include "tcd/walks.hpp"

namespace tcd {

// Walks are `w v1 ... vt` lines, tours `wt v1 ... vt`.

inline void write_walk(std::ostream& os, const Walk& w) {
  os << (w.tour ? "wt" : "w");
  for (Vertex v : w.seq) os << " " << v;
  os << "\n";
}

inline Walk parse_walk_line(const std::string& line, int k, int lineno) {
  std::istringstream ls(line);
  std::string tag;
  ls >> tag;
  require(tag == "w" || tag == "wt", errc::parse_error,
          "line " + std::to_string(lineno) + ": expected a walk record");
  Walk w;
  w.k = k;
  w.tour = (tag == "wt");
  Vertex v;
  while (ls >> v) w.seq.push_back(v);
  require(static_cast<int>(w.seq.size()) >= k, errc::parse_error,
          "line " + std::to_string(lineno) + ": walk shorter than the uniformity");
  return w;
}

// Decomposition files: `v1 ttd <k> <count>` then walk lines; residual dumps
// follow as `r t1 ... t_{k-1}` lines when requested.

inline void write_decomposition(std::ostream& os, const TourTrailDecomposition& t,
                                bool with_residual = false) {
  os << "v1 ttd " << t.host.k << " " << t.walks.size() << "\n";
  for (const Walk& w : t.walks) write_walk(os, w);
  if (with_residual) {
    for (const OrderedTuple& r : residual(t)) {
      os << "r";
      for (Vertex v : r) os << " " << v;
      os << "\n";
    }
  }
}

// Certificates: `v1 cert <kind> <count>` with kind one of cycles-<len>,
// paths-<len>, mixed, euler, copies; then walk lines (or `m ...` image lines
// for pattern copies).

inline std::string certificate_kind_tag(const Certificate& c) {
  switch (c.kind) {
    case Certificate::Kind::cycles: return "cycles-" + std::to_string(c.len);
    case Certificate::Kind::paths: return "paths-" + std::to_string(c.len);
    case Certificate::Kind::mixed_cycles: return "mixed";
    case Certificate::Kind::euler_tour: return "euler";
    case Certificate::Kind::f_copies: return "copies";
  }
  return "unknown";
}

inline void write_certificate(std::ostream& os, const Certificate& c) {
  os << "v1 cert " << certificate_kind_tag(c) << " "
     << (c.kind == Certificate::Kind::f_copies ? c.maps.size() : c.pieces.size()) << "\n";
  for (const Walk& w : c.pieces) write_walk(os, w);
  for (const auto& img : c.maps) {
    os << "m";
    for (Vertex v : img) os << " " << v;
    os << "\n";
  }
}

inline Certificate read_certificate(std::istream& is, int k) {
  std::string line;
  int lineno = 0;
  Certificate c;
  bool have_header = false;
  std::size_t expected = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!have_header) {
      require(tag == "v1", errc::parse_error,
              "line " + std::to_string(lineno) + ": missing version token");
      std::string word, kind;
      ls >> word >> kind >> expected;
      require(word == "cert", errc::parse_error,
              "line " + std::to_string(lineno) + ": expected a certificate header");
      if (kind.rfind("cycles-", 0) == 0) {
        c.kind = Certificate::Kind::cycles;
        c.len = std::stoi(kind.substr(7));
      } else if (kind.rfind("paths-", 0) == 0) {
        c.kind = Certificate::Kind::paths;
        c.len = std::stoi(kind.substr(6));
      } else if (kind == "mixed") {
        c.kind = Certificate::Kind::mixed_cycles;
      } else if (kind == "euler") {
        c.kind = Certificate::Kind::euler_tour;
      } else if (kind == "copies") {
        c.kind = Certificate::Kind::f_copies;
      } else {
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": unknown kind " + kind);
      }
      have_header = true;
      continue;
    }
    if (tag == "m") {
      std::vector<Vertex> img;
      Vertex v;
      while (ls >> v) img.push_back(v);
      c.maps.push_back(std::move(img));
    } else {
      c.pieces.push_back(parse_walk_line(line, k, lineno));
    }
  }
  require(have_header, errc::parse_error, "missing certificate header");
  const std::size_t got =
      c.kind == Certificate::Kind::f_copies ? c.maps.size() : c.pieces.size();
  require(got == expected, errc::parse_error, "piece count differs from the header");
  return c;
}

// Run ledgers: tab-separated stage/key/value rows under a version line.

inline void write_ledger(std::ostream& os, const std::vector<LedgerRow>& rows) {
  os << "v1\n";
  for (const auto& row : rows) os << row[0] << "\t" << row[1] << "\t" << row[2] << "\n";
}

}  // namespace tcd

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

#include "tcd/io.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <sstream>

using namespace tcd;

TEST_CASE("walk lines") {
  Walk w;
  w.k = 3;
  w.tour = false;
  w.seq = {4, 5, 6, 7};
  std::ostringstream os;
  write_walk(os, w);
  REQUIRE(os.str() == "w 4 5 6 7\n");
  auto back = parse_walk_line("w 4 5 6 7", 3, 1);
  REQUIRE(back.seq == w.seq);
  REQUIRE_FALSE(back.tour);
  auto tour = parse_walk_line("wt 0 1 2 3 0 1", 3, 1);
  REQUIRE(tour.tour);
  REQUIRE_THROWS_AS(parse_walk_line("x 1 2 3", 3, 1), Error);
  REQUIRE_THROWS_AS(parse_walk_line("w 1 2", 3, 1), Error);
}

TEST_CASE("certificate round trip") {
  auto c7 = tight_cycle(7, 3);
  auto solved = decompose_cycles(c7, 7);
  REQUIRE(solved.status == SolveStatus::found);
  std::ostringstream os;
  write_certificate(os, *solved.cert);
  REQUIRE(os.str().rfind("v1 cert cycles-7 1\n", 0) == 0);
  std::istringstream is(os.str());
  auto back = read_certificate(is, 3);
  REQUIRE(back.kind == Certificate::Kind::cycles);
  REQUIRE(back.len == 7);
  REQUIRE(verify_certificate(c7, back).ok);

  // map certificates
  Certificate maps;
  maps.kind = Certificate::Kind::f_copies;
  maps.maps = {{0, 1, 2, 3}};
  std::ostringstream os2;
  write_certificate(os2, maps);
  std::istringstream is2(os2.str());
  auto back2 = read_certificate(is2, 3);
  REQUIRE(back2.maps == maps.maps);

  // header mismatches are rejected
  std::istringstream bad1("cert cycles-7 1\nwt 0 1 2 3 0 1\n");
  REQUIRE_THROWS_AS(read_certificate(bad1, 3), Error);
  std::istringstream bad2("v1 cert cycles-7 2\nwt 0 1 2 3 0 1\n");
  REQUIRE_THROWS_AS(read_certificate(bad2, 3), Error);
}

TEST_CASE("decomposition and ledger output") {
  auto k4 = complete_graph(4, 3);
  auto t = trivial_decomposition(k4);
  std::ostringstream os;
  write_decomposition(os, t, /*with_residual=*/true);
  const std::string text = os.str();
  REQUIRE(text.rfind("v1 ttd 3 4\n", 0) == 0);
  REQUIRE(text.find("\nr ") != std::string::npos);

  std::ostringstream lg;
  write_ledger(lg, {ledger_row("stage", "key", "value")});
  REQUIRE(lg.str() == "v1\nstage\tkey\tvalue\n");
}

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

#include <stdexcept>
#include <string>

namespace tcd {

enum class errc {
  wrong_arity,
  unknown_vertex,
  duplicate_edge,
  invalid_size,
  overlap,
  range_error,
  uniformity_mismatch,
  edge_collision,
  degenerate,
  not_an_edge,
  repeated_edge,
  bad_wrap,
  tour_has_no_ends,
  index_out_of_range,
  bad_tuple_length,
  no_matching_ends,
  degree_not_divisible,
  anchor_collision,
  not_prime,
  too_dense,
  not_balanced,
  malformed_residual,
  not_divisible,
  not_homomorphism,
  anchor_not_edge,
  oracle_failure,
  host_too_sparse,
  divisible_length,
  size_too_large,
  parameter_infeasible,
  matching_not_found,
  internal_check,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::wrong_arity: return "WrongArity";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::invalid_size: return "InvalidSize";
    case errc::overlap: return "Overlap";
    case errc::range_error: return "RangeError";
    case errc::uniformity_mismatch: return "UniformityMismatch";
    case errc::edge_collision: return "EdgeCollision";
    case errc::degenerate: return "Degenerate";
    case errc::not_an_edge: return "NotAnEdge";
    case errc::repeated_edge: return "RepeatedEdge";
    case errc::bad_wrap: return "BadWrap";
    case errc::tour_has_no_ends: return "TourHasNoEnds";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::bad_tuple_length: return "BadTupleLength";
    case errc::no_matching_ends: return "NoMatchingEnds";
    case errc::degree_not_divisible: return "DegreeNotDivisible";
    case errc::anchor_collision: return "AnchorCollision";
    case errc::not_prime: return "NotPrime";
    case errc::too_dense: return "TooDense";
    case errc::not_balanced: return "NotBalanced";
    case errc::malformed_residual: return "MalformedResidual";
    case errc::not_divisible: return "NotDivisible";
    case errc::not_homomorphism: return "NotHomomorphism";
    case errc::anchor_not_edge: return "AnchorNotEdge";
    case errc::oracle_failure: return "OracleFailure";
    case errc::host_too_sparse: return "HostTooSparse";
    case errc::divisible_length: return "DivisibleLength";
    case errc::size_too_large: return "SizeTooLarge";
    case errc::parameter_infeasible: return "ParameterInfeasible";
    case errc::matching_not_found: return "MatchingNotFound";
    case errc::internal_check: return "InternalCheck";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace tcd

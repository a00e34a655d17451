// Copyright 2026 The Authors.
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

// Generators for named point configurations, and the construction of nice
// sequences of hyperplanes inside a good collection of flats.

#ifndef FLATSPAN_CONSTRUCTIONS_H_
#define FLATSPAN_CONSTRUCTIONS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatspan/geom_core.h"
#include "flatspan/structure_detect.h"

namespace flatspan {

enum class ConfigKind {
  kGeneralPosition,
  kTwoSkewLines,
  kSkewLineFamily,
  kFlatCluster,
  kGrid,
};

const char* ConfigKindName(ConfigKind kind);
ConfigKind ParseConfigKind(const std::string& name);

struct ConfigSpec {
  ConfigKind kind = ConfigKind::kGeneralPosition;
  int d = 3;
  int n = 0;                  // general_position, two_skew_lines
  std::uint64_t seed = 1;
  std::vector<int> dims;      // flat_cluster
  std::vector<int> counts;    // flat_cluster
  int outliers = 0;           // flat_cluster
  int lines = 3;              // skew_line_family
  int points_per_line = 0;    // skew_line_family
  std::string layout = "regulus";  // skew_line_family: regulus | generic
  int m = 0;                  // grid side

  // Throws kInvalidArgument on out-of-range parameters.
  void Validate() const;
  std::string ToJson() const;
  // Missing fields keep their defaults; throws kParse on bad JSON.
  static ConfigSpec FromJson(const std::string& text);
};

struct GeneratedConfig {
  PointSet points;
  // Ground-truth flats carrying the structure (empty for general position
  // and grids).
  std::vector<Flat> planted;
};

// Deterministic in the spec (including its seed).
GeneratedConfig Generate(const ConfigSpec& spec);

// Random flats of the given dimensions whose every subfamily has a join of
// the largest possible dimension, with counts[i] points in general position
// on flat i (and on no other flat) plus `outliers` points off every flat.
GeneratedConfig GenerateFlatFamily(int d, const std::vector<int>& dims,
                                   const std::vector<int>& counts,
                                   int outliers, std::uint64_t seed);

// Witness data for a collection whose dimension sum d + x exceeds d.
struct ExcessData {
  int x = 0;
  Flat q;                // P_[k-1] meet F_k, dimension x - 1
  std::vector<Flat> q_i;  // <F_i, P_[k-1] minus i> meet F_k, dimension x
  Flat target;           // projection target inside F_k
  std::vector<ProjPoint> q_images;  // images of the q_i in the target
};

struct NiceSequence {
  // Collection indices the sequence runs over, in construction order. All
  // indices unless the collection had a removable flat (see BuildNiceSequence).
  std::vector<size_t> indices;
  std::vector<Flat> p;   // p[j] is a hyperplane of flat indices[j]
  Flat h;
  std::optional<ExcessData> excess;
  // Admissible candidates / candidates at each step along this sequence.
  std::vector<Scalar> admissible_fraction;
};

struct NiceOptions {
  std::uint64_t seed = 0x5eed;
  int target_trials = 100;
};

// First nice sequence (depth-first over admissible choices in canonical
// order) whose hyperplane is not in `avoid`. Requires a good collection of
// flats each spanned by the points of S on it. When the dimension sum exceeds
// d and dropping some flat leaves sum >= d, flats are dropped (first index
// first) until every remaining flat is needed. Throws kNotFound when the
// choices are exhausted and kBudgetExhausted when no projection target is
// found.
NiceSequence BuildNiceSequence(const PointSet& s, const FlatCollection& c,
                               const std::set<Flat>& avoid = {},
                               const NiceOptions& opts = {});

// Up to `budget` nice sequences in depth-first order, with pairwise distinct
// hyperplanes (checked).
std::vector<NiceSequence> EnumerateNiceSequences(const PointSet& s,
                                                 const FlatCollection& c,
                                                 std::int64_t budget,
                                                 const NiceOptions& opts = {});

std::set<Flat> EnumerateNiceHyperplanes(const PointSet& s,
                                        const FlatCollection& c,
                                        std::int64_t budget,
                                        const NiceOptions& opts = {});

}  // namespace flatspan

#endif  // FLATSPAN_CONSTRUCTIONS_H_

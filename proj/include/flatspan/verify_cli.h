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

// Point-file and JSON plumbing, bound verification and the command-line
// front end.

#ifndef FLATSPAN_VERIFY_CLI_H_
#define FLATSPAN_VERIFY_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatspan/geom_core.h"
#include "flatspan/structure_detect.h"

namespace flatspan {

inline constexpr const char* kToolVersion = "0.1.0";

// Accepts integers, fractions "p/q" and finite decimals "-1.25" exactly.
Scalar ParseNumber(std::string_view text);

struct LoadedPoints {
  PointSet points;
  std::int64_t duplicates = 0;
  std::vector<std::string> warnings;
};

// Header `d=<D> n=<N> [homogeneous] [label=<name>]`, then one point per row:
// D affine coordinates, or D + 1 homogeneous ones. `#` starts a comment.
// Duplicate rows are dropped with a warning. Throws kParse.
LoadedPoints ParsePointText(std::string_view text);
LoadedPoints LoadPoints(const std::string& path);
// Affine rows when no point lies at infinity, homogeneous rows otherwise.
std::string FormatPoints(const PointSet& s);

// {"ambient_dim": d, "flats": [flat, ...]} where a flat is a list of
// homogeneous generator rows or {"affine_points": [[...], ...]}.
FlatCollection ParseCollection(std::string_view text);
std::string FormatCollection(const FlatCollection& c);

// Threshold overrides merged over ThresholdConfig::Defaults(d): keys beta,
// rich_c, and beck_beta / beck_gamma / sat_gamma as {"m": value} maps.
ThresholdConfig ParseThresholds(std::string_view text, int d);

struct BoundEntry {
  std::string id;
  Scalar lhs;
  Scalar rhs;
  std::optional<bool> holds;  // absent for report-only entries
  std::map<std::string, std::string> inputs;
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  bool AllHold() const;
};

inline const std::vector<std::string>& AllBoundIds() {
  static const std::vector<std::string> ids = {
      "prop_1_8", "lemma_2_2", "thm_1_4_ratio",
      "cor_1_6",  "cor_1_10_ratio", "lemma_3_2"};
  return ids;
}

struct VerifyOptions {
  std::vector<std::string> bounds;
  std::optional<FlatCollection> collection;
  std::vector<int> ks;  // richness levels for cor_1_10_ratio; default {d}
  Scalar alpha = Scalar(1, 2);
  DegeneracyVariant variant = DegeneracyVariant::kClassic;
  int workers = 1;
};

// Throws kPrecondition when a bound needs a collection that is missing or
// of the wrong shape, kInvalidArgument on unknown bound ids.
BoundReport RunVerify(const PointSet& s, const ThresholdConfig& cfg,
                      const VerifyOptions& opts);

// Full command-line entry point. Returns 0 on success, 1 when a checked
// bound fails, 2 on usage, input or precondition errors.
int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace flatspan

#endif  // FLATSPAN_VERIFY_CLI_H_

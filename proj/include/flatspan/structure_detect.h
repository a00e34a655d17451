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

// Richness, saturation and degeneracy predicates, good collections of flats,
// and the cluster-or-saturated decomposition of a point set.

#ifndef FLATSPAN_STRUCTURE_DETECT_H_
#define FLATSPAN_STRUCTURE_DETECT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatspan/geom_core.h"
#include "flatspan/span_enum.h"

namespace flatspan {

// Thresholds for descent and saturation, keyed by flat dimension m.
struct ThresholdConfig {
  Scalar beta;                        // cluster coverage fraction
  Scalar rich_c;                      // richness fraction of |S|
  std::map<int, Scalar> beck_beta;    // descent coverage fraction in dim m
  std::map<int, Scalar> beck_gamma;   // Beck's spanning-count constant
  std::map<int, Scalar> sat_gamma;    // saturation constant in dim m

  // beta = 1/2, rich_c = 1/10, beck_beta(m) = 1/(2(m-1)),
  // beck_gamma(m) = sat_gamma(m) = 1/(2 m!) for m = 1..d
  // (beck_beta starts at m = 2).
  static ThresholdConfig Defaults(int d);

  const Scalar& BeckBeta(int m) const;
  const Scalar& BeckGamma(int m) const;
  const Scalar& SatGamma(int m) const;

  // Throws kInvalidArgument unless 0 < beta < 1, 0 < rich_c <= 1, every
  // beck_beta in (0, 1) and every gamma > 0.
  void Validate() const;
};

class FlatCollection {
 public:
  FlatCollection() = default;
  // Throws if flats are empty, ambient, or in different spaces.
  FlatCollection(int ambient_dim, std::vector<Flat> flats);

  const std::vector<Flat>& flats() const { return flats_; }
  const Flat& operator[](size_t i) const { return flats_[i]; }
  size_t size() const { return flats_.size(); }
  int ambient_dim() const { return ambient_dim_; }
  int dim_sum() const;
  std::vector<int> dims() const;
  // Join of the flats indexed by `subset`.
  Flat Span(const std::vector<size_t>& subset) const;

 private:
  int ambient_dim_ = 0;
  std::vector<Flat> flats_;
};

bool IsRich(const PointSet& s, const Flat& f, const Scalar& c);

struct SaturationVerdict {
  bool saturated = false;
  std::int64_t h = 0;
  std::int64_t points = 0;
  Scalar threshold;  // gamma |F meet S|^dim F
};

// Saturation with exponent dim F. Requires dim F >= 1 and F spanned by the
// points of S on it.
SaturationVerdict IsSaturated(const PointSet& s, const Flat& f,
                              const Scalar& gamma, int workers = 1);

struct Coverage {
  Flat hyperplane;
  std::int64_t coverage = 0;
};

// Spanned hyperplane of F holding the most points of S, first in canonical
// order among ties.
Coverage MaxCoverageHyperplane(const PointSet& s, const Flat& f,
                               int workers = 1);

struct DescentStep {
  Flat flat;
  std::int64_t points = 0;
  SaturationVerdict saturation;
  // Filled when the step looked for a heavier hyperplane.
  std::optional<Coverage> best_hyperplane;
  Scalar required_coverage;
};

struct DescentResult {
  Flat flat;
  bool saturated_by_beck = false;
  // When the descent stopped on the Beck branch: whether the flat also met
  // H >= beck_gamma(m) |S meet F|^m.
  std::optional<bool> beck_count_holds;
  std::vector<DescentStep> steps;
};

// Replaces the current flat by its heaviest spanned hyperplane until the flat
// is saturated, is a line, or no hyperplane reaches beck_beta(m) of its
// points.
DescentResult BeckDescent(const PointSet& s, const Flat& start,
                          const ThresholdConfig& cfg, int workers = 1);

struct GoodCollectionVerdict {
  bool good = false;
  // Smallest violating proper subset (dim F_I < sum of dims), then
  // lexicographically first.
  std::optional<std::vector<size_t>> bad_subset;
};

GoodCollectionVerdict CheckGoodCollection(const FlatCollection& c);

// Smallest subset I (any size, including all flats) with
// dim F_I < sum_{i in I} dim F_i.
std::optional<std::vector<size_t>> FindViolatingSubset(const FlatCollection& c);

// Drops the flats in `subset` and appends their join. Throws kPrecondition
// unless the subset is violating.
FlatCollection MergeBadSubset(const FlatCollection& c,
                              const std::vector<size_t>& subset);

enum class StepKind { kDescent, kAdd, kMerge, kRestrict };

struct TraceStep {
  StepKind kind = StepKind::kAdd;
  std::vector<size_t> subset;  // merge / restrict
  int dim_sum_before = 0;
  int dim_sum_after = 0;
  std::int64_t covered = 0;
  std::optional<DescentResult> descent;
};

enum class Outcome { kCluster, kSaturated };

struct DichotomyResult {
  Outcome outcome = Outcome::kCluster;
  FlatCollection collection;
  std::int64_t covered = 0;
  std::int64_t n = 0;
  // Saturated outcome: H_S(ambient) and H_S / n^d.
  std::int64_t h_ambient = 0;
  Scalar empirical_gamma;
  // Why the saturated outcome was reached.
  std::string reason;
  std::vector<TraceStep> trace;
};

DichotomyResult Decompose(const PointSet& s, const ThresholdConfig& cfg,
                          int workers = 1);

enum class DegeneracyVariant { kClassic, kFlatCollection };

struct DegenerateEntry {
  Flat hyperplane;
  std::int64_t points = 0;
  std::int64_t max_cover = 0;
  bool degenerate = false;
};

struct DegeneracyCensus {
  int k = 0;
  Scalar alpha;
  DegeneracyVariant variant = DegeneracyVariant::kClassic;
  std::vector<DegenerateEntry> entries;
  std::int64_t degenerate_count = 0;
  // degenerate_count / (n^d k^-(d+1) + n^(d-1) k^-(d-1))
  Scalar ratio;
};

// Upper limit on spanned sub-flats searched per hyperplane in the
// flat-collection variant.
inline constexpr size_t kMaxDegeneracySubflats = 2000;

DegeneracyCensus DegenerateHyperplaneCensus(const PointSet& s, int k,
                                            const Scalar& alpha,
                                            DegeneracyVariant variant,
                                            int workers = 1);

}  // namespace flatspan

#endif  // FLATSPAN_STRUCTURE_DETECT_H_

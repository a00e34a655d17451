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

#include "flatspan/structure_detect.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "flatspan/combinatorics.h"
#include "flatspan/error.h"

namespace flatspan {

namespace {

Scalar Power(const Scalar& base, int exp) {
  Scalar out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

const Scalar& Lookup(const std::map<int, Scalar>& table, int m,
                     const char* name) {
  auto it = table.find(m);
  if (it == table.end()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("no ") + name +
                                                 " configured for dimension " +
                                                 std::to_string(m));
  }
  return it->second;
}

std::vector<ProjPoint> PointsOn(const PointSet& s, const Flat& f) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& p : s.points()) {
    if (f.Contains(p)) out.push_back(p);
  }
  return out;
}

// The points of S on F together with the census of F's spanned hyperplanes.
struct FlatCensus {
  std::vector<ProjPoint> on;
  SpannedFlatSet hyperplanes;
};

FlatCensus CensusOf(const PointSet& s, const Flat& f, int workers) {
  if (f.ambient_dim() != s.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "flat and point set live in different spaces");
  }
  FlatCensus c;
  c.on = PointsOn(s, f);
  if (FlatThrough(c.on, s.ambient_dim()) != f) {
    throw Error(ErrorCode::kPrecondition,
                "the points of S on the flat do not span it");
  }
  c.hyperplanes =
      EnumerateSpannedFlats(c.on, s.ambient_dim(), f.proj_dim() - 1, workers);
  return c;
}

SaturationVerdict SaturationFrom(const FlatCensus& c, const Flat& f,
                                 const Scalar& gamma) {
  SaturationVerdict v;
  v.h = static_cast<std::int64_t>(c.hyperplanes.size());
  v.points = static_cast<std::int64_t>(c.on.size());
  v.threshold = gamma * Power(Scalar(v.points), f.proj_dim());
  v.saturated = Scalar(v.h) >= v.threshold;
  return v;
}

Coverage CoverageFrom(const FlatCensus& c) {
  size_t best = 0;
  for (size_t i = 1; i < c.hyperplanes.size(); ++i) {
    if (c.hyperplanes.multiplicity(i) > c.hyperplanes.multiplicity(best)) {
      best = i;
    }
  }
  return Coverage{c.hyperplanes.flats[best],
                  static_cast<std::int64_t>(c.hyperplanes.multiplicity(best))};
}

std::int64_t CountCovered(const PointSet& s, const std::vector<Flat>& flats) {
  std::int64_t covered = 0;
  for (const ProjPoint& p : s.points()) {
    covered += std::any_of(flats.begin(), flats.end(),
                           [&](const Flat& f) { return f.Contains(p); });
  }
  return covered;
}

}  // namespace

ThresholdConfig ThresholdConfig::Defaults(int d) {
  ThresholdConfig cfg;
  cfg.beta = Scalar(1, 2);
  cfg.rich_c = Scalar(1, 10);
  Scalar factorial = 1;
  for (int m = 1; m <= d; ++m) {
    factorial *= m;
    if (m >= 2) cfg.beck_beta[m] = Scalar(1, 2 * (m - 1));
    cfg.beck_gamma[m] = 1 / (2 * factorial);
    cfg.sat_gamma[m] = 1 / (2 * factorial);
  }
  return cfg;
}

const Scalar& ThresholdConfig::BeckBeta(int m) const {
  return Lookup(beck_beta, m, "beck_beta");
}
const Scalar& ThresholdConfig::BeckGamma(int m) const {
  return Lookup(beck_gamma, m, "beck_gamma");
}
const Scalar& ThresholdConfig::SatGamma(int m) const {
  return Lookup(sat_gamma, m, "sat_gamma");
}

void ThresholdConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent thresholds: " + what);
  };
  if (beta <= 0 || beta >= 1) fail("beta must lie in (0, 1)");
  if (rich_c <= 0 || rich_c > 1) fail("rich_c must lie in (0, 1]");
  for (const auto& [m, b] : beck_beta) {
    if (b <= 0 || b >= 1) fail("beck_beta(" + std::to_string(m) + ") not in (0, 1)");
  }
  for (const auto& [m, g] : beck_gamma) {
    if (g <= 0) fail("beck_gamma(" + std::to_string(m) + ") must be positive");
  }
  for (const auto& [m, g] : sat_gamma) {
    if (g <= 0) fail("sat_gamma(" + std::to_string(m) + ") must be positive");
  }
}

FlatCollection::FlatCollection(int ambient_dim, std::vector<Flat> flats)
    : ambient_dim_(ambient_dim), flats_(std::move(flats)) {
  for (const Flat& f : flats_) {
    if (f.ambient_dim() != ambient_dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "collection mixes ambient dimensions");
    }
    if (f.empty() || f.is_ambient()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "collection flats must be nonempty proper flats");
    }
  }
}

int FlatCollection::dim_sum() const {
  int sum = 0;
  for (const Flat& f : flats_) sum += f.proj_dim();
  return sum;
}

std::vector<int> FlatCollection::dims() const {
  std::vector<int> out;
  for (const Flat& f : flats_) out.push_back(f.proj_dim());
  return out;
}

Flat FlatCollection::Span(const std::vector<size_t>& subset) const {
  std::vector<Flat> chosen;
  for (size_t i : subset) chosen.push_back(flats_.at(i));
  return Join(chosen, ambient_dim_);
}

bool IsRich(const PointSet& s, const Flat& f, const Scalar& c) {
  const auto on = static_cast<std::int64_t>(s.MembersOf(f).size());
  return Scalar(on) >= c * static_cast<long>(s.size());
}

SaturationVerdict IsSaturated(const PointSet& s, const Flat& f,
                              const Scalar& gamma, int workers) {
  if (f.proj_dim() < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "saturation needs a flat of dimension >= 1");
  }
  return SaturationFrom(CensusOf(s, f, workers), f, gamma);
}

Coverage MaxCoverageHyperplane(const PointSet& s, const Flat& f,
                               int workers) {
  if (f.proj_dim() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "max coverage search needs a flat of dimension >= 2");
  }
  return CoverageFrom(CensusOf(s, f, workers));
}

DescentResult BeckDescent(const PointSet& s, const Flat& start,
                          const ThresholdConfig& cfg, int workers) {
  if (s.MembersOf(start).size() < 2) {
    throw Error(ErrorCode::kPrecondition,
                "descent needs at least two points on the start flat");
  }
  DescentResult result;
  Flat current = start;
  while (true) {
    const int m = current.proj_dim();
    FlatCensus census = CensusOf(s, current, workers);
    DescentStep step;
    step.flat = current;
    step.points = static_cast<std::int64_t>(census.on.size());
    step.saturation = SaturationFrom(census, current, cfg.SatGamma(m));
    if (m == 1 || step.saturation.saturated) {
      result.steps.push_back(std::move(step));
      result.flat = current;
      return result;
    }
    Coverage best = CoverageFrom(census);
    step.required_coverage = cfg.BeckBeta(m) * step.points;
    step.best_hyperplane = best;
    const bool heavy = Scalar(best.coverage) >= step.required_coverage;
    const std::int64_t h = step.saturation.h;
    const std::int64_t pts = step.points;
    result.steps.push_back(std::move(step));
    if (!heavy) {
      result.flat = current;
      result.saturated_by_beck = true;
      result.beck_count_holds =
          Scalar(h) >= cfg.BeckGamma(m) * Power(Scalar(pts), m);
      return result;
    }
    current = best.hyperplane;
  }
}

std::optional<std::vector<size_t>> FindViolatingSubset(
    const FlatCollection& c) {
  const std::vector<int> dims = c.dims();
  std::optional<std::vector<size_t>> found;
  for (size_t r = 2; r <= c.size() && !found; ++r) {
    ForEachCombination(c.size(), r, [&](const std::vector<size_t>& idx) {
      int sum = 0;
      for (size_t i : idx) sum += dims[i];
      if (c.Span(idx).proj_dim() < sum) {
        found = idx;
        return false;
      }
      return true;
    });
  }
  return found;
}

GoodCollectionVerdict CheckGoodCollection(const FlatCollection& c) {
  if (c.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty flat collection");
  }
  GoodCollectionVerdict v;
  const std::vector<int> dims = c.dims();
  for (size_t r = 2; r < c.size() && !v.bad_subset; ++r) {
    ForEachCombination(c.size(), r, [&](const std::vector<size_t>& idx) {
      int sum = 0;
      for (size_t i : idx) sum += dims[i];
      if (c.Span(idx).proj_dim() < sum) {
        v.bad_subset = idx;
        return false;
      }
      return true;
    });
  }
  std::vector<size_t> all(c.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  const int d = c.ambient_dim();
  v.good = !v.bad_subset && c.Span(all).proj_dim() == d && d <= c.dim_sum();
  return v;
}

FlatCollection MergeBadSubset(const FlatCollection& c,
                              const std::vector<size_t>& subset) {
  std::vector<size_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() ||
      std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.back() >= c.size()) {
    throw Error(ErrorCode::kInvalidArgument, "malformed merge subset");
  }
  int sum = 0;
  for (size_t i : sorted) sum += c[i].proj_dim();
  Flat merged = c.Span(sorted);
  if (merged.proj_dim() >= sum) {
    throw Error(ErrorCode::kPrecondition,
                "subset is not violating: merging would not lower the "
                "dimension sum");
  }
  if (merged.is_ambient()) {
    throw Error(ErrorCode::kPrecondition,
                "merging this subset would produce the whole space");
  }
  std::vector<Flat> kept;
  for (size_t i = 0; i < c.size(); ++i) {
    if (!std::binary_search(sorted.begin(), sorted.end(), i)) {
      kept.push_back(c[i]);
    }
  }
  kept.push_back(std::move(merged));
  FlatCollection out(c.ambient_dim(), std::move(kept));
  if (out.dim_sum() >= c.dim_sum()) {
    throw std::logic_error("merge did not decrease the dimension sum");
  }
  return out;
}

DichotomyResult Decompose(const PointSet& s, const ThresholdConfig& cfg,
                          int workers) {
  cfg.Validate();
  const int d = s.ambient_dim();
  const auto n = static_cast<std::int64_t>(s.size());
  if (n < d + 1) {
    throw Error(ErrorCode::kPrecondition,
                "decomposition needs at least d + 1 points");
  }
  DichotomyResult result;
  result.n = n;
  std::vector<Flat> flats;

  auto saturated = [&](std::string reason) {
    result.outcome = Outcome::kSaturated;
    result.reason = std::move(reason);
    result.h_ambient = HyperplaneCount(s, Flat::Ambient(d), workers);
    result.empirical_gamma = Scalar(result.h_ambient) / Power(Scalar(n), d);
    result.collection = FlatCollection(d, flats);
    result.covered = CountCovered(s, flats);
    return result;
  };

  while (true) {
    std::vector<size_t> uncovered;
    for (size_t i = 0; i < s.size(); ++i) {
      bool on = std::any_of(flats.begin(), flats.end(),
                            [&](const Flat& f) { return f.Contains(s[i]); });
      if (!on) uncovered.push_back(i);
    }
    const int sum_before = FlatCollection(d, flats).dim_sum();

    Flat added;
    TraceStep add;
    add.kind = StepKind::kAdd;
    if (uncovered.size() == 1) {
      // A lone leftover point is covered by its heaviest line through S.
      const ProjPoint& p = s[uncovered[0]];
      std::int64_t best = -1;
      for (size_t i = 0; i < s.size(); ++i) {
        if (i == uncovered[0]) continue;
        Flat line = Join(Flat::Of(p), s[i]);
        auto on = static_cast<std::int64_t>(s.MembersOf(line).size());
        if (on > best || (on == best && line < added)) {
          best = on;
          added = line;
        }
      }
    } else {
      PointSet rest = s.Subset(uncovered);
      Flat start = FlatThrough(rest.points(), d);
      DescentResult descent = BeckDescent(rest, start, cfg, workers);
      added = descent.flat;
      TraceStep step;
      step.kind = StepKind::kDescent;
      step.dim_sum_before = step.dim_sum_after = sum_before;
      step.descent = std::move(descent);
      result.trace.push_back(std::move(step));
      if (added.is_ambient()) return saturated("ambient space saturated");
    }
    flats.push_back(added);
    add.dim_sum_before = sum_before;
    add.dim_sum_after = sum_before + added.proj_dim();
    add.covered = CountCovered(s, flats);
    result.trace.push_back(std::move(add));

    while (auto subset = FindViolatingSubset(FlatCollection(d, flats))) {
      FlatCollection current(d, flats);
      if (current.Span(*subset).is_ambient()) {
        // A smallest violating subset spanning the space is itself good.
        std::vector<Flat> kept;
        for (size_t i : *subset) kept.push_back(flats[i]);
        TraceStep restrict;
        restrict.kind = StepKind::kRestrict;
        restrict.subset = *subset;
        restrict.dim_sum_before = current.dim_sum();
        flats = std::move(kept);
        restrict.dim_sum_after = FlatCollection(d, flats).dim_sum();
        restrict.covered = CountCovered(s, flats);
        result.trace.push_back(std::move(restrict));
        if (!CheckGoodCollection(FlatCollection(d, flats)).good) {
          throw std::logic_error("restricted collection is not good");
        }
        return saturated("good sub-collection");
      }
      FlatCollection merged = MergeBadSubset(current, *subset);
      TraceStep merge;
      merge.kind = StepKind::kMerge;
      merge.subset = *subset;
      merge.dim_sum_before = current.dim_sum();
      merge.dim_sum_after = merged.dim_sum();
      flats = merged.flats();
      merge.covered = CountCovered(s, flats);
      result.trace.push_back(std::move(merge));
    }

    FlatCollection current(d, flats);
    if (current.dim_sum() >= d) {
      if (!CheckGoodCollection(current).good) {
        throw std::logic_error("merged collection with dim sum >= d not good");
      }
      return saturated("good collection");
    }
    const std::int64_t covered = CountCovered(s, flats);
    if (Scalar(covered) >= cfg.beta * n || covered == n) {
      result.outcome = Outcome::kCluster;
      result.collection = current;
      result.covered = covered;
      return result;
    }
  }
}

DegeneracyCensus DegenerateHyperplaneCensus(const PointSet& s, int k,
                                            const Scalar& alpha,
                                            DegeneracyVariant variant,
                                            int workers) {
  const int d = s.ambient_dim();
  const auto n = static_cast<std::int64_t>(s.size());
  if (k < 2 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "richness k must lie in [2, n]");
  }
  if (alpha <= 0 || alpha > 1) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1]");
  }
  DegeneracyCensus out;
  out.k = k;
  out.alpha = alpha;
  out.variant = variant;
  const int r = d - 1;
  SpannedFlatSet hyper = SpannedFlats(s, r, workers);
  for (size_t h = 0; h < hyper.size(); ++h) {
    if (static_cast<int>(hyper.multiplicity(h)) < k) continue;
    PointSet on = s.Subset(hyper.members[h]);
    DegenerateEntry e;
    e.hyperplane = hyper.flats[h];
    e.points = static_cast<std::int64_t>(on.size());
    if (variant == DegeneracyVariant::kClassic) {
      SpannedFlatSet sub = EnumerateSpannedFlats(on.points(), d, r - 1, workers);
      for (size_t i = 0; i < sub.size(); ++i) {
        e.max_cover = std::max<std::int64_t>(e.max_cover, sub.multiplicity(i));
      }
    } else {
      // Collections of spanned sub-flats of dimension >= 1 with dimension
      // sum at most r - 1, searched exhaustively.
      std::vector<SpannedFlatSet> levels;
      size_t total = 0;
      for (int j = 1; j <= r - 1; ++j) {
        levels.push_back(EnumerateSpannedFlats(on.points(), d, j, workers));
        total += levels.back().size();
      }
      if (total > kMaxDegeneracySubflats) {
        throw Error(ErrorCode::kBudgetExhausted,
                    "flat-collection degeneracy search over " +
                        std::to_string(total) + " sub-flats exceeds the cap of " +
                        std::to_string(kMaxDegeneracySubflats));
      }
      struct Candidate {
        int dim;
        const std::vector<size_t>* members;
      };
      std::vector<Candidate> candidates;
      for (const auto& level : levels) {
        for (const auto& m : level.members) candidates.push_back({level.k, &m});
      }
      std::vector<int> hits(on.size(), 0);
      std::int64_t covered = 0;
      auto search = [&](auto&& self, size_t from, int budget) -> void {
        e.max_cover = std::max(e.max_cover, covered);
        for (size_t c = from; c < candidates.size(); ++c) {
          if (candidates[c].dim > budget) continue;
          for (size_t p : *candidates[c].members) covered += (hits[p]++ == 0);
          self(self, c + 1, budget - candidates[c].dim);
          for (size_t p : *candidates[c].members) covered -= (--hits[p] == 0);
        }
      };
      search(search, 0, r - 1);
    }
    e.degenerate = Scalar(e.max_cover) <= alpha * e.points;
    out.degenerate_count += e.degenerate;
    out.entries.push_back(std::move(e));
  }
  const Scalar nn(n), kk(k);
  Scalar scale = Power(nn, d) / Power(kk, d + 1) + Power(nn, d - 1) / Power(kk, d - 1);
  out.ratio = Scalar(out.degenerate_count) / scale;
  return out;
}

}  // namespace flatspan

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

#include "flatspan/span_enum.h"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>

#include "flatspan/combinatorics.h"
#include "flatspan/error.h"
#include "flatspan/parallel.h"

namespace flatspan {

std::map<size_t, size_t> SpannedFlatSet::MultiplicityHistogram() const {
  std::map<size_t, size_t> hist;
  for (const auto& m : members) ++hist[m.size()];
  return hist;
}

SpannedFlatSet EnumerateSpannedFlats(std::span<const ProjPoint> points,
                                     int ambient_dim, int k, int workers) {
  if (k < 0 || k > ambient_dim) {
    throw Error(ErrorCode::kInvalidArgument,
                "flat dimension " + std::to_string(k) + " outside [0, " +
                    std::to_string(ambient_dim) + "]");
  }
  workers = std::max(workers, 1);
  SpannedFlatSet out;
  out.k = k;
  const size_t n = points.size();
  const size_t r = static_cast<size_t>(k) + 1;
  if (n < r) return out;

  std::vector<std::set<Flat>> found(workers);
  RunWorkers(workers, [&](int w) {
    std::uint64_t counter = 0;
    std::vector<Vec> gens(r);
    ForEachCombination(n, r, [&](const std::vector<size_t>& idx) {
      if (counter++ % workers != static_cast<std::uint64_t>(w)) return true;
      for (size_t i = 0; i < r; ++i) gens[i] = points[idx[i]].coords();
      Flat f = CanonicalFlat(ambient_dim, gens);
      if (f.proj_dim() == k) found[w].insert(std::move(f));
      return true;
    });
  });
  std::set<Flat> merged;
  for (auto& part : found) merged.merge(part);
  out.flats.assign(std::make_move_iterator(merged.begin()),
                   std::make_move_iterator(merged.end()));

  out.members.resize(out.flats.size());
  RunWorkers(workers, [&](int w) {
    for (size_t i = w; i < out.flats.size(); i += workers) {
      for (size_t p = 0; p < n; ++p) {
        if (out.flats[i].Contains(points[p])) out.members[i].push_back(p);
      }
    }
  });
  return out;
}

SpannedFlatSet SpannedFlats(const PointSet& s, int k, int workers) {
  if (k < 0 || k > s.ambient_dim() - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "census dimension " + std::to_string(k) +
                    " outside [0, d-1] for d = " +
                    std::to_string(s.ambient_dim()));
  }
  return EnumerateSpannedFlats(s.points(), s.ambient_dim(), k, workers);
}

namespace {

std::vector<ProjPoint> PointsOn(const PointSet& s, const Flat& f) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& p : s.points()) {
    if (f.Contains(p)) out.push_back(p);
  }
  return out;
}

SpannedFlatSet HyperplanesOf(const PointSet& s, const Flat& f, int workers) {
  if (f.ambient_dim() != s.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "flat and point set live in different spaces");
  }
  if (f.proj_dim() < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "hyperplanes are only defined inside flats of dimension >= 1");
  }
  std::vector<ProjPoint> on = PointsOn(s, f);
  return EnumerateSpannedFlats(on, s.ambient_dim(), f.proj_dim() - 1,
                               workers);
}

std::int64_t IntPow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::int64_t HyperplaneCount(const PointSet& s, const Flat& f, int workers) {
  return static_cast<std::int64_t>(HyperplanesOf(s, f, workers).size());
}

std::int64_t HyperplanesThroughPoint(const SpannedFlatSet& hyperplanes_of_f,
                                     const ProjPoint& q) {
  return std::count_if(hyperplanes_of_f.flats.begin(),
                       hyperplanes_of_f.flats.end(),
                       [&](const Flat& h) { return h.Contains(q); });
}

std::int64_t HyperplanesThroughPoint(const PointSet& s, const Flat& f,
                                     const ProjPoint& q, int workers) {
  if (f.proj_dim() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "pencil counts need a flat of dimension >= 2");
  }
  if (!f.Contains(q)) {
    throw Error(ErrorCode::kPrecondition, "pencil point is not on the flat");
  }
  return HyperplanesThroughPoint(HyperplanesOf(s, f, workers), q);
}

IncidenceCensus PairPlaneCensus(const PointSet& s, const Flat& p,
                                int workers) {
  const int d = s.ambient_dim();
  if (p.ambient_dim() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "plane and point set live in different spaces");
  }
  if (p.proj_dim() != d - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "pair census needs a hyperplane of the ambient space");
  }
  std::vector<ProjPoint> off;
  for (const ProjPoint& q : s.points()) {
    if (!p.Contains(q)) off.push_back(q);
  }
  if (off.empty()) {
    throw Error(ErrorCode::kPrecondition,
                "every point lies on the hyperplane; nothing to pair");
  }
  SpannedFlatSet inner = HyperplanesOf(s, p, workers);

  IncidenceCensus census;
  census.x = static_cast<std::int64_t>(off.size());
  census.n = static_cast<std::int64_t>(s.size());
  census.h_p = static_cast<std::int64_t>(inner.size());

  std::set<Flat> family;
  for (const Flat& h : inner.flats) {
    for (const ProjPoint& q : off) {
      family.insert(Join(h, q));
      ++census.pair_count;
    }
  }
  census.family.assign(family.begin(), family.end());
  census.family_size = static_cast<std::int64_t>(census.family.size());
  for (const Flat& member : census.family) {
    std::int64_t a = std::count_if(off.begin(), off.end(), [&](const auto& q) {
      return member.Contains(q);
    });
    census.a.push_back(a);
    census.sum_a += a;
    census.j += a * (a - 1) / 2;
  }
  census.j_bound = census.x * census.x * IntPow(census.n, d - 2);

  // Each (q, h) pair determines <h, q> and is recovered from it as
  // (q, <h, q> meet P), so the two counts agree exactly.
  if (census.sum_a != census.pair_count) {
    throw std::logic_error("pair census: sum of a_i differs from |X| H_S(P)");
  }
  if (census.j > census.j_bound) {
    throw std::logic_error("pair census: J exceeds x^2 n^(d-2)");
  }
  return census;
}

}  // namespace flatspan

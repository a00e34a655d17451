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

#ifndef FLATSPAN_SPAN_ENUM_H_
#define FLATSPAN_SPAN_ENUM_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "flatspan/geom_core.h"

namespace flatspan {

// All k-flats spanned by a point set, in canonical flat order.
struct SpannedFlatSet {
  int k = 0;
  std::vector<Flat> flats;
  // members[i] holds the indices of the points on flats[i], increasing.
  std::vector<std::vector<size_t>> members;

  size_t size() const { return flats.size(); }
  size_t multiplicity(size_t i) const { return members[i].size(); }
  // multiplicity -> number of flats with that multiplicity.
  std::map<size_t, size_t> MultiplicityHistogram() const;
};

// k-flats containing k+1 points of `points` with independent lifts. Works
// in any ambient space and for any 0 <= k <= d. The enumeration splits the
// (k+1)-subsets over `workers` threads; output does not depend on it.
SpannedFlatSet EnumerateSpannedFlats(std::span<const ProjPoint> points,
                                     int ambient_dim, int k, int workers = 1);

// Same, restricted to 0 <= k <= d-1 as a census of S.
SpannedFlatSet SpannedFlats(const PointSet& s, int k, int workers = 1);

// H_S(F): (dim F - 1)-flats of F spanned by S meet F. For a line this is
// the number of points of S on it.
std::int64_t HyperplaneCount(const PointSet& s, const Flat& f,
                             int workers = 1);

// Spanned hyperplanes of F (with respect to S meet F) passing through q.
std::int64_t HyperplanesThroughPoint(const PointSet& s, const Flat& f,
                                     const ProjPoint& q, int workers = 1);
// Variant over a precomputed census of the hyperplanes of F.
std::int64_t HyperplanesThroughPoint(const SpannedFlatSet& hyperplanes_of_f,
                                     const ProjPoint& q);

// Pairing of the points off a hyperplane P with the spanned hyperplanes of P.
struct IncidenceCensus {
  std::int64_t x = 0;               // |S \ P|
  std::int64_t n = 0;               // |S|
  std::int64_t h_p = 0;             // H_S(P)
  std::int64_t family_size = 0;     // L
  std::vector<std::int64_t> a;      // |P_i meet X| per family member
  std::int64_t sum_a = 0;           // sum of a_i
  std::int64_t pair_count = 0;      // |X| * H_S(P), counted directly
  std::int64_t j = 0;               // sum of C(a_i, 2)
  std::int64_t j_bound = 0;         // x^2 n^(d-2)
  std::vector<Flat> family;
};

IncidenceCensus PairPlaneCensus(const PointSet& s, const Flat& p,
                                int workers = 1);

}  // namespace flatspan

#endif  // FLATSPAN_SPAN_ENUM_H_

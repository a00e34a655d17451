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

// Shared fixtures and generators for the unit tests.

#ifndef FLATSPAN_TESTS_TEST_UTIL_H_
#define FLATSPAN_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "flatspan/geom_core.h"

namespace flatspan::testing {

inline ProjPoint Aff(std::initializer_list<Scalar> coords) {
  Vec v(coords);
  return EmbedAffine(v);
}

inline ProjPoint Hom(std::initializer_list<Scalar> coords) {
  return ProjPoint(Vec(coords));
}

inline PointSet Affine(int d, const std::vector<std::vector<long>>& rows,
                       std::string label = "") {
  std::vector<ProjPoint> pts;
  for (const auto& r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    pts.push_back(EmbedAffine(v));
  }
  return PointSet(d, std::move(pts), std::move(label));
}

inline Flat Through(std::initializer_list<ProjPoint> points) {
  std::vector<ProjPoint> pts(points);
  return FlatThrough(pts, pts.front().ambient_dim());
}

inline Scalar RandomRational(std::mt19937_64& rng, long range, long max_den) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  Scalar out(num(rng), den(rng));
  out.canonicalize();
  return out;
}

inline Vec RandomVec(std::mt19937_64& rng, int len, long range,
                     long max_den = 1) {
  Vec v;
  for (int i = 0; i < len; ++i) v.push_back(RandomRational(rng, range, max_den));
  return v;
}

// Random projective k-flat of RP^d (k = -1 gives the empty flat).
inline Flat RandomFlat(std::mt19937_64& rng, int d, int k) {
  while (true) {
    std::vector<Vec> gens;
    for (int i = 0; i <= k; ++i) gens.push_back(RandomVec(rng, d + 1, 3));
    Flat f = CanonicalFlat(d, gens);
    if (f.proj_dim() == k) return f;
  }
}

// n distinct affine points with integer coordinates in [-range, range];
// small ranges produce many collinear and coplanar coincidences.
inline PointSet RandomLatticeSet(std::mt19937_64& rng, int d, int n,
                                 long range) {
  long cells = 1;
  for (int i = 0; i < d; ++i) cells *= 2 * range + 1;
  if (cells < n) range = n;
  std::vector<ProjPoint> pts;
  std::uniform_int_distribution<long> coord(-range, range);
  while (static_cast<int>(pts.size()) < n) {
    Vec v;
    for (int i = 0; i < d; ++i) v.emplace_back(coord(rng));
    ProjPoint p = EmbedAffine(v);
    bool fresh = true;
    for (const auto& q : pts) fresh = fresh && !(q == p);
    if (fresh) pts.push_back(p);
  }
  return PointSet(d, std::move(pts));
}

}  // namespace flatspan::testing

#endif  // FLATSPAN_TESTS_TEST_UTIL_H_

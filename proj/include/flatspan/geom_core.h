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

// Exact projective geometry over the rationals. Points of RP^d are stored as
// canonical homogeneous vectors and flats as reduced row-echelon bases of
// their linear lifts, so equality of flats is equality of bases.

#ifndef FLATSPAN_GEOM_CORE_H_
#define FLATSPAN_GEOM_CORE_H_

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatspan {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

// "p/q", or "p" when q == 1.
std::string ScalarToString(const Scalar& value);
// Accepts "p", "p/q" and "-p/q"; the result is in lowest terms.
Scalar ParseScalar(std::string_view text);

// Orders two rationals by their reduced (numerator, denominator) pairs. This
// is not the numeric order; it only has to be total and deterministic.
int CompareFractionPair(const Scalar& a, const Scalar& b);
int CompareVectors(const Vec& a, const Vec& b);

// Reduced row-echelon form of `rows` with zero rows dropped. `pivots`, when
// given, receives the leading column of each returned row.
std::vector<Vec> ReducedRowEchelon(std::vector<Vec> rows,
                                   std::vector<int>* pivots = nullptr);
size_t Rank(std::vector<Vec> rows);
// Basis of {y : <row, y> = 0 for every row} in `width` coordinates.
std::vector<Vec> NullSpace(const std::vector<Vec>& rows, size_t width);

class ProjPoint {
 public:
  // Rescales so that the first nonzero coordinate is 1. Throws on the zero
  // vector or on fewer than 3 coordinates.
  explicit ProjPoint(Vec coords);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }
  bool at_infinity() const { return coords_[0] == 0; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.coords_ == b.coords_;
  }
  friend std::strong_ordering operator<=>(const ProjPoint& a,
                                          const ProjPoint& b);

 private:
  Vec coords_;
};

// Affine chart x -> (1 : x_1 : ... : x_d).
ProjPoint EmbedAffine(std::span<const Scalar> coords);

class Flat {
 public:
  // The empty flat of RP^0; a placeholder until assigned.
  Flat() = default;
  static Flat Empty(int ambient_dim);
  static Flat Ambient(int ambient_dim);
  static Flat Of(const ProjPoint& point);

  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  int proj_dim() const { return static_cast<int>(basis_.size()) - 1; }
  int ambient_dim() const { return ambient_dim_; }
  bool empty() const { return basis_.empty(); }
  bool is_ambient() const { return proj_dim() == ambient_dim_; }

  bool Contains(const Vec& v) const;
  bool Contains(const ProjPoint& p) const { return Contains(p.coords()); }
  bool Contains(const Flat& other) const;

  friend bool operator==(const Flat& a, const Flat& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }
  // (ambient_dim, proj_dim, flattened basis by fraction pairs).
  friend std::strong_ordering operator<=>(const Flat& a, const Flat& b);

 private:
  friend Flat CanonicalFlat(int ambient_dim, std::vector<Vec> generators);
  Flat(int ambient_dim, std::vector<Vec> rows, std::vector<int> pivots)
      : ambient_dim_(ambient_dim),
        basis_(std::move(rows)),
        pivots_(std::move(pivots)) {}

  int ambient_dim_ = 0;
  std::vector<Vec> basis_;
  std::vector<int> pivots_;
};

// Flat whose lift is the span of `generators`. Every generator must have
// ambient_dim + 1 coordinates.
Flat CanonicalFlat(int ambient_dim, std::vector<Vec> generators);
Flat FlatThrough(std::span<const ProjPoint> points, int ambient_dim);

Flat Join(const Flat& a, const Flat& b);
Flat Join(std::span<const Flat> flats, int ambient_dim);
Flat Join(const Flat& a, const ProjPoint& p);
Flat Meet(const Flat& a, const Flat& b);

struct FlatRelation {
  bool contains = false;  // one flat contains the other
  bool a_in_b = false;
  bool b_in_a = false;
  bool equal = false;
  bool disjoint = false;
  int dim_a = -1;
  int dim_b = -1;
  int dim_join = -1;
  int dim_meet = -1;
};

FlatRelation Relate(const Flat& a, const Flat& b);

// Central projection from `center` onto `target`: x -> <center, x> meet
// target. Requires disjoint center and target, x in their join, x not in
// center.
ProjPoint ProjectThrough(const Flat& center, const Flat& target,
                         const ProjPoint& x);

class PointSet {
 public:
  PointSet() = default;
  // Throws kInvalidArgument on duplicates and kDimensionMismatch on mixed
  // ambient dimensions.
  PointSet(int ambient_dim, std::vector<ProjPoint> points,
           std::string label = "");

  const std::vector<ProjPoint>& points() const { return points_; }
  const ProjPoint& operator[](size_t i) const { return points_[i]; }
  size_t size() const { return points_.size(); }
  int ambient_dim() const { return ambient_dim_; }
  const std::string& label() const { return label_; }

  PointSet Subset(std::span<const size_t> indices) const;
  // Indices of the points lying on `flat`, increasing.
  std::vector<size_t> MembersOf(const Flat& flat) const;

 private:
  int ambient_dim_ = 0;
  std::vector<ProjPoint> points_;
  std::string label_;
};

}  // namespace flatspan

#endif  // FLATSPAN_GEOM_CORE_H_

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

#include "flatspan/geom_core.h"

#include <algorithm>
#include <utility>

#include "flatspan/error.h"

namespace flatspan {

std::string ScalarToString(const Scalar& value) { return value.get_str(10); }

Scalar ParseScalar(std::string_view text) {
  std::string s(text);
  auto bad = [&] {
    return Error(ErrorCode::kParse, "malformed rational '" + s + "'");
  };
  if (s.empty()) throw bad();
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  size_t slash = s.find('/');
  auto digits = [&](size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t j = from; j < to; ++j) {
      if (s[j] < '0' || s[j] > '9') return false;
    }
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(i, s.size())) throw bad();
  } else if (!digits(i, slash) || !digits(slash + 1, s.size())) {
    throw bad();
  }
  if (s[0] == '+') s.erase(0, 1);
  Scalar out;
  if (out.set_str(s, 10) != 0 || out.get_den() == 0) throw bad();
  out.canonicalize();
  return out;
}

int CompareFractionPair(const Scalar& a, const Scalar& b) {
  int c = cmp(a.get_num(), b.get_num());
  if (c != 0) return c < 0 ? -1 : 1;
  c = cmp(a.get_den(), b.get_den());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int CompareVectors(const Vec& a, const Vec& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = CompareFractionPair(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::vector<Vec> ReducedRowEchelon(std::vector<Vec> rows,
                                   std::vector<int>* pivots) {
  if (pivots != nullptr) pivots->clear();
  if (rows.empty()) return rows;
  const size_t width = rows[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < width && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    Vec& lead = rows[rank];
    if (lead[col] != 1) {
      Scalar inv = 1 / lead[col];
      for (size_t j = col; j < width; ++j) lead[j] *= inv;
    }
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Scalar factor = rows[r][col];
      for (size_t j = col; j < width; ++j) rows[r][j] -= factor * lead[j];
    }
    if (pivots != nullptr) pivots->push_back(static_cast<int>(col));
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

size_t Rank(std::vector<Vec> rows) {
  return ReducedRowEchelon(std::move(rows)).size();
}

std::vector<Vec> NullSpace(const std::vector<Vec>& rows, size_t width) {
  std::vector<int> pivots;
  std::vector<Vec> reduced = ReducedRowEchelon(rows, &pivots);
  std::vector<bool> is_pivot(width, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    Vec v(width, Scalar(0));
    v[free] = 1;
    for (size_t r = 0; r < reduced.size(); ++r) {
      v[pivots[r]] = -reduced[r][free];
    }
    out.push_back(std::move(v));
  }
  return out;
}

ProjPoint::ProjPoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "projective points need at least 3 homogeneous coordinates");
  }
  auto lead = std::find_if(coords_.begin(), coords_.end(),
                           [](const Scalar& s) { return s != 0; });
  if (lead == coords_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "the zero vector is not a projective point");
  }
  if (*lead != 1) {
    Scalar inv = 1 / *lead;
    for (auto it = lead; it != coords_.end(); ++it) *it *= inv;
  }
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  int c = CompareVectors(a.coords_, b.coords_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

ProjPoint EmbedAffine(std::span<const Scalar> coords) {
  if (coords.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine points need at least 2 coordinates");
  }
  Vec lifted;
  lifted.reserve(coords.size() + 1);
  lifted.emplace_back(1);
  lifted.insert(lifted.end(), coords.begin(), coords.end());
  return ProjPoint(std::move(lifted));
}

Flat Flat::Empty(int ambient_dim) { return Flat(ambient_dim, {}, {}); }

Flat Flat::Ambient(int ambient_dim) {
  std::vector<Vec> rows;
  std::vector<int> pivots;
  for (int i = 0; i <= ambient_dim; ++i) {
    Vec row(ambient_dim + 1, Scalar(0));
    row[i] = 1;
    rows.push_back(std::move(row));
    pivots.push_back(i);
  }
  return Flat(ambient_dim, std::move(rows), std::move(pivots));
}

Flat Flat::Of(const ProjPoint& point) {
  return CanonicalFlat(point.ambient_dim(), {point.coords()});
}

bool Flat::Contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_dim_ + 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector length does not match the flat's ambient space");
  }
  // Subtracting the pivot-weighted basis leaves zero iff v is in the span.
  Vec residual = v;
  for (size_t r = 0; r < basis_.size(); ++r) {
    const Scalar coeff = v[pivots_[r]];
    if (coeff == 0) continue;
    for (size_t j = pivots_[r]; j < residual.size(); ++j) {
      residual[j] -= coeff * basis_[r][j];
    }
  }
  return std::all_of(residual.begin(), residual.end(),
                     [](const Scalar& s) { return s == 0; });
}

bool Flat::Contains(const Flat& other) const {
  if (other.ambient_dim_ != ambient_dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "flats in different spaces");
  }
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vec& row) { return Contains(row); });
}

std::strong_ordering operator<=>(const Flat& a, const Flat& b) {
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.proj_dim() <=> b.proj_dim(); c != 0) return c;
  for (size_t r = 0; r < a.basis_.size(); ++r) {
    int c = CompareVectors(a.basis_[r], b.basis_[r]);
    if (c != 0) {
      return c < 0 ? std::strong_ordering::less
                   : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

Flat CanonicalFlat(int ambient_dim, std::vector<Vec> generators) {
  for (const Vec& g : generators) {
    if (static_cast<int>(g.size()) != ambient_dim + 1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "generator length " + std::to_string(g.size()) +
                      " does not match ambient dimension " +
                      std::to_string(ambient_dim));
    }
  }
  std::vector<int> pivots;
  std::vector<Vec> rows = ReducedRowEchelon(std::move(generators), &pivots);
  return Flat(ambient_dim, std::move(rows), std::move(pivots));
}

Flat FlatThrough(std::span<const ProjPoint> points, int ambient_dim) {
  std::vector<Vec> gens;
  gens.reserve(points.size());
  for (const ProjPoint& p : points) gens.push_back(p.coords());
  return CanonicalFlat(ambient_dim, std::move(gens));
}

namespace {

void RequireSameSpace(const Flat& a, const Flat& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "flats live in RP^" + std::to_string(a.ambient_dim()) +
                    " and RP^" + std::to_string(b.ambient_dim()));
  }
}

}  // namespace

Flat Join(const Flat& a, const Flat& b) {
  RequireSameSpace(a, b);
  if (a.Contains(b)) return a;
  if (b.Contains(a)) return b;
  std::vector<Vec> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return CanonicalFlat(a.ambient_dim(), std::move(gens));
}

Flat Join(std::span<const Flat> flats, int ambient_dim) {
  std::vector<Vec> gens;
  for (const Flat& f : flats) {
    if (f.ambient_dim() != ambient_dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "join arguments live in different spaces");
    }
    gens.insert(gens.end(), f.basis().begin(), f.basis().end());
  }
  return CanonicalFlat(ambient_dim, std::move(gens));
}

Flat Join(const Flat& a, const ProjPoint& p) {
  if (p.ambient_dim() != a.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point and flat live in different spaces");
  }
  if (a.Contains(p)) return a;
  std::vector<Vec> gens = a.basis();
  gens.push_back(p.coords());
  return CanonicalFlat(a.ambient_dim(), std::move(gens));
}

Flat Meet(const Flat& a, const Flat& b) {
  RequireSameSpace(a, b);
  const int d = a.ambient_dim();
  if (a.empty() || b.empty()) return Flat::Empty(d);
  if (a.Contains(b)) return b;
  if (b.Contains(a)) return a;
  // lift(A) meet lift(B) is the annihilator of annihilator(A) + annihilator(B).
  std::vector<Vec> dual = NullSpace(a.basis(), d + 1);
  std::vector<Vec> dual_b = NullSpace(b.basis(), d + 1);
  dual.insert(dual.end(), dual_b.begin(), dual_b.end());
  return CanonicalFlat(d, NullSpace(dual, d + 1));
}

FlatRelation Relate(const Flat& a, const Flat& b) {
  RequireSameSpace(a, b);
  FlatRelation rel;
  rel.a_in_b = b.Contains(a);
  rel.b_in_a = a.Contains(b);
  rel.contains = rel.a_in_b || rel.b_in_a;
  rel.equal = a == b;
  Flat joined = Join(a, b);
  Flat met = Meet(a, b);
  rel.disjoint = met.empty();
  rel.dim_a = a.proj_dim();
  rel.dim_b = b.proj_dim();
  rel.dim_join = joined.proj_dim();
  rel.dim_meet = met.proj_dim();
  return rel;
}

ProjPoint ProjectThrough(const Flat& center, const Flat& target,
                         const ProjPoint& x) {
  RequireSameSpace(center, target);
  const int d = center.ambient_dim();
  if (x.ambient_dim() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projected point lives in a different space");
  }
  if (!Meet(center, target).empty()) {
    throw Error(ErrorCode::kPrecondition,
                "projection center and target must be disjoint");
  }
  if (center.Contains(x)) {
    throw Error(ErrorCode::kPrecondition,
                "cannot project the center of projection");
  }
  // Solve x = sum c_i q_i + sum e_j f_j on the augmented system whose
  // columns are the center basis, the target basis, then x.
  const size_t nq = center.basis().size();
  const size_t nf = target.basis().size();
  std::vector<Vec> system(d + 1, Vec(nq + nf + 1));
  for (int row = 0; row <= d; ++row) {
    for (size_t i = 0; i < nq; ++i) system[row][i] = center.basis()[i][row];
    for (size_t j = 0; j < nf; ++j) {
      system[row][nq + j] = target.basis()[j][row];
    }
    system[row][nq + nf] = x.coords()[row];
  }
  std::vector<int> pivots;
  std::vector<Vec> reduced = ReducedRowEchelon(std::move(system), &pivots);
  if (!pivots.empty() && pivots.back() == static_cast<int>(nq + nf)) {
    throw Error(ErrorCode::kPrecondition,
                "point is outside the join of center and target");
  }
  Vec image(d + 1, Scalar(0));
  for (size_t r = 0; r < reduced.size(); ++r) {
    const size_t col = pivots[r];
    if (col < nq) continue;
    const Scalar& coeff = reduced[r][nq + nf];
    if (coeff == 0) continue;
    const Vec& f = target.basis()[col - nq];
    for (int i = 0; i <= d; ++i) image[i] += coeff * f[i];
  }
  return ProjPoint(std::move(image));
}

PointSet::PointSet(int ambient_dim, std::vector<ProjPoint> points,
                   std::string label)
    : ambient_dim_(ambient_dim),
      points_(std::move(points)),
      label_(std::move(label)) {
  if (ambient_dim_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ambient dimension must be >= 2");
  }
  std::vector<const ProjPoint*> sorted;
  sorted.reserve(points_.size());
  for (const ProjPoint& p : points_) {
    if (p.ambient_dim() != ambient_dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "point set mixes ambient dimensions");
    }
    sorted.push_back(&p);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const ProjPoint* a, const ProjPoint* b) { return *a < *b; });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate point in set");
    }
  }
}

PointSet PointSet::Subset(std::span<const size_t> indices) const {
  std::vector<ProjPoint> chosen;
  chosen.reserve(indices.size());
  for (size_t i : indices) chosen.push_back(points_.at(i));
  return PointSet(ambient_dim_, std::move(chosen), label_);
}

std::vector<size_t> PointSet::MembersOf(const Flat& flat) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (flat.Contains(points_[i])) out.push_back(i);
  }
  return out;
}

}  // namespace flatspan

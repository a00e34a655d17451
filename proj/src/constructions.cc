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

#include "flatspan/constructions.h"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "flatspan/combinatorics.h"
#include "flatspan/error.h"
#include "flatspan/span_enum.h"
#include "json.hpp"

namespace flatspan {

namespace {

using Json = nlohmann::json;

constexpr int kRejectionBudget = 10000;

Vec RandomIntVec(std::mt19937_64& rng, int len, long range) {
  std::uniform_int_distribution<long> coord(-range, range);
  Vec v;
  for (int i = 0; i < len; ++i) v.emplace_back(coord(rng));
  return v;
}

bool Independent(const std::vector<ProjPoint>& pts) {
  std::vector<Vec> rows;
  for (const ProjPoint& p : pts) rows.push_back(p.coords());
  return Rank(rows) == rows.size();
}

// True when no r of `existing` together with p are dependent.
bool GeneralWith(const std::vector<ProjPoint>& existing, size_t r,
                 const ProjPoint& p) {
  if (std::find(existing.begin(), existing.end(), p) != existing.end()) {
    return false;
  }
  bool ok = true;
  ForEachCombination(existing.size(), r, [&](const std::vector<size_t>& idx) {
    std::vector<ProjPoint> pts;
    for (size_t i : idx) pts.push_back(existing[i]);
    pts.push_back(p);
    ok = Independent(pts);
    return ok;
  });
  return ok;
}

GeneratedConfig GeneralPosition(const ConfigSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<ProjPoint> pts;
  for (int attempt = 0; static_cast<int>(pts.size()) < spec.n; ++attempt) {
    if (attempt >= kRejectionBudget) {
      throw Error(ErrorCode::kBudgetExhausted,
                  "general position sampling exhausted its budget");
    }
    ProjPoint p = EmbedAffine(RandomIntVec(rng, spec.d, 100));
    if (GeneralWith(pts, std::min<size_t>(spec.d, pts.size()), p)) {
      pts.push_back(p);
    }
  }
  return {PointSet(spec.d, std::move(pts), "general_position"), {}};
}

GeneratedConfig TwoSkewLines(const ConfigSpec& spec) {
  std::vector<ProjPoint> pts;
  const int first = (spec.n + 1) / 2;
  for (int t = 0; t < first; ++t) {
    pts.push_back(EmbedAffine(Vec{Scalar(t), 0, 0}));
  }
  for (int t = 0; t < spec.n - first; ++t) {
    pts.push_back(EmbedAffine(Vec{0, 1, Scalar(t)}));
  }
  Flat l1 = FlatThrough(std::span(pts).subspan(0, 2), 3);
  Flat l2 = FlatThrough(std::span(pts).subspan(first, 2), 3);
  if (!Meet(l1, l2).empty()) throw std::logic_error("lines are not skew");
  return {PointSet(3, std::move(pts), "two_skew_lines"), {l1, l2}};
}

GeneratedConfig SkewLineFamily(const ConfigSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<ProjPoint> pts;
  std::vector<Flat> lines;
  for (int i = 0; i < spec.lines; ++i) {
    Vec base, dir;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kRejectionBudget) {
        throw Error(ErrorCode::kBudgetExhausted,
                    "could not place pairwise skew lines");
      }
      if (spec.layout == "regulus") {
        // Rulings of z = xy: (a, t, a t).
        const Scalar a = i + 1;
        base = {a, 0, 0};
        dir = {0, 1, a};
      } else {
        base = RandomIntVec(rng, 3, 20);
        dir = RandomIntVec(rng, 3, 5);
        if (std::all_of(dir.begin(), dir.end(),
                        [](const Scalar& c) { return c == 0; })) {
          continue;
        }
      }
      Vec end = base;
      for (int j = 0; j < 3; ++j) end[j] += dir[j];
      std::vector<ProjPoint> ends = {EmbedAffine(base), EmbedAffine(end)};
      Flat line = FlatThrough(ends, 3);
      bool skew = std::all_of(lines.begin(), lines.end(), [&](const Flat& l) {
        return Meet(l, line).empty();
      });
      if (skew) {
        lines.push_back(line);
        break;
      }
      if (spec.layout == "regulus") {
        throw std::logic_error("regulus rulings are not skew");
      }
    }
    for (int t = 0; t < spec.points_per_line; ++t) {
      Vec v = base;
      for (int j = 0; j < 3; ++j) v[j] += dir[j] * t;
      pts.push_back(EmbedAffine(v));
    }
  }
  return {PointSet(3, std::move(pts), "skew_line_family"), std::move(lines)};
}

GeneratedConfig GridConfig(const ConfigSpec& spec) {
  std::vector<ProjPoint> pts;
  std::vector<long> idx(spec.d, 0);
  while (true) {
    Vec v;
    for (long c : idx) v.emplace_back(c);
    pts.push_back(EmbedAffine(v));
    int j = spec.d - 1;
    while (j >= 0 && ++idx[j] == spec.m) idx[j--] = 0;
    if (j < 0) break;
  }
  return {PointSet(spec.d, std::move(pts), "grid"), {}};
}

}  // namespace

const char* ConfigKindName(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::kGeneralPosition: return "general_position";
    case ConfigKind::kTwoSkewLines: return "two_skew_lines";
    case ConfigKind::kSkewLineFamily: return "skew_line_family";
    case ConfigKind::kFlatCluster: return "flat_cluster";
    case ConfigKind::kGrid: return "grid";
  }
  return "unknown";
}

ConfigKind ParseConfigKind(const std::string& name) {
  for (ConfigKind k : {ConfigKind::kGeneralPosition, ConfigKind::kTwoSkewLines,
                       ConfigKind::kSkewLineFamily, ConfigKind::kFlatCluster,
                       ConfigKind::kGrid}) {
    if (name == ConfigKindName(k)) return k;
  }
  throw Error(ErrorCode::kParse, "unknown configuration kind '" + name + "'");
}

void ConfigSpec::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  switch (kind) {
    case ConfigKind::kGeneralPosition:
      require(d >= 2, "general_position needs d >= 2");
      require(n >= 1, "general_position needs n >= 1");
      break;
    case ConfigKind::kTwoSkewLines:
      require(d == 3, "two_skew_lines lives in d = 3");
      require(n >= 4, "two_skew_lines needs n >= 4");
      break;
    case ConfigKind::kSkewLineFamily:
      require(d == 3, "skew_line_family lives in d = 3");
      require(lines >= 1, "skew_line_family needs lines >= 1");
      require(points_per_line >= 2, "skew_line_family needs points_per_line >= 2");
      require(layout == "regulus" || layout == "generic",
              "layout must be 'regulus' or 'generic'");
      break;
    case ConfigKind::kFlatCluster: {
      require(d >= 2, "flat_cluster needs d >= 2");
      require(!dims.empty() && dims.size() == counts.size(),
              "flat_cluster needs matching nonempty dims and counts");
      int sum = 0;
      for (size_t i = 0; i < dims.size(); ++i) {
        require(dims[i] >= 1 && dims[i] < d, "flat dims must lie in [1, d-1]");
        require(counts[i] >= dims[i] + 1,
                "each flat needs at least dim + 1 points");
        sum += dims[i];
      }
      require(sum < d, "flat_cluster needs the sum of dims below d");
      require(outliers >= 0, "outliers must be >= 0");
      break;
    }
    case ConfigKind::kGrid: {
      require(d >= 1 && m >= 2, "grid needs d >= 1 and m >= 2");
      double cells = 1;
      for (int i = 0; i < d; ++i) cells *= m;
      require(d >= 2 && cells <= 4096, "grid needs d >= 2 and at most 4096 points");
      break;
    }
  }
}

std::string ConfigSpec::ToJson() const {
  Json j;
  j["kind"] = ConfigKindName(kind);
  j["d"] = d;
  j["seed"] = seed;
  switch (kind) {
    case ConfigKind::kGeneralPosition:
    case ConfigKind::kTwoSkewLines:
      j["n"] = n;
      break;
    case ConfigKind::kSkewLineFamily:
      j["lines"] = lines;
      j["points_per_line"] = points_per_line;
      j["layout"] = layout;
      break;
    case ConfigKind::kFlatCluster:
      j["dims"] = dims;
      j["counts"] = counts;
      j["outliers"] = outliers;
      break;
    case ConfigKind::kGrid:
      j["m"] = m;
      break;
  }
  return j.dump();
}

ConfigSpec ConfigSpec::FromJson(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::kParse, "config must be an object with a 'kind'");
  }
  ConfigSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "kind") {
        spec.kind = ParseConfigKind(value.get<std::string>());
      } else if (key == "d") {
        spec.d = value.get<int>();
      } else if (key == "n") {
        spec.n = value.get<int>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "dims") {
        spec.dims = value.get<std::vector<int>>();
      } else if (key == "counts") {
        spec.counts = value.get<std::vector<int>>();
      } else if (key == "outliers") {
        spec.outliers = value.get<int>();
      } else if (key == "lines") {
        spec.lines = value.get<int>();
      } else if (key == "points_per_line") {
        spec.points_per_line = value.get<int>();
      } else if (key == "layout") {
        spec.layout = value.get<std::string>();
      } else if (key == "m") {
        spec.m = value.get<int>();
      } else {
        throw Error(ErrorCode::kParse, "unknown config field '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad config field: ") + e.what());
  }
  if (spec.kind == ConfigKind::kTwoSkewLines ||
      spec.kind == ConfigKind::kSkewLineFamily) {
    if (!j.contains("d")) spec.d = 3;
  }
  return spec;
}

GeneratedConfig Generate(const ConfigSpec& spec) {
  spec.Validate();
  switch (spec.kind) {
    case ConfigKind::kGeneralPosition: return GeneralPosition(spec);
    case ConfigKind::kTwoSkewLines: return TwoSkewLines(spec);
    case ConfigKind::kSkewLineFamily: return SkewLineFamily(spec);
    case ConfigKind::kFlatCluster: {
      GeneratedConfig g = GenerateFlatFamily(spec.d, spec.dims, spec.counts,
                                             spec.outliers, spec.seed);
      return g;
    }
    case ConfigKind::kGrid: return GridConfig(spec);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown configuration kind");
}

GeneratedConfig GenerateFlatFamily(int d, const std::vector<int>& dims,
                                   const std::vector<int>& counts,
                                   int outliers, std::uint64_t seed) {
  if (dims.size() != counts.size() || dims.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dims and counts must match");
  }
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || dims[i] >= d || counts[i] < dims[i] + 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "flat dims must lie in [1, d-1] with at least dim + 1 points");
    }
  }
  std::mt19937_64 rng(seed);
  const size_t k = dims.size();
  std::vector<std::vector<Vec>> gens(k);
  std::vector<Flat> flats;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kRejectionBudget) {
      throw Error(ErrorCode::kBudgetExhausted, "no generic flat family found");
    }
    flats.clear();
    for (size_t i = 0; i < k; ++i) {
      gens[i].clear();
      std::vector<ProjPoint> ends;
      for (int j = 0; j <= dims[i]; ++j) {
        gens[i].push_back(RandomIntVec(rng, d, 20));
        ends.push_back(EmbedAffine(gens[i].back()));
      }
      flats.push_back(FlatThrough(ends, d));
    }
    bool generic = true;
    for (size_t mask = 1; mask < (size_t{1} << k) && generic; ++mask) {
      std::vector<Flat> chosen;
      int expect = -1;
      for (size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) {
          chosen.push_back(flats[i]);
          expect += dims[i] + 1;
        }
      }
      generic = Join(chosen, d).proj_dim() == std::min(expect, d);
    }
    if (generic) break;
  }

  std::vector<ProjPoint> all;
  auto on_other = [&](const ProjPoint& p, size_t skip) {
    for (size_t i = 0; i < k; ++i) {
      if (i != skip && flats[i].Contains(p)) return true;
    }
    return false;
  };
  for (size_t i = 0; i < k; ++i) {
    // A line holds at most 2R + 1 lattice points of this form.
    const long reach = std::max<long>(6, counts[i]);
    std::uniform_int_distribution<long> weight(-reach, reach);
    std::vector<ProjPoint> mine;
    for (int attempt = 0; static_cast<int>(mine.size()) < counts[i]; ++attempt) {
      if (attempt >= kRejectionBudget) {
        throw Error(ErrorCode::kBudgetExhausted,
                    "could not place points in general position on a flat");
      }
      Vec v = gens[i][0];
      for (int j = 1; j <= dims[i]; ++j) {
        const long w = weight(rng);
        for (int c = 0; c < d; ++c) v[c] += w * (gens[i][j][c] - gens[i][0][c]);
      }
      ProjPoint p = EmbedAffine(v);
      if (on_other(p, i) ||
          std::find(all.begin(), all.end(), p) != all.end() ||
          !GeneralWith(mine, std::min<size_t>(dims[i], mine.size()), p)) {
        continue;
      }
      mine.push_back(p);
      all.push_back(p);
    }
  }
  for (int attempt = 0, placed = 0; placed < outliers; ++attempt) {
    if (attempt >= kRejectionBudget) {
      throw Error(ErrorCode::kBudgetExhausted, "could not place outliers");
    }
    ProjPoint p = EmbedAffine(RandomIntVec(rng, d, 20));
    if (on_other(p, k) || std::find(all.begin(), all.end(), p) != all.end()) {
      continue;
    }
    all.push_back(p);
    ++placed;
  }
  return {PointSet(d, std::move(all), "flat_cluster"), std::move(flats)};
}

namespace {

struct NiceSearch {
  const PointSet& s;
  NiceOptions opts;
  int d = 0;
  size_t k = 0;
  int x = 0;  // dimension sum minus d
  std::vector<size_t> indices;
  std::vector<Flat> f;
  std::vector<int> a;
  std::vector<std::vector<ProjPoint>> on;
  std::vector<SpannedFlatSet> census;

  NiceSearch(const PointSet& s, const FlatCollection& c,
             const NiceOptions& opts)
      : s(s), opts(opts), d(c.ambient_dim()) {
    if (c.ambient_dim() != s.ambient_dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "collection and point set live in different spaces");
    }
    if (c.size() == 0 || !CheckGoodCollection(c).good) {
      throw Error(ErrorCode::kPrecondition, "collection is not good");
    }
    for (size_t i = 0; i < c.size(); ++i) indices.push_back(i);
    int sum = c.dim_sum();
    for (bool dropped = true; sum > d && dropped;) {
      dropped = false;
      for (size_t j = 0; j < indices.size(); ++j) {
        const int rest = sum - c[indices[j]].proj_dim();
        if (rest >= d) {
          sum = rest;
          indices.erase(indices.begin() + j);
          dropped = true;
          break;
        }
      }
    }
    k = indices.size();
    x = sum - d;
    for (size_t i : indices) {
      f.push_back(c[i]);
      a.push_back(c[i].proj_dim());
      std::vector<ProjPoint> pts;
      for (const ProjPoint& p : s.points()) {
        if (c[i].Contains(p)) pts.push_back(p);
      }
      if (FlatThrough(pts, d) != c[i]) {
        throw Error(ErrorCode::kPrecondition,
                    "a collection flat is not spanned by its points of S");
      }
      on.push_back(std::move(pts));
    }
    if (!CheckGoodCollection(FlatCollection(d, f)).good) {
      throw std::logic_error("reduced collection is not good");
    }
    for (size_t i = 0; i < k; ++i) {
      if (x > 0 && i + 1 == k) {
        census.emplace_back();
      } else {
        census.push_back(EnumerateSpannedFlats(on[i], d, a[i] - 1));
      }
    }
  }

  Flat JoinOf(const std::vector<Flat>& p, size_t pmask, size_t fmask) const {
    std::vector<Flat> parts;
    for (size_t i = 0; i < k; ++i) {
      if (pmask >> i & 1) parts.push_back(p[i]);
      if (fmask >> i & 1) parts.push_back(f[i]);
    }
    return Join(parts, d);
  }

  int DimSum(size_t mask) const {
    int sum = 0;
    for (size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) sum += a[i];
    }
    return sum;
  }

  // Every (I, J) with I below s and J disjoint from I and s, as mask pairs.
  template <typename Fn>
  void ForEachPrefixPair(size_t s, bool include_s_in_i, Fn&& fn) const {
    const size_t full = (size_t{1} << k) - 1;
    const size_t below = (size_t{1} << s) - 1;
    const size_t i_pool = include_s_in_i ? (below | (size_t{1} << s)) : below;
    for (size_t imask = 0;; imask = (imask - i_pool) & i_pool) {
      if (!include_s_in_i || (imask >> s & 1)) {
        size_t j_pool = full & ~imask;
        if (!include_s_in_i) j_pool &= ~(size_t{1} << s);
        for (size_t jmask = 0;; jmask = (jmask - j_pool) & j_pool) {
          fn(imask, jmask);
          if (jmask == j_pool) break;
        }
      }
      if (imask == i_pool) break;
    }
  }

  std::vector<Flat> Admissible(size_t s, const std::vector<Flat>& p) const {
    std::set<Flat> blockers;
    ForEachPrefixPair(s, false, [&](size_t imask, size_t jmask) {
      Flat g = JoinOf(p, imask, jmask);
      if (!g.empty() && !Meet(g, f[s]).empty()) blockers.insert(g);
    });
    std::vector<std::pair<Flat, int>> rules;
    for (const Flat& g : blockers) rules.emplace_back(g, Join(f[s], g).proj_dim());
    std::vector<Flat> out;
    for (const Flat& cand : census[s].flats) {
      bool ok = std::all_of(rules.begin(), rules.end(), [&](const auto& r) {
        return Join(cand, r.first).proj_dim() == r.second;
      });
      if (ok) out.push_back(cand);
    }
    return out;
  }

  void CheckPrefix(size_t s, const std::vector<Flat>& p) const {
    ForEachPrefixPair(s, true, [&](size_t imask, size_t jmask) {
      const int dim = JoinOf(p, imask, jmask).proj_dim();
      const bool ok = jmask == 0
                          ? dim == DimSum(imask) - 1
                          : dim >= std::min(DimSum(imask | jmask), d);
      if (!ok) throw std::logic_error("prefix dimension condition violated");
    });
  }

  Flat ProjectionTarget(const Flat& q) const {
    std::mt19937_64 rng(opts.seed);
    const Flat& fk = f[k - 1];
    const int want = a[k - 1] - x;
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int trial = 0; trial < opts.target_trials; ++trial) {
      std::vector<Vec> gens;
      for (int g = 0; g <= want; ++g) {
        Vec v(d + 1, Scalar(0));
        for (const Vec& row : fk.basis()) {
          const long c = coef(rng);
          for (int j = 0; j <= d; ++j) v[j] += c * row[j];
        }
        gens.push_back(std::move(v));
      }
      Flat target = CanonicalFlat(d, gens);
      if (target.proj_dim() == want && Meet(target, q).empty()) return target;
    }
    throw Error(ErrorCode::kBudgetExhausted,
                "no projection target found within the trial budget");
  }

  // Candidates for the last flat when the dimension sum exceeds d.
  std::vector<Flat> ExcessCandidates(const std::vector<Flat>& p,
                                     ExcessData& data, Scalar& fraction) const {
    const Flat& fk = f[k - 1];
    const size_t prefix = (size_t{1} << (k - 1)) - 1;
    data.x = x;
    data.q = Meet(JoinOf(p, prefix, 0), fk);
    if (data.q.proj_dim() != x - 1) {
      throw std::logic_error("excess center has the wrong dimension");
    }
    data.q_i.clear();
    for (size_t i = 0; i + 1 < k; ++i) {
      Flat qi = Meet(JoinOf(p, prefix & ~(size_t{1} << i), size_t{1} << i), fk);
      if (qi.proj_dim() != x || !qi.Contains(data.q)) {
        throw std::logic_error("excess flat Q_i is malformed");
      }
      data.q_i.push_back(std::move(qi));
    }
    data.target = ProjectionTarget(data.q);
    data.q_images.clear();
    for (const Flat& qi : data.q_i) {
      Flat img = Meet(qi, data.target);
      if (img.proj_dim() != 0) throw std::logic_error("Q_i image is not a point");
      data.q_images.emplace_back(img.basis()[0]);
    }
    std::set<ProjPoint> images;
    for (const ProjPoint& pt : on[k - 1]) {
      if (!data.q.Contains(pt)) {
        images.insert(ProjectThrough(data.q, data.target, pt));
      }
    }
    std::vector<ProjPoint> image_list(images.begin(), images.end());
    SpannedFlatSet t_census =
        EnumerateSpannedFlats(image_list, d, a[k - 1] - x - 1);
    std::vector<Flat> out;
    for (const Flat& t : t_census.flats) {
      bool avoids = std::none_of(
          data.q_images.begin(), data.q_images.end(),
          [&](const ProjPoint& qp) { return t.Contains(qp); });
      if (avoids) out.push_back(Join(data.q, t));
    }
    fraction = t_census.size() == 0
                   ? Scalar(0)
                   : Scalar(static_cast<long>(out.size())) /
                         static_cast<long>(t_census.size());
    return out;
  }

  NiceSequence Finish(const std::vector<Flat>& p) const {
    NiceSequence seq;
    seq.indices = indices;
    seq.p = p;
    seq.h = Join(p, d);
    if (seq.h.proj_dim() != d - 1) {
      throw std::logic_error("nice sequence does not span a hyperplane");
    }
    std::vector<ProjPoint> on_h;
    for (const ProjPoint& pt : s.points()) {
      if (seq.h.Contains(pt)) on_h.push_back(pt);
    }
    if (FlatThrough(on_h, d) != seq.h) {
      throw std::logic_error("nice hyperplane is not spanned by S");
    }
    for (size_t i = 0; i < k; ++i) {
      if (Meet(seq.h, f[i]) != p[i]) {
        throw std::logic_error("nice hyperplane meets a flat wrongly");
      }
    }
    return seq;
  }

  // Depth-first search; `emit` returns false to stop.
  bool Visit(std::vector<Flat>& p, std::vector<Scalar>& fractions,
             std::optional<ExcessData>& excess,
             const std::function<bool(NiceSequence)>& emit) const {
    const size_t s = p.size();
    if (s == k) {
      NiceSequence seq = Finish(p);
      seq.excess = excess;
      seq.admissible_fraction = fractions;
      return emit(std::move(seq));
    }
    std::vector<Flat> candidates;
    Scalar fraction;
    if (x > 0 && s + 1 == k) {
      excess.emplace();
      candidates = ExcessCandidates(p, *excess, fraction);
    } else {
      candidates = Admissible(s, p);
      fraction = census[s].size() == 0
                     ? Scalar(0)
                     : Scalar(static_cast<long>(candidates.size())) /
                           static_cast<long>(census[s].size());
    }
    fractions.push_back(fraction);
    for (const Flat& cand : candidates) {
      p.push_back(cand);
      if (x == 0 || s + 1 < k) CheckPrefix(s, p);
      const bool more = Visit(p, fractions, excess, emit);
      p.pop_back();
      if (!more) {
        fractions.pop_back();
        return false;
      }
    }
    fractions.pop_back();
    return true;
  }

  void Run(const std::function<bool(NiceSequence)>& emit) const {
    std::vector<Flat> p;
    std::vector<Scalar> fractions;
    std::optional<ExcessData> excess;
    Visit(p, fractions, excess, emit);
  }
};

}  // namespace

NiceSequence BuildNiceSequence(const PointSet& s, const FlatCollection& c,
                               const std::set<Flat>& avoid,
                               const NiceOptions& opts) {
  NiceSearch search(s, c, opts);
  std::optional<NiceSequence> found;
  search.Run([&](NiceSequence seq) {
    if (avoid.count(seq.h)) return true;
    found = std::move(seq);
    return false;
  });
  if (!found) {
    throw Error(ErrorCode::kNotFound,
                "no admissible nice sequence: the choices are exhausted");
  }
  return *found;
}

std::vector<NiceSequence> EnumerateNiceSequences(const PointSet& s,
                                                 const FlatCollection& c,
                                                 std::int64_t budget,
                                                 const NiceOptions& opts) {
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  }
  NiceSearch search(s, c, opts);
  std::vector<NiceSequence> out;
  std::set<Flat> seen;
  search.Run([&](NiceSequence seq) {
    if (!seen.insert(seq.h).second) {
      throw std::logic_error("two nice sequences share a hyperplane");
    }
    out.push_back(std::move(seq));
    return static_cast<std::int64_t>(out.size()) < budget;
  });
  if (out.empty()) {
    throw Error(ErrorCode::kNotFound,
                "no admissible nice sequence: the choices are exhausted");
  }
  return out;
}

std::set<Flat> EnumerateNiceHyperplanes(const PointSet& s,
                                        const FlatCollection& c,
                                        std::int64_t budget,
                                        const NiceOptions& opts) {
  std::set<Flat> out;
  for (const NiceSequence& seq : EnumerateNiceSequences(s, c, budget, opts)) {
    out.insert(seq.h);
  }
  return out;
}

}  // namespace flatspan

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

// Acceptance suite: one [PASS]/[FAIL] line per criterion. The whole suite
// runs once with one enumeration worker and once with four; criterion 10
// compares the two report transcripts byte for byte.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "closure_oracle.h"
#include "flatspan/combinatorics.h"
#include "flatspan/constructions.h"
#include "flatspan/geom_core.h"
#include "flatspan/span_enum.h"
#include "flatspan/structure_detect.h"
#include "flatspan/verify_cli.h"
#include "test_util.h"

namespace flatspan {
namespace {

// Pinned tolerances.
constexpr double kOracleSeconds = 60.0;
constexpr double kMinCubicSlope = 2.7;
constexpr int kOracleSets = 200;
constexpr int kClusterConfigs = 100;

struct Verdict {
  bool pass = true;
  std::string summary;
};

struct Suite {
  int workers = 1;
  std::ostringstream log;  // deterministic transcript
  std::vector<PointSet> lemma_inputs;  // configs of criteria 2 to 5
  std::vector<std::function<void()>> late;

  void Note(const std::string& line) { log << line << "\n"; }
};

std::string Str(const Scalar& v) { return ScalarToString(v); }

std::string Fixed(double v, int digits = 3) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

std::set<std::vector<size_t>> LibraryFlats(const PointSet& s, int k, int w) {
  SpannedFlatSet census = SpannedFlats(s, k, w);
  return {census.members.begin(), census.members.end()};
}

std::set<std::vector<size_t>> OracleFlats(const PointSet& s, int k) {
  std::vector<std::vector<mpq_class>> coords;
  for (const ProjPoint& p : s.points()) coords.push_back(p.coords());
  return testing::ClosureOracle(coords).FlatsOfRank(k + 1);
}

Verdict OracleEquivalence(Suite& suite, double* seconds) {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0, comparisons = 0;
  std::int64_t flats = 0;
  for (int i = 0; i < kOracleSets; ++i) {
    std::mt19937_64 rng(1000 + i);
    const int d = 2 + i % 2;
    const int n = 4 + i % 7;
    PointSet s = testing::RandomLatticeSet(rng, d, n, 1 + (i / 2) % 2);
    for (int k = 0; k < d; ++k) {
      auto got = LibraryFlats(s, k, suite.workers);
      ++comparisons;
      flats += static_cast<std::int64_t>(got.size());
      if (got != OracleFlats(s, k)) ++mismatches;
    }
  }
  *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  suite.Note("c1 comparisons=" + std::to_string(comparisons) + " flats=" +
             std::to_string(flats) + " mismatches=" + std::to_string(mismatches));
  return {mismatches == 0 && *seconds < kOracleSeconds,
          std::to_string(kOracleSets) + " sets, " + std::to_string(comparisons) +
              " (set, k) censuses, " + std::to_string(mismatches) +
              " mismatches, " + Fixed(*seconds, 1) + " s (limit " +
              Fixed(kOracleSeconds, 0) + " s)"};
}

Verdict SkewLineCounts(Suite& suite) {
  bool pass = true;
  std::string detail;
  for (int n : {6, 8, 10, 14, 20}) {
    ConfigSpec spec;
    spec.kind = ConfigKind::kTwoSkewLines;
    spec.n = n;
    PointSet s = Generate(spec).points;
    SpannedFlatSet planes = SpannedFlats(s, 2, suite.workers);
    size_t best = 0;
    for (size_t i = 0; i < planes.size(); ++i) best = std::max(best, planes.multiplicity(i));
    const bool ok = static_cast<int>(planes.size()) == n &&
                    static_cast<int>(best) == n / 2 + 1;
    pass = pass && ok;
    detail += " n=" + std::to_string(n) + ":H=" + std::to_string(planes.size()) +
              ",max=" + std::to_string(best);
    suite.lemma_inputs.push_back(s);
  }
  suite.Note("c2" + detail);
  return {pass, "H_S = n and max plane coverage n/2+1 for" + detail};
}

Verdict GeneralPositionCounts(Suite& suite) {
  bool pass = true;
  int cases = 0;
  for (int d : {2, 3, 4}) {
    for (int n = 5; n <= 12; ++n) {
      if (Binomial(n, d) > 500) continue;
      ConfigSpec spec;
      spec.kind = ConfigKind::kGeneralPosition;
      spec.d = d;
      spec.n = n;
      spec.seed = 100 * d + n;
      PointSet s = Generate(spec).points;
      const std::int64_t h = HyperplaneCount(s, Flat::Ambient(d), suite.workers);
      const bool ok = h == static_cast<std::int64_t>(Binomial(n, d));
      pass = pass && ok;
      ++cases;
      suite.Note("c3 d=" + std::to_string(d) + " n=" + std::to_string(n) +
                 " H=" + std::to_string(h));
      suite.lemma_inputs.push_back(s);
    }
  }
  return {pass, std::to_string(cases) + " (n, d) cases with H_S = C(n, d)"};
}

Verdict GridCensus(Suite& suite) {
  ConfigSpec spec;
  spec.kind = ConfigKind::kGrid;
  spec.d = 2;
  spec.m = 3;
  PointSet plane = Generate(spec).points;
  SpannedFlatSet lines = SpannedFlats(plane, 1, suite.workers);
  const auto hist = lines.MultiplicityHistogram();
  const bool planar = lines.size() == 20 && hist.size() == 2 &&
                      hist.at(2) == 12 && hist.at(3) == 8;
  spec.d = 3;
  PointSet cube = Generate(spec).points;
  auto got = LibraryFlats(cube, 2, suite.workers);
  const bool spatial = got == OracleFlats(cube, 2);
  suite.Note("c4 lines=" + std::to_string(lines.size()) + " cube_planes=" +
             std::to_string(got.size()));
  suite.lemma_inputs.push_back(plane);
  suite.lemma_inputs.push_back(cube);
  return {planar && spatial, "3x3 grid: " + std::to_string(lines.size()) +
                                 " lines {2:" + std::to_string(hist.count(2) ? hist.at(2) : 0) +
                                 ", 3:" + std::to_string(hist.count(3) ? hist.at(3) : 0) +
                                 "}; 3x3x3 grid: " + std::to_string(got.size()) +
                                 " planes, oracle " + (spatial ? "agrees" : "DISAGREES")};
}

Verdict PropositionBound(Suite& suite) {
  const std::vector<std::vector<int>> patterns3 = {{2}, {1}, {1, 1}};
  const std::vector<std::vector<int>> patterns4 = {{3}, {2}, {1}, {2, 1}, {1, 1}, {1, 1, 1}};
  bool pass = true;
  Scalar worst = 0;
  for (int i = 0; i < kClusterConfigs; ++i) {
    const int d = 3 + i % 2;
    const auto& patterns = d == 3 ? patterns3 : patterns4;
    const std::vector<int>& dims = patterns[(i / 2) % patterns.size()];
    const int x = i % 5;
    std::mt19937_64 rng(5000 + i);
    std::vector<int> counts;
    int used = x;
    for (int a : dims) {
      counts.push_back(a + 1);
      used += a + 1;
    }
    for (size_t j = 0; used < 16; j = (j + 1) % counts.size()) {
      if (used > d && std::uniform_int_distribution<int>(0, 3)(rng) == 0) break;
      ++counts[j];
      ++used;
    }
    GeneratedConfig g = GenerateFlatFamily(d, dims, counts, x, 7000 + i);
    VerifyOptions opts;
    opts.bounds = {"prop_1_8"};
    opts.collection = FlatCollection(d, g.planted);
    opts.workers = suite.workers;
    BoundReport r = RunVerify(g.points, ThresholdConfig::Defaults(d), opts);
    const BoundEntry& e = r.entries.at(0);
    pass = pass && e.holds.value_or(false);
    worst = std::max(worst, Scalar(e.lhs / e.rhs));
    suite.Note("c5 i=" + std::to_string(i) + " d=" + std::to_string(d) +
               " n=" + std::to_string(g.points.size()) + " x=" + std::to_string(x) +
               " H=" + Str(e.lhs) + " rhs=" + Str(e.rhs));
    suite.lemma_inputs.push_back(g.points);
  }
  return {pass, std::to_string(kClusterConfigs) +
                    " flat clusters satisfy H_S <= (x+d) n^(d-1); max ratio " +
                    Str(worst) + " = " + Fixed(worst.get_d(), 4)};
}

Verdict PencilBound(Suite& suite) {
  bool pass = true;
  Scalar worst = 0;
  std::int64_t pairs = 0;
  for (const PointSet& s : suite.lemma_inputs) {
    VerifyOptions opts;
    opts.bounds = {"lemma_2_2"};
    opts.workers = suite.workers;
    BoundReport r = RunVerify(s, ThresholdConfig::Defaults(s.ambient_dim()), opts);
    const BoundEntry& e = r.entries.at(0);
    pass = pass && e.holds.value_or(false);
    worst = std::max(worst, e.lhs);
    pairs += std::stoll(e.inputs.at("pairs_checked"));
  }
  suite.Note("c6 configs=" + std::to_string(suite.lemma_inputs.size()) +
             " pairs=" + std::to_string(pairs) + " worst=" + Str(worst));
  return {pass, std::to_string(suite.lemma_inputs.size()) + " configs, " +
                    std::to_string(pairs) +
                    " (flat, point) pencils within |S meet P|^(dim P - 1); max ratio " +
                    Str(worst)};
}

double Slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

bool NiceClausesHold(const PointSet& s, const FlatCollection& c,
                     const NiceSequence& seq) {
  const int d = s.ambient_dim();
  if (seq.h.proj_dim() != d - 1) return false;
  std::vector<ProjPoint> on;
  for (const ProjPoint& p : s.points()) {
    if (seq.h.Contains(p)) on.push_back(p);
  }
  if (FlatThrough(on, d) != seq.h) return false;
  for (size_t j = 0; j < seq.p.size(); ++j) {
    if (Meet(seq.h, c[seq.indices[j]]) != seq.p[j]) return false;
  }
  return true;
}

struct NiceTally {
  std::int64_t sequences = 0;
  std::int64_t failures = 0;
};

NiceTally g_nice;  // shared between criteria 7 and 9

Verdict SkewLineFamily(Suite& suite) {
  bool pass = true;
  std::vector<double> xs, ys;
  std::string detail;
  auto run_layout = [&](const std::string& layout, bool record) {
    std::vector<double> lx, ly;
    for (int m = 3; m <= 8; ++m) {
      ConfigSpec spec;
      spec.kind = ConfigKind::kSkewLineFamily;
      spec.points_per_line = m;
      spec.layout = layout;
      spec.seed = 31 + m;
      GeneratedConfig g = Generate(spec);
      const std::int64_t h = HyperplaneCount(g.points, Flat::Ambient(3), suite.workers);
      if (m >= 4) {
        lx.push_back(std::log(static_cast<double>(m)));
        ly.push_back(std::log(static_cast<double>(h)));
      }
      if (!record) continue;
      FlatCollection c(3, g.planted);
      std::vector<NiceSequence> seqs = EnumerateNiceSequences(g.points, c, 1 << 20);
      std::set<Flat> distinct;
      for (const NiceSequence& seq : seqs) {
        distinct.insert(seq.h);
        ++g_nice.sequences;
        if (!NiceClausesHold(g.points, c, seq)) ++g_nice.failures;
      }
      const std::int64_t need = static_cast<std::int64_t>(m) * (m - 1) * (m - 2);
      const bool ok = distinct.size() == seqs.size() &&
                      static_cast<std::int64_t>(seqs.size()) >= need;
      pass = pass && ok;
      detail += " m=" + std::to_string(m) + ":" + std::to_string(seqs.size()) +
                "/" + std::to_string(need);
      suite.Note("c7 m=" + std::to_string(m) + " nice=" + std::to_string(seqs.size()) +
                 " H=" + std::to_string(h));
    }
    return Slope(lx, ly);
  };
  const double slope = run_layout("regulus", true);
  const double generic = run_layout("generic", false);
  suite.Note("c7 slope=" + Fixed(slope, 6) + " generic_slope=" + Fixed(generic, 6));
  pass = pass && slope >= kMinCubicSlope;
  return {pass, "nice planes vs m(m-1)(m-2):" + detail + "; log-log slope of H_S " +
                    Fixed(slope) + " (min " + Fixed(kMinCubicSlope, 1) +
                    "; generic-line layout, info only: " + Fixed(generic) + ")"};
}

ThresholdConfig DichotomyConfig() {
  ThresholdConfig cfg = ThresholdConfig::Defaults(3);
  cfg.beta = Scalar(4, 5);
  cfg.sat_gamma[2] = Scalar(1, 4);
  cfg.sat_gamma[3] = Scalar(1, 10);
  return cfg;
}

Verdict Dichotomy(Suite& suite) {
  const ThresholdConfig cfg = DichotomyConfig();
  bool pass = true;
  std::int64_t merges = 0;
  bool merges_ok = true;
  auto record = [&](const DichotomyResult& r) {
    for (const TraceStep& t : r.trace) {
      if (t.kind != StepKind::kMerge) continue;
      ++merges;
      merges_ok = merges_ok && t.dim_sum_after < t.dim_sum_before;
    }
  };
  std::string detail;
  // (a) planted clusters, n = 20.
  for (int seed = 0; seed < 5; ++seed) {
    for (const std::vector<int>& dims : {std::vector<int>{2}, std::vector<int>{1, 1}}) {
      std::vector<int> counts = dims.size() == 1 ? std::vector<int>{16} : std::vector<int>{8, 8};
      GeneratedConfig g = GenerateFlatFamily(3, dims, counts, 4, 900 + seed);
      DichotomyResult r = Decompose(g.points, cfg, suite.workers);
      record(r);
      const bool ok = r.outcome == Outcome::kCluster &&
                      Scalar(r.covered) >= cfg.beta * 20 && r.collection.dim_sum() < 3;
      pass = pass && ok;
      suite.Note("c8a seed=" + std::to_string(seed) + " dims=" + std::to_string(dims.size()) +
                 " outcome=" + (r.outcome == Outcome::kCluster ? "cluster" : "saturated") +
                 " covered=" + std::to_string(r.covered) +
                 " dim_sum=" + std::to_string(r.collection.dim_sum()));
    }
  }
  detail += "planted plane / skew-line clusters: " + std::string(pass ? "all Cluster" : "NOT all Cluster");
  // (b) general position.
  bool saturated = true;
  for (int n : {8, 12, 16, 20}) {
    ConfigSpec spec;
    spec.kind = ConfigKind::kGeneralPosition;
    spec.n = n;
    spec.seed = 300 + n;
    PointSet s = Generate(spec).points;
    DichotomyResult r = Decompose(s, cfg, suite.workers);
    record(r);
    const bool ok = r.outcome == Outcome::kSaturated &&
                    r.h_ambient == static_cast<std::int64_t>(Binomial(n, 3));
    saturated = saturated && ok;
    suite.Note("c8b n=" + std::to_string(n) + " H=" + std::to_string(r.h_ambient) +
               " gamma=" + Str(r.empirical_gamma));
  }
  pass = pass && saturated;
  detail += "; general position: " + std::string(saturated ? "all Saturated with C(n,3)" : "FAILED");
  // (c) merges: a heavy line inside a plane whose remaining points are
  // found later, plus random lattice sets.
  for (int line = 18; line <= 24; ++line) {
    for (int outlier = 0; outlier <= 1; ++outlier) {
      std::vector<ProjPoint> pts;
      for (int t = 1; t <= line; ++t) pts.push_back(EmbedAffine(Vec{Scalar(t), 0, 0}));
      for (int a = -3; a <= 2; ++a) {
        pts.push_back(EmbedAffine(Vec{Scalar(a), Scalar(a * a + 1), 0}));
      }
      if (outlier) pts.push_back(EmbedAffine(Vec{0, 0, 1}));
      ThresholdConfig c = ThresholdConfig::Defaults(3);
      c.beta = Scalar(9, 10);
      record(Decompose(PointSet(3, std::move(pts)), c, suite.workers));
    }
  }
  for (int i = 0; i < 120; ++i) {
    std::mt19937_64 rng(4000 + i);
    const int d = 3 + i % 2;
    PointSet s = testing::RandomLatticeSet(rng, d, 8 + i % 9, 1 + (i / 3) % 2);
    ThresholdConfig c = ThresholdConfig::Defaults(d);
    c.beta = Scalar(9, 10);
    record(Decompose(s, c, suite.workers));
  }
  pass = pass && merges_ok && merges > 0;
  suite.Note("c8c merges=" + std::to_string(merges));
  detail += "; " + std::to_string(merges) + " merge steps, all decreasing dim sum: " +
            (merges_ok ? "yes" : "NO");
  return {pass, detail};
}

Verdict NiceClauses(Suite& suite) {
  std::int64_t sequences = g_nice.sequences, failures = g_nice.failures;
  std::string detail;
  auto check = [&](const char* name, const GeneratedConfig& g, bool expect_excess) {
    FlatCollection c(g.points.ambient_dim(), g.planted);
    if (!CheckGoodCollection(c).good) {
      ++failures;
      detail += std::string(" ") + name + ": collection not good;";
      return;
    }
    std::vector<NiceSequence> seqs = EnumerateNiceSequences(g.points, c, 400);
    std::int64_t bad = 0;
    for (const NiceSequence& seq : seqs) {
      if (!NiceClausesHold(g.points, c, seq) ||
          seq.excess.has_value() != expect_excess) {
        ++bad;
      }
    }
    sequences += static_cast<std::int64_t>(seqs.size());
    failures += bad;
    detail += std::string(" ") + name + ": " + std::to_string(seqs.size()) + " sequences;";
    suite.Note(std::string("c9 ") + name + " sequences=" + std::to_string(seqs.size()) +
               " bad=" + std::to_string(bad));
  };
  check("line+plane+line in R^4", GenerateFlatFamily(4, {1, 2, 1}, {4, 5, 4}, 2, 21), false);
  check("three 2-flats in R^5 (sum 6)", GenerateFlatFamily(5, {2, 2, 2}, {4, 4, 4}, 0, 22), true);
  return {failures == 0 && sequences > 0,
          std::to_string(sequences) + " nice sequences (incl. criterion 7)," + detail +
              " clause failures " + std::to_string(failures)};
}

// CLI reports for a few generated inputs, to be compared across worker counts.
void CliReports(Suite& suite) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("flatspan_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "flatspan");
    args.push_back("--workers");
    args.push_back(std::to_string(suite.workers));
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = Dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    suite.log << "exit " << code << "\n" << out.str();
  };
  const std::vector<std::string> specs = {
      R"({"kind":"two_skew_lines","n":12})",
      R"({"kind":"skew_line_family","points_per_line":5})",
      R"({"kind":"flat_cluster","d":3,"dims":[2],"counts":[9],"outliers":2,"seed":3})",
      R"({"kind":"general_position","d":3,"n":11,"seed":8})"};
  for (size_t i = 0; i < specs.size(); ++i) {
    const std::string base = (dir / ("c" + std::to_string(i))).string();
    std::ofstream(base + ".json") << specs[i];
    std::vector<std::string> gen = {"gen", base + ".json", "-o", base + ".pts"};
    const bool planted = i < 3;
    if (planted) {
      gen.push_back("--collection-out");
      gen.push_back(base + ".flats");
    }
    run(gen);
    run({"count", base + ".pts"});
    run({"decompose", base + ".pts"});
    std::vector<std::string> verify = {"verify", base + ".pts", "--bounds", "all", "-k", "3,4"};
    if (planted) {
      verify.push_back("--collection");
      verify.push_back(base + ".flats");
    }
    run(verify);
  }
  std::filesystem::remove_all(dir);
}

struct Outcome10 {
  std::vector<Verdict> verdicts;
  std::string transcript;
  double oracle_seconds = 0;
};

Outcome10 RunSuite(int workers) {
  Suite suite;
  suite.workers = workers;
  g_nice = {};
  Outcome10 out;
  out.verdicts.push_back(OracleEquivalence(suite, &out.oracle_seconds));
  out.verdicts.push_back(SkewLineCounts(suite));
  out.verdicts.push_back(GeneralPositionCounts(suite));
  out.verdicts.push_back(GridCensus(suite));
  out.verdicts.push_back(PropositionBound(suite));
  out.verdicts.push_back(PencilBound(suite));
  out.verdicts.push_back(SkewLineFamily(suite));
  out.verdicts.push_back(Dichotomy(suite));
  out.verdicts.push_back(NiceClauses(suite));
  CliReports(suite);
  for (const Verdict& v : out.verdicts) suite.Note(v.pass ? "pass" : "fail");
  out.transcript = suite.log.str();
  return out;
}

const char* kTitles[] = {
    "oracle equivalence",
    "two skew lines exact count",
    "general position closed form",
    "grid censuses",
    "flat-cluster upper bound",
    "pencil bound",
    "three skew lines, nice planes and cubic growth",
    "cluster-or-saturated dichotomy",
    "nice sequence clauses",
    "determinism across worker counts",
};

int Main() {
  Outcome10 one;
  Outcome10 four;
  try {
    one = RunSuite(1);
    four = RunSuite(4);
  } catch (const std::exception& e) {
    std::cout << "[FAIL] suite aborted: " << e.what() << "\n";
    return 1;
  }
  std::vector<Verdict> verdicts = one.verdicts;
  const bool same = one.transcript == four.transcript;
  for (size_t i = 0; i < four.verdicts.size(); ++i) {
    if (four.verdicts[i].pass != one.verdicts[i].pass) verdicts[i].pass = false;
  }
  verdicts.push_back({same, std::to_string(one.transcript.size()) +
                                "-byte transcript (censuses and CLI reports) " +
                                (same ? "identical" : "DIFFERS") +
                                " for 1 and 4 workers"});
  int failed = 0;
  for (size_t i = 0; i < verdicts.size(); ++i) {
    std::cout << (verdicts[i].pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
              << kTitles[i] << ": " << verdicts[i].summary << "\n";
    failed += !verdicts[i].pass;
  }
  std::cout << (verdicts.size() - failed) << "/" << verdicts.size()
            << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace flatspan

int main() { return flatspan::Main(); }

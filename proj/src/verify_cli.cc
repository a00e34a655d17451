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

#include "flatspan/verify_cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "flatspan/constructions.h"
#include "flatspan/error.h"
#include "flatspan/span_enum.h"
#include "json.hpp"

namespace flatspan {

namespace {

using Json = nlohmann::json;

Scalar Power(const Scalar& base, int exp) {
  Scalar out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  }
}

Json ToJson(const Scalar& v) { return ScalarToString(v); }

Json ToJson(const Flat& f) {
  Json rows = Json::array();
  for (const Vec& r : f.basis()) {
    Json row = Json::array();
    for (const Scalar& c : r) row.push_back(ScalarToString(c));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", f.proj_dim()}, {"basis", std::move(rows)}};
}

Json ToJson(const ProjPoint& p) {
  Json row = Json::array();
  for (const Scalar& c : p.coords()) row.push_back(ScalarToString(c));
  return row;
}

Json ToJson(const ThresholdConfig& cfg) {
  auto table = [](const std::map<int, Scalar>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = ScalarToString(v);
    return j;
  };
  return Json{{"beta", ToJson(cfg.beta)},
              {"rich_c", ToJson(cfg.rich_c)},
              {"beck_beta", table(cfg.beck_beta)},
              {"beck_gamma", table(cfg.beck_gamma)},
              {"sat_gamma", table(cfg.sat_gamma)}};
}

Scalar NumberFromJson(const Json& j, const std::string& what) {
  if (j.is_string()) return ParseNumber(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw Error(ErrorCode::kParse,
              what + " must be an integer or a string like \"1/4\"");
}

Json ParseJson(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad ") + what + " JSON: " + e.what());
  }
}

Json InputJson(const LoadedPoints& in) {
  return Json{{"label", in.points.label()},
              {"n", in.points.size()},
              {"d", in.points.ambient_dim()},
              {"duplicates_dropped", in.duplicates}};
}

Json Envelope(const char* command) {
  return Json{{"tool", "flatspan"}, {"version", kToolVersion},
              {"command", command}};
}

const char* VariantName(DegeneracyVariant v) {
  return v == DegeneracyVariant::kClassic ? "classic" : "flat-collection";
}

}  // namespace

Scalar ParseNumber(std::string_view text) {
  const size_t dot = text.find('.');
  if (dot == std::string_view::npos) return ParseScalar(text);
  std::string whole(text.substr(0, dot));
  std::string frac(text.substr(dot + 1));
  const bool neg = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
  auto digits = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if ((whole.empty() && frac.empty()) || !digits(whole) || !digits(frac)) {
    throw Error(ErrorCode::kParse, "malformed number '" + std::string(text) + "'");
  }
  Scalar out = whole.empty() ? Scalar(0) : ParseScalar(whole);
  if (!frac.empty()) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out += Scalar(mpz_class(frac), scale);
  }
  out.canonicalize();
  return neg ? Scalar(-out) : out;
}

LoadedPoints ParsePointText(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int d = -1;
  long n = -1;
  bool homogeneous = false;
  std::string label;
  std::vector<ProjPoint> pts;
  std::set<ProjPoint> seen;
  LoadedPoints out;
  long rows = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (d < 0) {
      for (const std::string& t : tokens) {
        if (t.rfind("d=", 0) == 0) {
          d = std::stoi(std::string(ParseScalar(t.substr(2)).get_str()));
        } else if (t.rfind("n=", 0) == 0) {
          n = std::stol(std::string(ParseScalar(t.substr(2)).get_str()));
        } else if (t == "homogeneous") {
          homogeneous = true;
        } else if (t.rfind("label=", 0) == 0) {
          label = t.substr(6);
        } else {
          throw fail("unknown header field '" + t + "'");
        }
      }
      if (d < 2 || n < 0) throw fail("header needs d=<D> (D >= 2) and n=<N>");
      continue;
    }
    ++rows;
    const size_t want = static_cast<size_t>(d) + (homogeneous ? 1 : 0);
    if (tokens.size() != want) {
      throw fail("expected " + std::to_string(want) + " coordinates, got " +
                 std::to_string(tokens.size()));
    }
    Vec v;
    for (const std::string& t : tokens) v.push_back(ParseNumber(t));
    ProjPoint p = homogeneous ? ProjPoint(std::move(v)) : EmbedAffine(v);
    if (!seen.insert(p).second) {
      ++out.duplicates;
      out.warnings.push_back("line " + std::to_string(line_no) +
                             ": duplicate point dropped");
      continue;
    }
    pts.push_back(std::move(p));
  }
  if (d < 0) throw Error(ErrorCode::kParse, "empty point file");
  if (rows != n) {
    throw Error(ErrorCode::kParse, "header declares n=" + std::to_string(n) +
                                       " but the file has " +
                                       std::to_string(rows) + " rows");
  }
  if (pts.empty()) throw Error(ErrorCode::kParse, "point file has no points");
  out.points = PointSet(d, std::move(pts), label);
  return out;
}

LoadedPoints LoadPoints(const std::string& path) {
  return ParsePointText(ReadFile(path));
}

std::string FormatPoints(const PointSet& s) {
  const bool homogeneous =
      std::any_of(s.points().begin(), s.points().end(),
                  [](const ProjPoint& p) { return p.at_infinity(); });
  std::ostringstream out;
  out << "d=" << s.ambient_dim() << " n=" << s.size();
  if (homogeneous) out << " homogeneous";
  if (!s.label().empty()) out << " label=" << s.label();
  out << "\n";
  for (const ProjPoint& p : s.points()) {
    const Vec& c = p.coords();
    for (size_t i = homogeneous ? 0 : 1; i < c.size(); ++i) {
      if (i > (homogeneous ? 0u : 1u)) out << ' ';
      out << ScalarToString(homogeneous ? c[i] : Scalar(c[i] / c[0]));
    }
    out << "\n";
  }
  return out.str();
}

FlatCollection ParseCollection(std::string_view text) {
  Json j = ParseJson(text, "collection");
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("flats") ||
      !j["flats"].is_array()) {
    throw Error(ErrorCode::kParse,
                "collection needs \"ambient_dim\" and a \"flats\" array");
  }
  try {
    const int d = j["ambient_dim"].get<int>();
    std::vector<Flat> flats;
    for (const Json& f : j["flats"]) {
      std::vector<Vec> rows;
      const bool affine = f.is_object();
      const Json& list = affine ? f.at("affine_points") : f;
      for (const Json& r : list) {
        Vec v;
        for (const Json& c : r) v.push_back(NumberFromJson(c, "coordinate"));
        if (affine) v.insert(v.begin(), Scalar(1));
        if (v.size() != static_cast<size_t>(d) + 1) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "collection row has the wrong number of coordinates");
        }
        rows.push_back(std::move(v));
      }
      flats.push_back(CanonicalFlat(d, std::move(rows)));
    }
    return FlatCollection(d, std::move(flats));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad collection: ") + e.what());
  }
}

std::string FormatCollection(const FlatCollection& c) {
  Json flats = Json::array();
  for (const Flat& f : c.flats()) flats.push_back(ToJson(f)["basis"]);
  return Json{{"ambient_dim", c.ambient_dim()}, {"flats", flats}}.dump(2) + "\n";
}

ThresholdConfig ParseThresholds(std::string_view text, int d) {
  Json j = ParseJson(text, "threshold");
  if (!j.is_object()) throw Error(ErrorCode::kParse, "thresholds must be an object");
  ThresholdConfig cfg = ThresholdConfig::Defaults(d);
  for (const auto& [key, value] : j.items()) {
    if (key == "beta") {
      cfg.beta = NumberFromJson(value, key);
    } else if (key == "rich_c") {
      cfg.rich_c = NumberFromJson(value, key);
    } else if (key == "beck_beta" || key == "beck_gamma" || key == "sat_gamma") {
      auto& table = key == "beck_beta"    ? cfg.beck_beta
                    : key == "beck_gamma" ? cfg.beck_gamma
                                          : cfg.sat_gamma;
      if (!value.is_object()) {
        throw Error(ErrorCode::kParse, key + " must map dimensions to values");
      }
      for (const auto& [m, v] : value.items()) {
        int dim = 0;
        try {
          size_t used = 0;
          dim = std::stoi(m, &used);
          if (used != m.size()) throw std::invalid_argument(m);
        } catch (const std::exception&) {
          throw Error(ErrorCode::kParse, key + " has a non-integer key '" + m + "'");
        }
        table[dim] = NumberFromJson(v, key);
      }
    } else {
      throw Error(ErrorCode::kParse, "unknown threshold '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

bool BoundReport::AllHold() const {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) {
    return !e.holds.has_value() || *e.holds;
  });
}

BoundReport RunVerify(const PointSet& s, const ThresholdConfig& cfg,
                      const VerifyOptions& opts) {
  const int d = s.ambient_dim();
  const auto n = static_cast<std::int64_t>(s.size());
  if (n < d + 1) {
    throw Error(ErrorCode::kPrecondition, "verification needs at least d + 1 points");
  }
  for (const std::string& id : opts.bounds) {
    const auto& ids = AllBoundIds();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown bound '" + id + "'");
    }
  }
  auto need_collection = [&](const std::string& id) -> const FlatCollection& {
    if (!opts.collection) {
      throw Error(ErrorCode::kPrecondition, id + " needs a flat collection");
    }
    if (opts.collection->ambient_dim() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "collection and point set live in different spaces");
    }
    return *opts.collection;
  };

  const SpannedFlatSet hyper = SpannedFlats(s, d - 1, opts.workers);
  const auto h = static_cast<std::int64_t>(hyper.size());
  size_t best = 0;
  for (size_t i = 1; i < hyper.size(); ++i) {
    if (hyper.multiplicity(i) > hyper.multiplicity(best)) best = i;
  }
  const auto coverage =
      hyper.size() == 0 ? std::int64_t{0}
                        : static_cast<std::int64_t>(hyper.multiplicity(best));
  const Scalar nn(static_cast<long>(n));

  BoundReport report;
  for (const std::string& id : opts.bounds) {
    if (id == "prop_1_8") {
      const FlatCollection& c = need_collection(id);
      if (c.dim_sum() >= d) {
        throw Error(ErrorCode::kPrecondition,
                    "prop_1_8 needs a collection with dimension sum below d");
      }
      std::int64_t covered = 0;
      for (const ProjPoint& p : s.points()) {
        covered += std::any_of(c.flats().begin(), c.flats().end(),
                               [&](const Flat& f) { return f.Contains(p); });
      }
      const std::int64_t x = n - covered;
      BoundEntry e{id, Scalar(h), (Scalar(x) + d) * Power(nn, d - 1), {}, {}};
      e.holds = e.lhs <= e.rhs;
      e.inputs = {{"x", std::to_string(x)},
                  {"dim_sum", std::to_string(c.dim_sum())},
                  {"ratio", ScalarToString(e.lhs / e.rhs)}};
      report.entries.push_back(std::move(e));
    } else if (id == "lemma_2_2") {
      Scalar worst = 0;
      std::int64_t pairs = 0, max_pencil = 0;
      int worst_dim = -1;
      std::int64_t worst_points = 0;
      auto consider = [&](std::int64_t pencil, std::int64_t pts, int dim) {
        ++pairs;
        max_pencil = std::max(max_pencil, pencil);
        Scalar ratio = Scalar(pencil) / Power(Scalar(pts), dim - 1);
        if (ratio > worst) {
          worst = ratio;
          worst_dim = dim;
          worst_points = pts;
        }
      };
      for (size_t q = 0; q < s.size(); ++q) {
        std::int64_t pencil = 0;
        for (const auto& m : hyper.members) {
          pencil += std::binary_search(m.begin(), m.end(), q);
        }
        consider(pencil, n, d);
      }
      if (d >= 3) {
        for (size_t i = 0; i < hyper.size(); ++i) {
          PointSet on = s.Subset(hyper.members[i]);
          SpannedFlatSet sub = EnumerateSpannedFlats(on.points(), d, d - 2, opts.workers);
          for (size_t q = 0; q < on.size(); ++q) {
            std::int64_t pencil = 0;
            for (const auto& m : sub.members) {
              pencil += std::binary_search(m.begin(), m.end(), q);
            }
            consider(pencil, static_cast<std::int64_t>(on.size()), d - 1);
          }
        }
      }
      BoundEntry e{id, worst, 1, worst <= 1, {}};
      e.inputs = {{"pairs_checked", std::to_string(pairs)},
                  {"max_pencil", std::to_string(max_pencil)},
                  {"worst_flat_dim", std::to_string(worst_dim)},
                  {"worst_flat_points", std::to_string(worst_points)}};
      report.entries.push_back(std::move(e));
    } else if (id == "thm_1_4_ratio") {
      const Flat& p = hyper.flats[best];
      const std::int64_t x = n - coverage;
      BoundEntry e{id, Scalar(h), Scalar(x) * Power(nn, d - 1), std::nullopt, {}};
      e.inputs = {
          {"x", std::to_string(x)},
          {"hyperplane_points", std::to_string(coverage)},
          {"rich", IsRich(s, p, cfg.rich_c) ? "true" : "false"},
          {"saturated",
           d - 1 >= 1 && IsSaturated(s, p, cfg.SatGamma(d - 1), opts.workers).saturated
               ? "true"
               : "false"},
          {"ratio", x == 0 ? "undefined" : ScalarToString(e.lhs / e.rhs)}};
      report.entries.push_back(std::move(e));
    } else if (id == "cor_1_6") {
      BoundEntry e{id, Scalar(coverage), nn / (d - 1), std::nullopt, {}};
      e.inputs = {{"coverage_fraction", ScalarToString(Scalar(coverage) / nn)},
                  {"beta_limit", ScalarToString(Scalar(1, d - 1))}};
      report.entries.push_back(std::move(e));
    } else if (id == "cor_1_10_ratio") {
      std::vector<int> ks = opts.ks.empty() ? std::vector<int>{d} : opts.ks;
      for (int k : ks) {
        DegeneracyCensus c =
            DegenerateHyperplaneCensus(s, k, opts.alpha, opts.variant, opts.workers);
        const Scalar kk(k);
        BoundEntry e{id, Scalar(c.degenerate_count),
                     Power(nn, d) / Power(kk, d + 1) + Power(nn, d - 1) / Power(kk, d - 1),
                     std::nullopt, {}};
        e.inputs = {{"k", std::to_string(k)},
                    {"alpha", ScalarToString(opts.alpha)},
                    {"variant", VariantName(opts.variant)},
                    {"rich_hyperplanes", std::to_string(c.entries.size())},
                    {"ratio", ScalarToString(c.ratio)}};
        report.entries.push_back(std::move(e));
      }
    } else if (id == "lemma_3_2") {
      const FlatCollection& c = need_collection(id);
      bool shape = d == 3 && c.size() == 3;
      for (size_t i = 0; shape && i < 3; ++i) {
        shape = c[i].proj_dim() == 1;
        for (size_t j = 0; shape && j < i; ++j) shape = Meet(c[i], c[j]).empty();
      }
      if (!shape) {
        throw Error(ErrorCode::kPrecondition,
                    "lemma_3_2 needs three pairwise skew lines in 3-space");
      }
      std::int64_t m[3];
      for (size_t i = 0; i < 3; ++i) {
        m[i] = static_cast<std::int64_t>(s.MembersOf(c[i]).size());
      }
      BoundEntry e{id, Scalar(h), Scalar(m[0] * (m[1] - 1) * (m[2] - 2)), {}, {}};
      e.holds = e.lhs >= e.rhs;
      e.inputs = {{"m1", std::to_string(m[0])},
                  {"m2", std::to_string(m[1])},
                  {"m3", std::to_string(m[2])}};
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

namespace {

Json ReportJson(const BoundReport& r) {
  Json entries = Json::array();
  for (const BoundEntry& e : r.entries) {
    Json j{{"id", e.id}, {"lhs", ToJson(e.lhs)}, {"rhs", ToJson(e.rhs)},
           {"inputs", e.inputs}};
    j["holds"] = e.holds ? Json(*e.holds) : Json(nullptr);
    entries.push_back(std::move(j));
  }
  return entries;
}

Json DescentJson(const DescentResult& r) {
  Json steps = Json::array();
  for (const DescentStep& s : r.steps) {
    Json j{{"flat", ToJson(s.flat)},
           {"points", s.points},
           {"h", s.saturation.h},
           {"threshold", ToJson(s.saturation.threshold)},
           {"saturated", s.saturation.saturated}};
    if (s.best_hyperplane) {
      j["best_coverage"] = s.best_hyperplane->coverage;
      j["required_coverage"] = ToJson(s.required_coverage);
    }
    steps.push_back(std::move(j));
  }
  Json j{{"flat", ToJson(r.flat)},
         {"saturated_by_beck", r.saturated_by_beck},
         {"steps", std::move(steps)}};
  j["beck_count_holds"] =
      r.beck_count_holds ? Json(*r.beck_count_holds) : Json(nullptr);
  return j;
}

const char* StepName(StepKind k) {
  switch (k) {
    case StepKind::kDescent: return "descent";
    case StepKind::kAdd: return "add";
    case StepKind::kMerge: return "merge";
    case StepKind::kRestrict: return "restrict";
  }
  return "unknown";
}

Json CollectionJson(const FlatCollection& c, const PointSet& s) {
  Json flats = Json::array();
  for (const Flat& f : c.flats()) {
    Json j = ToJson(f);
    j["points"] = s.MembersOf(f).size();
    flats.push_back(std::move(j));
  }
  return flats;
}

struct Common {
  int workers = 1;
  std::string output;
  std::string config_path;
};

void Emit(const Json& report, const Common& common, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (common.output.empty()) {
    out << text;
  } else {
    WriteFile(common.output, text);
  }
}

LoadedPoints LoadReported(const std::string& path, std::ostream& err) {
  LoadedPoints in = LoadPoints(path);
  for (const std::string& w : in.warnings) err << "warning: " << w << "\n";
  return in;
}

ThresholdConfig LoadThresholds(const Common& common, int d) {
  if (common.config_path.empty()) return ThresholdConfig::Defaults(d);
  return ParseThresholds(ReadFile(common.config_path), d);
}

}  // namespace

int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Spanned-flat censuses, structure detection and bound checks "
               "for finite point sets."};
  app.name("flatspan");
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--workers", common.workers, "Enumeration worker threads")
      ->check(CLI::PositiveNumber);
  app.set_version_flag("--version", kToolVersion);

  std::string points_path, spec_path, collection_path, collection_out;
  std::string beta_text, rich_text, sat_text, alpha_text = "1/2";
  std::string variant_text = "classic";
  int k = -1;
  std::int64_t budget = 100;
  std::vector<std::string> bounds;
  std::vector<int> ks;

  auto add_points = [&](CLI::App* sub) {
    sub->add_option("points", points_path, "Point file")->required();
    sub->add_option("-o,--output", common.output, "Write the report here");
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "Threshold overrides (JSON)");
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate a named configuration");
  gen->add_option("spec", spec_path, "Configuration spec (JSON)")->required();
  gen->add_option("-o,--output", common.output, "Write the point file here");
  gen->add_option("--collection-out", collection_out,
                  "Write the planted flats here");

  CLI::App* count = app.add_subcommand("count", "Census of spanned k-flats");
  add_points(count);
  count->add_option("-k", k, "Flat dimension (default d - 1)");

  CLI::App* flats = app.add_subcommand("flats", "List rich spanned flats");
  add_points(flats);
  add_config(flats);
  flats->add_option("--rich", rich_text, "Richness fraction c of |S|");
  flats->add_option("--sat", sat_text, "Saturation constant (default per dim)");
  flats->add_option("-k", k, "Only this dimension");

  CLI::App* decompose = app.add_subcommand("decompose", "Cluster or saturated");
  add_points(decompose);
  add_config(decompose);
  decompose->add_option("--beta", beta_text, "Cluster coverage fraction");

  CLI::App* nice = app.add_subcommand("nice", "Nice sequences of a collection");
  add_points(nice);
  nice->add_option("--collection", collection_path, "Good collection (JSON)")
      ->required();
  nice->add_option("--budget", budget, "Maximum sequences")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "Check bounds");
  add_points(verify);
  add_config(verify);
  verify->add_option("--bounds", bounds, "Bound ids or 'all'")
      ->required()
      ->delimiter(',');
  verify->add_option("--collection", collection_path, "Flat collection (JSON)");
  verify->add_option("-k", ks, "Richness levels for cor_1_10_ratio")
      ->delimiter(',');
  verify->add_option("--alpha", alpha_text, "Degeneracy fraction");
  verify->add_option("--variant", variant_text, "classic | flat-collection")
      ->check(CLI::IsMember({"classic", "flat-collection"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (gen->parsed()) {
      ConfigSpec spec = ConfigSpec::FromJson(ReadFile(spec_path));
      GeneratedConfig g = Generate(spec);
      const std::string text = FormatPoints(g.points);
      if (!collection_out.empty()) {
        if (g.planted.empty()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "this configuration has no planted flats");
        }
        WriteFile(collection_out,
                  FormatCollection(FlatCollection(g.points.ambient_dim(), g.planted)));
      }
      if (common.output.empty()) {
        out << text;
      } else {
        WriteFile(common.output, text);
        Json report = Envelope("gen");
        report["spec"] = Json::parse(spec.ToJson());
        report["n"] = g.points.size();
        report["planted"] = Json::array();
        for (const Flat& f : g.planted) report["planted"].push_back(ToJson(f));
        out << report.dump(2) << "\n";
      }
      return 0;
    }

    LoadedPoints in = LoadReported(points_path, err);
    const PointSet& s = in.points;
    const int d = s.ambient_dim();
    Json report;

    if (count->parsed()) {
      const int dim = k < 0 ? d - 1 : k;
      SpannedFlatSet census = SpannedFlats(s, dim, common.workers);
      report = Envelope("count");
      report["k"] = dim;
      report["total"] = census.size();
      Json hist = Json::object();
      for (const auto& [mult, num] : census.MultiplicityHistogram()) {
        hist[std::to_string(mult)] = num;
      }
      report["histogram"] = hist;
      Json list = Json::array();
      for (size_t i = 0; i < census.size(); ++i) {
        Json j = ToJson(census.flats[i]);
        j["members"] = census.members[i];
        list.push_back(std::move(j));
      }
      report["flats"] = std::move(list);
    } else if (flats->parsed()) {
      ThresholdConfig cfg = LoadThresholds(common, d);
      const Scalar c = rich_text.empty() ? cfg.rich_c : ParseNumber(rich_text);
      report = Envelope("flats");
      report["rich_c"] = ToJson(c);
      report["thresholds"] = ToJson(cfg);
      Json list = Json::array();
      for (int m = 1; m < d; ++m) {
        if (k >= 0 && m != k) continue;
        const Scalar gamma = sat_text.empty() ? cfg.SatGamma(m) : ParseNumber(sat_text);
        SpannedFlatSet census = SpannedFlats(s, m, common.workers);
        for (size_t i = 0; i < census.size(); ++i) {
          if (!IsRich(s, census.flats[i], c)) continue;
          SaturationVerdict v = IsSaturated(s, census.flats[i], gamma, common.workers);
          Json j = ToJson(census.flats[i]);
          j["points"] = v.points;
          j["h"] = v.h;
          j["gamma"] = ToJson(gamma);
          j["saturated"] = v.saturated;
          list.push_back(std::move(j));
        }
      }
      report["flats"] = std::move(list);
    } else if (decompose->parsed()) {
      ThresholdConfig cfg = LoadThresholds(common, d);
      if (!beta_text.empty()) cfg.beta = ParseNumber(beta_text);
      DichotomyResult r = Decompose(s, cfg, common.workers);
      report = Envelope("decompose");
      report["thresholds"] = ToJson(cfg);
      const bool cluster = r.outcome == Outcome::kCluster;
      report["outcome"] = cluster ? "cluster" : "saturated";
      report["collection"] = CollectionJson(r.collection, s);
      report["dim_sum"] = r.collection.dim_sum();
      report["covered"] = r.covered;
      report["n"] = r.n;
      if (!cluster) {
        report["h_ambient"] = r.h_ambient;
        report["empirical_gamma"] = ToJson(r.empirical_gamma);
        report["reason"] = r.reason;
      }
      Json trace = Json::array();
      bool merges_decrease = true;
      for (const TraceStep& t : r.trace) {
        Json j{{"kind", StepName(t.kind)},
               {"subset", t.subset},
               {"dim_sum_before", t.dim_sum_before},
               {"dim_sum_after", t.dim_sum_after},
               {"covered", t.covered}};
        if (t.descent) j["descent"] = DescentJson(*t.descent);
        if (t.kind == StepKind::kMerge) {
          merges_decrease = merges_decrease && t.dim_sum_after < t.dim_sum_before;
        }
        trace.push_back(std::move(j));
      }
      report["trace"] = std::move(trace);
      Json checks = Json::object();
      checks["merges_decrease_dim_sum"] = merges_decrease;
      if (cluster) {
        checks["cluster_coverage"] = Scalar(r.covered) >= cfg.beta * r.n;
        checks["cluster_dim_sum_below_d"] = r.collection.dim_sum() < d;
      } else {
        checks["saturated_count_positive"] = r.h_ambient > 0;
      }
      report["checks"] = checks;
      bool ok = true;
      for (const auto& [name, v] : checks.items()) ok = ok && v.get<bool>();
      report["all_hold"] = ok;
    } else if (nice->parsed()) {
      FlatCollection c = ParseCollection(ReadFile(collection_path));
      std::vector<NiceSequence> seqs = EnumerateNiceSequences(s, c, budget);
      report = Envelope("nice");
      report["budget"] = budget;
      report["count"] = seqs.size();
      Json list = Json::array();
      std::set<Flat> distinct;
      bool clauses = true;
      for (const NiceSequence& seq : seqs) {
        distinct.insert(seq.h);
        clauses = clauses && seq.h.proj_dim() == d - 1;
        Json ps = Json::array();
        for (size_t j = 0; j < seq.p.size(); ++j) {
          clauses = clauses && Meet(seq.h, c[seq.indices[j]]) == seq.p[j];
          ps.push_back(ToJson(seq.p[j]));
        }
        Json fractions = Json::array();
        for (const Scalar& f : seq.admissible_fraction) fractions.push_back(ToJson(f));
        Json j{{"h", ToJson(seq.h)}, {"p", std::move(ps)},
               {"indices", seq.indices}, {"admissible_fraction", fractions}};
        if (seq.excess) {
          Json qi = Json::array();
          for (const Flat& f : seq.excess->q_i) qi.push_back(ToJson(f));
          Json images = Json::array();
          for (const ProjPoint& p : seq.excess->q_images) images.push_back(ToJson(p));
          j["excess"] = Json{{"x", seq.excess->x},
                             {"q", ToJson(seq.excess->q)},
                             {"q_i", std::move(qi)},
                             {"target", ToJson(seq.excess->target)},
                             {"q_images", std::move(images)}};
        }
        list.push_back(std::move(j));
      }
      report["sequences"] = std::move(list);
      report["checks"] = Json{{"distinct_hyperplanes", distinct.size() == seqs.size()},
                              {"meets_equal_p", clauses}};
      report["all_hold"] = distinct.size() == seqs.size() && clauses;
    } else if (verify->parsed()) {
      ThresholdConfig cfg = LoadThresholds(common, d);
      VerifyOptions opts;
      opts.workers = common.workers;
      opts.ks = ks;
      opts.alpha = ParseNumber(alpha_text);
      opts.variant = variant_text == "classic" ? DegeneracyVariant::kClassic
                                               : DegeneracyVariant::kFlatCollection;
      if (!collection_path.empty()) {
        opts.collection = ParseCollection(ReadFile(collection_path));
      }
      for (const std::string& b : bounds) {
        if (b != "all") {
          opts.bounds.push_back(b);
          continue;
        }
        for (const std::string& id : AllBoundIds()) {
          if (id == "prop_1_8" && (!opts.collection || opts.collection->dim_sum() >= d)) continue;
          if (id == "lemma_3_2" && (!opts.collection || d != 3 || opts.collection->size() != 3)) continue;
          opts.bounds.push_back(id);
        }
      }
      BoundReport r = RunVerify(s, cfg, opts);
      report = Envelope("verify");
      report["thresholds"] = ToJson(cfg);
      report["bounds"] = ReportJson(r);
      report["all_hold"] = r.AllHold();
    }
    report["input"] = InputJson(in);
    Emit(report, common, out);
    return report.value("all_hold", true) ? 0 : 1;
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return 2;
  }
}

}  // namespace flatspan

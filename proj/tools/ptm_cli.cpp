// Command-line front end: point-cloud ingestion, estimators, contours,
// influence curves, asymptotic efficiency, and the simulation studies.
// Artifacts are CSV/JSON with a schema version and the fully resolved
// configuration embedded; failures exit nonzero with a structured JSON error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptm/competitors.hpp"
#include "ptm/depth.hpp"
#include "ptm/io.hpp"
#include "ptm/regions.hpp"
#include "ptm/simulate.hpp"
#include "ptm/theory.hpp"
#include "ptm/trim.hpp"

namespace {

using nlohmann::json;
using namespace ptm;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("PTM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // hardware concurrency
}

LocationScalePair resolve_pair(const std::string& name, int k, int d) {
  if (name == "meansd") return LocationScalePair::meansd();
  if (name != "medmad")
    throw Error("bad_usage", "unknown location/scale pair", {{"pair", name}});
  if (k > 0) return LocationScalePair::medmad(k);
  return LocationScalePair::medmad_default(d);
}

DirectionStrategy resolve_strategy(const std::string& name, int dirs,
                                   std::uint64_t seed, int n, int d,
                                   const LocationScalePair& pair) {
  const int sphere = dirs > 0 ? dirs : 300;
  if (name == "auto") return DirectionStrategy::auto_for(n, d, pair, seed);
  if (name == "exact2d") {
    if (d != 2)
      throw Error("bad_usage", "the exact sweep needs two-dimensional data",
                  {{"d", std::to_string(d)}});
    return DirectionStrategy::exact2d();
  }
  if (name == "sphere") return DirectionStrategy::random_sphere(sphere, seed);
  if (name == "data")
    return DirectionStrategy::data_driven(dirs > 0 ? dirs : 500, seed);
  if (name == "hybrid") return DirectionStrategy::hybrid(500, sphere, seed);
  throw Error("bad_usage", "unknown direction strategy", {{"strategy", name}});
}

std::string strategy_name(const DirectionStrategy& s) {
  switch (s.kind) {
    case DirectionStrategy::Kind::Exact2D: return "exact2d";
    case DirectionStrategy::Kind::RandomSphere:
      return "random-sphere(" + std::to_string(s.count) + ")";
    case DirectionStrategy::Kind::DataDriven:
      return "data-driven(" + std::to_string(s.cap) + ")";
    case DirectionStrategy::Kind::Hybrid:
      return "data-driven(" + std::to_string(s.cap) + ")+random(" +
             std::to_string(s.count) + ")";
  }
  return "unknown";
}

Vec parse_vec_arg(const std::string& s, const std::string& what) {
  std::vector<double> vals;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t pos = s.find(',', start);
    const std::string cell =
        pos == std::string::npos ? s.substr(start) : s.substr(start, pos - start);
    try {
      size_t used = 0;
      vals.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error("bad_usage", what + " must be a comma-separated numeric vector",
                  {{"value", s}});
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

// alpha flags accept a number or the literal "auto"
struct AlphaArg {
  double value = 0.1;
  bool is_auto = false;
};

AlphaArg parse_alpha_arg(const std::string& s) {
  if (s == "auto") return {0.1, true};
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return {v, false};
  } catch (const std::exception&) {
    throw Error("bad_usage", "alpha must be a number or 'auto'", {{"alpha", s}});
  }
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    io::write_text(out_path, text);
}

void emit_csv(const std::string& doc, const std::string& out_path) {
  if (out_path.empty())
    std::cout << doc;
  else
    io::write_text(out_path, doc);
}

std::string sanitize_label(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

json finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

// ---------------------------------------------------------------- depth ----

struct DepthArgs {
  std::string in, out, pair = "medmad", strategy = "auto";
  int k = 0, dirs = 0;
  std::uint64_t seed = 0;
};

void run_depth(const DepthArgs& a) {
  const PointCloud data = io::parse_points(a.in);
  const int d = data.dim();
  const LocationScalePair pair = resolve_pair(a.pair, a.k, d);
  const DirectionStrategy strat =
      resolve_strategy(a.strategy, a.dirs, a.seed, data.n(), d, pair);
  const DepthEvaluator ev(data, pair, strat);

  std::vector<std::string> cols{"index"};
  for (int j = 0; j < d; ++j) cols.push_back("x" + std::to_string(j + 1));
  cols.insert(cols.end(), {"outlyingness", "depth"});
  for (int j = 0; j < d; ++j) cols.push_back("w" + std::to_string(j + 1));

  std::vector<std::vector<double>> rows;
  rows.reserve(data.n());
  for (int i = 0; i < data.n(); ++i) {
    const DepthEvaluation e = ev.evaluate(data.row(i));
    std::vector<double> row{static_cast<double>(i)};
    for (int j = 0; j < d; ++j) row.push_back(data.pts(i, j));
    row.push_back(e.outlyingness);
    row.push_back(e.depth);
    for (int j = 0; j < d; ++j)
      row.push_back(e.witness.size() == d ? e.witness[j] : kNaN);
    rows.push_back(std::move(row));
  }

  const json meta{{"kind", "depth"},
                  {"config",
                   {{"input", a.in},
                    {"n", data.n()},
                    {"d", d},
                    {"pair", a.pair},
                    {"k", pair.k},
                    {"strategy", strategy_name(strat)},
                    {"method", ev.method()},
                    {"seed", a.seed}}}};
  emit_csv(io::csv_document(meta, cols, rows), a.out);
}

// ------------------------------------------------------------- estimate ----

struct EstimateArgs {
  std::string in, out, alpha = "0.1", pair = "medmad", strategy = "auto",
              weight = "constant";
  double power = 1.0;
  int k = 0, dirs = 0;
  std::uint64_t seed = 0;
};

void run_estimate(const EstimateArgs& a) {
  const PointCloud data = io::parse_points(a.in);
  const int d = data.dim();
  const LocationScalePair pair = resolve_pair(a.pair, a.k, d);
  const DirectionStrategy strat =
      resolve_strategy(a.strategy, a.dirs, a.seed, data.n(), d, pair);
  const DepthEvaluator ev(data, pair, strat);

  const AlphaArg aa = parse_alpha_arg(a.alpha);
  std::optional<AlphaDReport> ad;
  double alpha = aa.value;
  if (aa.is_auto) {
    ad = alpha_d(data, 4096, a.seed);
    alpha = std::min(0.1, 0.9 * ad->alpha_d);
  }

  TrimSpec spec;
  spec.alpha = alpha;
  spec.weight = a.weight == "power" ? WeightSpec::power(a.power)
                                    : WeightSpec::constant_one();
  if (a.weight != "power" && a.weight != "constant")
    throw Error("bad_usage", "unknown weight kind", {{"weight", a.weight}});

  json results;
  try {
    const PtmResult r = ptm::ptm(ev, spec);
    results["ptm"] = {{"estimate", io::to_json(r.estimate)},
                      {"kept", r.kept},
                      {"weight_sum", r.weight_sum},
                      {"max_point_depth", r.max_point_depth},
                      {"method", r.method}};
  } catch (const Error& e) {
    if (e.code() != "empty_trimmed_set") throw;
    if (!ad) ad = alpha_d(data, 4096, a.seed);
    auto ctx = e.context();
    ctx["alpha_d"] = io::g17(ad->alpha_d);
    throw Error(e.code(), e.message() + "; the sample alpha-d threshold is " +
                              io::g17(ad->alpha_d),
                ctx);
  }

  results["mean"] = io::to_json(Vec(data.pts.colwise().mean().transpose()));
  results["stahel_donoho"] = io::to_json(stahel_donoho(ev));
  {
    const CenterEstimate pm = projection_median(ev);
    results["projection_median"] = {{"center", io::to_json(pm.center)},
                                    {"depth", pm.depth},
                                    {"outlyingness", pm.outlyingness},
                                    {"converged", pm.converged},
                                    {"evaluations", pm.evaluations}};
  }
  if (d <= 2) {
    const HalfspaceMedianResult hm = halfspace_median(data);
    results["halfspace_median"] = {
        {"center", io::to_json(hm.center)},
        {"depth", {{"num", hm.depth.num}, {"den", hm.depth.den},
                   {"value", hm.depth.value()}}},
        {"evaluations", hm.evaluations}};
  }

  json config{{"input", a.in},
              {"n", data.n()},
              {"d", d},
              {"alpha", alpha},
              {"alpha_requested", a.alpha},
              {"pair", a.pair},
              {"k", pair.k},
              {"strategy", strategy_name(strat)},
              {"method", ev.method()},
              {"weight", io::to_json(spec.weight)},
              {"seed", a.seed}};
  if (ad)
    config["alpha_d"] = {{"alpha_d", ad->alpha_d},
                         {"ratio", ad->ratio},
                         {"exact", ad->exact}};
  emit(json{{"schema_version", io::kSchemaVersion},
            {"kind", "estimate"},
            {"config", config},
            {"results", results}},
       a.out);
}

// -------------------------------------------------------------- contour ----

struct ContourArgs {
  std::string in, out, pair = "medmad", strategy = "auto";
  double alpha = 0.5;
  int k = 0, dirs = 0, angles = 256;
  std::uint64_t seed = 0;
};

void run_contour(const ContourArgs& a) {
  const PointCloud data = io::parse_points(a.in);
  const int d = data.dim();
  const LocationScalePair pair = resolve_pair(a.pair, a.k, d);
  const DirectionStrategy strat =
      resolve_strategy(a.strategy, a.dirs, a.seed, data.n(), d, pair);
  const DepthEvaluator ev(data, pair, strat);
  const CenterEstimate center = projection_median(ev);
  if (!(a.alpha > 0.0 && a.alpha < 1.0) || center.depth < a.alpha) {
    const AlphaDReport ad = alpha_d(data, 4096, a.seed);
    throw Error("alpha_too_large",
                "no point of the sample reaches this depth level",
                {{"alpha", io::g17(a.alpha)},
                 {"alpha_star", io::g17(center.depth)},
                 {"alpha_d", io::g17(ad.alpha_d)}});
  }
  const RadiusProfile rp =
      radius_profile(ev, center.center, a.alpha, a.angles, a.seed);

  std::vector<std::string> cols;
  for (int j = 0; j < d; ++j) cols.push_back("u" + std::to_string(j + 1));
  cols.push_back("radius");
  std::vector<std::vector<double>> rows;
  rows.reserve(rp.directions.size());
  for (size_t i = 0; i < rp.directions.size(); ++i) {
    std::vector<double> row(rp.directions[i].begin(), rp.directions[i].end());
    row.push_back(rp.radii[i]);
    rows.push_back(std::move(row));
  }
  const json meta{{"kind", "contour"},
                  {"config",
                   {{"input", a.in},
                    {"n", data.n()},
                    {"d", d},
                    {"alpha", a.alpha},
                    {"angles", a.angles},
                    {"pair", a.pair},
                    {"k", pair.k},
                    {"strategy", strategy_name(strat)},
                    {"method", ev.method()},
                    {"seed", a.seed}}},
                  {"center", io::to_json(center.center)},
                  {"center_depth", center.depth}};
  emit_csv(io::csv_document(meta, cols, rows), a.out);
}

// -------------------------------------------------------------- alpha-d ----

struct AlphaDArgs {
  std::string in, out;
  int grid = 4096;
  std::uint64_t seed = 0;
};

void run_alpha_d(const AlphaDArgs& a) {
  const PointCloud data = io::parse_points(a.in);
  const AlphaDReport ad = alpha_d(data, a.grid, a.seed);
  emit(json{{"schema_version", io::kSchemaVersion},
            {"kind", "alpha_d"},
            {"config",
             {{"input", a.in},
              {"n", data.n()},
              {"d", data.dim()},
              {"grid", a.grid},
              {"seed", a.seed}}},
            {"alpha_d", ad.alpha_d},
            {"ratio", finite_or_null(ad.ratio)},
            {"exact", ad.exact}},
       a.out);
}

// ------------------------------------------------------------ breakdown ----

struct BreakdownArgs {
  std::string in, out;
  int n = 0, d = 0, k = 0, replace = -1;
  double magnitude = 0.0, alpha = 0.1;
  std::uint64_t seed = 0;
};

void run_breakdown(const BreakdownArgs& a) {
  std::optional<PointCloud> data;
  int n = a.n, d = a.d;
  if (!a.in.empty()) {
    data = io::parse_points(a.in);
    n = data->n();
    d = data->dim();
  }
  if (n <= 0 || d <= 0)
    throw Error("bad_usage", "need --n and --d (or --in to derive them)",
                {{"n", std::to_string(n)}, {"d", std::to_string(d)}});
  const int k = a.k > 0 ? a.k : (d <= 1 ? 1 : d + 1);
  const Rational bp = breakdown_point(n, d, k);

  json j{{"schema_version", io::kSchemaVersion},
         {"kind", "breakdown"},
         {"config",
          {{"n", n}, {"d", d}, {"k", k}, {"alpha", a.alpha}, {"seed", a.seed}}},
         {"formula",
          {{"num", bp.num}, {"den", bp.den}, {"value", bp.value()}}}};

  if (a.replace >= 0) {
    if (!data)
      throw Error("bad_usage", "the probe needs --in data");
    const LocationScalePair pair = LocationScalePair::medmad(k);
    const DirectionStrategy strat =
        DirectionStrategy::auto_for(n, d, pair, a.seed);
    TrimSpec spec;
    spec.alpha = a.alpha;
    const double norm =
        breakdown_probe(*data, spec, pair, strat, a.replace, a.magnitude, a.seed);
    j["probe"] = {{"replaced", a.replace},
                  {"magnitude", a.magnitude},
                  {"norm", finite_or_null(norm)},
                  {"unbounded", !std::isfinite(norm)}};
  }
  emit(j, a.out);
}

// ------------------------------------------------------------- if-curve ----

struct IfCurveArgs {
  std::string preset, kind = "radius", out, u = "1,0", from = "-3,0",
              to = "3,0", pair = "medmad", weight = "constant";
  double alpha = 0.2, power = 1.0;
  int steps = 601, nodes = 1024, dirs = 4096;
  long long draws = 200000;
  std::uint64_t seed = 2026;
  bool steps_given = false;  // an explicit --steps beats the preset's count
};

void run_if_curve(IfCurveArgs a) {
  if (!a.preset.empty()) {
    if (a.preset == "fig2") {
      a.kind = "radius";
      a.alpha = 0.2;
      a.u = "1,0";
      a.from = "-3,0";
      a.to = "3,0";
      if (!a.steps_given) a.steps = 601;
    } else if (a.preset == "fig3") {
      a.kind = "ptm";
      a.alpha = 0.2;
      a.pair = "medmad";
      a.weight = "constant";
      a.from = "-6,0";
      a.to = "6,0";
      if (!a.steps_given) a.steps = 241;
    } else {
      throw Error("bad_usage", "unknown if-curve preset (fig2, fig3)",
                  {{"preset", a.preset}});
    }
  }
  const Vec from = parse_vec_arg(a.from, "--from");
  const Vec to = parse_vec_arg(a.to, "--to");
  if (from.size() != 2 || to.size() != 2)
    throw Error("bad_usage", "probe line endpoints must be two-dimensional");
  if (a.steps < 2)
    throw Error("bad_usage", "need at least two probe steps",
                {{"steps", std::to_string(a.steps)}});

  const EllipticalModel model = EllipticalModel::standard(2);
  std::vector<std::vector<double>> rows;
  rows.reserve(a.steps);
  json config{{"kind", a.kind},  {"alpha", a.alpha}, {"from", io::to_json(from)},
              {"to", io::to_json(to)}, {"steps", a.steps}, {"model", "N2(0,I)"}};

  if (a.kind == "radius") {
    Vec u = parse_vec_arg(a.u, "--u");
    if (u.size() != 2 || u.norm() <= 0.0)
      throw Error("bad_usage", "--u must be a nonzero 2-vector");
    u /= u.norm();
    config["u"] = io::to_json(u);
    config["columns"] = {"x1", "x2", "if_radius_medmad", "if_radius_meansd"};
    for (int s = 0; s < a.steps; ++s) {
      const double t = static_cast<double>(s) / (a.steps - 1);
      const Vec x = from + t * (to - from);
      double v1 = kNaN, v2 = kNaN;
      try {
        v1 = if_radius(x, u, a.alpha, model, LocationScalePair::medmad_default(2));
      } catch (const Error&) {
      }
      try {
        v2 = if_radius(x, u, a.alpha, model, LocationScalePair::meansd());
      } catch (const Error&) {
      }
      rows.push_back({x[0], x[1], v1, v2});
    }
  } else if (a.kind == "ptm") {
    const LocationScalePair pair = resolve_pair(a.pair, 0, 2);
    const WeightSpec w = a.weight == "power" ? WeightSpec::power(a.power)
                                             : WeightSpec::constant_one();
    IfPtmOptions opts;
    opts.nodes = a.nodes;
    opts.directions = a.dirs;
    opts.draws = a.draws;
    opts.seed = a.seed;
    config["pair"] = a.pair;
    config["weight"] = io::to_json(w);
    config["nodes"] = a.nodes;
    config["draws"] = a.draws;
    config["seed"] = a.seed;
    config["columns"] = {"x1", "x2", "if_ptm_1", "if_ptm_2"};
    for (int s = 0; s < a.steps; ++s) {
      const double t = static_cast<double>(s) / (a.steps - 1);
      const Vec x = from + t * (to - from);
      double v1 = kNaN, v2 = kNaN;
      try {
        const Vec v = if_ptm(x, a.alpha, model, w, pair, opts);
        v1 = v[0];
        v2 = v[1];
      } catch (const Error&) {
      }
      rows.push_back({x[0], x[1], v1, v2});
    }
  } else {
    throw Error("bad_usage", "unknown if-curve kind (radius, ptm)",
                {{"kind", a.kind}});
  }

  const json meta{{"kind", "if_curve"}, {"config", config}};
  emit_csv(io::csv_document(meta, {"x1", "x2", "if1", "if2"}, rows), a.out);
}

// ------------------------------------------------------------------ are ----

struct AreArgs {
  std::string preset, out;
  std::vector<double> alphas;
  int d = 2, nodes = 2048, dirs = 4096;
  long long draws = 2000000;
  std::uint64_t seed = 17;
};

void run_are(AreArgs a) {
  if (a.preset == "table1") {
    a.alphas = {0.05, 0.10, 0.15, 0.20};
  } else if (!a.preset.empty()) {
    throw Error("bad_usage", "unknown are preset (table1)", {{"preset", a.preset}});
  }
  if (a.alphas.empty())
    throw Error("bad_usage", "need --alpha values or --preset table1");

  AsyOptions opts;
  opts.draws = a.draws;
  opts.nodes = a.nodes;
  opts.directions = a.dirs;
  opts.seed = a.seed;

  json rows = json::array();
  for (const double alpha : a.alphas) {
    const AsyVariance v = asy_variance(alpha, a.d, opts);
    rows.push_back({{"alpha", alpha},
                    {"a", v.a},
                    {"b", v.b},
                    {"se_b", v.se_b},
                    {"v", v.v},
                    {"are", v.a / v.b},
                    {"draws", v.draws},
                    {"nodes", v.nodes}});
  }
  emit(json{{"schema_version", io::kSchemaVersion},
            {"kind", "are"},
            {"config",
             {{"d", a.d},
              {"alphas", a.alphas},
              {"draws", a.draws},
              {"nodes", a.nodes},
              {"directions", a.dirs},
              {"seed", a.seed}}},
            {"rows", rows}},
       a.out);
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
  std::string config_path, preset, study = "emse", out, csv, model = "clean",
              alpha = "0.1";
  std::vector<int> n_list;
  std::vector<std::string> estimators;
  double eps = 0.1, mu = 10.0, sd = 5.0, radius_alpha = 0.5,
         normality_alpha = 0.36;
  int d = 2, m = 1000, reps = 20, angles = 4096, normality_n = 300,
      normality_m = 2000, threads = 0;
  std::uint64_t seed = 2026;
  bool n_given = false, m_given = false, alpha_given = false,
       extra_with_config = false;
};

EstimatorConfig make_estimator(const std::string& name, const AlphaArg& alpha) {
  EstimatorConfig e;
  if (name == "mean") {
    e.kind = EstimatorKind::Mean;
  } else if (name == "ptm") {
    e.kind = EstimatorKind::Ptm;
    e.alpha = alpha.value;
    e.alpha_auto = alpha.is_auto;
  } else if (name == "sd" || name == "stahel-donoho") {
    e.kind = EstimatorKind::StahelDonoho;
  } else if (name == "pm" || name == "projection-median") {
    e.kind = EstimatorKind::ProjectionMedian;
  } else if (name == "hm" || name == "halfspace-median") {
    e.kind = EstimatorKind::HalfspaceMedian;
  } else {
    throw Error("bad_usage", "unknown estimator (mean, ptm, sd, pm, hm)",
                {{"estimator", name}});
  }
  return e;
}

void emit_emse(const EmseReport& report, const std::string& out,
               const std::string& csv) {
  emit(io::to_json(report), out);
  if (!csv.empty()) {
    std::vector<std::string> cols{"n"};
    if (!report.rows.empty()) {
      for (const EstimatorRow& e : report.rows.front().estimators) {
        cols.push_back("re_" + sanitize_label(e.label));
        cols.push_back("emse_x1000_" + sanitize_label(e.label));
      }
    }
    std::vector<std::vector<double>> rows;
    for (const StudyRow& r : report.rows) {
      std::vector<double> row{static_cast<double>(r.n)};
      for (const EstimatorRow& e : r.estimators) {
        row.push_back(e.re);
        row.push_back(e.emse * 1000.0);
      }
      rows.push_back(std::move(row));
    }
    const json meta{{"kind", "emse_study_table"},
                    {"note", "emse columns are EMSE x 1000"},
                    {"config", io::to_json(report.config)}};
    emit_csv(io::csv_document(meta, cols, rows), csv);
  }
}

void run_simulate(SimulateArgs a) {
  if (!a.config_path.empty()) {
    if (a.extra_with_config)
      throw Error("bad_usage",
                  "--config reruns the embedded configuration as-is; only "
                  "--out and --csv may accompany it");
    // Rerun of an embedded config: byte-identical report, same seed.
    const json j = json::parse(io::read_text(a.config_path), nullptr, true, true);
    const json& cfg = j.contains("config") ? j["config"] : j;
    const StudyConfig config = io::study_config_from_json(cfg);
    emit_emse(run_study(config), a.out, a.csv);
    return;
  }

  if (!a.preset.empty()) {
    if (a.preset == "table2") {
      a.study = "emse";
      a.model = "clean";
      if (!a.n_given) a.n_list = {20, 40, 60, 80, 100};
      a.estimators = {"ptm", "sd", "pm", "hm", "mean"};
    } else if (a.preset == "table3") {
      a.study = "emse";
      a.model = "contaminated";
      a.eps = 0.1;
      a.mu = 10.0;
      a.sd = 5.0;
      if (!a.n_given) a.n_list = {20, 40, 60, 80, 100};
      a.estimators = {"ptm", "sd", "pm", "hm", "mean"};
    } else if (a.preset == "table4") {
      a.study = "emse";
      a.model = "contaminated";
      a.eps = 0.2;
      a.mu = 10.0;
      a.sd = 5.0;
      if (!a.n_given) a.n_list = {20, 40, 60, 80, 100};
      a.estimators = {"ptm", "sd", "pm", "hm", "mean"};
    } else if (a.preset == "fig4") {
      a.study = "radius";
      if (!a.alpha_given) a.radius_alpha = 0.5;
      if (!a.n_given) a.n_list = {100, 200, 300, 900};
    } else if (a.preset == "fig5") {
      a.study = "normality";
      if (!a.alpha_given) a.normality_alpha = 0.36;
      if (!a.n_given) a.normality_n = 300;
      if (!a.m_given) a.normality_m = 2000;
    } else {
      throw Error("bad_usage",
                  "unknown simulate preset (table2, table3, table4, fig4, fig5)",
                  {{"preset", a.preset}});
    }
  }

  if (a.study == "emse") {
    StudyConfig config;
    if (a.model == "clean") {
      config.model = ModelSpec::standard_normal(a.d);
    } else if (a.model == "contaminated") {
      config.model = ModelSpec::contaminated(a.eps, a.mu, a.sd, a.d);
    } else {
      throw Error("bad_usage", "unknown model (clean, contaminated)",
                  {{"model", a.model}});
    }
    config.n_list = a.n_list.empty() ? std::vector<int>{100} : a.n_list;
    config.m = a.m;
    config.seed = a.seed;
    config.threads = resolve_threads(a.threads);
    const AlphaArg alpha = parse_alpha_arg(a.alpha);
    if (a.estimators.empty()) a.estimators = {"ptm", "mean"};
    for (const std::string& name : a.estimators)
      config.estimators.push_back(make_estimator(name, alpha));
    emit_emse(run_study(config), a.out, a.csv);
    return;
  }

  if (a.study == "radius") {
    const double alpha =
        a.alpha_given ? parse_alpha_arg(a.alpha).value : a.radius_alpha;
    const std::vector<int> ns =
        a.n_list.empty() ? std::vector<int>{100, 200, 300, 900} : a.n_list;
    const int reps = a.reps;
    const auto rows = radius_consistency_study(alpha, ns, reps, a.seed, a.angles);
    json jr = json::array();
    std::vector<std::vector<double>> crows;
    for (const RadiusConsistencyRow& r : rows) {
      jr.push_back({{"n", r.n},
                    {"reps", r.reps},
                    {"invalid", r.invalid},
                    {"median_sup_err", finite_or_null(r.median_sup_err)},
                    {"valid", r.valid}});
      crows.push_back({static_cast<double>(r.n), r.median_sup_err,
                       static_cast<double>(r.reps),
                       static_cast<double>(r.invalid),
                       r.valid ? 1.0 : 0.0});
    }
    const json config{{"alpha", alpha}, {"n_list", ns},      {"reps", reps},
                      {"angles", a.angles}, {"seed", a.seed}};
    emit(json{{"schema_version", io::kSchemaVersion},
              {"kind", "radius_consistency"},
              {"config", config},
              {"rows", jr}},
         a.out);
    if (!a.csv.empty())
      emit_csv(io::csv_document(
                   json{{"kind", "radius_consistency"}, {"config", config}},
                   {"n", "median_sup_err", "reps", "invalid", "valid"}, crows),
               a.csv);
    return;
  }

  if (a.study == "normality") {
    const double alpha =
        a.alpha_given ? parse_alpha_arg(a.alpha).value : a.normality_alpha;
    const int n = a.n_given && !a.n_list.empty() ? a.n_list.front() : a.normality_n;
    const int m = a.m_given ? a.m : a.normality_m;
    const NormalityStudy st = normality_study(alpha, n, m, a.seed);
    const json config{{"alpha", alpha}, {"n", n}, {"m", m}, {"seed", a.seed}};
    const json summary{{"failures", st.failures},
                       {"mean", io::to_json(st.mean)},
                       {"variance_sqrt_n", io::to_json(st.variance)},
                       {"skewness", io::to_json(st.skewness)},
                       {"kurtosis", io::to_json(st.kurtosis)}};
    emit(json{{"schema_version", io::kSchemaVersion},
              {"kind", "normality"},
              {"config", config},
              {"summary", summary}},
         a.out);
    if (!a.csv.empty()) {
      std::vector<std::vector<double>> crows;
      crows.reserve(st.estimates.rows());
      for (Eigen::Index r = 0; r < st.estimates.rows(); ++r)
        crows.push_back({st.estimates(r, 0), st.estimates(r, 1)});
      emit_csv(io::csv_document(json{{"kind", "normality"},
                                     {"config", config},
                                     {"summary", summary}},
                                {"t1", "t2"}, crows),
               a.csv);
    }
    return;
  }

  throw Error("bad_usage", "unknown study (emse, radius, normality)",
              {{"study", a.study}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projection-depth trimming toolkit"};
  app.require_subcommand(1);

  DepthArgs depth_args;
  auto* cmd_depth = app.add_subcommand("depth", "per-point outlyingness, depth and witness directions");
  cmd_depth->add_option("--in", depth_args.in, "input points CSV")->required();
  cmd_depth->add_option("--out", depth_args.out, "output CSV path (default stdout)");
  cmd_depth->add_option("--pair", depth_args.pair, "location/scale pair: medmad or meansd");
  cmd_depth->add_option("--k", depth_args.k, "median offset k (0 = 1 in 1-D, d+1 above)");
  cmd_depth->add_option("--strategy", depth_args.strategy, "auto, exact2d, sphere, data or hybrid");
  cmd_depth->add_option("--dirs", depth_args.dirs, "direction count for sampled strategies");
  cmd_depth->add_option("--seed", depth_args.seed, "direction sampling seed");

  EstimateArgs est_args;
  auto* cmd_est = app.add_subcommand("estimate", "trimmed mean and competitor location estimates");
  cmd_est->add_option("--in", est_args.in, "input points CSV")->required();
  cmd_est->add_option("--out", est_args.out, "output JSON path (default stdout)");
  cmd_est->add_option("--alpha", est_args.alpha, "trimming level, a number or 'auto'");
  cmd_est->add_option("--pair", est_args.pair, "location/scale pair: medmad or meansd");
  cmd_est->add_option("--k", est_args.k, "median offset k (0 = default)");
  cmd_est->add_option("--strategy", est_args.strategy, "auto, exact2d, sphere, data or hybrid");
  cmd_est->add_option("--dirs", est_args.dirs, "direction count for sampled strategies");
  cmd_est->add_option("--weight", est_args.weight, "depth weight: constant or power");
  cmd_est->add_option("--power", est_args.power, "power weight exponent");
  cmd_est->add_option("--seed", est_args.seed, "direction sampling seed");

  ContourArgs contour_args;
  auto* cmd_contour = app.add_subcommand("contour", "directional radii of a depth region");
  cmd_contour->add_option("--in", contour_args.in, "input points CSV")->required();
  cmd_contour->add_option("--out", contour_args.out, "output CSV path (default stdout)");
  cmd_contour->add_option("--alpha", contour_args.alpha, "depth level of the contour")->required();
  cmd_contour->add_option("--angles", contour_args.angles, "number of directions");
  cmd_contour->add_option("--pair", contour_args.pair, "location/scale pair");
  cmd_contour->add_option("--k", contour_args.k, "median offset k");
  cmd_contour->add_option("--strategy", contour_args.strategy, "direction strategy");
  cmd_contour->add_option("--dirs", contour_args.dirs, "direction count for sampled strategies");
  cmd_contour->add_option("--seed", contour_args.seed, "seed");

  AlphaDArgs ad_args;
  auto* cmd_ad = app.add_subcommand("alpha-d", "largest trimming level that survives worst-case contamination");
  cmd_ad->add_option("--in", ad_args.in, "input points CSV")->required();
  cmd_ad->add_option("--out", ad_args.out, "output JSON path (default stdout)");
  cmd_ad->add_option("--grid", ad_args.grid, "angle grid size");
  cmd_ad->add_option("--seed", ad_args.seed, "direction sampling seed (d >= 3)");

  BreakdownArgs bd_args;
  auto* cmd_bd = app.add_subcommand("breakdown", "finite-sample breakdown point, with optional contamination probe");
  cmd_bd->add_option("--in", bd_args.in, "input points CSV (probe data; also supplies n and d)");
  cmd_bd->add_option("--out", bd_args.out, "output JSON path (default stdout)");
  cmd_bd->add_option("--n", bd_args.n, "sample size");
  cmd_bd->add_option("--d", bd_args.d, "dimension");
  cmd_bd->add_option("--k", bd_args.k, "median offset k (0 = d+1)");
  cmd_bd->add_option("--replace", bd_args.replace, "probe: number of points to replace");
  cmd_bd->add_option("--magnitude", bd_args.magnitude, "probe: distance of the contamination site");
  cmd_bd->add_option("--alpha", bd_args.alpha, "probe: trimming level");
  cmd_bd->add_option("--seed", bd_args.seed, "probe: replacement/direction seed");

  IfCurveArgs if_args;
  auto* cmd_if = app.add_subcommand("if-curve", "influence-function values along a probe line");
  cmd_if->add_option("--preset", if_args.preset, "fig2 (radius IF) or fig3 (trimmed-mean IF)");
  cmd_if->add_option("--kind", if_args.kind, "radius or ptm");
  cmd_if->add_option("--out", if_args.out, "output CSV path (default stdout)");
  cmd_if->add_option("--alpha", if_args.alpha, "trimming level");
  cmd_if->add_option("--u", if_args.u, "radius direction, e.g. '1,0'");
  cmd_if->add_option("--from", if_args.from, "probe line start, e.g. '-3,0'");
  cmd_if->add_option("--to", if_args.to, "probe line end");
  auto* oif_steps = cmd_if->add_option("--steps", if_args.steps, "number of probes");
  cmd_if->add_option("--pair", if_args.pair, "location/scale pair (ptm kind)");
  cmd_if->add_option("--weight", if_args.weight, "constant or power (ptm kind)");
  cmd_if->add_option("--power", if_args.power, "power weight exponent");
  cmd_if->add_option("--nodes", if_args.nodes, "boundary quadrature nodes");
  cmd_if->add_option("--dirs", if_args.dirs, "boundary directions (d >= 3)");
  cmd_if->add_option("--draws", if_args.draws, "Monte Carlo draws for the weight term");
  cmd_if->add_option("--seed", if_args.seed, "Monte Carlo seed");

  AreArgs are_args;
  auto* cmd_are = app.add_subcommand("are", "asymptotic efficiency relative to the mean");
  cmd_are->add_option("--preset", are_args.preset, "table1 = the four reference levels");
  cmd_are->add_option("--alpha", are_args.alphas, "trimming levels")->delimiter(',');
  cmd_are->add_option("--d", are_args.d, "dimension");
  cmd_are->add_option("--draws", are_args.draws, "Monte Carlo draws (antithetic)");
  cmd_are->add_option("--nodes", are_args.nodes, "circle quadrature nodes (d = 2)");
  cmd_are->add_option("--dirs", are_args.dirs, "sphere directions (d >= 3)");
  cmd_are->add_option("--seed", are_args.seed, "Monte Carlo seed");
  cmd_are->add_option("--out", are_args.out, "output JSON path (default stdout)");

  SimulateArgs sim_args;
  auto* cmd_sim = app.add_subcommand("simulate", "efficiency, radius-consistency and normality studies");
  cmd_sim->add_option("--config", sim_args.config_path, "rerun the embedded config of an existing report");
  cmd_sim->add_option("--preset", sim_args.preset, "table2, table3, table4, fig4 or fig5");
  cmd_sim->add_option("--study", sim_args.study, "emse, radius or normality");
  cmd_sim->add_option("--out", sim_args.out, "output JSON path (default stdout)");
  cmd_sim->add_option("--csv", sim_args.csv, "also write a CSV table here");
  cmd_sim->add_option("--model", sim_args.model, "clean or contaminated");
  cmd_sim->add_option("--eps", sim_args.eps, "contamination fraction");
  cmd_sim->add_option("--mu", sim_args.mu, "contamination mean (per coordinate)");
  cmd_sim->add_option("--sd", sim_args.sd, "contamination standard deviation");
  cmd_sim->add_option("--d", sim_args.d, "dimension");
  auto* on = cmd_sim->add_option("--n", sim_args.n_list, "sample sizes")->delimiter(',');
  auto* om = cmd_sim->add_option("--m", sim_args.m, "replicates");
  auto* oa = cmd_sim->add_option("--alpha", sim_args.alpha, "trimming level, a number or 'auto'");
  cmd_sim->add_option("--estimators", sim_args.estimators, "mean, ptm, sd, pm, hm")->delimiter(',');
  cmd_sim->add_option("--reps", sim_args.reps, "radius study replicates");
  cmd_sim->add_option("--angles", sim_args.angles, "radius study angle fan size");
  auto* os = cmd_sim->add_option("--seed", sim_args.seed, "master seed");
  cmd_sim->add_option("--threads", sim_args.threads,
                      "worker threads (0 = PTM_THREADS env or hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << io::error_to_json(
                     Error("bad_usage", e.what(),
                           {{"exit_code", std::to_string(e.get_exit_code())}}))
                     .dump(2)
              << "\n";
    return 2;
  }

  sim_args.n_given = on->count() > 0;
  sim_args.m_given = om->count() > 0;
  sim_args.alpha_given = oa->count() > 0;
  if_args.steps_given = oif_steps->count() > 0;
  (void)os;
  if (cmd_sim->parsed() && !sim_args.config_path.empty()) {
    for (const CLI::Option* opt : cmd_sim->get_options()) {
      const std::string name = opt->get_name();
      if (name == "--config" || name == "--out" || name == "--csv" ||
          name == "--help")
        continue;
      if (opt->count() > 0) sim_args.extra_with_config = true;
    }
  }

  try {
    if (cmd_depth->parsed()) run_depth(depth_args);
    if (cmd_est->parsed()) run_estimate(est_args);
    if (cmd_contour->parsed()) run_contour(contour_args);
    if (cmd_ad->parsed()) run_alpha_d(ad_args);
    if (cmd_bd->parsed()) run_breakdown(bd_args);
    if (cmd_if->parsed()) run_if_curve(if_args);
    if (cmd_are->parsed()) run_are(are_args);
    if (cmd_sim->parsed()) run_simulate(sim_args);
  } catch (const Error& e) {
    std::cout << io::error_to_json(e).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << io::error_to_json(Error("internal_error", e.what())).dump(2)
              << "\n";
    return 1;
  }
  return 0;
}

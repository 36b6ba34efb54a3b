#include "ptm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ptm::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_cell(std::string_view cell, double* out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto res = std::from_chars(first, last, *out);
  return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string row_col(size_t row, size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

double number_or_throw(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number())
    throw Error("bad_config", what + " must be a number");
  return j.get<double>();
}

}  // namespace

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("io_error", "cannot open file for reading", {{"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw Error("io_error", "read failed", {{"path", path}});
  return std::move(ss).str();
}

void write_text(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("io_error", "cannot open file for writing", {{"path", path}});
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out)
    throw Error("io_error", "write failed", {{"path", path}});
}

PointCloud parse_points_text(std::string_view text) {
  std::vector<std::vector<double>> rows;
  size_t expected = 0;
  size_t lineno = 0;
  size_t start = 0;
  bool saw_content = false;
  while (start <= text.size()) {
    const size_t eol = text.find('\n', start);
    std::string_view line = eol == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, eol - start);
    start = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (trim(line).empty()) continue;
    saw_content = true;

    const std::vector<std::string_view> cells = split(line, ',');
    std::vector<double> vals(cells.size());
    bool numeric = true;
    size_t bad_col = 0;
    for (size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], &vals[c])) {
        numeric = false;
        bad_col = c + 1;
        break;
      }
    }
    if (!numeric) {
      if (rows.empty() && expected == 0) continue;  // header row
      throw Error("bad_cell", "non-numeric cell at " + row_col(lineno, bad_col),
                  {{"row", std::to_string(lineno)},
                   {"column", std::to_string(bad_col)}});
    }
    for (size_t c = 0; c < vals.size(); ++c)
      if (!std::isfinite(vals[c]))
        throw Error("nonfinite_input",
                    "non-finite value at " + row_col(lineno, c + 1),
                    {{"row", std::to_string(lineno)},
                     {"column", std::to_string(c + 1)}});
    if (expected == 0) {
      expected = vals.size();
    } else if (vals.size() != expected) {
      throw Error("arity_mismatch",
                  "row " + std::to_string(lineno) + " has " +
                      std::to_string(vals.size()) + " columns, expected " +
                      std::to_string(expected),
                  {{"row", std::to_string(lineno)},
                   {"expected", std::to_string(expected)},
                   {"got", std::to_string(vals.size())}});
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty())
    throw Error("empty_input", saw_content ? "no data rows, only a header"
                                           : "file has no content");
  return PointCloud::from_rows(rows);
}

PointCloud parse_points(const std::string& path) {
  return parse_points_text(read_text(path));
}

nlohmann::json to_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

nlohmann::json to_json(const Mat& m) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

Vec vec_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array())
    throw Error("bad_config", what + " must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = number_or_throw(j[i], what + " entry");
  return v;
}

Mat mat_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw Error("bad_config", what + " must be a non-empty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0)
    throw Error("bad_config", what + " rows must be non-empty arrays");
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error("bad_config", what + " rows must all have the same length");
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number_or_throw(j[i][k], what + " entry");
  }
  return m;
}

nlohmann::json to_json(const WeightSpec& w) {
  if (w.kind == WeightSpec::Kind::ConstantOne) return {{"kind", "constant_one"}};
  return {{"kind", "power"}, {"p", w.p}};
}

WeightSpec weight_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error("bad_config", "weight spec needs a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant_one") return WeightSpec::constant_one();
  if (kind == "power")
    return WeightSpec::power(
        j.contains("p") ? number_or_throw(j["p"], "weight exponent") : 1.0);
  throw Error("bad_config", "unknown weight kind", {{"kind", kind}});
}

nlohmann::json to_json(const ModelSpec& m) {
  nlohmann::json comps = nlohmann::json::array();
  for (const MixtureComponent& c : m.components)
    comps.push_back({{"weight", c.weight},
                     {"mean", to_json(c.mean)},
                     {"cov", to_json(c.cov)}});
  return {{"d", m.d}, {"assignment", "fixed-count"}, {"components", comps}};
}

ModelSpec model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("components"))
    throw Error("bad_config", "model spec needs 'd' and 'components'");
  ModelSpec m;
  m.d = j["d"].get<int>();
  if (!j["components"].is_array())
    throw Error("bad_config", "model components must be an array");
  for (const auto& c : j["components"]) {
    MixtureComponent mc;
    mc.weight = number_or_throw(c.at("weight"), "component weight");
    mc.mean = vec_from_json(c.at("mean"), "component mean");
    mc.cov = mat_from_json(c.at("cov"), "component covariance");
    m.components.push_back(std::move(mc));
  }
  m.validate();
  return m;
}

namespace {

std::string kind_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Mean: return "mean";
    case EstimatorKind::Ptm: return "ptm";
    case EstimatorKind::StahelDonoho: return "stahel-donoho";
    case EstimatorKind::ProjectionMedian: return "projection-median";
    case EstimatorKind::HalfspaceMedian: return "halfspace-median";
  }
  return "unknown";
}

EstimatorKind kind_from_name(const std::string& s) {
  if (s == "mean") return EstimatorKind::Mean;
  if (s == "ptm") return EstimatorKind::Ptm;
  if (s == "stahel-donoho") return EstimatorKind::StahelDonoho;
  if (s == "projection-median") return EstimatorKind::ProjectionMedian;
  if (s == "halfspace-median") return EstimatorKind::HalfspaceMedian;
  throw Error("bad_config", "unknown estimator kind", {{"kind", s}});
}

}  // namespace

nlohmann::json to_json(const EstimatorConfig& e) {
  nlohmann::json j{{"kind", kind_name(e.kind)}};
  if (e.kind == EstimatorKind::Ptm) {
    j["alpha"] = e.alpha;
    j["alpha_auto"] = e.alpha_auto;
    j["weight"] = to_json(e.weight);
  }
  return j;
}

EstimatorConfig estimator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error("bad_config", "estimator spec needs a 'kind'");
  EstimatorConfig e;
  e.kind = kind_from_name(j["kind"].get<std::string>());
  if (e.kind == EstimatorKind::Ptm) {
    if (j.contains("alpha")) e.alpha = number_or_throw(j["alpha"], "alpha");
    e.alpha_auto = j.value("alpha_auto", false);
    if (j.contains("weight")) e.weight = weight_from_json(j["weight"]);
  }
  return e;
}

nlohmann::json to_json(const StudyConfig& c) {
  nlohmann::json est = nlohmann::json::array();
  for (const EstimatorConfig& e : c.estimators) est.push_back(to_json(e));
  return {{"model", to_json(c.model)}, {"n_list", c.n_list},
          {"m", c.m},                  {"estimators", est},
          {"seed", c.seed},            {"threads", c.threads}};
}

StudyConfig study_config_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw Error("bad_config", "study config must be an object");
  StudyConfig c;
  c.model = model_from_json(j.at("model"));
  if (!j.contains("n_list") || !j["n_list"].is_array())
    throw Error("bad_config", "study config needs an 'n_list' array");
  for (const auto& n : j["n_list"]) c.n_list.push_back(n.get<int>());
  c.m = j.value("m", 1000);
  if (!j.contains("estimators") || !j["estimators"].is_array())
    throw Error("bad_config", "study config needs an 'estimators' array");
  for (const auto& e : j["estimators"])
    c.estimators.push_back(estimator_from_json(e));
  c.seed = j.value("seed", std::uint64_t{2026});
  c.threads = j.value("threads", 0);
  return c;
}

nlohmann::json to_json(const EmseReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const StudyRow& row : r.rows) {
    nlohmann::json est = nlohmann::json::array();
    for (const EstimatorRow& e : row.estimators)
      est.push_back({{"label", e.label},
                     {"emse", e.emse},
                     {"emse_x1000", e.emse * 1000.0},
                     {"re", e.re},
                     {"failures", e.failures},
                     {"flagged", e.flagged}});
    rows.push_back({{"n", row.n},
                    {"m", row.m},
                    {"depth_method", row.depth_method},
                    {"estimators", est}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "emse_study"},
          {"config", to_json(r.config)},
          {"theta", to_json(r.theta)},
          {"rows", rows}};
}

nlohmann::json error_to_json(const Error& e) {
  nlohmann::json ctx = nlohmann::json::object();
  for (const auto& [k, v] : e.context()) ctx[k] = v;
  return {{"schema_version", kSchemaVersion},
          {"error",
           {{"code", e.code()}, {"message", e.message()}, {"context", ctx}}}};
}

std::string csv_document(const nlohmann::json& meta,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<double>>& rows) {
  nlohmann::json head = meta;
  head["schema_version"] = kSchemaVersion;
  std::string out = "# " + head.dump() + "\n";
  for (size_t c = 0; c < columns.size(); ++c) {
    out += columns[c];
    out += c + 1 < columns.size() ? ',' : '\n';
  }
  for (const std::vector<double>& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      out += g17(row[c]);
      out += c + 1 < row.size() ? ',' : '\n';
    }
  }
  return out;
}

}  // namespace ptm::io

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Machine-readable error: a stable code, a human message, and key/value
// context (row numbers, offending values, ...) that the CLI serializes.
class Error : public std::runtime_error {
public:
  Error(std::string code, std::string message,
        std::map<std::string, std::string> context = {})
      : std::runtime_error(message + " [" + code + "]"),
        code_(std::move(code)), message_(std::move(message)),
        context_(std::move(context)) {}

  Error(std::string code, std::string message,
        const std::map<std::string, double>& numeric_context)
      : Error(std::move(code), std::move(message), to_strings(numeric_context)) {}

  const std::string& code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::map<std::string, std::string>& context() const { return context_; }

private:
  static std::map<std::string, std::string> to_strings(
      const std::map<std::string, double>& m) {
    std::map<std::string, std::string> out;
    char buf[32];
    for (const auto& [k, v] : m) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out.emplace(k, buf);
    }
    return out;
  }

  std::string code_;
  std::string message_;
  std::map<std::string, std::string> context_;
};

// n points in R^d, stored row-wise. All entries must be finite.
struct PointCloud {
  Mat pts;  // n x d

  PointCloud() = default;
  explicit PointCloud(Mat m) : pts(std::move(m)) { validate(); }

  int n() const { return static_cast<int>(pts.rows()); }
  int dim() const { return static_cast<int>(pts.cols()); }
  Vec row(int i) const { return pts.row(i).transpose(); }

  void validate() const {
    if (pts.rows() == 0 || pts.cols() == 0)
      throw Error("empty_input", "point cloud must have at least one point and one coordinate");
    if (!pts.allFinite())
      throw Error("nonfinite_input", "point cloud contains NaN or infinite entries");
  }

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);
};

inline PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty())
    throw Error("empty_input", "no rows given");
  const size_t d = rows.front().size();
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d)
      throw Error("arity_mismatch", "row has wrong number of coordinates",
                  {{"row", std::to_string(i + 1)},
                   {"expected", std::to_string(d)},
                   {"got", std::to_string(rows[i].size())}});
    for (size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return PointCloud(std::move(m));
}

}  // namespace ptm

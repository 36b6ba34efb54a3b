#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ptm/simulate.hpp"
#include "ptm/types.hpp"

namespace ptm::io {

// Stamped into every artifact this library writes.
inline constexpr int kSchemaVersion = 1;

// %.17g: enough digits that reading the text back restores the exact double.
std::string g17(double v);

std::string read_text(const std::string& path);
void write_text(const std::string& path, std::string_view content);

// CSV points: rows are points, columns coordinates, optional header row
// (detected by any non-numeric cell in the first row). Errors carry 1-based
// row/column positions; non-finite values are rejected.
PointCloud parse_points_text(std::string_view text);
PointCloud parse_points(const std::string& path);

nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Mat& m);
Vec vec_from_json(const nlohmann::json& j, const std::string& what);
Mat mat_from_json(const nlohmann::json& j, const std::string& what);

nlohmann::json to_json(const WeightSpec& w);
WeightSpec weight_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ModelSpec& m);
ModelSpec model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EstimatorConfig& e);
EstimatorConfig estimator_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StudyConfig& c);
StudyConfig study_config_from_json(const nlohmann::json& j);

// Full study report with the resolved config embedded; feeding the embedded
// config back into run_study reproduces the report byte for byte.
nlohmann::json to_json(const EmseReport& r);

nlohmann::json error_to_json(const Error& e);

// One '#'-prefixed JSON metadata line, a header row, then %.17g data rows.
std::string csv_document(const nlohmann::json& meta,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<double>>& rows);

}  // namespace ptm::io

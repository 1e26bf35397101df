#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fuzzyplane/fuzzy_distance.hpp"
#include "fuzzyplane/fuzzy_plane.hpp"
#include "fuzzyplane/plane_fitting.hpp"

namespace fuzzyplane::io {

using Json = nlohmann::ordered_json;

enum class DataFormat { kJson, kCsv };

/// Guesses the format from the file extension (.csv, anything else is JSON).
DataFormat format_for_path(const std::filesystem::path& path);
DataFormat parse_format(std::string_view name);

struct DatasetRecord {
  FuzzyNumber x;
  FuzzyNumber y;
  FuzzyNumber z;
  std::optional<std::string> label;

  SpaceFuzzyPoint point() const { return from_components(x, y, z); }
  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

/// Value rounded to 12 significant digits; -0 becomes 0.
double round12(double value);
/// Shortest text of round12(value); infinities print as "inf" / "-inf".
std::string format_number(double value);
/// round12(value) as a JSON number, or the string "inf" / "-inf".
Json json_number(double value);

FuzzyNumber fuzzy_from_json(const Json& literal, const std::string& where = "value");
Json fuzzy_to_json(const FuzzyNumber& number);

/// CSV shorthand: a number, or `[lo,core,hi]` followed by `p` (right plateau)
/// or `lp` (left plateau) and optionally `q<k>` (exponent k on both sides).
FuzzyNumber fuzzy_from_csv(std::string_view field, const std::string& where = "field");
std::string fuzzy_to_csv(const FuzzyNumber& number);

std::vector<DatasetRecord> parse_dataset(std::string_view text, DataFormat format);
std::string serialize_dataset(const std::vector<DatasetRecord>& records, DataFormat format);

Json plane_to_json(const FuzzyPlane& plane);
FuzzyPlane plane_from_json(const Json& doc);

Json distance_to_json(const FuzzyDistance& distance);

/// alpha, a_lo, b_lo, c_lo, d_lo, a_up, b_up, c_up, d_up, sse_lo, sse_up.
/// Rows are scaled to c = -1 (z = a x + b y + d) unless the plane is vertical.
std::string residuals_csv(const FittedFuzzyPlane& fitted);

std::string dump(const Json& doc);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view bytes);

}  // namespace fuzzyplane::io

#include "fuzzyplane/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, const std::string& where) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    fail(ErrorCode::kParse, where + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

double number_from_json(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(ErrorCode::kParse, where + ": expected a number");
}

Json plane_array(const PlaneCoefficients& c) {
  return Json::array({json_number(c[0]), json_number(c[1]), json_number(c[2]), json_number(c[3])});
}

CrispPlane plane_from_array(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) fail(ErrorCode::kParse, where + ": expected [nx, ny, nz, d]");
  PlaneCoefficients c;
  for (int i = 0; i < 4; ++i) c[i] = number_from_json(v[static_cast<std::size_t>(i)], where);
  try {
    return CrispPlane::from_coefficients(c);
  } catch (const Error& e) {
    fail(ErrorCode::kParse, where + ": " + e.what());
  }
}

// Splits on commas that are not inside [...].
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '[') ++depth;
    else if (line[i] == ']') --depth;
    else if (line[i] == ',' && depth == 0) {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  fields.push_back(trim(line.substr(start)));
  return fields;
}

std::string lower_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<DatasetRecord> parse_json_dataset(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    fail(ErrorCode::kParse, "dataset must be an object with a \"points\" array");
  }
  std::vector<DatasetRecord> records;
  std::size_t index = 0;
  for (const auto& item : doc["points"]) {
    const std::string where = "record " + std::to_string(index);
    if (!item.is_object()) fail(ErrorCode::kParse, where + ": expected an object");
    DatasetRecord rec;
    bool any = false;
    for (const auto& [key, value] : item.items()) {
      if (key == "x") rec.x = fuzzy_from_json(value, where + " field x");
      else if (key == "y") rec.y = fuzzy_from_json(value, where + " field y");
      else if (key == "z") rec.z = fuzzy_from_json(value, where + " field z");
      else if (key == "label") {
        if (!value.is_string()) fail(ErrorCode::kParse, where + " field label: expected a string");
        rec.label = value.get<std::string>();
        continue;
      } else {
        fail(ErrorCode::kParse, where + ": unknown field '" + key + "'");
      }
      any = true;
    }
    if (!any) fail(ErrorCode::kParse, where + ": needs at least one of x, y, z");
    records.push_back(std::move(rec));
    ++index;
  }
  return records;
}

std::vector<DatasetRecord> parse_csv_dataset(std::string_view text) {
  std::vector<std::string> columns{"x", "y", "z", "label"};
  bool header_seen = false;
  bool explicit_header = false;
  std::vector<DatasetRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    const std::string where = "line " + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (lower_case(fields.front()) == "x" || lower_case(fields.front()) == "label") {
        columns.clear();
        for (auto f : fields) {
          std::string name = lower_case(f);
          if (name != "x" && name != "y" && name != "z" && name != "label") {
            fail(ErrorCode::kParse, where + ": unknown column '" + std::string(f) + "'");
          }
          columns.push_back(name);
        }
        explicit_header = true;
        continue;
      }
    }
    const std::size_t expected = explicit_header ? columns.size() : 0;
    if (explicit_header ? fields.size() != expected : (fields.size() < 3 || fields.size() > 4)) {
      fail(ErrorCode::kParse, where + ": expected " + (explicit_header ? std::to_string(expected) : "3 or 4") +
                                  " fields, got " + std::to_string(fields.size()));
    }
    DatasetRecord rec;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& col = columns[i];
      const std::string fw = where + " field " + col;
      if (col == "x") rec.x = fuzzy_from_csv(fields[i], fw);
      else if (col == "y") rec.y = fuzzy_from_csv(fields[i], fw);
      else if (col == "z") rec.z = fuzzy_from_csv(fields[i], fw);
      else if (!fields[i].empty()) rec.label = std::string(fields[i]);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

DataFormat format_for_path(const std::filesystem::path& path) {
  return lower_case(path.extension().string()) == ".csv" ? DataFormat::kCsv : DataFormat::kJson;
}

DataFormat parse_format(std::string_view name) {
  if (name == "json") return DataFormat::kJson;
  if (name == "csv") return DataFormat::kCsv;
  fail(ErrorCode::kInvalidArgument, "unknown format '" + std::string(name) + "' (expected json or csv)");
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", value);
  const double r = std::strtod(buf.data(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json json_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return round12(value);
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), round12(value));
  return std::string(buf.data(), ptr);
}

FuzzyNumber fuzzy_from_json(const Json& v, const std::string& where) {
  try {
    if (v.is_number()) return FuzzyNumber::crisp(v.get<double>());
    if (v.is_array()) {
      if (v.size() != 3) fail(ErrorCode::kParse, where + ": triangular shorthand needs [lo, core, hi]");
      const double lo = number_from_json(v[0], where);
      const double core = number_from_json(v[1], where);
      const double hi = number_from_json(v[2], where);
      if (lo > core || core > hi) fail(ErrorCode::kParse, where + ": negative spread in [lo, core, hi]");
      return FuzzyNumber::triangular(lo, core, hi);
    }
    if (!v.is_object()) fail(ErrorCode::kParse, where + ": expected a number, [lo, core, hi] or an object");
    if (v.contains("cuts")) {
      std::vector<AlphaInterval> cuts;
      for (const auto& c : v["cuts"]) {
        if (!c.is_array() || c.size() != 3) fail(ErrorCode::kParse, where + ": cuts must be [alpha, lo, hi]");
        cuts.push_back({number_from_json(c[0], where), number_from_json(c[1], where), number_from_json(c[2], where)});
      }
      return FuzzyNumber::tabulated(std::move(cuts));
    }
    double core = 0.0, left = 0.0, right = 0.0, p_left = 1.0, p_right = 1.0;
    Plateau plateau = Plateau::kNone;
    bool has_core = false;
    for (const auto& [key, value] : v.items()) {
      if (key == "core") {
        core = number_from_json(value, where);
        has_core = true;
      } else if (key == "left") left = number_from_json(value, where);
      else if (key == "right") right = number_from_json(value, where);
      else if (key == "p_left") p_left = number_from_json(value, where);
      else if (key == "p_right") p_right = number_from_json(value, where);
      else if (key == "plateau") {
        const std::string s = value.is_string() ? value.get<std::string>() : std::string();
        if (s == "none") plateau = Plateau::kNone;
        else if (s == "left") plateau = Plateau::kLeft;
        else if (s == "right") plateau = Plateau::kRight;
        else fail(ErrorCode::kParse, where + ": unknown plateau keyword '" + value.dump() + "'");
      } else {
        fail(ErrorCode::kParse, where + ": unknown key '" + key + "'");
      }
    }
    if (!has_core) fail(ErrorCode::kParse, where + ": missing \"core\"");
    if (left < 0.0 || right < 0.0) fail(ErrorCode::kParse, where + ": negative spread");
    return FuzzyNumber::lr(core, left, right, ReferenceFunction(p_left), ReferenceFunction(p_right), plateau);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    fail(ErrorCode::kParse, where + ": " + e.what());
  }
}

Json fuzzy_to_json(const FuzzyNumber& f) {
  if (f.is_tabulated()) {
    Json cuts = Json::array();
    for (const auto& c : f.table()) cuts.push_back(Json::array({json_number(c.alpha), json_number(c.lo), json_number(c.hi)}));
    return Json{{"cuts", std::move(cuts)}};
  }
  if (f.is_crisp()) return json_number(f.core());
  const double pl = f.left_reference().exponent();
  const double pr = f.right_reference().exponent();
  if (f.plateau() == Plateau::kNone && pl == 1.0 && pr == 1.0) {
    return Json::array({json_number(f.core() - f.left_spread()), json_number(f.core()), json_number(f.core() + f.right_spread())});
  }
  const char* plateau = f.plateau() == Plateau::kLeft ? "left" : f.plateau() == Plateau::kRight ? "right" : "none";
  return Json{{"core", json_number(f.core())},
              {"left", json_number(f.left_plateau() ? 0.0 : f.left_spread())},
              {"right", json_number(f.right_plateau() ? 0.0 : f.right_spread())},
              {"p_left", json_number(pl)},
              {"p_right", json_number(pr)},
              {"plateau", plateau}};
}

FuzzyNumber fuzzy_from_csv(std::string_view field, const std::string& where) {
  field = trim(field);
  if (field.empty()) fail(ErrorCode::kParse, where + ": empty field");
  if (field.front() != '[') return FuzzyNumber::crisp(parse_double(field, where));
  const std::size_t close = field.find(']');
  if (close == std::string_view::npos) fail(ErrorCode::kParse, where + ": missing ']'");
  const auto parts = split_fields(field.substr(1, close - 1));
  if (parts.size() != 3) fail(ErrorCode::kParse, where + ": triangular shorthand needs [lo,core,hi]");
  const double lo = parse_double(parts[0], where);
  const double core = parse_double(parts[1], where);
  const double hi = parse_double(parts[2], where);
  std::string_view suffix = trim(field.substr(close + 1));
  Plateau plateau = Plateau::kNone;
  if (suffix.starts_with("lp")) {
    plateau = Plateau::kLeft;
    suffix.remove_prefix(2);
  } else if (suffix.starts_with("p")) {
    plateau = Plateau::kRight;
    suffix.remove_prefix(1);
  }
  double exponent = 1.0;
  if (suffix.starts_with("q")) {
    exponent = parse_double(suffix.substr(1), where + " exponent");
    suffix = {};
  }
  if (!suffix.empty()) fail(ErrorCode::kParse, where + ": unknown suffix '" + std::string(suffix) + "'");
  if (lo > core || core > hi) fail(ErrorCode::kParse, where + ": negative spread in [lo,core,hi]");
  try {
    const ReferenceFunction ref(exponent);
    return FuzzyNumber::lr(core, core - lo, hi - core, ref, ref, plateau);
  } catch (const Error& e) {
    fail(ErrorCode::kParse, where + ": " + e.what());
  }
}

std::string fuzzy_to_csv(const FuzzyNumber& f) {
  if (f.is_tabulated()) fail(ErrorCode::kInvalidArgument, "tabulated fuzzy numbers have no CSV shorthand");
  if (f.is_crisp()) return format_number(f.core());
  const double pl = f.left_reference().exponent();
  const double pr = f.right_reference().exponent();
  double exponent = pl;
  if (f.left_plateau()) exponent = pr;
  else if (!f.right_plateau() && pl != pr) {
    fail(ErrorCode::kInvalidArgument, "CSV shorthand needs the same exponent on both sides");
  }
  const double lo = f.left_plateau() ? f.core() : f.core() - f.left_spread();
  const double hi = f.right_plateau() ? f.core() : f.core() + f.right_spread();
  std::string out = "[" + format_number(lo) + "," + format_number(f.core()) + "," + format_number(hi) + "]";
  if (f.right_plateau()) out += "p";
  if (f.left_plateau()) out += "lp";
  if (exponent != 1.0) out += "q" + format_number(exponent);
  return out;
}

std::vector<DatasetRecord> parse_dataset(std::string_view text, DataFormat format) {
  auto records = format == DataFormat::kJson ? parse_json_dataset(text) : parse_csv_dataset(text);
  if (records.empty()) fail(ErrorCode::kParse, "dataset empty");
  return records;
}

std::string serialize_dataset(const std::vector<DatasetRecord>& records, DataFormat format) {
  if (format == DataFormat::kJson) {
    Json points = Json::array();
    for (const auto& r : records) {
      Json item{{"x", fuzzy_to_json(r.x)}, {"y", fuzzy_to_json(r.y)}, {"z", fuzzy_to_json(r.z)}};
      if (r.label) item["label"] = *r.label;
      points.push_back(std::move(item));
    }
    return dump(Json{{"points", std::move(points)}});
  }
  const bool labels = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.label.has_value(); });
  std::string out = labels ? "x,y,z,label\n" : "x,y,z\n";
  for (const auto& r : records) {
    out += fuzzy_to_csv(r.x) + "," + fuzzy_to_csv(r.y) + "," + fuzzy_to_csv(r.z);
    if (labels) {
      const std::string label = r.label.value_or("");
      if (label.find_first_of(",\n[]") != std::string::npos) {
        fail(ErrorCode::kInvalidArgument, "label '" + label + "' cannot be written to CSV");
      }
      out += "," + label;
    }
    out += "\n";
  }
  return out;
}

Json plane_to_json(const FuzzyPlane& plane) {
  Json levels = Json::array();
  for (const auto& l : plane.levels()) {
    levels.push_back(Json{{"alpha", json_number(l.alpha)},
                          {"lower", plane_array(l.lower.coefficients())},
                          {"upper", plane_array(l.upper.coefficients())}});
  }
  Json doc{{"alpha_levels", std::move(levels)},
           {"core", plane_array(plane.core().coefficients())},
           {"unbounded", Json{{"lower", plane.unbounded().lower}, {"upper", plane.unbounded().upper}}}};
  if (const auto& g = plane.generator()) {
    if (const auto* c = std::get_if<CoefficientForm>(&*g)) {
      doc["generator"] = Json{{"type", "coefficients"},
                              {"a", fuzzy_to_json(c->a)},
                              {"b", fuzzy_to_json(c->b)},
                              {"c", fuzzy_to_json(c->c)},
                              {"d", fuzzy_to_json(c->d)}};
    } else {
      const auto& i = std::get<InterceptForm>(*g);
      doc["generator"] =
          Json{{"type", "intercepts"}, {"x", fuzzy_to_json(i.x)}, {"y", fuzzy_to_json(i.y)}, {"z", fuzzy_to_json(i.z)}};
    }
  }
  return doc;
}

FuzzyPlane plane_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("alpha_levels") || !doc["alpha_levels"].is_array()) {
    fail(ErrorCode::kParse, "plane file must be an object with an \"alpha_levels\" array");
  }
  std::vector<LevelPair> levels;
  std::size_t index = 0;
  for (const auto& l : doc["alpha_levels"]) {
    const std::string where = "alpha_levels[" + std::to_string(index++) + "]";
    if (!l.is_object() || !l.contains("alpha") || !l.contains("lower") || !l.contains("upper")) {
      fail(ErrorCode::kParse, where + ": needs alpha, lower and upper");
    }
    levels.push_back({number_from_json(l["alpha"], where + ".alpha"), plane_from_array(l["lower"], where + ".lower"),
                      plane_from_array(l["upper"], where + ".upper")});
  }
  UnboundedSides unbounded;
  if (doc.contains("unbounded")) {
    const auto& u = doc["unbounded"];
    if (!u.is_object() || !u.value("lower", Json(false)).is_boolean() || !u.value("upper", Json(false)).is_boolean()) {
      fail(ErrorCode::kParse, "unbounded must be {\"lower\": bool, \"upper\": bool}");
    }
    unbounded = {u.value("lower", false), u.value("upper", false)};
  }
  std::optional<PlaneGenerator> generator;
  if (doc.contains("generator")) {
    const auto& g = doc["generator"];
    const std::string type = g.is_object() ? g.value("type", std::string()) : std::string();
    auto field = [&](const char* key) {
      if (!g.contains(key)) fail(ErrorCode::kParse, std::string("generator: missing \"") + key + "\"");
      return fuzzy_from_json(g[key], std::string("generator.") + key);
    };
    if (type == "coefficients") generator = CoefficientForm{field("a"), field("b"), field("c"), field("d")};
    else if (type == "intercepts") generator = InterceptForm{field("x"), field("y"), field("z")};
    else fail(ErrorCode::kParse, "generator type must be \"coefficients\" or \"intercepts\"");
  }
  try {
    return FuzzyPlane(std::move(levels), unbounded, std::move(generator));
  } catch (const Error& e) {
    fail(ErrorCode::kParse, std::string("plane file: ") + e.what());
  }
}

Json distance_to_json(const FuzzyDistance& distance) {
  Json out = Json::array();
  for (const auto& l : distance.levels) {
    out.push_back(Json{{"alpha", json_number(l.alpha)}, {"lo", json_number(l.lo)}, {"hi", json_number(l.hi)}});
  }
  return out;
}

namespace {

// Height-form scaling (c = -1) when the plane is a graph over x-y, else unit normal.
PlaneCoefficients row_coefficients(const CrispPlane& plane) {
  const PlaneCoefficients c = plane.coefficients();
  return std::abs(c[2]) > 1e-12 ? PlaneCoefficients(c / -c[2]) : c;
}

}  // namespace

std::string residuals_csv(const FittedFuzzyPlane& fitted) {
  std::string out = "alpha,a_lo,b_lo,c_lo,d_lo,a_up,b_up,c_up,d_up,sse_lo,sse_up\n";
  const auto& levels = fitted.plane.levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto lo = row_coefficients(levels[i].lower);
    const auto up = row_coefficients(levels[i].upper);
    out += format_number(levels[i].alpha);
    for (int k = 0; k < 4; ++k) out += "," + format_number(lo[k]);
    for (int k = 0; k < 4; ++k) out += "," + format_number(up[k]);
    out += "," + format_number(fitted.residuals[i].sse_lower) + "," + format_number(fitted.residuals[i].sse_upper) + "\n";
  }
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "failed reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace fuzzyplane::io

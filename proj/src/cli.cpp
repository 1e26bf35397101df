#include "fuzzyplane/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <optional>

#include "fuzzyplane/io.hpp"

namespace fuzzyplane::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Options {
  std::string input;
  std::string output_dir = ".";
  std::string output;
  std::string mode = "perpendicular";
  std::optional<int> alpha_steps;
  std::string format;
  std::string alphas = "0,0.5,1";
  std::vector<double> point;
  std::vector<double> fiber;
  std::vector<double> bounds;
  int samples = 11;
  std::string plane;
  std::string kind = "perpendicular";
  std::vector<std::string> intercepts;
  std::vector<std::string> coefficients;
};

int resolve_alpha_steps(const Options& o) {
  if (o.alpha_steps) return *o.alpha_steps;
  if (const char* env = std::getenv("FPF_ALPHA_STEPS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 2 || v > 1000000) {
      fail(ErrorCode::kInvalidArgument, std::string("FPF_ALPHA_STEPS must be an integer >= 2, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  return AlphaGrid::kDefaultSteps;
}

FitMode parse_mode(const std::string& mode) {
  if (mode == "perpendicular") return FitMode::kPerpendicular;
  if (mode == "vertical") return FitMode::kVertical;
  fail(ErrorCode::kInvalidArgument, "unknown mode '" + mode + "' (expected perpendicular or vertical)");
}

std::vector<io::DatasetRecord> load_dataset(const Options& o) {
  if (o.input.empty()) fail(ErrorCode::kInvalidArgument, "--input is required");
  const io::DataFormat format = o.format.empty() ? io::format_for_path(o.input) : io::parse_format(o.format);
  return io::parse_dataset(io::read_file(o.input), format);
}

std::vector<SpaceFuzzyPoint> points_of(const std::vector<io::DatasetRecord>& records) {
  std::vector<SpaceFuzzyPoint> points;
  points.reserve(records.size());
  for (const auto& r : records) points.push_back(r.point());
  return points;
}

FuzzyPlane load_plane(const std::string& path) {
  if (path.empty()) fail(ErrorCode::kInvalidArgument, "--plane is required");
  const std::string text = io::read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, "malformed plane file '" + path + "': " + e.what());
  }
  return io::plane_from_json(doc);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

FittedFuzzyPlane fit_from(const Options& o, const std::vector<io::DatasetRecord>& records) {
  FitConfig config;
  config.mode = parse_mode(o.mode);
  config.alpha_steps = resolve_alpha_steps(o);
  const auto points = points_of(records);
  return fit_fuzzy_plane(points, config);
}

int cmd_fit(const Options& o, std::ostream& out) {
  const std::string started = utc_now();
  const auto records = load_dataset(o);
  const FittedFuzzyPlane fitted = fit_from(o, records);

  const fs::path dir(o.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create output directory '" + dir.string() + "': " + ec.message());

  const std::string plane_text = io::dump(io::plane_to_json(fitted.plane));
  const std::string residual_text = io::residuals_csv(fitted);
  io::write_file(dir / "plane.json", plane_text);
  io::write_file(dir / "residuals.csv", residual_text);

  Json manifest{
      {"command", "fit"},
      {"input", o.input},
      {"input_sha256", io::sha256_hex(io::read_file(o.input))},
      {"config",
       Json{{"mode", o.mode}, {"alpha_steps", fitted.config.alpha_steps}, {"tolerance", fitted.config.tolerance}}},
      {"outputs", Json::array({Json{{"path", "plane.json"}, {"sha256", io::sha256_hex(plane_text)}},
                               Json{{"path", "residuals.csv"}, {"sha256", io::sha256_hex(residual_text)}}})},
      {"started_at", started},
      {"finished_at", utc_now()}};
  io::write_file(dir / "manifest.json", io::dump(manifest));

  const auto core = fitted.plane.core().coefficients();
  out << "core plane: " << io::format_number(core[0]) << " x + " << io::format_number(core[1]) << " y + "
      << io::format_number(core[2]) << " z + " << io::format_number(core[3]) << " = 0\n";
  out << "wrote " << (dir / "plane.json").string() << ", " << (dir / "residuals.csv").string() << ", "
      << (dir / "manifest.json").string() << "\n";
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const FuzzyPlane plane = load_plane(o.plane);
  if (o.point.empty() == o.fiber.empty()) {
    fail(ErrorCode::kInvalidArgument, "eval needs exactly one of --point X Y Z or --fiber H K");
  }
  if (!o.point.empty()) {
    const Vec3 p(o.point[0], o.point[1], o.point[2]);
    out << io::dump(Json{{"point", Json::array({io::json_number(p.x()), io::json_number(p.y()), io::json_number(p.z())})},
                         {"membership", io::json_number(plane.membership(p))}});
    return 0;
  }
  const FuzzyNumber z = vertical_fiber(plane, o.fiber[0], o.fiber[1], plane.grid());
  out << io::dump(Json{{"fiber", Json::array({io::json_number(o.fiber[0]), io::json_number(o.fiber[1])})},
                       {"z", io::fuzzy_to_json(z)}});
  return 0;
}

int cmd_distance(const Options& o, std::ostream& out) {
  const FuzzyPlane plane = load_plane(o.plane);
  if (o.kind != "perpendicular" && o.kind != "vertical") {
    fail(ErrorCode::kInvalidArgument, "unknown distance kind '" + o.kind + "' (expected perpendicular or vertical)");
  }
  auto measure = [&](const SpaceFuzzyPoint& p) {
    return o.kind == "vertical" ? vertical_distance(p, plane) : perpendicular_distance(p, plane);
  };
  if (o.point.empty() == o.input.empty()) {
    fail(ErrorCode::kInvalidArgument, "distance needs exactly one of --point X Y Z or --input DATASET");
  }
  if (!o.point.empty()) {
    const SpaceFuzzyPoint p(FuzzyNumber::crisp(o.point[0]), FuzzyNumber::crisp(o.point[1]),
                            FuzzyNumber::crisp(o.point[2]));
    out << io::dump(io::distance_to_json(measure(p)));
    return 0;
  }
  const auto records = load_dataset(o);
  Json rows = Json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    Json row{{"index", i}};
    if (records[i].label) row["label"] = *records[i].label;
    row["levels"] = io::distance_to_json(measure(records[i].point()));
    rows.push_back(std::move(row));
  }
  out << io::dump(Json{{"kind", o.kind}, {"distances", std::move(rows)}});
  return 0;
}

int cmd_degree(const Options& o, std::ostream& out) {
  const auto records = load_dataset(o);
  const FuzzyPlane plane = o.plane.empty() ? fit_from(o, records).plane : load_plane(o.plane);
  Json rows = Json::array();
  double delta = 1.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double gamma = containment(records[i].point(), plane);
    delta = std::min(delta, gamma);
    Json row{{"index", i}};
    if (records[i].label) row["label"] = *records[i].label;
    row["gamma"] = io::json_number(gamma);
    rows.push_back(std::move(row));
  }
  out << io::dump(Json{{"delta", io::json_number(delta)}, {"points", std::move(rows)}});
  return 0;
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> alphas;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    char* stop = nullptr;
    const double a = std::strtod(item.c_str(), &stop);
    if (item.empty() || *stop != '\0') fail(ErrorCode::kInvalidArgument, "bad alpha '" + item + "' in --alphas");
    check_alpha(a);
    alphas.push_back(a);
    start = end + 1;
  }
  return alphas;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const FuzzyPlane plane = load_plane(o.plane);
  const std::vector<double> alphas = parse_alpha_list(o.alphas);
  std::vector<double> bounds = o.bounds;
  if (bounds.empty() && !o.input.empty()) {
    const auto records = load_dataset(o);
    bounds = {kInf, -kInf, kInf, -kInf};
    for (const auto& r : records) {
      bounds[0] = std::min(bounds[0], r.x.core());
      bounds[1] = std::max(bounds[1], r.x.core());
      bounds[2] = std::min(bounds[2], r.y.core());
      bounds[3] = std::max(bounds[3], r.y.core());
    }
  }
  if (bounds.empty()) bounds = {-1.0, 1.0, -1.0, 1.0};
  if (o.samples < 1) fail(ErrorCode::kInvalidArgument, "--samples must be >= 1");
  auto axis = [&](double lo, double hi, int i) {
    return o.samples == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(o.samples - 1);
  };
  std::string csv = "alpha,x,y,z_lower,z_core,z_upper\n";
  for (double alpha : alphas) {
    const LevelPair level = plane.level(alpha);
    for (int i = 0; i < o.samples; ++i) {
      for (int j = 0; j < o.samples; ++j) {
        const double x = axis(bounds[0], bounds[1], i);
        const double y = axis(bounds[2], bounds[3], j);
        const double zl = plane.unbounded().lower ? -kInf : level.lower.height_at(x, y);
        const double zu = plane.unbounded().upper ? kInf : level.upper.height_at(x, y);
        csv += io::format_number(alpha) + "," + io::format_number(x) + "," + io::format_number(y) + "," +
               io::format_number(zl) + "," + io::format_number(plane.core().height_at(x, y)) + "," +
               io::format_number(zu) + "\n";
      }
    }
  }
  out << csv;
  return 0;
}

FuzzyNumber literal(const std::string& text, const std::string& where) {
  Json doc = Json::parse(text, nullptr, false);
  if (!doc.is_discarded()) return io::fuzzy_from_json(doc, where);
  return io::fuzzy_from_csv(text, where);
}

int cmd_make_plane(const Options& o, std::ostream& out) {
  if (o.intercepts.empty() == o.coefficients.empty()) {
    fail(ErrorCode::kInvalidArgument, "make-plane needs exactly one of --intercepts or --coefficients");
  }
  const AlphaGrid grid(resolve_alpha_steps(o));
  FuzzyPlane plane = [&] {
    if (!o.intercepts.empty()) {
      return from_intercepts(literal(o.intercepts[0], "x intercept"), literal(o.intercepts[1], "y intercept"),
                             literal(o.intercepts[2], "z intercept"), grid);
    }
    return from_coefficients(literal(o.coefficients[0], "a"), literal(o.coefficients[1], "b"),
                             literal(o.coefficients[2], "c"), literal(o.coefficients[3], "d"), grid);
  }();
  const std::string text = io::dump(io::plane_to_json(plane));
  if (o.output.empty()) {
    out << text;
  } else {
    io::write_file(o.output, text);
    out << "wrote " << o.output << "\n";
  }
  return 0;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return 1;
    case ErrorCode::kDegenerateGeometry:
    case ErrorCode::kZeroDivisor:
    case ErrorCode::kNonGraph:
    case ErrorCode::kEmptyIntersection:
      return 2;
    case ErrorCode::kIo:
      return 3;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy plane fitting and evaluation", "fpf"};
  app.require_subcommand(1);
  Options o;

  auto add_steps = [&](CLI::App* sub) {
    sub->add_option("--alpha-steps", o.alpha_steps, "Number of alpha levels (default 101 or $FPF_ALPHA_STEPS)")
        ->check(CLI::Range(2, 1000000));
  };
  auto add_dataset = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--input", o.input, "Dataset file (.json or .csv)");
    if (required) opt->required();
    sub->add_option("--format", o.format, "Dataset format override")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Fitting mode")->check(CLI::IsMember({"perpendicular", "vertical"}));
  };

  auto* fit = app.add_subcommand("fit", "Fit a fuzzy plane to a dataset");
  add_dataset(fit, true);
  add_mode(fit);
  add_steps(fit);
  fit->add_option("--output-dir", o.output_dir, "Directory for plane.json, residuals.csv, manifest.json");

  auto* eval = app.add_subcommand("eval", "Membership of a point or vertical fiber of a fuzzy plane");
  eval->add_option("--plane", o.plane, "Fuzzy plane JSON")->required();
  eval->add_option("--point", o.point, "Crisp point X Y Z")->expected(3)->allow_extra_args(false);
  eval->add_option("--fiber", o.fiber, "Fiber location H K")->expected(2)->allow_extra_args(false);

  auto* distance = app.add_subcommand("distance", "Fuzzy distance from points to a fuzzy plane");
  distance->add_option("--plane", o.plane, "Fuzzy plane JSON")->required();
  distance->add_option("--point", o.point, "Crisp point X Y Z")->expected(3)->allow_extra_args(false);
  add_dataset(distance, false);
  distance->add_option("--kind", o.kind, "perpendicular or vertical")
      ->check(CLI::IsMember({"perpendicular", "vertical"}));

  auto* degree = app.add_subcommand("degree", "Containment of each point and the degree of fit");
  add_dataset(degree, true);
  degree->add_option("--plane", o.plane, "Fuzzy plane JSON (fitted from the dataset when omitted)");
  add_mode(degree);
  add_steps(degree);

  auto* sample = app.add_subcommand("sample", "Level-plane heights on an x-y grid as CSV");
  sample->add_option("--plane", o.plane, "Fuzzy plane JSON")->required();
  sample->add_option("--alphas", o.alphas, "Comma-separated alpha levels");
  sample->add_option("--bounds", o.bounds, "XMIN XMAX YMIN YMAX")->expected(4)->allow_extra_args(false);
  sample->add_option("--samples", o.samples, "Grid points per axis");
  add_dataset(sample, false);

  auto* make = app.add_subcommand("make-plane", "Build a fuzzy plane from fuzzy intercepts or coefficients");
  make->add_option("--intercepts", o.intercepts, "X Y Z intercept literals")->expected(3)->allow_extra_args(false);
  make->add_option("--coefficients", o.coefficients, "A B C D coefficient literals")
      ->expected(4)
      ->allow_extra_args(false);
  make->add_option("--output", o.output, "Output file (stdout when omitted)");
  add_steps(make);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[" << error_code_name(ErrorCode::kParse) << "]: " << one_line(e.what()) << "\n";
    return 1;
  }

  try {
    if (fit->parsed()) return cmd_fit(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (distance->parsed()) return cmd_distance(o, out);
    if (degree->parsed()) return cmd_degree(o, out);
    if (sample->parsed()) return cmd_sample(o, out);
    return cmd_make_plane(o, out);
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << one_line(e.what()) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error[" << error_code_name(ErrorCode::kIo) << "]: " << one_line(e.what()) << "\n";
    return exit_code_for(ErrorCode::kIo);
  }
}

}  // namespace fuzzyplane::cli

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "fuzzyplane/cli.hpp"
#include "fuzzyplane/io.hpp"

using namespace fuzzyplane;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FUZZYPLANE_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run fpf(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fpf_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ErrorCode parse_error_of(const std::string& text, io::DataFormat format) {
  try {
    (void)io::parse_dataset(text, format);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse failure for: " << text);
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1 + 0.2) == "0.3");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(kInf) == "inf");
  CHECK(io::format_number(-kInf) == "-inf");
  CHECK(io::format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(io::json_number(kInf) == io::Json("inf"));
}

TEST_CASE("fuzzy literals") {
  CHECK(io::fuzzy_from_csv("[0,10,10]p") == FuzzyNumber::lr(10, 10, 0, {}, {}, Plateau::kRight));
  CHECK(io::fuzzy_from_csv("[0,10,10]pq2") ==
        FuzzyNumber::lr(10, 10, 0, ReferenceFunction(2), ReferenceFunction(2), Plateau::kRight));
  CHECK(io::fuzzy_from_csv("[5,5,9]lp") == FuzzyNumber::lr(5, 0, 4, {}, {}, Plateau::kLeft));
  CHECK(io::fuzzy_from_csv("7.5") == FuzzyNumber::crisp(7.5));
  CHECK(io::fuzzy_from_json(io::Json::parse("[-2,1,2]")) == FuzzyNumber::triangular(-2, 1, 2));
  CHECK(io::fuzzy_from_json(io::Json::parse(R"({"core":1,"left":2,"right":3,"p_right":2})")) ==
        FuzzyNumber::lr(1, 2, 3, {}, ReferenceFunction(2)));

  for (const auto& f : {FuzzyNumber::lr(10, 10, 0, ReferenceFunction(2), {}, Plateau::kRight),
                        FuzzyNumber::triangular(-1, 0.25, 3), FuzzyNumber::crisp(4)}) {
    CHECK(io::fuzzy_from_json(io::fuzzy_to_json(f)) == f);
    CHECK(io::fuzzy_from_csv(io::fuzzy_to_csv(f)) == f);
  }

  CHECK_THROWS_AS((void)io::fuzzy_from_json(io::Json::parse(R"({"core":1,"left":1,"plateau":"up"})")), Error);
  CHECK_THROWS_AS((void)io::fuzzy_from_json(io::Json::parse(R"({"core":1,"left":-1})")), Error);
  CHECK_THROWS_AS((void)io::fuzzy_from_json(io::Json::parse(R"({"core":1,"spread":1})")), Error);
  CHECK_THROWS_AS((void)io::fuzzy_from_csv("[3,2,4]"), Error);
  CHECK_THROWS_AS((void)io::fuzzy_from_csv("[0,1,2]x"), Error);
}

TEST_CASE("datasets") {
  const auto json = io::parse_dataset(io::read_file(kData / "revenue.json"), io::DataFormat::kJson);
  const auto csv = io::parse_dataset(io::read_file(kData / "revenue.csv"), io::DataFormat::kCsv);
  REQUIRE(json.size() == 4);
  CHECK(json == csv);
  const auto expected = fixture::revenue();
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(json[i].x.is_crisp());
    CHECK(json[i].y.is_crisp());
    CHECK(json[i].z == expected[i].z());
    CHECK(*json[i].label == "N" + std::to_string(i + 1));
  }

  const auto row = io::parse_dataset("50,20,[0,10,10]p\n", io::DataFormat::kCsv);
  REQUIRE(row.size() == 1);
  CHECK(row[0].z == expected[0].z());

  for (auto format : {io::DataFormat::kJson, io::DataFormat::kCsv}) {
    const std::string once = io::serialize_dataset(json, format);
    CHECK(io::parse_dataset(once, format) == json);
    CHECK(io::serialize_dataset(io::parse_dataset(once, format), format) == once);
  }

  CHECK(parse_error_of(R"({"points": []})", io::DataFormat::kJson) == ErrorCode::kParse);
  CHECK(parse_error_of("x,y,z\n", io::DataFormat::kCsv) == ErrorCode::kParse);
  CHECK(parse_error_of(R"({"points": [{"x": 1, "y": 2, "w": 3}]})", io::DataFormat::kJson) == ErrorCode::kParse);
  CHECK(parse_error_of("1,2\n", io::DataFormat::kCsv) == ErrorCode::kParse);
  try {
    (void)io::parse_dataset(R"({"points": []})", io::DataFormat::kJson);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("dataset empty") != std::string::npos);
  }
}

TEST_CASE("plane documents round trip") {
  const auto tri = FuzzyNumber::triangular(-2, 1, 2);
  const auto plane = from_intercepts(tri, tri, tri, AlphaGrid(11));
  const auto doc = io::plane_to_json(plane);
  const auto back = io::plane_from_json(doc);
  CHECK(io::dump(io::plane_to_json(back)) == io::dump(doc));
  CHECK(back.membership(Vec3(3, 4, -7)) == Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)io::plane_from_json(io::Json::parse(R"({"alpha_levels": []})")), Error);
}

TEST_CASE("fit writes plane, residuals and manifest") {
  const auto dir = scratch("fit");
  const auto r = fpf({"fit", "--input", (kData / "revenue.json").string(), "--mode", "vertical", "--alpha-steps", "101",
                      "--output-dir", dir.string()});
  REQUIRE(r.code == 0);
  const std::string residuals = io::read_file(dir / "residuals.csv");
  const auto at = residuals.find("\n0.8,");
  REQUIRE(at != std::string::npos);
  std::istringstream row(residuals.substr(at + 1, residuals.find('\n', at + 1) - at - 1));
  std::vector<double> cells;
  for (std::string cell; std::getline(row, cell, ',');) cells.push_back(std::stod(cell));
  CHECK(std::abs(cells[1] - 0.0375) <= 1e-3);
  CHECK(std::abs(cells[2] + 0.0205) <= 1e-3);
  CHECK(cells[3] == -1.0);
  CHECK(std::abs(cells[4] - 4.8631) <= 1e-3);

  const auto manifest = io::Json::parse(io::read_file(dir / "manifest.json"));
  CHECK(manifest["command"] == "fit");
  for (const auto& entry : manifest["outputs"]) {
    CHECK(entry["sha256"] == io::sha256_hex(io::read_file(dir / entry["path"].get<std::string>())));
  }
  CHECK(manifest["input_sha256"] == io::sha256_hex(io::read_file(kData / "revenue.json")));

  const auto again = scratch("fit_again");
  REQUIRE(fpf({"fit", "--input", (kData / "revenue.csv").string(), "--mode", "vertical", "--output-dir",
               again.string()})
              .code == 0);
  CHECK(io::read_file(dir / "plane.json") == io::read_file(again / "plane.json"));
  CHECK(io::read_file(dir / "residuals.csv") == io::read_file(again / "residuals.csv"));
}

TEST_CASE("eval, distance, degree and sample") {
  const auto dir = scratch("eval");
  const auto plane = (dir / "p.json").string();
  REQUIRE(fpf({"make-plane", "--intercepts", "[-2,1,2]", "[-2,1,2]", "[-2,1,2]", "--output", plane}).code == 0);

  auto r = fpf({"eval", "--plane", plane, "--point", "3", "4", "-7"});
  REQUIRE(r.code == 0);
  CHECK(io::Json::parse(r.out)["membership"].get<double>() == Approx(2.0 / 3.0).epsilon(1e-3));
  r = fpf({"eval", "--plane", plane, "--point", "300", "4", "-7"});
  CHECK(io::Json::parse(r.out)["membership"].get<double>() == 0.0);
  r = fpf({"eval", "--plane", plane, "--fiber", "0", "0"});
  CHECK(io::fuzzy_from_json(io::Json::parse(r.out)["z"]) == FuzzyNumber::triangular(-2, 1, 2));

  const auto flat = (dir / "flat.json").string();
  REQUIRE(fpf({"make-plane", "--coefficients", "0", "0", "1", "0", "--output", flat}).code == 0);
  for (const std::string kind : {"vertical", "perpendicular"}) {
    r = fpf({"distance", "--plane", flat, "--point", "0", "0", "3", "--kind", kind});
    REQUIRE(r.code == 0);
    for (const auto& level : io::Json::parse(r.out)) {
      CHECK(level["lo"].get<double>() == Approx(3));
      CHECK(level["hi"].get<double>() == Approx(3));
    }
  }

  const auto fit_dir = scratch("eval_fit");
  REQUIRE(fpf({"fit", "--input", (kData / "revenue.json").string(), "--mode", "vertical", "--output-dir",
               fit_dir.string()})
              .code == 0);
  const auto fitted = (fit_dir / "plane.json").string();
  r = fpf({"degree", "--input", (kData / "revenue.json").string(), "--plane", fitted});
  REQUIRE(r.code == 0);
  const auto degree = io::Json::parse(r.out);
  REQUIRE(degree["points"].size() == 4);
  double smallest = 1.0;
  for (const auto& p : degree["points"]) smallest = std::min(smallest, p["gamma"].get<double>());
  CHECK(degree["delta"].get<double>() == smallest);

  r = fpf({"sample", "--plane", fitted, "--alphas", "0,0.5,0.8,1", "--bounds", "30", "60", "5", "25", "--samples",
           "4"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "alpha,x,y,z_lower,z_core,z_upper");
  int zero_rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("0,", 0) != 0) continue;
    ++zero_rows;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    CHECK(cells[3] == "0");
    CHECK(cells[4] == "10");
    CHECK(cells[5] == "inf");
  }
  CHECK(zero_rows == 16);
}

TEST_CASE("exit codes and error lines") {
  const auto dir = scratch("errors");
  auto r = fpf({"fit", "--input", (dir / "missing.json").string()});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("error[", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  io::write_file(dir / "two.json", R"({"points": [{"x": 0, "y": 0, "z": 0}, {"x": 1, "y": 1, "z": 1}]})");
  r = fpf({"fit", "--input", (dir / "two.json").string()});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error[", 0) == 0);

  io::write_file(dir / "bad.json", "{ not json");
  r = fpf({"fit", "--input", (dir / "bad.json").string()});
  CHECK(r.code == 1);
  r = fpf({"eval", "--plane", (dir / "bad.json").string(), "--point", "0", "0", "0"});
  CHECK(r.code == 1);
  r = fpf({"fit", "--input", (kData / "revenue.json").string(), "--mode", "sideways"});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error[", 0) == 0);
  r = fpf({"frobnicate"});
  CHECK(r.code == 1);
  r = fpf({"make-plane", "--coefficients", "0", "0", "[-1,0,1]", "0"});
  CHECK(r.code == 2);
}

TEST_CASE("alpha steps come from the environment when the flag is absent") {
  const auto dir = scratch("env");
  ::setenv("FPF_ALPHA_STEPS", "11", 1);
  REQUIRE(fpf({"fit", "--input", (kData / "revenue.json").string(), "--output-dir", dir.string()}).code == 0);
  CHECK(io::plane_from_json(io::Json::parse(io::read_file(dir / "plane.json"))).levels().size() == 11);
  REQUIRE(fpf({"fit", "--input", (kData / "revenue.json").string(), "--alpha-steps", "21", "--output-dir",
               dir.string()})
              .code == 0);
  CHECK(io::plane_from_json(io::Json::parse(io::read_file(dir / "plane.json"))).levels().size() == 21);
  ::unsetenv("FPF_ALPHA_STEPS");
}

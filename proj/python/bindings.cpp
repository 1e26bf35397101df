#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "fuzzyplane/error.hpp"
#include "fuzzyplane/fuzzy_distance.hpp"
#include "fuzzyplane/io.hpp"
#include "fuzzyplane/plane_fitting.hpp"

namespace py = pybind11;
using namespace fuzzyplane;

namespace {

Plateau plateau_from(const std::string& name) {
  if (name == "none") return Plateau::kNone;
  if (name == "left") return Plateau::kLeft;
  if (name == "right") return Plateau::kRight;
  throw py::value_error("plateau must be 'none', 'left' or 'right', got '" + name + "'");
}

FitMode mode_from(const std::string& name) {
  if (name == "perpendicular") return FitMode::kPerpendicular;
  if (name == "vertical") return FitMode::kVertical;
  throw py::value_error("mode must be 'perpendicular' or 'vertical', got '" + name + "'");
}

py::list levels_list(const FuzzyDistance& d) {
  py::list out;
  for (const auto& l : d.levels) out.append(py::make_tuple(l.alpha, l.lo, l.hi));
  return out;
}

std::vector<Vec3> rows(const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>& m) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) pts.emplace_back(m(i, 0), m(i, 1), m(i, 2));
  return pts;
}

void bind_numbers(py::module_& m) {
  py::class_<FuzzyNumber>(m, "FuzzyNumber")
      .def(py::init<>())
      .def_static(
          "lr",
          [](double core, double left, double right, double p_left, double p_right, const std::string& plateau) {
            return FuzzyNumber::lr(core, left, right, ReferenceFunction(p_left), ReferenceFunction(p_right),
                                   plateau_from(plateau));
          },
          py::arg("core"), py::arg("left"), py::arg("right"), py::arg("p_left") = 1.0, py::arg("p_right") = 1.0,
          py::arg("plateau") = "none")
      .def_static("triangular", &FuzzyNumber::triangular, py::arg("lo"), py::arg("core"), py::arg("hi"))
      .def_static("crisp", &FuzzyNumber::crisp, py::arg("value"))
      .def_property_readonly("core", &FuzzyNumber::core)
      .def_property_readonly("left_spread", &FuzzyNumber::left_spread)
      .def_property_readonly("right_spread", &FuzzyNumber::right_spread)
      .def_property_readonly("is_crisp", &FuzzyNumber::is_crisp)
      .def("membership", &FuzzyNumber::membership, py::arg("x"))
      .def(
          "same_points",
          [](const FuzzyNumber& f, double alpha) {
            const auto s = f.same_points(alpha);
            return py::make_tuple(s.lo, s.hi);
          },
          py::arg("alpha"))
      .def("shifted", &FuzzyNumber::shifted, py::arg("delta"))
      .def(py::self == py::self)
      .def("__repr__", [](const FuzzyNumber& f) { return "FuzzyNumber(" + io::fuzzy_to_json(f).dump() + ")"; });

  py::class_<SpaceFuzzyPoint>(m, "SpaceFuzzyPoint")
      .def(py::init<FuzzyNumber, FuzzyNumber, FuzzyNumber>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_property_readonly("x", &SpaceFuzzyPoint::x)
      .def_property_readonly("y", &SpaceFuzzyPoint::y)
      .def_property_readonly("z", &SpaceFuzzyPoint::z)
      .def_property_readonly("core", &SpaceFuzzyPoint::core)
      .def("membership", &SpaceFuzzyPoint::membership, py::arg("p"))
      .def(
          "cut",
          [](const SpaceFuzzyPoint& p, double alpha) {
            const Box b = p.cut(alpha);
            return py::make_tuple(Vec3(b.lo), Vec3(b.hi));
          },
          py::arg("alpha"), "Lower and upper corners of the alpha-cut box.");
}

void bind_planes(py::module_& m) {
  py::class_<CrispPlane>(m, "CrispPlane")
      .def(py::init<>())
      .def_static("from_coefficients", py::overload_cast<double, double, double, double>(&CrispPlane::from_coefficients),
                  py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("from_height", &CrispPlane::from_height, py::arg("slope_x"), py::arg("slope_y"),
                  py::arg("intercept"))
      .def_property_readonly("normal", &CrispPlane::normal)
      .def_property_readonly("offset", &CrispPlane::offset)
      .def_property_readonly("coefficients", &CrispPlane::coefficients)
      .def("signed_distance", &CrispPlane::signed_distance, py::arg("p"))
      .def("distance", &CrispPlane::distance, py::arg("p"))
      .def("height_at", &CrispPlane::height_at, py::arg("x"), py::arg("y"))
      .def("height_coefficients", &CrispPlane::height_coefficients);

  py::class_<FuzzyPlane>(m, "FuzzyPlane")
      .def_property_readonly("core", &FuzzyPlane::core)
      .def_property_readonly("alphas",
                             [](const FuzzyPlane& p) {
                               std::vector<double> a;
                               for (const auto& l : p.levels()) a.push_back(l.alpha);
                               return a;
                             })
      .def_property_readonly("unbounded",
                             [](const FuzzyPlane& p) {
                               return py::make_tuple(p.unbounded().lower, p.unbounded().upper);
                             })
      .def(
          "level",
          [](const FuzzyPlane& p, double alpha) {
            const auto l = p.level(alpha);
            return py::make_tuple(l.lower, l.upper);
          },
          py::arg("alpha"))
      .def("membership", &FuzzyPlane::membership, py::arg("p"))
      .def(
          "vertical_fiber", [](const FuzzyPlane& p, double h, double k) { return vertical_fiber(p, h, k); },
          py::arg("h"), py::arg("k"))
      .def(
          "point_pair",
          [](const FuzzyPlane& p, double slope, double intercept, const Vec3& at) {
            return plane_point_pair(p, slope, intercept, at);
          },
          py::arg("slope"), py::arg("intercept"), py::arg("at"))
      .def("equational_form", [](const FuzzyPlane& p) {
        const auto f = equational_form(p);
        return py::make_tuple(f.g1, f.core, f.g2);
      });

  m.def(
      "from_intercepts",
      [](const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& z, int steps) {
        return from_intercepts(x, y, z, AlphaGrid(steps));
      },
      py::arg("x"), py::arg("y"), py::arg("z"), py::arg("alpha_steps") = AlphaGrid::kDefaultSteps);
  m.def(
      "from_coefficients",
      [](const FuzzyNumber& a, const FuzzyNumber& b, const FuzzyNumber& c, const FuzzyNumber& d, int steps) {
        return from_coefficients(a, b, c, d, AlphaGrid(steps));
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("alpha_steps") = AlphaGrid::kDefaultSteps);
}

void bind_metrics(py::module_& m) {
  m.def(
      "perpendicular_distance",
      [](const SpaceFuzzyPoint& p, const FuzzyPlane& plane) { return levels_list(perpendicular_distance(p, plane)); },
      py::arg("point"), py::arg("plane"), "List of (alpha, lo, hi).");
  m.def(
      "vertical_distance",
      [](const SpaceFuzzyPoint& p, const FuzzyPlane& plane) { return levels_list(vertical_distance(p, plane)); },
      py::arg("point"), py::arg("plane"), "List of (alpha, lo, hi).");

  py::class_<FittedFuzzyPlane>(m, "FittedFuzzyPlane")
      .def_readonly("plane", &FittedFuzzyPlane::plane)
      .def_readonly("shifted_points", &FittedFuzzyPlane::shifted_points)
      .def_readonly("normal_fuzzy_numbers", &FittedFuzzyPlane::normal_fuzzy_numbers)
      .def_property_readonly("residuals", [](const FittedFuzzyPlane& f) {
        py::list out;
        for (const auto& r : f.residuals) out.append(py::make_tuple(r.alpha, r.sse_lower, r.sse_upper));
        return out;
      });

  m.def(
      "fit_crisp_plane",
      [](const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>& points, const std::string& mode) {
        return fit_crisp_plane(rows(points), mode_from(mode));
      },
      py::arg("points"), py::arg("mode") = "perpendicular");
  m.def(
      "fit_fuzzy_plane",
      [](const std::vector<SpaceFuzzyPoint>& points, const std::string& mode, int steps) {
        return fit_fuzzy_plane(points, {mode_from(mode), steps});
      },
      py::arg("points"), py::arg("mode") = "perpendicular", py::arg("alpha_steps") = AlphaGrid::kDefaultSteps);
  m.def(
      "containment", [](const SpaceFuzzyPoint& p, const FuzzyPlane& plane) { return containment(p, plane); },
      py::arg("point"), py::arg("plane"));
  m.def(
      "degree_of_fit",
      [](const std::vector<SpaceFuzzyPoint>& points, const FuzzyPlane& plane) { return degree_of_fit(points, plane); },
      py::arg("points"), py::arg("plane"));
}

void bind_io(py::module_& m) {
  m.def(
      "load_dataset",
      [](const std::string& path) {
        const auto records = io::parse_dataset(io::read_file(path), io::format_for_path(path));
        std::vector<SpaceFuzzyPoint> points;
        for (const auto& r : records) points.push_back(r.point());
        return points;
      },
      py::arg("path"));
  m.def(
      "plane_to_json", [](const FuzzyPlane& p) { return io::dump(io::plane_to_json(p)); }, py::arg("plane"));
  m.def(
      "plane_from_json", [](const std::string& text) { return io::plane_from_json(io::Json::parse(text)); },
      py::arg("text"));
}

}  // namespace

PYBIND11_MODULE(_fuzzyplane, m) {
  m.doc() = "Fuzzy planes, space fuzzy points, fuzzy distances and fuzzy plane fitting";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "FuzzyPlaneError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error.get_stored(), (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(error.get_stored(), (std::string("parse: ") + e.what()).c_str());
    }
  });

  bind_numbers(m);
  bind_planes(m);
  bind_metrics(m);
  bind_io(m);
}

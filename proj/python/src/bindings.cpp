#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cornerlab/analysis.hpp"
#include "cornerlab/configs.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/extremal.hpp"
#include "cornerlab/ramsey.hpp"
#include "cornerlab/saturation.hpp"
#include "cornerlab/verify.hpp"

namespace py = pybind11;
using namespace cornerlab;

namespace {

using Pt = std::pair<std::int64_t, std::int64_t>;

Point to_point(const Pt& p) { return {p.first, p.second}; }
Pt from_point(Point p) { return {p.x, p.y}; }

PointSet make_set(const Domain& d, const std::vector<Pt>& pts) {
  std::vector<Point> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.push_back(to_point(p));
  return PointSet::from_points(d, v);
}

std::vector<Pt> to_list(const PointSet& s) {
  std::vector<Pt> out;
  for (const Point& p : s.points()) out.push_back(from_point(p));
  return out;
}

ConfigKind parse_kind(const std::string& kind) {
  if (kind == "corner") return ConfigKind::Corner;
  if (kind == "square") return ConfigKind::Square;
  throw Error(ErrorCode::InvalidArgument, "kind must be 'corner' or 'square', got '" + kind + "'");
}

Orientation parse_orientation(const std::string& o) {
  if (o == "tilted") return Orientation::Tilted;
  if (o == "axis") return Orientation::AxisParallel;
  throw Error(ErrorCode::InvalidArgument, "orientation must be 'tilted' or 'axis', got '" + o + "'");
}

SearchMode parse_search_mode(const std::string& m) {
  if (m == "exact") return SearchMode::Exact;
  if (m == "bb") return SearchMode::BranchBound;
  if (m == "greedy") return SearchMode::Greedy;
  throw Error(ErrorCode::InvalidArgument, "mode must be exact, bb or greedy, got '" + m + "'");
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corner and square configurations in finite planes and integer grids.";

  static py::exception<Error> error_type(m, "CornerlabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Domain>(m, "Domain")
      .def_static("plane", &Domain::prime_plane, py::arg("p"))
      .def_static("grid", &Domain::integer_grid, py::arg("n"))
      .def_property_readonly("size", &Domain::size)
      .def_property_readonly("is_plane", &Domain::is_plane)
      .def_property_readonly("point_count", &Domain::point_count)
      .def("__repr__", [](const Domain& d) {
        return (d.is_plane() ? "Domain.plane(" : "Domain.grid(") + std::to_string(d.size()) + ")";
      });

  m.def("count_corners", [](const Domain& d, const std::vector<Pt>& pts, bool degenerate, int threads) {
    return count_corners(make_set(d, pts), degenerate, threads);
  }, py::arg("domain"), py::arg("points"), py::arg("include_degenerate") = false, py::arg("threads") = 1);
  m.def("count_squares", [](const Domain& d, const std::vector<Pt>& pts, bool degenerate, int threads) {
    return count_squares(make_set(d, pts), degenerate, threads);
  }, py::arg("domain"), py::arg("points"), py::arg("include_degenerate") = false, py::arg("threads") = 1);

  m.def("apex", [](const Domain& d, Pt beta, Pt gamma) {
    return from_point(apex(to_point(beta), to_point(gamma), d));
  }, py::arg("domain"), py::arg("beta"), py::arg("gamma"));
  m.def("fourth_vertex", [](const Domain& d, Pt alpha, Pt beta, Pt gamma) {
    return from_point(fourth_vertex(to_point(alpha), to_point(beta), to_point(gamma), d));
  }, py::arg("domain"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  m.def("check_saturated", [](const Domain& d, const std::vector<Pt>& pts, const std::string& kind) {
    SaturationKind k = SaturationKind::Corner;
    if (kind == "square") k = SaturationKind::Square;
    else if (kind == "square_cover") k = SaturationKind::SquareCover;
    else if (kind != "corner") throw Error(ErrorCode::InvalidArgument, "unknown saturation kind '" + kind + "'");
    const auto r = check_saturated(make_set(d, pts), k);
    py::dict out;
    out["config_free"] = r.is_config_free;
    out["saturated"] = r.is_saturated;
    out["witness_uncovered"] = r.witness_uncovered ? py::cast(from_point(*r.witness_uncovered)) : py::none();
    return out;
  }, py::arg("domain"), py::arg("points"), py::arg("kind") = "corner");
  m.def("vertical_line_set", [](std::int64_t p) { return to_list(vertical_line_set(p)); }, py::arg("p"));
  m.def("corner_sat_lower_bound", &corner_sat_lower_bound, py::arg("p"));

  m.def("min_saturated", [](const Domain& d, const std::string& kind, const std::string& mode, std::uint64_t budget,
                            std::uint64_t seed, int threads) {
    SearchOptions o;
    o.kind = parse_kind(kind);
    o.mode = parse_search_mode(mode);
    o.budget = budget;
    o.seed = seed;
    o.threads = threads;
    const SearchResult r = [&] {
      py::gil_scoped_release release;
      return min_saturated_search(d, o);
    }();
    py::dict out;
    out["best_size"] = r.best_size;
    out["status"] = to_string(r.status);
    out["points"] = to_list(r.best_set);
    out["nodes_explored"] = r.nodes_explored;
    return out;
  }, py::arg("domain"), py::arg("kind") = "corner", py::arg("mode") = "bb", py::arg("budget") = 0,
     py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("max_config_free", [](const Domain& d, const std::string& kind, const std::string& orientation,
                              bool exact, std::uint64_t budget, std::uint64_t seed, int threads) {
    ExtremalTarget t{parse_kind(kind), parse_orientation(orientation), {}};
    ExtremalOptions o;
    o.mode = exact ? ExtremalMode::Exact : ExtremalMode::Heuristic;
    o.budget = budget;
    o.seed = seed;
    o.threads = threads;
    ExtremalRecord r = [&] {
      py::gil_scoped_release release;
      return max_config_free(d, t, o);
    }();
    py::dict out;
    out["max_size_found"] = r.max_size_found;
    out["proved"] = r.proved;
    out["points"] = to_list(r.example_set);
    out["density"] = to_string(r.density);
    return out;
  }, py::arg("domain"), py::arg("kind") = "corner", py::arg("orientation") = "tilted", py::arg("exact") = true,
     py::arg("budget") = 0, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("mono_corner_counts", [](std::int64_t p, const std::vector<int>& colors, double C) {
    const auto c = mono_corner_counts(Coloring::from_colors(Domain::prime_plane(p), 2, colors), C);
    py::dict out;
    out["sigma_R"] = c.sigma_R;
    out["sigma_B"] = c.sigma_B;
    out["bound"] = c.bound;
    out["margin"] = c.margin;
    return out;
  }, py::arg("p"), py::arg("colors"), py::arg("C") = kDefaultMonoConstant);
  m.def("is_quadratic_residue", &is_quadratic_residue, py::arg("x"), py::arg("p"));

  m.def("bessel_j0", &bessel_j0, py::arg("t"));
  m.def("g_function", &g_function, py::arg("t"));
  m.def("minimize_g", [](double limit, double tol, std::size_t audit_points) {
    const auto r = minimize_g(limit, tol, audit_points);
    py::dict out;
    out["t_star"] = r.t_star;
    out["g_min"] = r.g_min;
    out["bracket"] = r.bracket;
    out["audit_passed"] = r.audit_passed;
    out["tail_ok"] = r.tail_ok;
    return out;
  }, py::arg("search_limit") = 60.0, py::arg("tol") = 1e-10, py::arg("audit_points") = 1'000'000);
  m.def("measure_lower_bound", py::overload_cast<>(&measure_lower_bound));

  m.def("verify_claims", [](std::vector<std::int64_t> primes, std::vector<std::int64_t> grids, std::uint64_t seed,
                            int threads) {
    VerifyOptions o{std::move(primes), std::move(grids), seed, threads};
    VerifyReport r = [&] {
      py::gil_scoped_release release;
      return verify_claims(o);
    }();
    py::dict out;
    out["checks"] = json_to_py(r.checks);
    out["all_passed"] = r.all_passed;
    out["digest"] = r.digest;
    return out;
  }, py::arg("primes") = std::vector<std::int64_t>{3, 5, 7, 11}, py::arg("grids") = std::vector<std::int64_t>{4, 8},
     py::arg("seed") = 0, py::arg("threads") = 1);
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "dkc/afn.hpp"
#include "dkc/kcenter.hpp"
#include "dkc/metric.hpp"
#include "dkc/navigating_net.hpp"
#include "dkc/oracles.hpp"
#include "dkc/workload.hpp"

namespace py = pybind11;
using namespace dkc;

namespace {

// Python locations: a sequence of floats (Euclidean) or an int row (matrix).
Location to_location(const Metric& metric, const py::handle& obj) {
  Location loc;
  if (metric.is_euclidean())
    loc = obj.cast<Coords>();
  else
    loc = MatrixRow{obj.cast<std::size_t>()};
  metric.validate(loc);
  return loc;
}

std::vector<Location> to_locations(const Metric& metric, const py::iterable& objs) {
  std::vector<Location> out;
  for (auto o : objs) out.push_back(to_location(metric, o));
  return out;
}

py::object from_location(const Location& loc) {
  if (const auto* c = std::get_if<Coords>(&loc)) return py::cast(*c);
  return py::cast(std::get<MatrixRow>(loc).index);
}

std::vector<MetricPoint> live_points(const NavigatingNet& net) {
  std::vector<MetricPoint> out;
  for (PointId id : net.ids()) out.push_back({id, net.location(id)});
  return out;
}

Metric make_metric(std::optional<std::size_t> dim,
                   std::optional<std::vector<std::vector<double>>> matrix) {
  if (dim.has_value() == matrix.has_value())
    throw std::invalid_argument("give exactly one of dim= or matrix=");
  if (dim) return Metric::euclidean(*dim);
  const std::size_t n = matrix->size();
  std::vector<double> table;
  for (const auto& row : *matrix) {
    if (row.size() != n) throw std::invalid_argument("distance matrix must be square");
    table.insert(table.end(), row.begin(), row.end());
  }
  return Metric::matrix(std::move(table), n);
}

py::dict stats_dict(const QueryStats& s) {
  py::dict d;
  d["iterations"] = s.iterations;
  d["max_frontier"] = s.max_frontier;
  d["start_scale"] = s.start_scale.exponent;
  d["end_scale"] = s.end_scale.exponent;
  d["frontier_sizes"] = s.frontier_sizes;
  d["distance_evaluations"] = s.distance_evaluations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamic navigating net with approximate furthest-neighbor and k-center queries.";

  py::class_<SolverStats>(m, "SolverStats")
      .def_readonly("afn_calls", &SolverStats::afn_calls)
      .def_readonly("total_iterations", &SolverStats::total_iterations)
      .def_readonly("max_iterations", &SolverStats::max_iterations)
      .def_readonly("max_frontier", &SolverStats::max_frontier)
      .def_readonly("distance_evaluations", &SolverStats::distance_evaluations)
      .def_readonly("loop_steps", &SolverStats::loop_steps)
      .def_readonly("guesses", &SolverStats::guesses);

  py::class_<CoverSolution>(m, "CoverSolution")
      .def_property_readonly("centers",
                             [](const CoverSolution& s) {
                               py::list out;
                               for (const auto& c : s.centers) out.append(from_location(c));
                               return out;
                             })
      .def_readonly("center_ids", &CoverSolution::center_ids)
      .def_readonly("radius", &CoverSolution::radius)
      .def_readonly("scanned_radius", &CoverSolution::scanned_radius)
      .def_readonly("certified", &CoverSolution::certified)
      .def_readonly("stats", &CoverSolution::stats)
      .def("__repr__", [](const CoverSolution& s) {
        std::ostringstream os;
        os << "CoverSolution(centers=" << s.centers.size() << ", radius=" << s.radius << ")";
        return os.str();
      });

  py::class_<NavigatingNet>(m, "Net")
      .def(py::init([](std::optional<std::size_t> dim,
                       std::optional<std::vector<std::vector<double>>> matrix, double gamma) {
             return NavigatingNet(make_metric(dim, std::move(matrix)), NetOptions{gamma, false});
           }),
           py::kw_only(), py::arg("dim") = py::none(), py::arg("matrix") = py::none(),
           py::arg("gamma") = 4.0,
           "Empty net over R^dim, or over the finite metric given by a distance matrix.")
      .def(
          "insert",
          [](NavigatingNet& net, PointId id, const py::handle& loc) {
            net.insert({id, to_location(net.metric(), loc)});
          },
          py::arg("id"), py::arg("location"))
      .def("erase", &NavigatingNet::erase, py::arg("id"))
      .def("__contains__", &NavigatingNet::contains)
      .def("__len__", &NavigatingNet::size)
      .def("ids", &NavigatingNet::ids)
      .def("location", [](const NavigatingNet& net, PointId id) { return from_location(net.location(id)); })
      .def_property_readonly("root", &NavigatingNet::root)
      .def("top_exponent", &NavigatingNet::top_exponent)
      .def("verify", [](const NavigatingNet& net) {
        auto rep = net.verify_invariants();
        return py::make_tuple(rep.pass, rep.violation);
      })
      .def("dump", &NavigatingNet::dump);

  m.def(
      "afn",
      [](const NavigatingNet& net, const py::iterable& queries, double eps) {
        auto c = to_locations(net.metric(), queries);
        AfnResult r;
        {
          py::gil_scoped_release release;
          r = afn(net, c, eps);
        }
        return py::make_tuple(r.point, r.distance, stats_dict(r.stats));
      },
      py::arg("net"), py::arg("queries"), py::arg("eps"),
      "(1+eps)-approximate furthest point from the query set. Returns (id, distance, stats).");

  m.def("greedy_kcenter", &greedy_kcenter, py::arg("net"), py::arg("k"), py::arg("eps"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "meb", [](const NavigatingNet& net, double eps) { return meb(net, eps); }, py::arg("net"),
      py::arg("eps"), py::call_guard<py::gil_scoped_release>());
  m.def("euclidean_kcenter", &euclidean_kcenter, py::arg("net"), py::arg("k"), py::arg("eps"),
        py::arg("budget") = GuessEnumerator::kDefaultBudget,
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "generate",
      [](const std::string& distribution, std::size_t n, std::size_t dim, std::uint64_t seed,
         std::size_t clusters, double spread, double separation) {
        GenSpec spec{parse_distribution(distribution), n, dim, seed, clusters, spread, separation};
        py::list out;
        for (const auto& p : generate(spec)) out.append(py::make_tuple(p.id, coords_of(p.location)));
        return out;
      },
      py::arg("distribution"), py::arg("n"), py::arg("dim") = 2, py::arg("seed") = 0,
      py::arg("clusters") = 2, py::arg("spread") = 0.01, py::arg("separation") = 100.0,
      "Workload points as (id, coords) pairs.");

  auto o = m.def_submodule("oracle", "Brute-force references for small inputs.");
  o.def(
      "fn_exact",
      [](const NavigatingNet& net, const py::iterable& queries) {
        auto c = to_locations(net.metric(), queries);
        return oracle::fn_exact(net.metric(), live_points(net), c);
      },
      py::arg("net"), py::arg("queries"));
  o.def(
      "kcenter_metric",
      [](const NavigatingNet& net, std::size_t k) {
        auto r = oracle::kcenter_exact_metric(net.metric(), live_points(net), k);
        return py::make_tuple(r.value, r.center_ids);
      },
      py::arg("net"), py::arg("k"));
  o.def(
      "kcenter_euclidean",
      [](const NavigatingNet& net, std::size_t k) {
        return oracle::kcenter_exact_euclidean(live_points(net), k).value;
      },
      py::arg("net"), py::arg("k"));
  o.def(
      "meb",
      [](const std::vector<Coords>& points) {
        auto b = oracle::meb_exact(points);
        return py::make_tuple(b.center, b.radius);
      },
      py::arg("points"));
}

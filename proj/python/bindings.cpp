#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "thetanorm/normality.hpp"
#include "thetanorm/polarization.hpp"
#include "thetanorm/scan.hpp"
#include "thetanorm/theta.hpp"

namespace py = pybind11;
using namespace thetanorm;

namespace {

py::object to_py(const nlohmann::ordered_json& j) {
  using J = nlohmann::ordered_json;
  switch (j.type()) {
    case J::value_t::null:
      return py::none();
    case J::value_t::boolean:
      return py::bool_(j.get<bool>());
    case J::value_t::number_integer:
      return py::int_(j.get<long long>());
    case J::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case J::value_t::number_float:
      return py::float_(j.get<double>());
    case J::value_t::string:
      return py::str(j.get<std::string>());
    case J::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_py(e));
      return out;
    }
    case J::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      throw std::runtime_error("unsupported json value");
  }
}

PolarizationType type_of(const py::object& spec) {
  if (py::isinstance<py::str>(spec)) return PolarizationType::parse(spec.cast<std::string>());
  return PolarizationType::of(spec.cast<std::vector<int>>());
}

RationalVector rv_of(const py::object& spec) {
  if (py::isinstance<py::str>(spec)) return parse_rational_vector(spec.cast<std::string>());
  RationalVector v;
  for (const auto& item : spec.cast<py::sequence>()) {
    if (py::isinstance<py::str>(item))
      v.e.push_back(parse_rational(item.cast<std::string>()));
    else
      v.e.push_back(Rational{item.cast<long long>(), 1});
  }
  return v;
}

Eigen::MatrixXcd dense_of(const std::vector<std::vector<std::complex<double>>>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  Eigen::MatrixXcd Z(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) Z(r, c) = rows[r][c];
  }
  return Z;
}

std::vector<std::vector<std::complex<double>>> nested_of(const Eigen::MatrixXcd& Z) {
  std::vector<std::vector<std::complex<double>>> out(Z.rows());
  for (Eigen::Index r = 0; r < Z.rows(); ++r) {
    out[r].resize(Z.cols());
    for (Eigen::Index c = 0; c < Z.cols(); ++c) out[r][c] = Z(r, c);
  }
  return out;
}

RankTolerances tols_of(double rank_tol, double accept, double reject) {
  RankTolerances t;
  t.rank_tol = rank_tol;
  t.accept = accept;
  t.reject = reject;
  return t;
}

// Reproduce the point as a config source so reports carry its provenance:
// split forms survive as X + k (keeping the product path), dense ones as Z.
void attach_point(RunConfig& cfg, const PeriodPoint& P) {
  cfg.g = P.g();
  if (P.split().has_value()) {
    cfg.X = P.split()->X;
    cfg.k = P.split()->k;
  } else {
    cfg.Z = P.Z();
  }
}

}  // namespace

PYBIND11_MODULE(thetanorm, m) {
  m.doc() = "theta constant rank certificates for projective normality of "
            "polarized abelian varieties";

  py::class_<PeriodPoint>(m, "PeriodPoint")
      .def_static("preset", &PeriodPoint::preset, py::arg("name"),
                  "named point: 'paper-g3' or 'paper-g4'")
      .def_static("random", &PeriodPoint::random, py::arg("g"), py::arg("seed"))
      .def_static(
          "from_dense",
          [](const std::vector<std::vector<std::complex<double>>>& Z) {
            return PeriodPoint::from_dense(dense_of(Z));
          },
          py::arg("Z"), "symmetric complex matrix with positive definite imaginary part")
      .def_property_readonly("g", &PeriodPoint::g)
      .def_property_readonly("Z", [](const PeriodPoint& p) { return nested_of(p.Z()); })
      .def_property_readonly("lambda_min", &PeriodPoint::lambda_min)
      .def_property_readonly("fast_path", &PeriodPoint::fast_path)
      .def("__repr__", [](const PeriodPoint& p) {
        return "PeriodPoint(g=" + std::to_string(p.g()) +
               (p.fast_path() ? ", fast)" : ")");
      });

  py::class_<ThetaEvaluator>(m, "ThetaEvaluator")
      .def(py::init<const PeriodPoint&, double>(), py::arg("point"),
           py::arg("series_tol") = 1e-12)
      .def(
          "theta_null",
          [](ThetaEvaluator& ev, const py::object& c1) { return ev.theta_null(rv_of(c1)); },
          py::arg("c1"), "c1 as '1/2,0,3/8' or a sequence of fraction strings/ints")
      .def_property_readonly("radius",
                             [](const ThetaEvaluator& ev) { return ev.budget().radius; })
      .def_property_readonly("path", [](const ThetaEvaluator& ev) {
        return std::string(ev.fast() ? "fast" : "general");
      })
      .def_property_readonly("series_tol", &ThetaEvaluator::entry_error);

  m.def(
      "theta_null",
      [](const py::object& c1, const PeriodPoint& P, double series_tol) {
        ThetaEvaluator ev(P, series_tol);
        return ev.theta_null(rv_of(c1));
      },
      py::arg("c1"), py::arg("point"), py::arg("series_tol") = 1e-12);

  m.def("h0", [](const py::object& d) { return type_of(d).h0(); }, py::arg("type"));
  m.def("fail1_predicate", [](const py::object& d) { return fail1_predicate(type_of(d)); },
        py::arg("type"), "some d_i = 2 and every d_j <= 4");
  m.def("fail2_predicate", [](const py::object& d) { return fail2_predicate(type_of(d)); },
        py::arg("type"), "some d_i = 2 and h0 = 2^(g+1)");
  m.def("necessary_condition",
        [](const py::object& d) { return necessary_condition(type_of(d)); }, py::arg("type"),
        "h0 >= 2^(g+1) - 1");
  m.def("iyer_bound", [](const py::object& d) { return iyer_bound(type_of(d)); },
        py::arg("type"), "h0 > 2^g * g!");

  m.def(
      "enumerate_types",
      [](int g, long long min_h0, long long max_h0) {
        std::vector<std::vector<int>> out;
        for (const auto& D : enumerate_types(g, min_h0, max_h0)) out.push_back(D.d);
        return out;
      },
      py::arg("g"), py::arg("min_h0"), py::arg("max_h0"));

  m.def(
      "index_sets",
      [](const py::object& d) {
        IndexSets s = index_sets(type_of(d));
        auto strs = [](const std::vector<RationalVector>& vs) {
          std::vector<std::string> out;
          for (const auto& v : vs) out.push_back(v.str());
          return out;
        };
        py::dict out;
        out["I"] = strs(s.I);
        out["Iprime"] = strs(s.Iprime);
        out["J"] = strs(s.J);
        return out;
      },
      py::arg("type"));

  m.def(
      "is_two_normal",
      [](const py::object& d, const PeriodPoint& P, double series_tol, double rank_tol,
         double accept, double reject) -> std::optional<bool> {
        ThetaEvaluator ev(P, series_tol);
        return is_two_normal(ev, type_of(d), tols_of(rank_tol, accept, reject)).value;
      },
      py::arg("type"), py::arg("point"), py::arg("series_tol") = 1e-12,
      py::arg("rank_tol") = 1e-13, py::arg("accept") = 5e-13, py::arg("reject") = 1e-14,
      "True/False when every w is certified, None when any certificate is ambiguous");

  m.def(
      "check",
      [](const py::object& d, const std::optional<PeriodPoint>& point, bool force_numeric,
         double series_tol, double rank_tol, double accept, double reject) {
        PolarizationType D = type_of(d);
        RunConfig cfg;
        cfg.g = D.g();
        cfg.type = D;
        cfg.series_tol = series_tol;
        cfg.tols = tols_of(rank_tol, accept, reject);
        cfg.force_numeric = force_numeric;
        if (point.has_value()) attach_point(cfg, *point);
        CheckResult r = run_check(cfg, D);
        return to_py(report_json(r.verdict, cfg, r.radii));
      },
      py::arg("type"), py::arg("point") = std::nullopt, py::arg("force_numeric") = false,
      py::arg("series_tol") = 1e-12, py::arg("rank_tol") = 1e-13, py::arg("accept") = 5e-13,
      py::arg("reject") = 1e-14, "full verdict report for one type");

  m.def(
      "scan",
      [](int g, long long min_h0, long long max_h0, const std::optional<PeriodPoint>& point,
         bool force_numeric, int jobs, double series_tol, double rank_tol, double accept,
         double reject) {
        RunConfig cfg;
        cfg.g = g;
        cfg.min_h0 = min_h0;
        cfg.max_h0 = max_h0;
        cfg.series_tol = series_tol;
        cfg.tols = tols_of(rank_tol, accept, reject);
        cfg.force_numeric = force_numeric;
        cfg.jobs = jobs;
        if (point.has_value()) attach_point(cfg, *point);
        return to_py(scan_json(run_scan(cfg)));
      },
      py::arg("g"), py::arg("min_h0") = -1, py::arg("max_h0") = -1,
      py::arg("point") = std::nullopt, py::arg("force_numeric") = false, py::arg("jobs") = 1,
      py::arg("series_tol") = 1e-12, py::arg("rank_tol") = 1e-13, py::arg("accept") = 5e-13,
      py::arg("reject") = 1e-14,
      "verdicts for every type of genus g with h0 in [min_h0, max_h0]; bounds of -1 "
      "use the defaults [2^(g+1)-1, 2^g g!]");

  m.attr("__version__") = "1.0.0";
}

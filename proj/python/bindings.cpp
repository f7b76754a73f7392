#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nugap/generate.hpp"
#include "nugap/io.hpp"
#include "nugap/nu_metric.hpp"
#include "nugap/robust.hpp"

namespace py = pybind11;
using namespace nugap;

namespace {

TransferMatrix plant_from_coeffs(const std::vector<Complex>& num,
                                 const std::vector<Complex>& den) {
  return TransferMatrix::scalar(
      RationalFn(Polynomial(std::vector<Complex>(num)),
                 Polynomial(std::vector<Complex>(den))));
}

TransferMatrix plant_from_entries(
    const std::vector<std::vector<
        std::pair<std::vector<Complex>, std::vector<Complex>>>>& entries) {
  std::vector<std::vector<RationalFn>> grid;
  for (const auto& row : entries) {
    std::vector<RationalFn> parsed;
    for (const auto& [num, den] : row)
      parsed.emplace_back(Polynomial(std::vector<Complex>(num)),
                          Polynomial(std::vector<Complex>(den)));
    grid.push_back(std::move(parsed));
  }
  return TransferMatrix::from_entries(std::move(grid));
}

py::dict nu_metric_py(const TransferMatrix& p1, const TransferMatrix& p2) {
  const NuMetricOutcome o = nu_metric(p1, p2);
  py::dict d;
  d["value"] = o.value;
  d["condition_met"] = o.condition_met;
  d["winding"] = o.winding ? py::cast(*o.winding) : py::none();
  d["min_modulus"] = o.min_modulus;
  d["theta_star"] = o.theta_star ? py::cast(*o.theta_star) : py::none();
  return d;
}

py::dict margin_py(const TransferMatrix& p, const TransferMatrix& c) {
  const MarginReport r = stability_margin(p, c);
  py::dict d;
  d["stabilizes"] = r.stabilizes;
  d["hinf_norm"] = r.hinf_norm ? py::cast(*r.hinf_norm) : py::none();
  d["margin"] = r.margin;
  d["det_winding"] = r.det_winding;
  d["det_min_modulus"] = r.det_min_modulus;
  return d;
}

py::dict winding_py(const std::vector<Complex>& num,
                    const std::vector<Complex>& den) {
  const RationalFn symbol{Polynomial(std::vector<Complex>(num)),
                          Polynomial(std::vector<Complex>(den))};
  const WindingReport w = winding_number(
      [&](double theta) { return symbol.eval(std::polar(1.0, theta)); });
  py::dict d;
  d["winding"] = w.winding;
  d["min_modulus"] = w.min_modulus;
  d["samples_used"] = w.samples_used;
  d["max_phase_step"] = w.max_phase_step;
  return d;
}

py::dict factorize_py(const TransferMatrix& p) {
  const NormalizedFactorization right = nrcf(p);
  auto entry_list = [](const RationalMatrix& m) {
    py::list rows;
    NumericConfig cfg;
    for (int i = 0; i < m.rows(); ++i) {
      py::list row;
      for (int j = 0; j < m.cols(); ++j) {
        const RationalFn e =
            rational_simplify(RationalFn(m.num.entry(i, j), m.den), cfg);
        py::dict d;
        d["num"] = e.num().coeffs();
        d["den"] = e.den().coeffs();
        row.append(d);
      }
      rows.append(row);
    }
    return rows;
  };
  py::dict d;
  d["N"] = entry_list(right.n);
  d["D"] = entry_list(right.d);
  d["residual"] = right.residual_norm;
  return d;
}

py::dict robustness_py(const TransferMatrix& p0, const TransferMatrix& p,
                       const TransferMatrix& c) {
  const RobustnessReport r = robustness_check(p0, p, c);
  py::dict d;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["slack"] = r.slack;
  d["margin_nominal"] = r.margin_nominal;
  d["margin_perturbed"] = r.margin_perturbed;
  d["dnu"] = r.dnu;
  return d;
}

}  // namespace

PYBIND11_MODULE(_nugap, m) {
  m.doc() = "nu-gap metric toolkit: normalized coprime factorizations, "
            "winding conditions and closed-loop margins for discrete-time "
            "rational plants";

  py::class_<TransferMatrix>(m, "Plant")
      .def_static("from_coeffs", &plant_from_coeffs, py::arg("num"),
                  py::arg("den"),
                  "SISO plant from ascending numerator/denominator "
                  "coefficients")
      .def_static("from_entries", &plant_from_entries, py::arg("entries"),
                  "matrix plant from a grid of (num, den) coefficient pairs")
      .def_static(
          "from_json",
          [](const std::string& text) { return parse_plant(text).plant; },
          py::arg("text"))
      .def_property_readonly("rows", &TransferMatrix::rows)
      .def_property_readonly("cols", &TransferMatrix::cols)
      .def("eval",
           [](const TransferMatrix& p, Complex z) {
             const Eigen::MatrixXcd v = p.eval(z);
             std::vector<std::vector<Complex>> out;
             for (int i = 0; i < v.rows(); ++i) {
               std::vector<Complex> row;
               for (int j = 0; j < v.cols(); ++j) row.push_back(v(i, j));
               out.push_back(std::move(row));
             }
             return out;
           },
           py::arg("z"))
      .def("poles",
           [](const TransferMatrix& p) { return poles(p); })
      .def("to_json", [](const TransferMatrix& p) {
        return emit_plant(p).dump(2);
      });

  m.def("nu_metric", &nu_metric_py, py::arg("p1"), py::arg("p2"),
        "nu-metric distance with winding-condition diagnostics");
  m.def("stability_margin", &margin_py, py::arg("plant"), py::arg("controller"),
        "stabilization verdict and margin 1/||H(P,C)||_inf");
  m.def("winding_number", &winding_py, py::arg("num"), py::arg("den"),
        "winding number of the rational symbol num/den on the unit circle");
  m.def("nrcf", &factorize_py, py::arg("plant"),
        "normalized right coprime factorization");
  m.def("robustness_check", &robustness_py, py::arg("p0"), py::arg("p"),
        py::arg("c"), "slack of the robustness inequality");
  m.def(
      "random_plant",
      [](std::uint64_t seed, int p, int mm, int max_degree) {
        GenConfig gen;
        gen.seed = seed;
        gen.p = p;
        gen.m = mm;
        gen.max_degree = max_degree;
        return random_plant(gen);
      },
      py::arg("seed"), py::arg("p") = 1, py::arg("m") = 1,
      py::arg("max_degree") = 3);
  m.def(
      "perturb_plant",
      [](const TransferMatrix& p, double eps, std::uint64_t seed) {
        return perturb_plant(p, eps, seed);
      },
      py::arg("plant"), py::arg("eps"), py::arg("seed"));

  m.attr("__version__") = kToolVersion;
}

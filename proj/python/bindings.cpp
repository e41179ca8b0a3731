#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icem/char_poly.hpp"
#include "icem/convex_roof.hpp"
#include "icem/figures.hpp"
#include "icem/locc.hpp"
#include "icem/measures.hpp"
#include "icem/state.hpp"
#include "icem/state_io.hpp"
#include "icem/swap_sim.hpp"

namespace py = pybind11;

namespace {

icem::PureState make_pure(std::vector<int> dims, const icem::Vector& amps) {
  return icem::PureState::normalized(std::move(dims), amps);
}

icem::MeasureOptions options(const std::string& scheme, std::optional<int> force_r) {
  return {icem::parse_scheme(scheme), force_r};
}

}  // namespace

PYBIND11_MODULE(_icem, m) {
  m.doc() = "Informationally complete entanglement measures";

  py::register_exception<icem::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<icem::ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<icem::ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<icem::PureState>(m, "PureState")
      .def(py::init(&make_pure), py::arg("dims"), py::arg("amplitudes"),
           "Normalizes the amplitudes; last subsystem index varies fastest.")
      .def_property_readonly("dims", &icem::PureState::dims)
      .def_property_readonly("amplitudes", &icem::PureState::amplitudes);

  py::class_<icem::DensityMatrix>(m, "DensityMatrix")
      .def(py::init<std::vector<int>, icem::Matrix>(), py::arg("dims"),
           py::arg("matrix"))
      .def_static("from_pure", &icem::DensityMatrix::from_pure)
      .def_property_readonly("dims", &icem::DensityMatrix::dims)
      .def_property_readonly("labels", &icem::DensityMatrix::labels)
      .def_property_readonly("matrix", &icem::DensityMatrix::matrix);

  py::class_<icem::SchmidtSpectrum>(m, "SchmidtSpectrum")
      .def(py::init<std::vector<double>, double>(), py::arg("values"),
           py::arg("rank_eps") = icem::kRankEps)
      .def_property_readonly("values", &icem::SchmidtSpectrum::values)
      .def_property_readonly("rank", &icem::SchmidtSpectrum::rank);

  py::class_<icem::Bipartition>(m, "Bipartition")
      .def(py::init<std::vector<int>, int>(), py::arg("subset"),
           py::arg("num_subsystems"))
      .def_property_readonly("subset", &icem::Bipartition::subset)
      .def_property_readonly("complement", &icem::Bipartition::complement);

  m.def("random_pure_state", &icem::random_pure_state, py::arg("dims"),
        py::arg("seed"));
  m.def(
      "partial_trace",
      [](const icem::PureState& psi, const std::vector<int>& keep) {
        return icem::partial_trace(psi, keep).matrix();
      },
      py::arg("state"), py::arg("keep"));
  m.def("schmidt_decompose", &icem::schmidt_decompose, py::arg("state"),
        py::arg("cut"), py::arg("rank_eps") = icem::kRankEps);
  m.def(
      "trace_powers",
      [](const icem::SchmidtSpectrum& s, int k) {
        return icem::trace_powers(s, k).moments;
      },
      py::arg("spectrum"), py::arg("k"));

  m.def(
      "coeffs_from_moments",
      [](std::vector<double> moments) {
        return icem::coeffs_from_moments({std::move(moments)}).coeffs;
      },
      py::arg("moments"));
  m.def(
      "moments_from_coeffs",
      [](std::vector<double> coeffs) {
        return icem::moments_from_coeffs({std::move(coeffs)}).moments;
      },
      py::arg("coeffs"));
  m.def(
      "spectrum_from_coeffs",
      [](std::vector<double> coeffs) {
        return icem::spectrum_from_coeffs({std::move(coeffs)});
      },
      py::arg("coeffs"));

  py::class_<icem::MeasureReport>(m, "MeasureReport")
      .def_readonly("value", &icem::MeasureReport::value)
      .def_readonly("rank_used", &icem::MeasureReport::rank_used)
      .def_readonly("components", &icem::MeasureReport::components)
      .def_property_readonly("scheme", [](const icem::MeasureReport& r) {
        return std::string(icem::to_string(r.scheme));
      });

  m.def(
      "icem_pure",
      [](const icem::SchmidtSpectrum& s, const std::string& scheme,
         std::optional<int> force_r) { return icem::icem_pure(s, options(scheme, force_r)); },
      py::arg("spectrum"), py::arg("scheme") = "binomial",
      py::arg("force_r") = py::none());
  m.def(
      "icem_component",
      [](const icem::SchmidtSpectrum& s, int i, const std::string& scheme) {
        return icem::icem_component(s, i, options(scheme, std::nullopt));
      },
      py::arg("spectrum"), py::arg("i"), py::arg("scheme") = "binomial");
  m.def("concurrence_pure", &icem::concurrence_pure, py::arg("spectrum"),
        py::arg("d"));
  m.def("concentratable_pure", &icem::concentratable_pure, py::arg("state"),
        py::arg("cut"));
  m.def(
      "icem_mean_arithmetic",
      [](const icem::PureState& psi, const std::string& scheme) {
        return icem::icem_mean_arithmetic(psi, options(scheme, std::nullopt));
      },
      py::arg("state"), py::arg("scheme") = "binomial");
  m.def(
      "icem_mean_geometric",
      [](const icem::PureState& psi, const std::string& scheme) {
        return icem::icem_mean_geometric(psi, options(scheme, std::nullopt));
      },
      py::arg("state"), py::arg("scheme") = "binomial");
  m.def(
      "classify_pure",
      [](const icem::PureState& psi, const std::string& scheme) {
        return std::string(
            icem::to_string(icem::classify_pure(psi, options(scheme, std::nullopt))));
      },
      py::arg("state"), py::arg("scheme") = "binomial");

  py::class_<icem::LoccVerdict>(m, "LoccVerdict")
      .def_readonly("forward", &icem::LoccVerdict::forward)
      .def_readonly("backward", &icem::LoccVerdict::backward)
      .def_readonly("components_forward_ordered",
                    &icem::LoccVerdict::components_forward_ordered)
      .def_readonly("components_backward_ordered",
                    &icem::LoccVerdict::components_backward_ordered)
      .def_property_readonly("components", [](const icem::LoccVerdict& v) {
        py::list out;
        for (const auto& c : v.components) {
          out.append(py::make_tuple(c.index, c.lhs, c.rhs, c.holds));
        }
        return out;
      });
  m.def("is_majorized_by", &icem::is_majorized_by, py::arg("x"), py::arg("y"));
  m.def(
      "locc_verdict",
      [](const icem::SchmidtSpectrum& x, const icem::SchmidtSpectrum& y,
         const std::string& scheme) {
        return icem::locc_verdict(x, y, icem::parse_scheme(scheme));
      },
      py::arg("x"), py::arg("y"), py::arg("scheme") = "binomial");

  py::class_<icem::RoofResult>(m, "RoofResult")
      .def_readonly("value", &icem::RoofResult::value)
      .def_readonly("restarts_used", &icem::RoofResult::restarts_used)
      .def_readonly("converged", &icem::RoofResult::converged)
      .def_readonly("ensemble_size", &icem::RoofResult::ensemble_size)
      .def_property_readonly("weights", [](const icem::RoofResult& r) {
        return r.best_ensemble.weights;
      })
      .def_property_readonly("reconstruction", [](const icem::RoofResult& r) {
        return icem::reconstruct(r.best_ensemble);
      });
  m.def(
      "roof_minimize",
      [](const icem::DensityMatrix& rho, const icem::Bipartition& cut,
         const std::string& scheme, int restarts, std::uint64_t seed,
         std::optional<int> ensemble_size) {
        icem::RoofConfig cfg;
        cfg.measure = options(scheme, std::nullopt);
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.ensemble_size = ensemble_size;
        py::gil_scoped_release release;
        return icem::roof_minimize(rho, cut, cfg);
      },
      py::arg("rho"), py::arg("cut"), py::arg("scheme") = "binomial",
      py::arg("restarts") = 32, py::arg("seed") = 0,
      py::arg("ensemble_size") = py::none());

  m.def(
      "simulate_swap_test",
      [](const icem::PureState& psi, const icem::Bipartition& cut, int r) {
        return icem::simulate_swap_test(psi, cut, r).probabilities;
      },
      py::arg("state"), py::arg("cut"), py::arg("r"));
  m.def(
      "p_zero_closed_form",
      [](std::vector<double> moments, int r) {
        return icem::p_zero_closed_form({std::move(moments)}, r);
      },
      py::arg("moments"), py::arg("r"));
  m.def(
      "check_swap_test",
      [](const icem::PureState& psi, const icem::Bipartition& cut,
         std::optional<int> force_r) {
        icem::SwapCheckOptions opts;
        opts.force_r = force_r;
        const auto rep = icem::check_swap_test(psi, cut, opts);
        py::dict d;
        d["r"] = rep.r;
        d["simulated"] = rep.simulated;
        d["closed_form"] = rep.closed_form;
        d["icem_binomial"] = rep.icem_binomial;
        d["icem_printed"] = rep.icem_permutation;
        d["predicted_gap"] = rep.predicted_gap;
        return d;
      },
      py::arg("state"), py::arg("cut"), py::arg("force_r") = py::none());

  m.def(
      "figure2_equality_points",
      [](std::size_t samples, const std::string& scheme) {
        std::vector<std::array<double, 3>> pts;
        for (const auto& p : icem::figure2_sweep(samples, icem::parse_scheme(scheme))
                                 .equality_points) {
          pts.push_back(p.beta);
        }
        return pts;
      },
      py::arg("samples") = 1000, py::arg("scheme") = "binomial");

  m.def(
      "read_state_file",
      [](const std::string& path) -> py::object {
        auto f = icem::read_state_file(path);
        return std::visit([](auto&& v) { return py::cast(v); }, f);
      },
      py::arg("path"));
}

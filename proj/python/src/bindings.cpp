#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fdd2d/config.hpp"
#include "fdd2d/errors.hpp"
#include "fdd2d/mode_selection.hpp"
#include "fdd2d/performance.hpp"
#include "fdd2d/simulator.hpp"
#include "fdd2d/sweep.hpp"
#include "fdd2d/validate.hpp"

namespace py = pybind11;
using namespace fdd2d;

namespace {

py::dict metrics_dict(const ScenarioMetrics& m) {
  py::dict modes;
  for (Mode k : kAllModes) {
    const auto& x = m[k];
    if (!x.present) continue;
    py::dict d;
    d["A"] = x.A;
    d["PUR"] = x.PUR;
    d["PCR"] = x.PCR;
    d["Lambda"] = x.Lambda;
    d["Tx"] = x.Tx;
    d["rate_nats"] = x.rate_nats;
    d["outage"] = x.outage;
    modes[py::str(std::string(to_string(k)))] = d;
  }
  py::dict out;
  out["scenario"] = std::string(to_string(m.scenario));
  out["theta"] = m.theta;
  out["beta"] = m.beta;
  out["T_avg"] = m.T_avg;
  out["P_avg"] = m.P_avg;
  out["T_n"] = m.T_n;
  out["O_net"] = m.O_net;
  out["modes"] = modes;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Full-duplex D2D underlay network analysis";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::enum_<Mode>(m, "Mode")
      .value("cellular", Mode::Cellular)
      .value("forward_d2d", Mode::ForwardD2D)
      .value("reverse_d2d", Mode::ReverseD2D);
  py::enum_<Scenario>(m, "Scenario")
      .value("FD", Scenario::FD)
      .value("HD", Scenario::HD)
      .value("traditional", Scenario::Traditional);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_static("table3", &NetworkConfig::table3)
      .def_readwrite("lambda_bs", &NetworkConfig::lambda)
      .def_readwrite("lambda_c", &NetworkConfig::lambda_c)
      .def_readwrite("lambda_d", &NetworkConfig::lambda_d)
      .def_readwrite("P_u", &NetworkConfig::P_u)
      .def_readwrite("rho_min", &NetworkConfig::rho_min)
      .def_readwrite("rho_c", &NetworkConfig::rho_c)
      .def_readwrite("r1", &NetworkConfig::r1)
      .def_readwrite("r2", &NetworkConfig::r2)
      .def_readwrite("T_d", &NetworkConfig::T_d)
      .def_readwrite("eta_c", &NetworkConfig::eta_c)
      .def_readwrite("eta_d", &NetworkConfig::eta_d)
      .def_readwrite("omega", &NetworkConfig::omega)
      .def_readwrite("zeta", &NetworkConfig::zeta)
      .def_readwrite("sigma2", &NetworkConfig::sigma2)
      .def("validate", &NetworkConfig::validate)
      .def("warnings", &NetworkConfig::warnings)
      .def("R_bar", &NetworkConfig::R_bar)
      .def("__repr__", [](const NetworkConfig& c) { return format_config(c); });

  m.def("parse_config", [](const std::string& text) { return parse_config(text); });
  m.def("load_config", &load_config);
  m.def("format_config", &format_config);

  py::class_<ModeStats>(m, "ModeStats")
      .def_readonly("P_d", &ModeStats::P_d)
      .def_readonly("P_e", &ModeStats::P_e)
      .def_readonly("P_FD", &ModeStats::P_FD)
      .def_readonly("U_d", &ModeStats::U_d)
      .def_readonly("U_e", &ModeStats::U_e)
      .def_readonly("O_p", &ModeStats::O_p);
  m.def("mode_stats", py::overload_cast<const NetworkConfig&>(&mode_stats));

  py::class_<Analysis>(m, "Analysis")
      .def(py::init<const NetworkConfig&>())
      .def_property_readonly("stats", &Analysis::stats)
      .def("success", &Analysis::success, py::arg("mode"), py::arg("scenario"), py::arg("theta"))
      .def("outage",
           [](const Analysis& a, Mode mode, Scenario sc, double theta) {
             return 1.0 - a.success(mode, sc, theta);
           },
           py::arg("mode"), py::arg("scenario"), py::arg("theta"))
      .def("ergodic_rate", &Analysis::ergodic_rate, py::arg("mode"), py::arg("scenario"))
      .def("scenario_metrics",
           [](const Analysis& a, Scenario sc, double theta) {
             return metrics_dict(a.scenario_metrics(sc, theta));
           },
           py::arg("scenario"), py::arg("theta") = 1.0);

  m.def(
      "sweep_csv",
      [](const NetworkConfig& cfg, const std::string& variable, std::vector<double> values,
         std::vector<Scenario> scenarios, const std::string& engine, double theta_db,
         int realizations, double area_km2, int probes, std::uint64_t seed, bool bits) {
        SweepSpec s;
        s.variable = parse_variable(variable);
        s.values = std::move(values);
        s.scenarios = std::move(scenarios);
        s.engine = parse_engine(engine);
        s.theta_db = theta_db;
        s.sim.realizations = realizations;
        s.sim.area_km2 = area_km2;
        s.sim.probes_per_mode = probes;
        s.sim.seed = seed;
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release nogil;
          rows = run_sweep(cfg, s);
        }
        std::ostringstream o;
        write_csv(o, rows, bits);
        return o.str();
      },
      py::arg("cfg"), py::arg("variable"), py::arg("values"),
      py::arg("scenarios") = std::vector<Scenario>{Scenario::FD},
      py::arg("engine") = "analytic", py::arg("theta_db") = 0.0, py::arg("realizations") = 2000,
      py::arg("area_km2") = 100.0, py::arg("probes") = -1, py::arg("seed") = 1,
      py::arg("bits") = false);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::pass)
      .def_readonly("measured", &CheckResult::measured)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("detail", &CheckResult::detail);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("checks", &ValidationReport::checks)
      .def("all_passed", &ValidationReport::all_passed)
      .def("__str__", &ValidationReport::to_text);
  m.def(
      "validate",
      [](const NetworkConfig& cfg, std::uint64_t seed, double area_km2, int realizations,
         int probes) {
        ValidationOptions o;
        o.seed = seed;
        o.area_km2 = area_km2;
        o.realizations = realizations;
        o.probes = probes;
        py::gil_scoped_release nogil;
        return validate(cfg, o);
      },
      py::arg("cfg"), py::arg("seed") = 1, py::arg("area_km2") = 100.0,
      py::arg("realizations") = 200, py::arg("probes") = 50);

  m.def(
      "simulate_activity",
      [](const NetworkConfig& cfg, double area_km2, int realizations, std::uint64_t seed) {
        sim::SimulationSpec s;
        s.area_km2 = area_km2;
        s.realizations = realizations;
        s.seed = seed;
        s.probes_per_mode = 0;
        s.keep_samples = false;
        sim::EmpiricalStats st;
        {
          py::gil_scoped_release nogil;
          st = sim::simulate(cfg, s);
        }
        py::dict d;
        for (auto [name, e] : {std::pair{"O_p", st.O_p()}, std::pair{"P_d", st.P_d()},
                               std::pair{"P_e", st.P_e()}, std::pair{"P_FD", st.P_FD()}})
          d[name] = py::make_tuple(e.value, e.stderr_);
        return d;
      },
      py::arg("cfg"), py::arg("area_km2") = 100.0, py::arg("realizations") = 20,
      py::arg("seed") = 1);
}

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "polykin/commands.hpp"
#include "polykin/diagnostics.hpp"
#include "polykin/errors.hpp"
#include "polykin/field.hpp"
#include "polykin/grid.hpp"
#include "polykin/io.hpp"
#include "polykin/moments.hpp"
#include "polykin/params.hpp"
#include "polykin/scenario.hpp"
#include "polykin/stepper.hpp"
#include "polykin/transport.hpp"

namespace py = pybind11;
using namespace polykin;

namespace {

// pybind11 holders cannot point to const, so the grid is held mutably and
// only handed out to the core as const.
using GridHolder = std::shared_ptr<PhaseGrid>;
GridHolder hold(const GridPtr& g) { return std::const_pointer_cast<PhaseGrid>(g); }

std::vector<py::ssize_t> field_shape(const PhaseGrid& g) {
  const auto nv = static_cast<py::ssize_t>(g.n_v());
  return {static_cast<py::ssize_t>(g.n_x()), nv, nv, nv, static_cast<py::ssize_t>(g.n_i())};
}

// Zero-copy view that keeps the owning field alive.
py::array_t<double> field_view(py::object owner) {
  auto& f = owner.cast<DistField&>();
  return py::array_t<double>(field_shape(f.grid()), f.values().data(), owner);
}

DistField field_from_array(const GridHolder& grid, const py::array_t<double, py::array::c_style |
                                                                            py::array::forcecast>& a) {
  if (a.size() != static_cast<py::ssize_t>(grid->size()))
    throw GridMismatch("array has " + std::to_string(a.size()) + " values, grid needs " +
                       std::to_string(grid->size()));
  DistField f(grid);
  std::memcpy(f.values().data(), a.data(), grid->size() * sizeof(double));
  return f;
}

RefinementMode parse_mode(const std::string& mode) {
  if (mode == "coupled") return RefinementMode::Coupled;
  if (mode == "space") return RefinementMode::Space;
  throw ValidationError("mode", "expected 'coupled' or 'space', got '" + mode + "'");
}

} // namespace

PYBIND11_MODULE(_polykin, m) {
  m.doc() = "Semi-Lagrangian solver for the polyatomic ES-BGK model";

  auto base = py::register_exception<Error>(m, "PolykinError", PyExc_RuntimeError);
  py::register_exception<OutOfRange>(m, "OutOfRange", base);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", base);
  py::register_exception<GridMismatch>(m, "GridMismatch", base);
  py::register_exception<CellError>(m, "CellError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<DegenerateTable>(m, "DegenerateTable", base);

  py::class_<GridConfig>(m, "GridConfig")
      .def(py::init<>())
      .def(py::init([](std::size_t n_x, std::size_t n_v, double v_max, std::size_t n_i,
                       double i_max, double delta) {
             return GridConfig{n_x, n_v, v_max, n_i, i_max, delta};
           }),
           py::arg("n_x") = 16, py::arg("n_v") = 17, py::arg("v_max") = 8.0, py::arg("n_i") = 16,
           py::arg("i_max") = 16.0, py::arg("delta") = 2.0)
      .def_readwrite("n_x", &GridConfig::n_x)
      .def_readwrite("n_v", &GridConfig::n_v)
      .def_readwrite("v_max", &GridConfig::v_max)
      .def_readwrite("n_i", &GridConfig::n_i)
      .def_readwrite("i_max", &GridConfig::i_max)
      .def_readwrite("delta", &GridConfig::delta);

  py::class_<PhaseGrid, GridHolder>(m, "Grid")
      .def(py::init([](const GridConfig& c) { return hold(build_grid(c)); }), py::arg("config"))
      .def_property_readonly("config", &PhaseGrid::config)
      .def_property_readonly("dx", &PhaseGrid::dx)
      .def_property_readonly("dv", &PhaseGrid::dv)
      .def_property_readonly("di", &PhaseGrid::di)
      .def_property_readonly("shape", [](const PhaseGrid& g) { return py::tuple(py::cast(field_shape(g))); })
      .def_property_readonly("velocity_nodes",
                             [](const PhaseGrid& g) {
                               auto n = g.axis_nodes();
                               return py::array_t<double>(n.size(), n.data());
                             })
      .def_property_readonly("energy_nodes", [](const PhaseGrid& g) {
        auto n = g.energy_nodes();
        return py::array_t<double>(n.size(), n.data());
      });

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init([](double nu, double theta, double delta, double kappa, double q) {
             return SchemeParams{nu, theta, delta, kappa, q};
           }),
           py::arg("nu") = 0.0, py::arg("theta") = 1.0, py::arg("delta") = 2.0,
           py::arg("kappa") = 1.0, py::arg("q") = 8.0)
      .def_readwrite("nu", &SchemeParams::nu)
      .def_readwrite("theta", &SchemeParams::theta)
      .def_readwrite("delta", &SchemeParams::delta)
      .def_readwrite("kappa", &SchemeParams::kappa)
      .def_readwrite("q", &SchemeParams::q)
      .def("validate", &SchemeParams::validate);

  py::class_<DistField>(m, "Field")
      .def(py::init([](const GridHolder& g, double fill) { return DistField(g, fill); }),
           py::arg("grid"), py::arg("fill") = 0.0)
      .def_static("from_array", &field_from_array, py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", [](const DistField& f) { return hold(f.grid_ptr()); })
      .def_property_readonly("values", &field_view,
                             "Writable view with shape (n_x, n_v, n_v, n_v, n_i).")
      .def("copy", [](const DistField& f) { return DistField(f); });

  py::class_<MacroCell>(m, "MacroCell")
      .def_readonly("rho", &MacroCell::rho)
      .def_readonly("u", &MacroCell::u)
      .def_readonly("theta_tensor", &MacroCell::theta_tensor)
      .def_readonly("t_tr", &MacroCell::t_tr)
      .def_readonly("t_int", &MacroCell::t_int)
      .def_readonly("t_delta", &MacroCell::t_delta)
      .def_readonly("t_theta", &MacroCell::t_theta)
      .def_readonly("t_blend", &MacroCell::t_blend);

  py::class_<ConservedQuantities>(m, "ConservedQuantities")
      .def_readonly("mass", &ConservedQuantities::mass)
      .def_readonly("momentum", &ConservedQuantities::momentum)
      .def_readonly("energy", &ConservedQuantities::energy);

  py::class_<StepReport>(m, "StepReport")
      .def_readonly("step", &StepReport::step)
      .def_readonly("time", &StepReport::time)
      .def_readonly("conserved", &StepReport::conserved)
      .def_readonly("defect", &StepReport::defect)
      .def_readonly("entropy", &StepReport::entropy)
      .def_readonly("norm_q", &StepReport::norm_q);

  m.def("normalizer", py::overload_cast<double, const PhaseGrid&>(&normalizer_discrete),
        py::arg("delta"), py::arg("grid"));
  m.def("sup_norm", &weighted_sup_norm, py::arg("field"), py::arg("q"));
  m.def("error_norm", &error_sup_norm, py::arg("a"), py::arg("b"), py::arg("q"));
  m.def("moments",
        [](const DistField& f, const SchemeParams& p, double dt) {
          return compute_moments(f, p, dt).cells;
        },
        py::arg("field"), py::arg("params"), py::arg("dt") = 0.0);
  m.def("conserved", &conserved_quantities, py::arg("field"));
  m.def("entropy", &entropy, py::arg("field"));
  m.def("equilibrium_distance", &equilibrium_distance, py::arg("field"), py::arg("params"));
  m.def("advect", &advect, py::arg("field"), py::arg("dt"), py::call_guard<py::gil_scoped_release>());
  m.def("step", &step, py::arg("field"), py::arg("params"), py::arg("dt"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<Scenario>(m, "Scenario")
      .def_static("parse", &parse_scenario_text, py::arg("text"))
      .def_static("load", &parse_scenario, py::arg("path"))
      .def_readwrite("grid", &Scenario::grid)
      .def_readwrite("params", &Scenario::params)
      .def_readwrite("dt", &Scenario::dt)
      .def_readwrite("t_final", &Scenario::t_final)
      .def_readwrite("relaxation", &Scenario::relaxation)
      .def_readwrite("out_dir", &Scenario::out_dir)
      .def_property_readonly("step_count", &Scenario::step_count)
      .def("validate", &Scenario::validate)
      .def("__str__", &format_scenario)
      .def("initial_field", [](const Scenario& s) {
        auto grid = build_grid(s.grid);
        return sample(make_initial_function(s, *grid), grid, 0.0);
      });

  py::class_<EnvelopeReport>(m, "EnvelopeReport")
      .def_readonly("steps_checked", &EnvelopeReport::steps_checked)
      .def_readonly("lower_violations", &EnvelopeReport::lower_violations)
      .def_readonly("upper_violations", &EnvelopeReport::upper_violations)
      .def_readonly("min_lower_ratio", &EnvelopeReport::min_lower_ratio)
      .def_readonly("upper_bound", &EnvelopeReport::upper_bound)
      .def_property_readonly("ok", &EnvelopeReport::ok);

  py::class_<SimulateResult>(m, "SimulateResult")
      .def_property_readonly("reports", [](const SimulateResult& r) { return r.run.reports; })
      .def_property_readonly("final_field", [](const SimulateResult& r) { return r.run.final_field; })
      .def_readonly("envelope", &SimulateResult::envelope)
      .def_readonly("warnings", &SimulateResult::warnings)
      .def_readonly("written", &SimulateResult::written)
      .def_property_readonly("all_finite", &SimulateResult::all_finite);

  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("level", &ConvergenceRow::level)
      .def_readonly("h", &ConvergenceRow::h)
      .def_readonly("error", &ConvergenceRow::error)
      .def_readonly("observed_order", &ConvergenceRow::observed_order);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("kappa", &SweepRow::kappa)
      .def_readonly("bounded", &SweepRow::bounded)
      .def_readonly("max_norm", &SweepRow::max_norm)
      .def_readonly("equilibrium_distance", &SweepRow::equilibrium_distance)
      .def_readonly("mass_drift", &SweepRow::mass_drift);

  m.def("simulate", &cmd_simulate, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
  m.def("convergence",
        [](const Scenario& s, const std::vector<std::size_t>& levels, std::size_t reference,
           const std::string& mode) {
          const auto m = parse_mode(mode);
          py::gil_scoped_release release;
          return cmd_convergence(s, levels, reference, m).table.rows;
        },
        py::arg("scenario"), py::arg("levels"), py::arg("reference"), py::arg("mode") = "coupled");
  m.def("sweep",
        [](const Scenario& s, const std::vector<double>& kappas) {
          return cmd_stiffness_sweep(s, kappas).rows;
        },
        py::arg("scenario"), py::arg("kappas"), py::call_guard<py::gil_scoped_release>());

  m.def("write_snapshot",
        [](const std::filesystem::path& p, const DistField& f, double q, double time) {
          write_snapshot(p, f, q, time);
        },
        py::arg("path"), py::arg("field"), py::arg("q"), py::arg("time") = 0.0);
  m.def("read_snapshot",
        [](const std::filesystem::path& p) {
          auto s = read_snapshot(p);
          return py::make_tuple(std::move(s.field), s.q, s.time);
        },
        py::arg("path"));
}

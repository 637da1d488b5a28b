#include "ecbs/errors.hpp"
#include "ecbs/experiment.hpp"

#include <pybind11/functional.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace ecbs;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exponential cubic B-spline collocation for Boussinesq systems";
    m.attr("__version__") = ECBS_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<SingularSystem>(m, "SingularSystem", numerical.ptr());

    py::enum_<WeightEvaluation>(m, "WeightEvaluation")
        .value("AUTO", WeightEvaluation::Auto)
        .value("SERIES", WeightEvaluation::Series)
        .value("CLOSED_FORM", WeightEvaluation::ClosedForm);

    py::class_<SplineShape>(m, "SplineShape")
        .def(py::init<double, double>(), py::arg("zeta"), py::arg("h"))
        .def_property_readonly("zeta", &SplineShape::zeta)
        .def_property_readonly("h", &SplineShape::h)
        .def_property_readonly("z", &SplineShape::z);

    py::class_<NodalWeights>(m, "NodalWeights")
        .def_readonly("alpha1", &NodalWeights::alpha1)
        .def_readonly("beta1", &NodalWeights::beta1)
        .def_readonly("gamma1", &NodalWeights::gamma1)
        .def_readonly("gamma2", &NodalWeights::gamma2)
        .def_static("polynomial", &NodalWeights::polynomial, py::arg("h"))
        .def("__repr__", [](const NodalWeights& w) {
            return "NodalWeights(alpha1=" + std::to_string(w.alpha1) + ", beta1=" + std::to_string(w.beta1) +
                   ", gamma1=" + std::to_string(w.gamma1) + ", gamma2=" + std::to_string(w.gamma2) + ")";
        });

    py::class_<BasisCoefficients>(m, "BasisCoefficients")
        .def_readonly("a1", &BasisCoefficients::a1)
        .def_readonly("b1", &BasisCoefficients::b1)
        .def_readonly("b2", &BasisCoefficients::b2)
        .def_readonly("c1", &BasisCoefficients::c1)
        .def_readonly("d1", &BasisCoefficients::d1);

    m.def("nodal_weights", &nodal_weights, py::arg("shape"), py::arg("mode") = WeightEvaluation::Auto);
    m.def("basis_coefficients", &basis_coefficients, py::arg("shape"),
          py::arg("mode") = WeightEvaluation::Auto);
    m.def("eval_basis", &eval_basis, py::arg("shape"), py::arg("knot_index"), py::arg("x"),
          py::arg("order") = 0, py::arg("origin") = 0.0);

    py::class_<SystemCoefficients>(m, "SystemCoefficients")
        .def(py::init([](double s1, double s2, double s3, double s4) { return SystemCoefficients{s1, s2, s3, s4}; }),
             py::arg("s1") = 0.0, py::arg("s2") = 0.0, py::arg("s3") = 0.0, py::arg("s4") = 0.0)
        .def_readwrite("s1", &SystemCoefficients::s1)
        .def_readwrite("s2", &SystemCoefficients::s2)
        .def_readwrite("s3", &SystemCoefficients::s3)
        .def_readwrite("s4", &SystemCoefficients::s4)
        .def("solver_compatible", &SystemCoefficients::solver_compatible)
        .def_static("classical", &SystemCoefficients::classical)
        .def_static("regularized", &SystemCoefficients::regularized);

    m.def("admissible_v0", [](const SystemCoefficients& s) { return admissible_v0(s).describe(); },
          py::arg("system"), "Solitary-wave existence case and admissible amplitudes, as text.");

    py::class_<WaveValues>(m, "WaveValues")
        .def_readonly("u", &WaveValues::u)
        .def_readonly("v", &WaveValues::v);

    py::class_<SolitaryWave>(m, "SolitaryWave")
        .def(py::init<const SystemCoefficients&, double, int, double>(), py::arg("system"), py::arg("v0"),
             py::arg("sign") = 1, py::arg("x0") = 0.0)
        .def_property_readonly("speed", &SolitaryWave::speed)
        .def_property_readonly("wave_width", &SolitaryWave::wave_width)
        .def("__call__", &SolitaryWave::operator(), py::arg("x"), py::arg("t"));

    py::enum_<SystemVariant>(m, "SystemVariant")
        .value("CLASSICAL", SystemVariant::Classical)
        .value("REGULARIZED", SystemVariant::Regularized);

    py::class_<TravelingWave>(m, "TravelingWave")
        .def(py::init([](SystemVariant variant, double rho, double cs, double x0) {
                 return TravelingWave{variant, rho, cs, x0};
             }),
             py::arg("variant"), py::arg("rho"), py::arg("cs"), py::arg("x0") = 0.0)
        .def("__call__", &TravelingWave::operator(), py::arg("x"), py::arg("t"));

    m.def(
        "solve_tridiagonal",
        [](std::vector<double> sub, std::vector<double> diag, std::vector<double> super,
           std::vector<double> rhs) {
            return solve_tridiagonal({std::move(sub), std::move(diag), std::move(super), std::move(rhs)});
        },
        py::arg("sub"), py::arg("diag"), py::arg("super"), py::arg("rhs"));

    py::enum_<SystemPreset>(m, "SystemPreset")
        .value("REGULARIZED", SystemPreset::Regularized)
        .value("CLASSICAL", SystemPreset::Classical)
        .value("CUSTOM", SystemPreset::Custom);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("system", &ExperimentConfig::system)
        .def_readwrite("custom", &ExperimentConfig::custom)
        .def_readwrite("a", &ExperimentConfig::a)
        .def_readwrite("b", &ExperimentConfig::b)
        .def_readwrite("n_cells", &ExperimentConfig::n_cells)
        .def_readwrite("dt", &ExperimentConfig::dt)
        .def_readwrite("zeta", &ExperimentConfig::zeta)
        .def_readwrite("t_end", &ExperimentConfig::t_end)
        .def_readwrite("snapshot_times", &ExperimentConfig::snapshot_times)
        .def_readwrite("oracle", &ExperimentConfig::oracle)
        .def_readwrite("weights", &ExperimentConfig::weights)
        .def_readwrite("output", &ExperimentConfig::output);

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def("validate", py::overload_cast<const ExperimentConfig&>(&validate), py::arg("config"));
    m.def("table_config", &table_config, py::arg("system"), py::arg("dt"), py::arg("zeta"),
          py::arg("weights") = WeightEvaluation::ClosedForm);

    py::class_<Snapshot>(m, "Snapshot")
        .def_readonly("time", &Snapshot::time)
        .def_readonly("step", &Snapshot::step)
        .def_readonly("u", &Snapshot::u)
        .def_readonly("v", &Snapshot::v)
        .def_readonly("u_exact", &Snapshot::u_exact)
        .def_readonly("v_exact", &Snapshot::v_exact);

    py::class_<SnapshotSummary>(m, "SnapshotSummary")
        .def_readonly("time", &SnapshotSummary::time)
        .def_readonly("step", &SnapshotSummary::step)
        .def_readonly("peak_x", &SnapshotSummary::peak_x)
        .def_readonly("peak_value", &SnapshotSummary::peak_value)
        .def_readonly("has_error", &SnapshotSummary::has_error)
        .def_readonly("linf_u", &SnapshotSummary::linf_u)
        .def_readonly("linf_v", &SnapshotSummary::linf_v)
        .def_readonly("argmax_u", &SnapshotSummary::argmax_u)
        .def_readonly("argmax_v", &SnapshotSummary::argmax_v);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_property_readonly("x", [](const SimulationResult& r) { return r.grid.nodes(); })
        .def_readonly("weights", &SimulationResult::weights)
        .def_readonly("snapshots", &SimulationResult::snapshots)
        .def_readonly("summary", &SimulationResult::summary)
        .def_readonly("runtime_seconds", &SimulationResult::runtime_seconds);

    m.def("simulate", &simulate, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("write_outputs", &write_outputs, py::arg("config"), py::arg("result"));
    m.def("summary_json", &summary_json, py::arg("config"), py::arg("result"));

    m.def(
        "run_table",
        [](int which, WeightEvaluation weights) {
            const TableResult r = run_table(which, weights);
            py::list rows;
            for (std::size_t i = 0; i < r.unit_zeta.size(); ++i) {
                py::dict row;
                row["dt"] = r.unit_zeta[i].dt;
                row["unit_zeta"] = r.unit_zeta[i].scaled;
                row["unit_zeta_reference"] = r.unit_zeta[i].reference;
                row["tuned_zeta"] = r.tuned[i].zeta;
                row["tuned"] = r.tuned[i].scaled;
                row["tuned_reference"] = r.tuned[i].reference;
                rows.append(row);
            }
            return rows;
        },
        py::arg("which"), py::arg("weights") = WeightEvaluation::ClosedForm,
        "Scaled maximum errors of one table, next to the published values.");
    m.def("format_table", [](int which, WeightEvaluation weights) { return format_table(run_table(which, weights)); },
          py::arg("which"), py::arg("weights") = WeightEvaluation::ClosedForm);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("zeta", &SweepRow::zeta)
        .def_readonly("dt", &SweepRow::dt)
        .def_readonly("linf_u", &SweepRow::linf_u)
        .def_readonly("linf_v", &SweepRow::linf_v)
        .def_readonly("runtime_seconds", &SweepRow::runtime_seconds)
        .def_readonly("error", &SweepRow::error);
    m.def("run_sweep", &run_sweep, py::arg("base"), py::arg("zetas"), py::arg("dts"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
}

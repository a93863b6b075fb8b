#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "broadband/broadband_integrator.hpp"
#include "broadband/errors.hpp"
#include "broadband/gaussian_oracle.hpp"

namespace py = pybind11;
using namespace broadband;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Broadband bosonic channel capacities";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::enum_<Quantity>(m, "Quantity")
        .value("CE", Quantity::CE)
        .value("C_LOWER", Quantity::CLower)
        .value("Q_LOWER", Quantity::QLower);

    py::enum_<NoiseModel>(m, "NoiseModel")
        .value("LOSS", NoiseModel::Loss)
        .value("WHITE", NoiseModel::WhiteNoise)
        .value("THERMAL", NoiseModel::Thermal)
        .value("DEPHASING", NoiseModel::Dephasing);

    py::class_<ChannelSpec>(m, "ChannelSpec")
        .def_readonly("model", &ChannelSpec::model)
        .def_readonly("eta", &ChannelSpec::eta)
        .def_readonly("nbar", &ChannelSpec::nbar)
        .def_readonly("rho_t", &ChannelSpec::rho_t)
        .def_static("loss", &ChannelSpec::loss, py::arg("eta"))
        .def_static("white", &ChannelSpec::white, py::arg("eta"), py::arg("nbar"))
        .def_static("thermal", &ChannelSpec::thermal, py::arg("eta"), py::arg("rho_t"))
        .def_static("dephasing", &ChannelSpec::dephasing, py::arg("eta"))
        .def("__repr__", [](const ChannelSpec& s) {
            return std::string("ChannelSpec(") + to_string(s.model) + ", eta=" + std::to_string(s.eta) +
                   ", nbar=" + std::to_string(s.nbar) + ", rho_t=" + std::to_string(s.rho_t) + ")";
        });

    py::class_<PhysicalInputs>(m, "PhysicalInputs")
        .def(py::init([](double power, double temperature, double time) {
                 return PhysicalInputs{power, temperature, time};
             }),
             py::arg("power") = 1e-3, py::arg("temperature") = 0.0, py::arg("transmission_time") = 1.0)
        .def_readwrite("power", &PhysicalInputs::power)
        .def_readwrite("temperature", &PhysicalInputs::temperature)
        .def_readwrite("transmission_time", &PhysicalInputs::transmission_time);

    py::class_<OccupationPoint>(m, "OccupationPoint")
        .def_readonly("x", &OccupationPoint::x)
        .def_readonly("n", &OccupationPoint::n)
        .def_readonly("clamped", &OccupationPoint::clamped);

    py::class_<SpectrumSolution>(m, "SpectrumSolution")
        .def_readonly("quantity", &SpectrumSolution::quantity)
        .def_readonly("y0", &SpectrumSolution::y0)
        .def_readonly("f_value", &SpectrumSolution::f_value)
        .def_readonly("rate_integral", &SpectrumSolution::rate_integral)
        .def_readonly("factor", &SpectrumSolution::factor)
        .def_readonly("profile", &SpectrumSolution::profile);

    py::class_<CapacityReport>(m, "CapacityReport")
        .def_readonly("ce_factor", &CapacityReport::ce_factor)
        .def_readonly("c_lower_factor", &CapacityReport::c_lower_factor)
        .def_readonly("c_upper_factor", &CapacityReport::c_upper_factor)
        .def_readonly("q_lower_factor", &CapacityReport::q_lower_factor)
        .def_readonly("q_alt_factor", &CapacityReport::q_alt_factor)
        .def_readonly("qe_factor", &CapacityReport::qe_factor)
        .def_readonly("rc_bits_per_sec", &CapacityReport::rc_bits_per_sec)
        .def("absolute", &CapacityReport::absolute, py::arg("factor"));

    m.def("g_entropy", &g_entropy, py::arg("x"));
    m.def("kernel",
          [](Quantity q, double n, double nbar, double eta) { return kernel(q, ModeParams{n, nbar, eta}); },
          py::arg("quantity"), py::arg("n"), py::arg("nbar"), py::arg("eta"));
    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("lambda_fn", &lambda_fn, py::arg("x"));
    m.def("capacity_factor", &capacity_factor, py::arg("quantity"), py::arg("spec"), py::arg("profile_points") = 64,
          py::call_guard<py::gil_scoped_release>());
    m.def("analytic_K", &analytic_K, py::arg("spec"));
    m.def("capacity_report", &capacity_report, py::arg("spec"), py::arg("inputs") = PhysicalInputs{},
          py::call_guard<py::gil_scoped_release>());
    m.def("thermal_ratio", &thermal_ratio, py::arg("inputs"));
    m.def("mutual_information_thermal",
          [](double n, double nbar, double eta) {
              return oracle::mutual_information(oracle::thermal_state(n), ModeParams{n, nbar, eta});
          },
          py::arg("n"), py::arg("nbar"), py::arg("eta"));
}

// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simdoa/estimator.hpp"
#include "simdoa/trainer.hpp"

namespace py = pybind11;
using namespace simdoa;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wave-domain 2D DFT device: propagation model, phase training, DOA protocol.";

    py::class_<SimGeometry>(m, "SimGeometry")
        .def_static("make", &SimGeometry::make, py::arg("wavelength"), py::arg("n_x"),
                    py::arg("n_y"), py::arg("d_x"), py::arg("d_y"), py::arg("m_x"),
                    py::arg("m_y"), py::arg("s_x"), py::arg("s_y"), py::arg("num_layers"),
                    py::arg("layer_spacing"), py::arg("atom_area") = 0.0)
        .def_static("reference_setup", &SimGeometry::reference_setup)
        .def_readonly("wavelength", &SimGeometry::wavelength)
        .def_readonly("n_x", &SimGeometry::n_x)
        .def_readonly("n_y", &SimGeometry::n_y)
        .def_readonly("d_x", &SimGeometry::d_x)
        .def_readonly("d_y", &SimGeometry::d_y)
        .def_readonly("m_x", &SimGeometry::m_x)
        .def_readonly("m_y", &SimGeometry::m_y)
        .def_readonly("s_x", &SimGeometry::s_x)
        .def_readonly("s_y", &SimGeometry::s_y)
        .def_readonly("num_layers", &SimGeometry::num_layers)
        .def_readonly("layer_spacing", &SimGeometry::layer_spacing)
        .def_readonly("atom_area", &SimGeometry::atom_area)
        .def_property_readonly("n", &SimGeometry::n)
        .def_property_readonly("m", &SimGeometry::m)
        .def_property_readonly("wavenumber", &SimGeometry::wavenumber)
        .def("hash", &SimGeometry::hash);

    py::class_<ElectricalAngles>(m, "ElectricalAngles")
        .def(py::init([](double psi_x, double psi_y) {
                 return ElectricalAngles{psi_x, psi_y};
             }),
             py::arg("psi_x") = 0.0, py::arg("psi_y") = 0.0)
        .def_readwrite("psi_x", &ElectricalAngles::psi_x)
        .def_readwrite("psi_y", &ElectricalAngles::psi_y);

    py::class_<PhysicalAngles>(m, "PhysicalAngles")
        .def(py::init([](double azimuth, double elevation) {
                 return PhysicalAngles{azimuth, elevation};
             }),
             py::arg("azimuth") = 0.0, py::arg("elevation") = 0.0)
        .def_readwrite("azimuth", &PhysicalAngles::azimuth)
        .def_readwrite("elevation", &PhysicalAngles::elevation);

    py::class_<TargetOperator>(m, "TargetOperator")
        .def_readonly("f", &TargetOperator::f)
        .def_readonly("n_x", &TargetOperator::n_x)
        .def_readonly("n_y", &TargetOperator::n_y);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("max_iters", &TrainConfig::max_iters)
        .def_readwrite("decay", &TrainConfig::decay)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("convergence_tol", &TrainConfig::convergence_tol);

    py::class_<TrainReport>(m, "TrainReport")
        .def_readonly("loss_history", &TrainReport::loss_history)
        .def_readonly("normalized_loss_history", &TrainReport::normalized_loss_history)
        .def_readonly("eta_history", &TrainReport::eta_history)
        .def_readonly("beta_history", &TrainReport::beta_history)
        .def_readonly("final_beta", &TrainReport::final_beta)
        .def_readonly("iterations_run", &TrainReport::iterations_run)
        .def_readonly("converged", &TrainReport::converged);

    py::class_<SimState>(m, "SimState")
        .def_property_readonly("xi", [](const SimState& s) { return s.xi; })
        .def_property_readonly("layers", &SimState::layers);

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init<>())
        .def_readwrite("t_x", &ProtocolConfig::t_x)
        .def_readwrite("t_y", &ProtocolConfig::t_y)
        .def_readwrite("snr_db", &ProtocolConfig::snr_db)
        .def_readwrite("seed", &ProtocolConfig::seed)
        .def_readwrite("noiseless", &ProtocolConfig::noiseless)
        .def_property_readonly("snapshots", &ProtocolConfig::snapshots);

    py::class_<SnapshotGrid>(m, "SnapshotGrid")
        .def_readonly("r", &SnapshotGrid::r)
        .def_readonly("config", &SnapshotGrid::config);

    py::class_<DoaEstimate>(m, "DoaEstimate")
        .def_readonly("n_hat", &DoaEstimate::n_hat)
        .def_readonly("t_hat", &DoaEstimate::t_hat)
        .def_readonly("psi_hat", &DoaEstimate::psi_hat)
        .def_readonly("physical_hat", &DoaEstimate::physical_hat);

    m.def("dft_matrix", &dft_matrix, py::arg("n_x"), py::arg("n_y"));
    m.def("steering_vector", &steering_vector, py::arg("geometry"), py::arg("psi"));
    m.def("electrical_from_physical", &electrical_from_physical, py::arg("geometry"),
          py::arg("angles"));
    m.def("physical_from_electrical", &physical_from_electrical, py::arg("geometry"),
          py::arg("psi"));
    m.def(
        "train",
        [](const SimGeometry& geom, const TargetOperator& target, const TrainConfig& cfg) {
            return train(geom, target, cfg);
        },
        py::arg("geometry"), py::arg("target"), py::arg("config"));
    m.def("transfer_matrix", &transfer_matrix, py::arg("state"));
    m.def("loss", &loss, py::arg("g"), py::arg("f"), py::arg("beta"));
    m.def("ls_beta", &ls_beta, py::arg("g"), py::arg("f"));
    m.def("gradient", &gradient, py::arg("state"), py::arg("f"), py::arg("beta"));
    m.def(
        "input_phase_schedule",
        [](const SimGeometry& geom, const ProtocolConfig& cfg, int t) {
            return input_phase_schedule(geom, cfg, t).xi0;
        },
        py::arg("geometry"), py::arg("config"), py::arg("t"));
    m.def("simulate_snapshots", &simulate_snapshots, py::arg("geometry"), py::arg("state"),
          py::arg("psi"), py::arg("config"), py::arg("scale") = cxd{1.0, 0.0});
    m.def("digital_baseline_grid", &digital_baseline_grid, py::arg("geometry"), py::arg("psi"),
          py::arg("config"));
    m.def("peak_search", &peak_search, py::arg("grid"));
    m.def("electrical_from_peak", &electrical_from_peak, py::arg("geometry"), py::arg("config"),
          py::arg("n_hat"), py::arg("t_hat"));
    m.def("estimate_doa", &estimate_doa, py::arg("geometry"), py::arg("config"),
          py::arg("grid"));
    m.def("mse", &mse, py::arg("truth"), py::arg("estimate"));
    m.def("nearest_combined_bin", &nearest_combined_bin, py::arg("geometry"), py::arg("config"),
          py::arg("psi"));
    m.def("save_state", &save_state, py::arg("geometry"), py::arg("state"), py::arg("path"));
    m.def("load_state", &load_state, py::arg("path"));
}

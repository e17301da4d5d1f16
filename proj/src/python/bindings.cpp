// Copyright 2026 the qsdlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsd/ensemble.hpp"
#include "qsd/fokker_planck.hpp"
#include "qsd/histories.hpp"
#include "qsd/localization.hpp"
#include "qsd/master.hpp"

namespace py = pybind11;
using namespace qsd;

namespace {

py::array_t<cplx> amp_array(const WaveFunction& psi) {
    py::array_t<cplx> out(py::ssize_t(psi.size()));
    std::copy(psi.amp.begin(), psi.amp.end(), out.mutable_data());
    return out;
}

WaveFunction wf_from_array(const GridPtr& grid, py::array_t<cplx> a) {
    if (std::size_t(a.size()) != grid->n)
        throw GridMismatch("amplitude length does not match the grid");
    std::vector<cplx> amp(a.data(), a.data() + a.size());
    return normalize(WaveFunction{grid, std::move(amp)});
}

py::array_t<cplx> rho_array(const DensityMatrix& rho) {
    const long n = rho.mat.rows();
    py::array_t<cplx> out({n, n});
    Eigen::Map<Eigen::MatrixXcd>(out.mutable_data(), n, n) = rho.mat.transpose();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "stochastic pure-state unravelings of open-system dynamics";

    py::register_exception<Error>(m, "QsdError");

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def_readonly("n", &Grid::n)
        .def_readonly("x_min", &Grid::x_min)
        .def_readonly("x_max", &Grid::x_max)
        .def_readonly("dx", &Grid::dx)
        .def_readonly("hbar", &Grid::hbar)
        .def_property_readonly("x", [](const Grid& g) {
            return py::array_t<double>(py::ssize_t(g.n), g.x.data());
        });
    m.def(
        "make_grid",
        [](std::size_t n, double x_min, double x_max, double hbar) {
            return std::const_pointer_cast<Grid>(make_grid(n, x_min, x_max, hbar));
        },
        py::arg("n"), py::arg("x_min"), py::arg("x_max"), py::arg("hbar") = 1.0);

    py::class_<Potential>(m, "Potential")
        .def_static("free", &Potential::free_particle)
        .def_static("harmonic", &Potential::harmonic, py::arg("omega"), py::arg("mass") = 1.0)
        .def_static("inverted_harmonic", &Potential::inverted_harmonic, py::arg("omega"),
                    py::arg("mass") = 1.0)
        .def_static("quartic", &Potential::quartic, py::arg("lambda_"))
        .def_static("double_well", &Potential::double_well, py::arg("v0"), py::arg("l_sep"))
        .def("V", &Potential::V)
        .def("dV", &Potential::dV)
        .def("d2V", &Potential::d2V)
        .def("d3V", &Potential::d3V);

    py::class_<QBMParams>(m, "QBMParams")
        .def(py::init([](double gamma, double kT, double mass, double hbar) {
                 return QBMParams{gamma, kT, mass, hbar};
             }),
             py::arg("gamma"), py::arg("kT"), py::arg("m") = 1.0, py::arg("hbar") = 1.0)
        .def_readonly("gamma", &QBMParams::gamma)
        .def_readonly("kT", &QBMParams::kT);

    py::class_<LindbladModel>(m, "LindbladModel")
        .def_readonly("a", &LindbladModel::a)
        .def_readonly("b", &LindbladModel::b)
        .def_readonly("c", &LindbladModel::c)
        .def_readonly("m", &LindbladModel::m)
        .def_readonly("hbar", &LindbladModel::hbar)
        .def_readonly("potential", &LindbladModel::potential);
    m.def("standard_model", &standard, py::arg("a"), py::arg("b"), py::arg("m"),
          py::arg("hbar"), py::arg("potential"));
    m.def("qbm_model", &from_qbm, py::arg("params"), py::arg("potential"));
    m.def("validity_ratio", &validity_ratio);

    py::class_<WaveFunction>(m, "WaveFunction")
        .def_property_readonly("grid", [](const WaveFunction& w) {
            return std::const_pointer_cast<Grid>(w.grid);
        })
        .def_property_readonly("amp", &amp_array);
    m.def("wavefunction", &wf_from_array, py::arg("grid"), py::arg("amplitudes"),
          "normalized state from raw amplitudes");
    m.def("norm2", &norm2);
    m.def("apply_x", &apply_x);
    m.def("apply_p", &apply_p);
    m.def("inner", &inner);

    py::class_<MomentState>(m, "MomentState")
        .def_readonly("x_mean", &MomentState::x_mean)
        .def_readonly("p_mean", &MomentState::p_mean)
        .def_readonly("var_x", &MomentState::var_x)
        .def_readonly("var_p", &MomentState::var_p)
        .def_readonly("r", &MomentState::r);
    m.def("moments", &moments);

    py::class_<StationaryParams>(m, "StationaryParams")
        .def_readonly("beta", &StationaryParams::beta)
        .def_readonly("sigma_x2", &StationaryParams::sigma_x2)
        .def_readonly("sigma_p2", &StationaryParams::sigma_p2)
        .def_readonly("r0", &StationaryParams::r0);
    m.def("solve_beta", &solve_beta, py::arg("model"), py::arg("x_bar") = 0.0);
    m.def("coherent_state", &coherent_state, py::arg("grid"), py::arg("params"),
          py::arg("q"), py::arg("p"), py::arg("hbar"));

    m.def("delta_A2",
          py::overload_cast<const WaveFunction&, const StationaryParams&, double>(&delta_A2));
    py::class_<RateEstimate>(m, "RateEstimate")
        .def_readonly("tau", &RateEstimate::tau)
        .def_readonly("tau_thermal", &RateEstimate::tau_thermal)
        .def_readonly("tau_superposition", &RateEstimate::tau_superposition);
    m.def("estimate_rates", &estimate_rates, py::arg("params"), py::arg("model"),
          py::arg("ell") = std::nullopt);

    m.def(
        "run_trajectory",
        [](const LindbladModel& model, const WaveFunction& psi0, double t, double dt,
           std::uint64_t seed, std::size_t record_every) {
            TrajectoryOptions opts;
            opts.params = solve_beta(model, 0.0);
            TrajectoryRecord rec =
                run_trajectory(model, psi0, t, dt, NoiseProcess(seed), record_every, opts);
            py::dict out;
            out["times"] = rec.times;
            out["delta_A2"] = rec.delta_A2;
            py::list ms;
            for (const auto& mm : rec.moments) ms.append(mm);
            out["moments"] = ms;
            out["final_state"] = rec.final_state;
            return out;
        },
        py::arg("model"), py::arg("psi0"), py::arg("t"), py::arg("dt"), py::arg("seed"),
        py::arg("record_every") = 10);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_property_readonly("matrix", &rho_array)
        .def_static("from_pure", &DensityMatrix::from_pure);
    m.def("trace", &trace);
    m.def("purity", &purity);
    m.def("trace_distance", &trace_distance);
    m.def("lindblad_rhs", &lindblad_rhs);
    m.def("master_evolve", &evolve, py::arg("model"), py::arg("rho0"), py::arg("t"),
          py::arg("dt"));
    m.def("master_suggest_dt", &suggest_dt);

    m.def(
        "reconstruct_rho",
        [](const LindbladModel& model, const WaveFunction& psi0, double t, double dt,
           std::size_t n_traj, std::uint64_t base_seed, int threads) {
            EnsembleSpec spec;
            spec.n_traj = n_traj;
            spec.base_seed = base_seed;
            spec.model = model;
            spec.psi0 = psi0;
            spec.t = t;
            spec.dt = dt;
            spec.traj.snapshot_at = {t};
            spec.threads = threads;
            return reconstruct_rho(run_ensemble(spec), t);
        },
        py::arg("model"), py::arg("psi0"), py::arg("t"), py::arg("dt"), py::arg("n_traj"),
        py::arg("base_seed") = 0, py::arg("threads") = 0);

    py::class_<FPCoefficients>(m, "FPCoefficients")
        .def_readonly("d_pp", &FPCoefficients::d_pp)
        .def_readonly("d_qq", &FPCoefficients::d_qq)
        .def_readonly("d_pq", &FPCoefficients::d_pq)
        .def_readonly("high_t_ratio", &FPCoefficients::high_t_ratio);
    m.def("fp_coefficients", &coefficients);
}

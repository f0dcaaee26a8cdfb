// SPDX-License-Identifier: Apache-2.0
//
// afcest: partial-sparse channel estimation for AF relay links
// Copyright (C) 2026 The afcest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "afcest/afsim.hpp"
#include "afcest/channel.hpp"
#include "afcest/cli.hpp"
#include "afcest/config.hpp"
#include "afcest/csdiag.hpp"
#include "afcest/harness.hpp"
#include "afcest/solvers.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <iostream>

namespace py = pybind11;
using namespace afcest;

PYBIND11_MODULE(_afcest, m) {
    m.doc() = "Partial-sparse channel estimation for amplify-and-forward relay links";
    m.attr("__version__") = version_string;

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Rng>(m, "Rng", "Seeded 64-bit Mersenne Twister")
        .def(py::init<std::uint64_t>(), py::arg("seed"));

    // channel
    py::enum_<ChannelKind>(m, "ChannelKind").value("sparse", ChannelKind::sparse).value("dense", ChannelKind::dense);
    py::class_<ChannelSpec>(m, "ChannelSpec")
        .def(py::init<std::size_t, std::size_t, ChannelKind>(), py::arg("length"), py::arg("dominant_taps"),
             py::arg("kind"))
        .def_static("sparse", &ChannelSpec::sparse, py::arg("length"), py::arg("k"))
        .def_static("dense", &ChannelSpec::dense, py::arg("length"))
        .def_readwrite("length", &ChannelSpec::length)
        .def_readwrite("dominant_taps", &ChannelSpec::dominant_taps)
        .def_readwrite("kind", &ChannelSpec::kind)
        .def("validate", &ChannelSpec::validate);
    py::class_<Channel>(m, "Channel")
        .def(py::init<CVector>(), py::arg("taps"))
        .def_property_readonly("taps", &Channel::taps)
        .def_property_readonly("support", &Channel::support)
        .def("__len__", &Channel::size);
    py::class_<CompositeChannel>(m, "CompositeChannel")
        .def_readonly("direct", &CompositeChannel::direct)
        .def_readonly("cascaded", &CompositeChannel::cascaded)
        .def_readonly("stacked", &CompositeChannel::stacked);
    m.def("gen_channel", &gen_channel, py::arg("spec"), py::arg("rng"));
    m.def("cascade", &cascade, py::arg("a"), py::arg("b"));
    m.def("compose", &compose, py::arg("direct"), py::arg("cascaded"));

    // afsim
    py::enum_<TrainingKind>(m, "TrainingKind")
        .value("qpsk", TrainingKind::qpsk)
        .value("gaussian", TrainingKind::gaussian);
    py::class_<TrainingSequence>(m, "TrainingSequence")
        .def(py::init([](CVector s, double p) { return TrainingSequence{std::move(s), p}; }), py::arg("samples"),
             py::arg("unit_power") = 1.0)
        .def_readonly("samples", &TrainingSequence::samples)
        .def_readonly("unit_power", &TrainingSequence::unit_power);
    m.def("gen_training", &gen_training, py::arg("n"), py::arg("unit_power"), py::arg("rng"),
          py::arg("kind") = TrainingKind::qpsk);
    m.def("unitary_dft", &unitary_dft, py::arg("n"));
    m.def("circulant_apply", py::overload_cast<const CVector&, const CVector&>(&circulant_apply), py::arg("h"),
          py::arg("x"));
    m.def(
        "frequency_response", [](const CVector& h, std::size_t n) { return frequency_response(Channel(h), n); }, py::arg("h"), py::arg("n"));
    py::enum_<BetaRule>(m, "BetaRule")
        .value("as_printed", BetaRule::as_printed)
        .value("signal_power", BetaRule::signal_power);
    m.def("amplification_factor", &amplification_factor, py::arg("relay_power"), py::arg("source_power"),
          py::arg("noise_var"), py::arg("rule") = BetaRule::as_printed);
    py::class_<SlotObservations>(m, "SlotObservations")
        .def_readonly("y_d1", &SlotObservations::y_d1)
        .def_readonly("y_d2", &SlotObservations::y_d2)
        .def_readonly("beta", &SlotObservations::beta)
        .def_readonly("noise_var", &SlotObservations::noise_var);
    m.def("simulate_two_slot", &simulate_two_slot, py::arg("h_sd"), py::arg("h_sr"), py::arg("h_rd"), py::arg("x"),
          py::arg("noise_var"), py::arg("beta"), py::arg("rng"));
    m.def("build_measurement_matrix", &build_measurement_matrix, py::arg("x"), py::arg("direct_length"));
    py::class_<Measurement>(m, "Measurement")
        .def(py::init([](CVector y, CMatrix X, double nv) { return Measurement{std::move(y), std::move(X), nv}; }),
             py::arg("y"), py::arg("X"), py::arg("noise_var") = 0.0)
        .def_readwrite("y", &Measurement::y)
        .def_readwrite("X", &Measurement::X)
        .def_readwrite("noise_var", &Measurement::noise_var)
        .def_property_readonly("direct_length", &Measurement::direct_length);
    m.def("to_frequency_model", &to_frequency_model, py::arg("obs"), py::arg("x"), py::arg("direct_length"));

    // solvers
    py::enum_<EstimatorKind>(m, "EstimatorKind")
        .value("LS", EstimatorKind::ls)
        .value("SEL", EstimatorKind::sel)
        .value("PEL", EstimatorKind::pel)
        .value("IEL", EstimatorKind::iel);
    py::class_<EstimatorSpec>(m, "EstimatorSpec")
        .def(py::init([](EstimatorKind k, double ls, double lp, double tol, int it) {
                 return EstimatorSpec{k, ls, lp, tol, it};
             }),
             py::arg("kind"), py::arg("lambda_sel") = 0.0, py::arg("lambda_pel") = 0.0, py::arg("tol") = 1e-8,
             py::arg("max_iter") = 10000)
        .def_readwrite("kind", &EstimatorSpec::kind)
        .def_readwrite("lambda_sel", &EstimatorSpec::lambda_sel)
        .def_readwrite("lambda_pel", &EstimatorSpec::lambda_pel)
        .def_readwrite("tol", &EstimatorSpec::tol)
        .def_readwrite("max_iter", &EstimatorSpec::max_iter);
    py::class_<Estimate>(m, "Estimate")
        .def_readonly("h_hat", &Estimate::h_hat)
        .def_readonly("iterations", &Estimate::iterations)
        .def_readonly("converged", &Estimate::converged)
        .def_readonly("objective", &Estimate::objective);
    m.def("penalty_weights", &penalty_weights, py::arg("kind"), py::arg("lambda_sel"), py::arg("lambda_pel"),
          py::arg("direct_length"));
    m.def("lasso_objective", py::overload_cast<const Measurement&, const CVector&, const RVector&>(&lasso_objective),
          py::arg("m"), py::arg("h"), py::arg("lambda_eff"));
    m.def("ls_estimate", &ls_estimate, py::arg("m"));
    m.def("weighted_lasso", &weighted_lasso, py::arg("m"), py::arg("lambda_eff"), py::arg("tol") = 1e-8,
          py::arg("max_iter") = 10000);
    m.def("sel_estimate", &sel_estimate, py::arg("m"), py::arg("lambda_sel"), py::arg("tol") = 1e-8,
          py::arg("max_iter") = 10000);
    m.def("pel_estimate", &pel_estimate, py::arg("m"), py::arg("lambda_pel"), py::arg("tol") = 1e-8,
          py::arg("max_iter") = 10000);
    m.def("iel_estimate", &iel_estimate, py::arg("m"), py::arg("lambda_sel"), py::arg("lambda_pel"),
          py::arg("tol") = 1e-8, py::arg("max_iter") = 10000);
    m.def("estimate", py::overload_cast<const Measurement&, const EstimatorSpec&>(&estimate), py::arg("m"),
          py::arg("spec"));
    m.def("lambda_default", &lambda_default, py::arg("noise_std"), py::arg("n"), py::arg("c0"));
    m.def("kkt_residual", &kkt_residual, py::arg("m"), py::arg("est"), py::arg("lambda_eff"));

    // csdiag
    py::class_<RicReport>(m, "RicReport")
        .def_readonly("order", &RicReport::order)
        .def_readonly("delta", &RicReport::delta)
        .def_readonly("exhaustive", &RicReport::exhaustive)
        .def_readonly("subsets_checked", &RicReport::subsets_checked)
        .def_readonly("column_norms", &RicReport::column_norms);
    m.def("ric_estimate", &ric_estimate, py::arg("U"), py::arg("order"), py::arg("budget"), py::arg("seed") = 0);

    // harness
    py::enum_<LambdaRule>(m, "LambdaRule").value("fixed", LambdaRule::fixed).value("theorem1", LambdaRule::theorem1);
    py::class_<LambdaCoefficients>(m, "LambdaCoefficients")
        .def(py::init<>())
        .def_readwrite("sel", &LambdaCoefficients::sel)
        .def_readwrite("pel", &LambdaCoefficients::pel);
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("N", &ExperimentConfig::n)
        .def_readwrite("L", &ExperimentConfig::l)
        .def_readwrite("K_list", &ExperimentConfig::k_list)
        .def_readwrite("snr_db_list", &ExperimentConfig::snr_db_list)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("estimators", &ExperimentConfig::estimators)
        .def_readwrite("lambda_rule", &ExperimentConfig::lambda_rule)
        .def_readwrite("sel_coef", &ExperimentConfig::sel_coef)
        .def_readwrite("pel_coef", &ExperimentConfig::pel_coef)
        .def_readwrite("iel_coef", &ExperimentConfig::iel_coef)
        .def_readwrite("training", &ExperimentConfig::training)
        .def_readwrite("beta_rule", &ExperimentConfig::beta_rule)
        .def_readwrite("support_threshold", &ExperimentConfig::support_threshold)
        .def_readwrite("tol", &ExperimentConfig::tol)
        .def_readwrite("max_iter", &ExperimentConfig::max_iter)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def_readwrite("output_path", &ExperimentConfig::output_path)
        .def_readwrite("calibration_trials", &ExperimentConfig::calibration_trials)
        .def_readwrite("calibration_grid", &ExperimentConfig::calibration_grid)
        .def("validate", &ExperimentConfig::validate)
        .def("to_text", [](const ExperimentConfig& c) { return to_config_text(c); });
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));

    py::class_<EstimatorOutcome>(m, "EstimatorOutcome")
        .def_readonly("kind", &EstimatorOutcome::kind)
        .def_readonly("error_energy", &EstimatorOutcome::error_energy)
        .def_readonly("recovery", &EstimatorOutcome::recovery)
        .def_readonly("recovered", &EstimatorOutcome::recovered)
        .def_readonly("iterations", &EstimatorOutcome::iterations)
        .def_readonly("converged", &EstimatorOutcome::converged);
    py::class_<TrialReport>(m, "TrialReport")
        .def_readonly("K", &TrialReport::k)
        .def_readonly("snr_db", &TrialReport::snr_db)
        .def_readonly("trial_index", &TrialReport::trial_index)
        .def_readonly("seed", &TrialReport::seed)
        .def_readonly("outcomes", &TrialReport::outcomes);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("K", &SweepRow::k)
        .def_readonly("snr_db", &SweepRow::snr_db)
        .def_readonly("estimator", &SweepRow::estimator)
        .def_readonly("avg_mse", &SweepRow::avg_mse)
        .def_readonly("std_err", &SweepRow::std_err)
        .def_readonly("recovery_prob", &SweepRow::recovery_prob)
        .def_readonly("trials", &SweepRow::trials);
    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("rows", &SweepReport::rows)
        .def("at", &SweepReport::at, py::arg("K"), py::arg("snr_db"), py::arg("estimator"),
             py::return_value_policy::reference_internal)
        .def("to_csv", [](const SweepReport& r) { return report_csv(r); });
    py::class_<CalibrationPoint>(m, "CalibrationPoint")
        .def_readonly("kind", &CalibrationPoint::kind)
        .def_readonly("coef", &CalibrationPoint::coef)
        .def_readonly("avg_mse", &CalibrationPoint::avg_mse);
    py::class_<CalibrationResult>(m, "CalibrationResult")
        .def_readonly("table", &CalibrationResult::table)
        .def_readonly("chosen", &CalibrationResult::chosen)
        .def_readonly("calibrated", &CalibrationResult::calibrated);

    m.def("average_mse", &average_mse, py::arg("h"), py::arg("h_hat"), py::arg("direct_length"));
    m.def("support_recovery", &support_recovery, py::arg("h"), py::arg("h_hat"), py::arg("threshold"));
    m.def("run_trial", &run_trial, py::arg("cfg"), py::arg("K"), py::arg("snr_db"), py::arg("trial_index"));
    m.def("snr_sweep", &snr_sweep, py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
    m.def("calibrate_lambda", &calibrate_lambda, py::arg("cfg"), py::arg("grid"),
          py::call_guard<py::gil_scoped_release>());
    m.def("emit_report", &emit_report, py::arg("report"), py::arg("path"), py::arg("cfg"));
    m.def("parse_report_csv", &parse_report_csv, py::arg("text"));
    m.def(
        "cli_main",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "afcest");
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            return cli_main(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
        },
        py::arg("args"));
}

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

#include "afcest/cli.hpp"

#include "afcest/csdiag.hpp"
#include "afcest/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

namespace afcest {

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> trials;
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required) {
    auto* c = cmd->add_option("--config", o.config_path, "Experiment config file (key = value)");
    if (config_required) c->required();
    cmd->add_option("--seed", o.seed, "Override master_seed");
    cmd->add_option("--out", o.out, "Override the output path");
    cmd->add_option("--trials", o.trials, "Override trials")->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const Overrides& o) {
    ExperimentConfig cfg = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.out) cfg.output_path = *o.out;
    if (o.trials) cfg.trials = *o.trials;
    cfg.validate();
    return cfg;
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& out) {
    const SweepReport report = snr_sweep(cfg);
    emit_report(report, cfg.output_path, cfg);
    out << "wrote " << cfg.output_path << " (" << report.rows.size() << " rows)\n";
    return 0;
}

int run_calibrate(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
    const CalibrationResult res = calibrate_lambda(cfg, cfg.calibration_grid);
    out << "# calibration at K=" << cfg.calibration_k << " snr_db=" << format_double(cfg.calibration_snr_db)
        << " trials=" << (cfg.calibration_trials ? cfg.calibration_trials : cfg.trials) << '\n';
    out << "estimator,sel_coef,pel_coef,avg_mse\n";
    for (const auto& p : res.chosen)
        out << to_string(p.kind) << ',' << format_double(p.coef.sel) << ',' << format_double(p.coef.pel) << ','
            << format_double(p.avg_mse) << '\n';
    if (o.out) {
        std::ofstream f(*o.out, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + *o.out + "' for writing");
        f << "# calibrated lambda coefficients\n" << to_config_text(res.calibrated);
        out << "wrote " << *o.out << '\n';
    } else {
        out << '\n' << to_config_text(res.calibrated);
    }
    return 0;
}

int run_single_trial(const ExperimentConfig& cfg, std::optional<std::size_t> k, std::optional<double> snr,
                     std::size_t index, std::ostream& out) {
    const std::size_t kk = k.value_or(cfg.k_list.front());
    const double ss = snr.value_or(cfg.snr_db_list.front());
    const TrialReport r = run_trial(cfg, kk, ss, index);
    out << "trial K=" << r.k << " snr_db=" << format_double(r.snr_db) << " index=" << r.trial_index
        << " seed=" << r.seed << '\n';
    out << "estimator,error_energy,avg_mse,recovery,iterations,converged,recovered_support\n";
    const double p = static_cast<double>(2 * cfg.l - 1);
    for (const auto& o : r.outcomes) {
        out << to_string(o.kind) << ',' << format_double(o.error_energy) << ',' << format_double(o.error_energy / p)
            << ',' << format_double(o.recovery) << ',' << o.iterations << ',' << (o.converged ? "yes" : "no") << ',';
        for (std::size_t i = 0; i < o.recovered.size(); ++i) out << (i ? " " : "") << o.recovered[i];
        out << '\n';
    }
    return 0;
}

int run_ric(const ExperimentConfig& cfg, std::size_t order, std::uint64_t budget, std::ostream& out) {
    Rng rng(cfg.master_seed);
    const TrainingSequence x = gen_training(cfg.n, cfg.unit_power, rng, cfg.training);
    const CMatrix X = build_measurement_matrix(x, cfg.l);
    const RicReport r = ric_estimate(X, order, budget, cfg.master_seed);
    out << "matrix " << X.rows() << "x" << X.cols() << " (N=" << cfg.n << ", L=" << cfg.l << ")\n";
    out << "order " << r.order << '\n';
    out << "delta " << format_double(r.delta) << '\n';
    out << "exhaustive " << (r.exhaustive ? "yes" : "no") << '\n';
    out << "subsets_checked " << r.subsets_checked << '\n';
    out << "column_norm_range " << format_double(r.column_norms.minCoeff()) << ' '
        << format_double(r.column_norms.maxCoeff()) << '\n';
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"afcest: partial-sparse channel estimation simulator for AF relay links", "afcest"};
    app.require_subcommand(1);

    Overrides sweep_o, cal_o, trial_o, ric_o;
    auto* sweep = app.add_subcommand("sweep", "Run the Monte Carlo SNR sweep and write CSV + manifest");
    add_common(sweep, sweep_o, true);
    auto* cal = app.add_subcommand("calibrate", "Grid-search lambda coefficients; emits a calibrated config");
    add_common(cal, cal_o, true);
    auto* trial = app.add_subcommand("trial", "Run a single trial and print its report");
    add_common(trial, trial_o, false);
    std::optional<std::size_t> trial_k;
    std::optional<double> trial_snr;
    std::size_t trial_index = 0;
    trial->add_option("--K", trial_k, "Dominant taps (default: first of K_list)");
    trial->add_option("--snr", trial_snr, "SNR in dB (default: first of snr_db_list)");
    trial->add_option("--index", trial_index, "Trial index");
    auto* ric = app.add_subcommand("ric", "Restricted isometry constant of the equivalent training matrix");
    add_common(ric, ric_o, false);
    std::optional<std::size_t> ric_order;
    std::optional<std::uint64_t> ric_budget;
    ric->add_option("--order", ric_order, "RIC order (default: ric_order)");
    ric->add_option("--budget", ric_budget, "Max supports to evaluate (default: ric_budget)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "afcest: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*sweep) return run_sweep(resolve(sweep_o), out);
        if (*cal) return run_calibrate(resolve(cal_o), cal_o, out);
        if (*trial) return run_single_trial(resolve(trial_o), trial_k, trial_snr, trial_index, out);
        if (*ric) {
            const ExperimentConfig cfg = resolve(ric_o);
            return run_ric(cfg, ric_order.value_or(cfg.ric_order), ric_budget.value_or(cfg.ric_budget), out);
        }
    } catch (const std::exception& e) {
        err << "afcest: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace afcest
